//! A linear operator held either as a dense matrix or as a Kronecker-term
//! sum.  Dense is the default on the oracle path; the term form carries the
//! multi-asset generators whose dense size would blow the budget.

use crate::kron_op::KronOp;
use crate::ops::{dagger, hermitian_split, matvec, one_norm};
use crate::{C64, CMatrix, CVector, Result};

#[derive(Debug, Clone)]
pub enum Operator {
    Dense(CMatrix),
    Kron(KronOp),
}

impl Operator {
    pub fn dim(&self) -> usize {
        match self {
            Operator::Dense(m) => m.nrows(),
            Operator::Kron(op) => op.dim(),
        }
    }

    pub fn apply(&self, x: &CVector) -> CVector {
        match self {
            Operator::Dense(m) => matvec(m, x),
            Operator::Kron(op) => op.apply(x),
        }
    }

    /// Dense form, budget-checked for the structured case.
    pub fn to_dense(&self) -> Result<CMatrix> {
        match self {
            Operator::Dense(m) => Ok(m.clone()),
            Operator::Kron(op) => op.to_dense(),
        }
    }

    pub fn as_dense(&self) -> Option<&CMatrix> {
        match self {
            Operator::Dense(m) => Some(m),
            Operator::Kron(_) => None,
        }
    }

    pub fn adjoint(&self) -> Operator {
        match self {
            Operator::Dense(m) => Operator::Dense(dagger(m)),
            Operator::Kron(op) => Operator::Kron(op.adjoint()),
        }
    }

    /// `(h1, h2)` with `self = h1 + i·h2`, both Hermitian.
    pub fn hermitian_parts(&self) -> Result<(Operator, Operator)> {
        match self {
            Operator::Dense(m) => {
                let (h1, h2) = hermitian_split(m)?;
                Ok((Operator::Dense(h1), Operator::Dense(h2)))
            }
            Operator::Kron(op) => {
                let (h1, h2) = op.hermitian_parts();
                Ok((Operator::Kron(h1), Operator::Kron(h2)))
            }
        }
    }

    pub fn one_norm_bound(&self) -> f64 {
        match self {
            Operator::Dense(m) => one_norm(m),
            Operator::Kron(op) => op.one_norm_bound(),
        }
    }

    pub fn scaled(&self, c: C64) -> Operator {
        match self {
            Operator::Dense(m) => Operator::Dense(m.mapv(|z| z * c)),
            Operator::Kron(op) => Operator::Kron(op.scaled(c)),
        }
    }
}
