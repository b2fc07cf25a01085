//! Operators stored as sums of Kronecker-product terms.
//!
//! A `KronOp` keeps an operator on a tensor-product grid as
//! `Σ_t c_t · M_{t,1} ⊗ … ⊗ M_{t,d}` with identity factors elided.  The
//! matrix action is applied axis by axis, which is what makes the large
//! multi-asset evolutions affordable; the dense form is only materialised
//! inside the oracle budget.

use ndarray::Array1;

use crate::ops::{dagger, identity, kron, one_norm};
use crate::{C64, CMatrix, CVector, Result};

#[derive(Debug, Clone)]
pub struct KronTerm {
    pub coeff: C64,
    /// One entry per axis; `None` stands for the identity on that axis.
    pub factors: Vec<Option<CMatrix>>,
}

#[derive(Debug, Clone)]
pub struct KronOp {
    /// Per-axis dimensions, most significant axis first.
    pub axis_dims: Vec<usize>,
    pub terms: Vec<KronTerm>,
}

impl KronOp {
    pub fn new(axis_dims: Vec<usize>) -> Self {
        Self {
            axis_dims,
            terms: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.axis_dims.iter().product()
    }

    pub fn push(&mut self, coeff: C64, factors: Vec<Option<CMatrix>>) {
        assert_eq!(factors.len(), self.axis_dims.len());
        for (f, &d) in factors.iter().zip(&self.axis_dims) {
            if let Some(m) = f {
                assert_eq!(m.nrows(), d);
                assert_eq!(m.ncols(), d);
            }
        }
        self.terms.push(KronTerm { coeff, factors });
    }

    /// `y = (Σ_t c_t ⊗_a M_{t,a}) x`.
    pub fn apply(&self, x: &CVector) -> CVector {
        let n = self.dim();
        assert_eq!(x.len(), n);
        let mut y = Array1::from_elem(n, C64::new(0.0, 0.0));
        let mut tmp = Array1::from_elem(n, C64::new(0.0, 0.0));
        let mut cur = Array1::from_elem(n, C64::new(0.0, 0.0));
        for term in &self.terms {
            cur.assign(x);
            for (axis, factor) in term.factors.iter().enumerate() {
                if let Some(m) = factor {
                    apply_axis(m, &cur, &mut tmp, axis, &self.axis_dims);
                    std::mem::swap(&mut cur, &mut tmp);
                }
            }
            y.scaled_add(term.coeff, &cur);
        }
        y
    }

    pub fn adjoint(&self) -> KronOp {
        KronOp {
            axis_dims: self.axis_dims.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| KronTerm {
                    coeff: t.coeff.conj(),
                    factors: t.factors.iter().map(|f| f.as_ref().map(dagger)).collect(),
                })
                .collect(),
        }
    }

    pub fn scaled(&self, c: C64) -> KronOp {
        KronOp {
            axis_dims: self.axis_dims.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| KronTerm {
                    coeff: t.coeff * c,
                    factors: t.factors.clone(),
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &KronOp) -> KronOp {
        assert_eq!(self.axis_dims, other.axis_dims);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        KronOp {
            axis_dims: self.axis_dims.clone(),
            terms,
        }
    }

    /// Hermitian / anti-Hermitian parts `(h1, h2)` with `op = h1 + i·h2`,
    /// kept in term form.
    pub fn hermitian_parts(&self) -> (KronOp, KronOp) {
        let adj = self.adjoint();
        let h1 = self.scaled(C64::new(0.5, 0.0)).concat(&adj.scaled(C64::new(0.5, 0.0)));
        let h2 = self
            .scaled(C64::new(0.0, -0.5))
            .concat(&adj.scaled(C64::new(0.0, 0.5)));
        (h1, h2)
    }

    /// Upper bound on the induced 1-norm: Σ_t |c_t| ∏_a ‖M‖₁.
    pub fn one_norm_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                t.coeff.norm()
                    * t.factors
                        .iter()
                        .map(|f| f.as_ref().map_or(1.0, one_norm))
                        .product::<f64>()
            })
            .sum()
    }

    pub fn to_dense(&self) -> Result<CMatrix> {
        crate::check_budget(self.dim())?;
        let n = self.dim();
        let mut out = CMatrix::from_elem((n, n), C64::new(0.0, 0.0));
        for term in &self.terms {
            let mut acc: Option<CMatrix> = None;
            for (axis, factor) in term.factors.iter().enumerate() {
                let f = factor.clone().unwrap_or_else(|| identity(self.axis_dims[axis]));
                acc = Some(match acc {
                    None => f,
                    Some(a) => kron(&a, &f)?,
                });
            }
            let m = acc.expect("at least one axis");
            out.scaled_add(term.coeff, &m);
        }
        Ok(out)
    }
}

/// Applies `m` along `axis` of the row-major tensor `x` (axis 0 most
/// significant), writing into `y`.
fn apply_axis(m: &CMatrix, x: &CVector, y: &mut CVector, axis: usize, dims: &[usize]) {
    let d = dims[axis];
    let stride: usize = dims[axis + 1..].iter().product();
    let outer: usize = dims[..axis].iter().product();
    let block = d * stride;
    let xs = x.as_slice().expect("contiguous");
    let ys = y.as_slice_mut().expect("contiguous");
    for o in 0..outer {
        let base = o * block;
        for i in 0..d {
            let row = &mut ys[base + i * stride..base + (i + 1) * stride];
            row.fill(C64::new(0.0, 0.0));
            for j in 0..d {
                let mij = m[(i, j)];
                if mij == C64::new(0.0, 0.0) {
                    continue;
                }
                let src = &xs[base + j * stride..base + (j + 1) * stride];
                for (r, s) in row.iter_mut().zip(src) {
                    *r += mij * s;
                }
            }
        }
    }
}
