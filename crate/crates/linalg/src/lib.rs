//! Dense complex linear algebra shared by every other crate in the
//! workspace: Kronecker products, matrix exponentials, operator norms and
//! Hermitian splittings.
//!
//! Matrices are plain `ndarray` arrays of `Complex64` in row-major order.
//! Everything here is a pure function of its inputs; results are
//! deterministic and safe to share across threads once built.

pub mod expm;
pub mod kron_op;
pub mod operator;
pub mod ops;

pub use expm::{expmv, hermitian_eigh, lambda_max_hermitian, lambda_max_hermitian_apply, matexp};
pub use kron_op::{KronOp, KronTerm};
pub use operator::Operator;
pub use ops::{
    dagger, hermitian_split, identity, is_hermitian, kron, matvec, max_abs, max_abs_diff,
    one_norm, opnorm2, vec_norm2,
};

pub use ndarray;
pub use ndarray_linalg;
pub use num_complex;

pub type C64 = num_complex::Complex64;
pub type CMatrix = ndarray::Array2<C64>;
pub type CVector = ndarray::Array1<C64>;

/// Largest dimension a dense oracle-path matrix may take.  Larger registers
/// are handled by structured operators or by the statevector engine.
pub const MAX_ORACLE_DIM: usize = 1 << 14;

#[derive(Debug, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {dim} exceeds the dense oracle budget {max}")]
    BudgetExceeded { dim: usize, max: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("empty operand")]
    Empty,
    #[error("eigensolver failed: {0}")]
    EighFailed(String),
    #[error("linear solve failed: {0}")]
    SolveFailed(String),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

pub(crate) fn check_square(m: &CMatrix) -> Result<usize> {
    let (r, c) = (m.nrows(), m.ncols());
    if r != c {
        return Err(LinalgError::NotSquare { rows: r, cols: c });
    }
    Ok(r)
}

/// Errors when `dim` exceeds the dense oracle budget.
pub fn budget_guard(dim: usize) -> Result<()> {
    check_budget(dim)
}

pub(crate) fn check_budget(dim: usize) -> Result<()> {
    if dim > MAX_ORACLE_DIM {
        return Err(LinalgError::BudgetExceeded {
            dim,
            max: MAX_ORACLE_DIM,
        });
    }
    Ok(())
}
