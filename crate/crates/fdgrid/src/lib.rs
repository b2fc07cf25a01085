//! Spatial grids, shift/difference operators, and the semi-discrete
//! Black-Scholes ODE systems (one-dimensional Dirichlet and mixed, and the
//! d-dimensional tensor-grid variant).

pub mod assemble;
pub mod grid;
pub mod shift;

pub use assemble::{assemble_bs_1d, assemble_bs_ddim, BoundaryKind, OdeSystem};
pub use grid::{BsParams1D, BsParamsD, PayoffKind, SpatialGrid};
pub use shift::{diff_op, mpo_term_minus, mpo_term_plus, shift_minus, shift_plus, DiffKind};

use schrobs_linalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum FdError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid market parameters: {0}")]
    InvalidParams(String),
    #[error("cross-derivative terms on the structured path are only assembled for dim 2 (got dim {0})")]
    UnsupportedCrossTerms(usize),
    #[error("call payoff is only defined for dim 1 on the tensor-grid path")]
    UnsupportedPayoff,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, FdError>;
