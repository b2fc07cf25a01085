//! Schrödingerisation of the semi-discrete systems: dilation into an
//! autonomous block system, warped phase transform over an auxiliary
//! periodic variable, the resulting Hermitian generator, exact dense
//! evolution, and recovery of the original unknowns.

pub mod dilate;
pub mod hamiltonian;
pub mod pgrid;
pub mod recover;
pub mod warp;

pub use dilate::{dilate, DilatedSystem};
pub use hamiltonian::{assemble_hbs, evolve_exact, HamiltonianBS};
pub use pgrid::PGrid;
pub use recover::{recover_u, recovery_threshold};
pub use warp::{centered_dft, eta_to_p, initial_v, p_to_eta, Profile, Repr, WarpedState};

use schrobs_fdgrid::FdError;
use schrobs_linalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum SchroError {
    #[error("invalid auxiliary grid: {0}")]
    InvalidPGrid(String),
    #[error("boundary source is not a single decaying entry at the last node; dilation only supports that shape")]
    UnsupportedSource,
    #[error("state is in the wrong representation for this transform")]
    WrongRepresentation,
    #[error("p* = {p_star} does not coincide with an auxiliary grid node")]
    NotANode { p_star: f64 },
    #[error("p* = {p_star} is at or below the recovery threshold {threshold}")]
    ThresholdViolation { p_star: f64, threshold: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Fd(#[from] FdError),
}

pub type Result<T> = std::result::Result<T, SchroError>;
