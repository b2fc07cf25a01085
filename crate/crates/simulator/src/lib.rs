//! Statevector engine and the full solve pipeline.

pub mod pipeline;
pub mod state;

pub use pipeline::{run_pipeline, Engine, MarketParams, PStar, PipelineOutput};
pub use state::StateVector;

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("step count must be at least 1, got {0}")]
    InvalidSteps(usize),
    #[error("state length mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("cannot normalise the zero vector")]
    ZeroState,
    #[error("no auxiliary node lies above the recovery threshold {threshold}")]
    NoValidRecoveryNode { threshold: f64 },
    #[error(transparent)]
    Schro(#[from] schrobs_schro::SchroError),
    #[error(transparent)]
    Circuit(#[from] schrobs_circuits::CircuitError),
    #[error(transparent)]
    Fd(#[from] schrobs_fdgrid::FdError),
    #[error(transparent)]
    Linalg(#[from] schrobs_linalg::LinalgError),
}

pub type Result<T> = std::result::Result<T, SimError>;
