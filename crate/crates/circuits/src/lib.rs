//! Gate-level IR, explicit circuit synthesis for the split-evolution
//! blocks and their control ladder, the centered Fourier transform, the
//! gate-count auditor, and a reference dense-unitary oracle.

pub mod builders;
pub mod circuit;
pub mod count;
pub mod gate;
pub mod oracle;
pub mod unitary;

pub use builders::{
    bell_basis, build_iqft, build_qft, build_tilde_v1, build_tilde_v2, build_v1, build_v2,
    build_vbs, build_vbs_ddim, w_gate, VbsConfig, VbsConfigD,
};
pub use circuit::{Circuit, Register};
pub use count::{count_gates, q_cv1_cnots, q_single, q_v1_cnots, q_vbs_cnots, CountMode, GateCountReport};
pub use gate::{Gate, GateKind};
pub use unitary::{apply_gate_reference, circuit_to_unitary};

use schrobs_linalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum CircuitError {
    #[error("qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("qubit {qubit} used as both target and control")]
    TargetIsControl { qubit: usize },
    #[error("gate angle is not finite")]
    NonFiniteAngle,
    #[error("ladder index {j} out of range 1..={n_x}")]
    LadderIndex { j: usize, n_x: usize },
    #[error("coupled correlation entries have no per-axis circuit; use the dense evolution path")]
    CoupledCorrelation,
    #[error("circuit width {width} too large")]
    WidthOverflow { width: usize },
    #[error("dump parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<schrobs_fdgrid::FdError> for CircuitError {
    fn from(e: schrobs_fdgrid::FdError) -> Self {
        match e {
            schrobs_fdgrid::FdError::Linalg(l) => CircuitError::Linalg(l),
            other => CircuitError::Parse { line: 0, msg: other.to_string() },
        }
    }
}

pub type Result<T> = std::result::Result<T, CircuitError>;
