//! Gate-level IR.
//!
//! Multi-controlled gates stay symbolic: a gate is a base kind plus a list
//! of (qubit, polarity) controls.  Expansion into a CNOT basis only happens
//! in the auditor; the simulator applies controls directly.

use schrobs_linalg::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X,
    H,
    Phase(f64),
    RX(f64),
    RY(f64),
    RZ(f64),
    /// Scalar factor `e^{iθ}` on the controlled subspace (on everything
    /// when uncontrolled).
    GlobalPhase(f64),
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::Phase(_) => "PHASE",
            GateKind::RX(_) => "RX",
            GateKind::RY(_) => "RY",
            GateKind::RZ(_) => "RZ",
            GateKind::GlobalPhase(_) => "GPHASE",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::Phase(a)
            | GateKind::RX(a)
            | GateKind::RY(a)
            | GateKind::RZ(a)
            | GateKind::GlobalPhase(a) => Some(a),
            _ => None,
        }
    }

    pub fn inverse(&self) -> GateKind {
        match *self {
            GateKind::X => GateKind::X,
            GateKind::H => GateKind::H,
            GateKind::Phase(a) => GateKind::Phase(-a),
            GateKind::RX(a) => GateKind::RX(-a),
            GateKind::RY(a) => GateKind::RY(-a),
            GateKind::RZ(a) => GateKind::RZ(-a),
            GateKind::GlobalPhase(a) => GateKind::GlobalPhase(-a),
        }
    }

    /// 2×2 matrix `[[m00, m01], [m10, m11]]` for the non-scalar kinds.
    ///
    /// Conventions: `RZ(θ) = exp(−iθZ/2)`, `RX(θ) = exp(−iθX/2)`,
    /// `RY(θ) = exp(−iθY/2)`, `Phase(λ) = diag(1, e^{iλ})`.
    pub fn matrix(&self) -> [[C64; 2]; 2] {
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        match *self {
            GateKind::X => [[zero, one], [one, zero]],
            GateKind::H => {
                let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                [[s, s], [s, -s]]
            }
            GateKind::Phase(a) => [[one, zero], [zero, C64::from_polar(1.0, a)]],
            GateKind::RZ(a) => [
                [C64::from_polar(1.0, -a / 2.0), zero],
                [zero, C64::from_polar(1.0, a / 2.0)],
            ],
            GateKind::RX(a) => {
                let c = C64::new((a / 2.0).cos(), 0.0);
                let s = C64::new(0.0, -(a / 2.0).sin());
                [[c, s], [s, c]]
            }
            GateKind::RY(a) => {
                let c = C64::new((a / 2.0).cos(), 0.0);
                let s = C64::new((a / 2.0).sin(), 0.0);
                [[c, -s], [s, c]]
            }
            GateKind::GlobalPhase(_) => panic!("global phase has no 2x2 matrix"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    /// Ignored for `GlobalPhase`.
    pub target: usize,
    /// `(qubit, polarity)`: the gate fires where every listed qubit holds
    /// the given bit value.
    pub controls: Vec<(usize, bool)>,
}

impl Gate {
    pub fn new(kind: GateKind, target: usize) -> Self {
        Self { kind, target, controls: Vec::new() }
    }

    pub fn controlled_by(mut self, qubit: usize, polarity: bool) -> Self {
        self.controls.push((qubit, polarity));
        self
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            target: self.target,
            controls: self.controls.clone(),
        }
    }

    pub fn max_qubit(&self) -> usize {
        let base = match self.kind {
            GateKind::GlobalPhase(_) => 0,
            _ => self.target,
        };
        self.controls.iter().map(|&(q, _)| q).fold(base, usize::max)
    }
}
