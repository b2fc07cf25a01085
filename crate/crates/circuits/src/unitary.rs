//! Reference dense unitary of a circuit, by applying every gate to each
//! basis column with straightforward index arithmetic.  Deliberately
//! independent of the optimised statevector engine so the two can check
//! each other.

use schrobs_linalg::ndarray::{Array1, Array2};
use schrobs_linalg::{C64, CMatrix, CVector};

use crate::circuit::Circuit;
use crate::gate::{Gate, GateKind};
use crate::{CircuitError, Result};

fn controls_satisfied(g: &Gate, index: usize) -> bool {
    g.controls
        .iter()
        .all(|&(q, pol)| ((index >> q) & 1 == 1) == pol)
}

/// Applies one gate to a dense amplitude vector (basis index 0 = all zeros,
/// qubit 0 the least significant bit).
pub fn apply_gate_reference(g: &Gate, v: &mut CVector) {
    let dim = v.len();
    if let GateKind::GlobalPhase(theta) = g.kind {
        let ph = C64::from_polar(1.0, theta);
        for i in 0..dim {
            if controls_satisfied(g, i) {
                v[i] *= ph;
            }
        }
        return;
    }
    let m = g.kind.matrix();
    let tbit = 1usize << g.target;
    for i in 0..dim {
        if i & tbit != 0 || !controls_satisfied(g, i) {
            continue;
        }
        let j = i | tbit;
        if !controls_satisfied(g, j) {
            // Control on the target's partner differs only when the target
            // itself is a control, which push() rejects.
            continue;
        }
        let (a, b) = (v[i], v[j]);
        v[i] = m[0][0] * a + m[0][1] * b;
        v[j] = m[1][0] * a + m[1][1] * b;
    }
}

/// Dense unitary of the whole circuit.  Bounded by the oracle budget.
pub fn circuit_to_unitary(c: &Circuit) -> Result<CMatrix> {
    let dim = 1usize
        .checked_shl(c.width as u32)
        .ok_or(CircuitError::WidthOverflow { width: c.width })?;
    schrobs_linalg::budget_guard(dim).map_err(CircuitError::from)?;
    let mut u = Array2::from_elem((dim, dim), C64::new(0.0, 0.0));
    for col in 0..dim {
        let mut v = Array1::from_elem(dim, C64::new(0.0, 0.0));
        v[col] = C64::new(1.0, 0.0);
        for g in &c.gates {
            apply_gate_reference(g, &mut v);
        }
        u.column_mut(col).assign(&v);
    }
    Ok(u)
}
