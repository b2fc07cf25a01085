//! Recovery of the physical unknowns from a node-space warped state.

use schrobs_linalg::ndarray::Array1;
use schrobs_linalg::CVector;

use crate::dilate::DilatedSystem;
use crate::pgrid::PGrid;
use crate::warp::{Repr, WarpedState};
use crate::{Result, SchroError};

/// `max(rate·t, 0)`: the smallest admissible recovery node position.
pub fn recovery_threshold(d: &DilatedSystem, t: f64) -> f64 {
    (d.recovery_rate() * t).max(0.0)
}

/// Reads off `u(T) = e^{p*} · v(T, ·, p*)` from the slice at node `p*`,
/// restricted to the physical block.
///
/// `p*` must coincide with a grid node strictly above the recovery
/// threshold; any such node works, and different choices agree up to the
/// auxiliary discretisation error.
pub fn recover_u(
    s: &WarpedState,
    g: &PGrid,
    p_star: f64,
    d: &DilatedSystem,
    t: f64,
) -> Result<CVector> {
    if s.repr != Repr::PSpace || s.n_p != g.n_p {
        return Err(SchroError::WrongRepresentation);
    }
    let dp = g.delta_p();
    let pos = (p_star - g.p_node(0)) / dp;
    let k = pos.round() as isize;
    if k < 0
        || k >= g.n_points() as isize
        || (pos - pos.round()).abs() > 1e-9
    {
        return Err(SchroError::NotANode { p_star });
    }
    let threshold = recovery_threshold(d, t);
    if p_star <= threshold {
        return Err(SchroError::ThresholdViolation { p_star, threshold });
    }
    let k = k as usize;
    let np = g.n_points();
    let n = d.base_dim();
    let scale = p_star.exp() * s.norm_factor;
    Ok(Array1::from_shape_fn(n, |j| {
        s.amplitudes[j * np + k] * scale
    }))
}
