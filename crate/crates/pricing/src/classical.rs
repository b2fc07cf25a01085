//! Classical reference: the semi-discrete system solved exactly through
//! the dilated matrix exponential.

use schrobs_linalg::ndarray::Array1;
use schrobs_linalg::{expmv, CVector};

use schrobs_fdgrid::OdeSystem;
use schrobs_schro::dilate;

use crate::Result;

/// Physical block of `exp(C·T)·ū(0)`: the exact solution of the
/// semi-discrete system at time `T`, boundary source included.
pub fn classical_reference(sys: &OdeSystem, t: f64) -> Result<CVector> {
    let d = dilate(sys.clone())?;
    let ubar0 = d.u0_bar();
    let bound = d.c.one_norm_bound() * t.abs();
    let ubar_t = expmv(
        |x| d.c.apply(x).mapv(|z| z * t),
        bound,
        &ubar0,
        1.0,
    );
    let n = d.base_dim();
    Ok(Array1::from_shape_fn(n, |i| ubar_t[i]))
}
