//! Dilation of an inhomogeneous system into an autonomous block system.
//!
//! `du/dτ = A u + b(τ)` with `b(τ) = e^{−rτ} b(0)` embeds into
//! `dū/dτ = C ū`, `C = [[A, B], [0, −r·I]]`, where `B` is diagonal with the
//! single entry `β = b(0)` at the last node and the auxiliary block starts
//! from the all-ones vector.  Systems with `b = 0` pass through untouched.

use std::sync::OnceLock;

use schrobs_linalg::ndarray::{Array1, Array2};
use schrobs_linalg::{lambda_max_hermitian_apply, C64, CVector, Operator};

use schrobs_fdgrid::OdeSystem;

use crate::{Result, SchroError};

#[derive(Debug)]
pub struct DilatedSystem {
    pub sys: OdeSystem,
    pub dilated: bool,
    /// Autonomous generator: `[[A, B], [0, −r·I]]` when dilated, else `A`.
    pub c: Operator,
    /// Hermitian part of `c`.
    pub c1: Operator,
    /// Anti-Hermitian part: `c = c1 + i·c2`.
    pub c2: Operator,
    /// The single boundary-source entry (0 when undilated).
    pub b_entry: f64,
    recovery_rate: OnceLock<f64>,
}

impl DilatedSystem {
    /// Dimension of the autonomous state `ū`.
    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    /// Dimension of the original unknown block `u`.
    pub fn base_dim(&self) -> usize {
        self.sys.dim()
    }

    /// Initial autonomous state: `[u₀; 1…1]` when dilated, else `u₀`.
    pub fn u0_bar(&self) -> CVector {
        if !self.dilated {
            return self.sys.u0.clone();
        }
        let n = self.base_dim();
        Array1::from_shape_fn(2 * n, |i| {
            if i < n {
                self.sys.u0[i]
            } else {
                C64::new(1.0, 0.0)
            }
        })
    }

    /// Largest eigenvalue of the Hermitian part of the original generator
    /// `A`.  The auxiliary block only adds a decaying mode and a single
    /// coupling entry, so the growth of the physical solution — and with it
    /// the recovery threshold — is governed by `A` alone.
    pub fn recovery_rate(&self) -> f64 {
        *self.recovery_rate.get_or_init(|| {
            let (a1, _) = self.sys.a.hermitian_parts().expect("square generator");
            match a1.as_dense() {
                Some(m) if m.nrows() <= 1024 => {
                    schrobs_linalg::lambda_max_hermitian(m).expect("eigensolve")
                }
                _ => {
                    let bound = a1.one_norm_bound();
                    lambda_max_hermitian_apply(|x| a1.apply(x), a1.dim(), bound)
                }
            }
        })
    }
}

pub fn dilate(sys: OdeSystem) -> Result<DilatedSystem> {
    if sys.b_is_zero() {
        let c = sys.a.clone();
        let (c1, c2) = c.hermitian_parts()?;
        return Ok(DilatedSystem {
            sys,
            dilated: false,
            c,
            c1,
            c2,
            b_entry: 0.0,
            recovery_rate: OnceLock::new(),
        });
    }
    let n = sys.dim();
    for j in 0..n - 1 {
        if sys.b[j].norm() != 0.0 {
            return Err(SchroError::UnsupportedSource);
        }
    }
    let beta = sys.b[n - 1];
    if beta.im != 0.0 {
        return Err(SchroError::UnsupportedSource);
    }
    let a = sys
        .a
        .as_dense()
        .ok_or(SchroError::UnsupportedSource)?
        .clone();
    let r = sys.decay_rate;
    let zero = C64::new(0.0, 0.0);
    let mut c = Array2::from_elem((2 * n, 2 * n), zero);
    for i in 0..n {
        for j in 0..n {
            c[(i, j)] = a[(i, j)];
        }
        c[(n + i, n + i)] = C64::new(-r, 0.0);
    }
    c[(n - 1, 2 * n - 1)] = beta;
    let c = Operator::Dense(c);
    let (c1, c2) = c.hermitian_parts()?;
    Ok(DilatedSystem {
        sys,
        dilated: true,
        c,
        c1,
        c2,
        b_entry: beta.re,
        recovery_rate: OnceLock::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use schrobs_fdgrid::{assemble_bs_1d, BoundaryKind, BsParams1D, SpatialGrid};
    use schrobs_linalg::{matexp, max_abs_diff};

    fn sys() -> OdeSystem {
        let grid = SpatialGrid::new(1e-4f64.ln(), 300f64.ln(), 3).unwrap();
        let p = BsParams1D::new(0.02, 0.3, 30.0, 1.0).unwrap();
        assemble_bs_1d(&p, &grid, BoundaryKind::Dirichlet, true).unwrap()
    }

    #[test]
    fn zero_source_passes_through() {
        let mut s = sys();
        s.b.fill(C64::new(0.0, 0.0));
        let a = s.a.to_dense().unwrap();
        let d = dilate(s).unwrap();
        assert!(!d.dilated);
        assert!(max_abs_diff(&d.c.to_dense().unwrap(), &a) < 1e-15);
        assert_eq!(d.dim(), d.base_dim());
    }

    #[test]
    fn source_entry_matches_stencil_weight() {
        let s = sys();
        let grid = s.grid;
        let h = grid.h();
        let (r, sigma, k) = (0.02, 0.3, 30.0);
        let want = -k * (sigma * sigma / (2.0 * h * h) + (r - sigma * sigma / 2.0) / (2.0 * h));
        let d = dilate(s).unwrap();
        assert!(d.dilated);
        assert!((d.b_entry - want).abs() < 1e-10);
        // Block layout: coupling sits at (n−1, 2n−1), auxiliary diagonal −r.
        let c = d.c.to_dense().unwrap();
        let n = d.base_dim();
        assert!((c[(n - 1, 2 * n - 1)].re - want).abs() < 1e-10);
        for i in 0..n {
            assert!((c[(n + i, n + i)].re + r).abs() < 1e-15);
        }
    }

    #[test]
    fn off_shape_source_rejected() {
        let mut s = sys();
        s.b[0] = C64::new(0.5, 0.0);
        assert!(matches!(dilate(s), Err(SchroError::UnsupportedSource)));
    }

    #[test]
    fn hermitian_parts_have_block_form() {
        let d = dilate(sys()).unwrap();
        let c1 = d.c1.to_dense().unwrap();
        let c2 = d.c2.to_dense().unwrap();
        let n = d.base_dim();
        let (a1, a2) =
            schrobs_linalg::hermitian_split(d.sys.a.as_dense().unwrap()).unwrap();
        let half = d.b_entry / 2.0;
        for i in 0..n {
            for j in 0..n {
                assert!((c1[(i, j)] - a1[(i, j)]).norm() < 1e-14);
                assert!((c2[(i, j)] - a2[(i, j)]).norm() < 1e-14);
                // Lower-right blocks: −r·I in c1, zero in c2.
                let want = if i == j { -d.sys.decay_rate } else { 0.0 };
                assert!((c1[(n + i, n + j)].re - want).abs() < 1e-14);
                assert!(c2[(n + i, n + j)].norm() < 1e-14);
            }
        }
        // Off-diagonal coupling: B/2 in c1 and ∓i·B/2 in c2.
        assert!((c1[(n - 1, 2 * n - 1)].re - half).abs() < 1e-14);
        assert!((c1[(2 * n - 1, n - 1)].re - half).abs() < 1e-14);
        assert!((c2[(n - 1, 2 * n - 1)] - C64::new(0.0, -half)).norm() < 1e-14);
        assert!((c2[(2 * n - 1, n - 1)] - C64::new(0.0, half)).norm() < 1e-14);
    }

    #[test]
    fn dilated_flow_reproduces_inhomogeneous_ode() {
        // Reference: classic fourth-order Runge-Kutta on du/dτ = Au + e^{−rτ}b.
        let s = sys();
        let a = s.a.to_dense().unwrap();
        let b0 = s.b.clone();
        let r = s.decay_rate;
        let t = 0.8;
        let steps = 8000usize;
        let dt = t / steps as f64;
        let mut u = s.u0.clone();
        let f = |tau: f64, u: &CVector| -> CVector {
            let mut v = a.dot(u);
            v.scaled_add(C64::new((-r * tau).exp(), 0.0), &b0);
            v
        };
        for i in 0..steps {
            let tau = i as f64 * dt;
            let k1 = f(tau, &u);
            let k2 = f(tau + dt / 2.0, &(&u + &k1.mapv(|z| z * (dt / 2.0))));
            let k3 = f(tau + dt / 2.0, &(&u + &k2.mapv(|z| z * (dt / 2.0))));
            let k4 = f(tau + dt, &(&u + &k3.mapv(|z| z * dt)));
            u = &u + &(&(&k1 + &k2.mapv(|z| z * 2.0)) + &(&k3.mapv(|z| z * 2.0) + &k4))
                .mapv(|z| z * (dt / 6.0));
        }
        let d = dilate(s).unwrap();
        let flow = matexp(&d.c.to_dense().unwrap(), t).unwrap();
        let ubar = flow.dot(&d.u0_bar());
        let n = d.base_dim();
        for j in 0..n {
            assert!((ubar[j] - u[j]).norm() < 1e-8, "node {j}");
        }
    }

    #[test]
    fn recovery_rate_is_negative_for_diffusive_generator() {
        let d = dilate(sys()).unwrap();
        let rate = d.recovery_rate();
        assert!(rate < 0.0, "rate = {rate}");
    }
}
