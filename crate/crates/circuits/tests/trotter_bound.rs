//! Splitting-error bound for the per-step unitary on source-free systems:
//!
//!   ‖exp(iτH) − V(τ)‖₂ ≤ (1/4)·τ²·n_x·(N_p γ₁² + 2γ₂² + 2 N_p γ₁ γ₂)·c²
//!
//! with `c = max(σ²/2, r − σ²/2)`.  Checked here on a reduced case count;
//! the acceptance suite runs the full sweep.

use rand::{Rng, SeedableRng};
use schrobs_circuits::{oracle, VbsConfigD};
use schrobs_fdgrid::{assemble_bs_ddim, BsParamsD, PayoffKind, SpatialGrid};
use schrobs_linalg::{matexp, opnorm2, C64};
use schrobs_schro::{assemble_hbs, dilate, PGrid};

pub fn bound_holds_1d(n_x: usize, n_p: usize, tau: f64, sigma: f64, r: f64) -> (f64, f64) {
    let grid = SpatialGrid::new(1e-4f64.ln(), 300f64.ln(), n_x).unwrap();
    let pgrid = PGrid::new(4.0, n_p).unwrap();
    let params = BsParamsD::new(
        r,
        vec![sigma],
        vec![1.0],
        vec![30.0],
        PayoffKind::CashOrNothing { amount: 1.0 },
    )
    .unwrap();
    let sys = assemble_bs_ddim(&params, &grid, true).unwrap();
    let d = dilate(sys).unwrap();
    let h = assemble_hbs(&d, &pgrid).unwrap();
    let u_exact = matexp(
        &h.full.as_ref().unwrap().mapv(|z| z * C64::new(0.0, 1.0)),
        tau,
    )
    .unwrap();
    let cfgd = VbsConfigD::new(&params, &grid, &pgrid).unwrap();
    let v = oracle::vbs_ddim_mat(tau, &cfgd).unwrap();
    let err = opnorm2(&(&u_exact - &v)).unwrap();
    let np = pgrid.n_points() as f64;
    let (g1, g2) = (h.gamma1, h.gamma2);
    let c = (0.5 * sigma * sigma).max(r - 0.5 * sigma * sigma);
    let bound = 0.25
        * tau
        * tau
        * n_x as f64
        * (np * g1 * g1 + 2.0 * g2 * g2 + 2.0 * np * g1 * g2)
        * c
        * c;
    (err, bound)
}

#[test]
fn splitting_error_within_bound_sampled() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for case in 0..20 {
        let tau = rng.gen_range(1e-4..0.1f64);
        let sigma = rng.gen_range(0.1..0.5f64);
        let r = rng.gen_range(0.0..0.1f64);
        let (err, bound) = bound_holds_1d(3, 3, tau, sigma, r);
        assert!(
            err <= bound * (1.0 + 1e-9),
            "case {case}: err={err:.3e} > bound={bound:.3e} (tau={tau}, sigma={sigma}, r={r})"
        );
    }
}

#[test]
fn splitting_error_within_bound_two_assets() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    let (n_x, n_p) = (2usize, 2usize);
    let grid = SpatialGrid::new(1e-6f64.ln(), 200f64.ln(), n_x).unwrap();
    let pgrid = PGrid::new(15.0, n_p).unwrap();
    for case in 0..5 {
        let tau = rng.gen_range(1e-4..0.1f64);
        let s1 = rng.gen_range(0.1..0.5f64);
        let s2 = rng.gen_range(0.1..0.5f64);
        let r = rng.gen_range(0.0..0.1f64);
        let params = BsParamsD::new(
            r,
            vec![s1, s2],
            vec![1.0, 0.0, 0.0, 1.0],
            vec![50.0, 50.0],
            PayoffKind::CashOrNothing { amount: 1.0 },
        )
        .unwrap();
        let sys = assemble_bs_ddim(&params, &grid, true).unwrap();
        let d = dilate(sys).unwrap();
        let h = assemble_hbs(&d, &pgrid).unwrap();
        let u_exact = matexp(
            &h.full.as_ref().unwrap().mapv(|z| z * C64::new(0.0, 1.0)),
            tau,
        )
        .unwrap();
        let cfgd = VbsConfigD::new(&params, &grid, &pgrid).unwrap();
        let v = oracle::vbs_ddim_mat(tau, &cfgd).unwrap();
        let err = opnorm2(&(&u_exact - &v)).unwrap();
        let np = pgrid.n_points() as f64;
        let (g1, g2) = (h.gamma1, h.gamma2);
        let cm: f64 = [s1, s2]
            .iter()
            .map(|s| {
                let c = (0.5 * s * s).max(r - 0.5 * s * s);
                c * c
            })
            .sum();
        let bound = 0.25
            * tau
            * tau
            * n_x as f64
            * (np * g1 * g1 + 2.0 * g2 * g2 + 2.0 * np * g1 * g2)
            * cm;
        assert!(
            err <= bound * (1.0 + 1e-9),
            "case {case}: err={err:.3e} > bound={bound:.3e}"
        );
    }
}
