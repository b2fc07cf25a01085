//! Pipeline-level checks: the two engines against each other, step-count
//! convergence of the splitting error, and recovery-node consistency.

use schrobs_fdgrid::{
    assemble_bs_1d, assemble_bs_ddim, BoundaryKind, BsParams1D, BsParamsD, PayoffKind,
    SpatialGrid,
};
use schrobs_schro::{PGrid, Profile};
use schrobs_simulator::{run_pipeline, Engine, MarketParams, PStar};

fn l2_diff(a: &schrobs_linalg::CVector, b: &schrobs_linalg::CVector) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[test]
fn engines_agree_at_splitting_tolerance() {
    let grid = SpatialGrid::new(1e-4f64.ln(), 300f64.ln(), 4).unwrap();
    let params = BsParams1D::new(0.02, 0.3, 30.0, 1.0).unwrap();
    let sys = assemble_bs_1d(&params, &grid, BoundaryKind::Dirichlet, true).unwrap();
    let pgrid = PGrid::new(4.0, 4).unwrap();
    let market = MarketParams::OneD(params);
    let t = 0.5;
    let dense = run_pipeline(
        &sys, &market, &pgrid, t, 1, Profile::Exponential, PStar::Auto, Engine::DenseOracle,
    )
    .unwrap();
    let circ = run_pipeline(
        &sys, &market, &pgrid, t, 500, Profile::Exponential, PStar::Auto, Engine::Circuit,
    )
    .unwrap();
    assert_eq!(dense.p_star, circ.p_star);
    let scale = dense.u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let diff = l2_diff(&dense.u, &circ.u);
    assert!(diff / scale < 2e-3, "relative gap {}", diff / scale);
}

#[test]
fn halving_the_step_halves_the_splitting_error() {
    let grid = SpatialGrid::new(1e-4f64.ln(), 300f64.ln(), 3).unwrap();
    let params = BsParams1D::new(0.02, 0.3, 30.0, 1.0).unwrap();
    let sys = assemble_bs_1d(&params, &grid, BoundaryKind::Dirichlet, true).unwrap();
    let pgrid = PGrid::new(4.0, 3).unwrap();
    let market = MarketParams::OneD(params);
    let t = 0.5;
    let reference = run_pipeline(
        &sys, &market, &pgrid, t, 1, Profile::Exponential, PStar::Auto, Engine::DenseOracle,
    )
    .unwrap();
    let err = |n: usize| {
        let out = run_pipeline(
            &sys, &market, &pgrid, t, n, Profile::Exponential, PStar::Auto, Engine::Circuit,
        )
        .unwrap();
        l2_diff(&out.u, &reference.u)
    };
    let (e2, e4, e8) = (err(2), err(4), err(8));
    let r1 = e2 / e4;
    let r2 = e4 / e8;
    assert!(r1 > 1.5 && r1 < 3.0, "e2={e2:.3e} e4={e4:.3e} ratio={r1:.2}");
    assert!(r2 > 1.5 && r2 < 3.0, "e4={e4:.3e} e8={e8:.3e} ratio={r2:.2}");
}

#[test]
fn two_asset_engines_agree() {
    // Domain sized so several nodes finish in the money.
    let grid = SpatialGrid::new(-4.0, 4.0, 3).unwrap();
    let params = BsParamsD::new(
        0.03,
        vec![0.3, 0.3],
        vec![1.0, 0.0, 0.0, 1.0],
        vec![1.0, 1.0],
        PayoffKind::CashOrNothing { amount: 1.0 },
    )
    .unwrap();
    let sys = assemble_bs_ddim(&params, &grid, true).unwrap();
    assert!(sys.u0.iter().any(|z| z.norm() > 0.0));
    let pgrid = PGrid::new(2.0, 4).unwrap();
    let market = MarketParams::MultiD(params);
    let t = 1.0;
    let dense = run_pipeline(
        &sys, &market, &pgrid, t, 1, Profile::Smooth, PStar::Auto, Engine::DenseOracle,
    )
    .unwrap();
    let circ = run_pipeline(
        &sys, &market, &pgrid, t, 400, Profile::Smooth, PStar::Auto, Engine::Circuit,
    )
    .unwrap();
    let scale = dense.u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    assert!(l2_diff(&dense.u, &circ.u) / scale < 2e-3);
}

#[test]
fn recovered_imaginary_residue_is_small() {
    let grid = SpatialGrid::new(1e-4f64.ln(), 300f64.ln(), 4).unwrap();
    let params = BsParams1D::new(0.02, 0.3, 30.0, 1.0).unwrap();
    let sys = assemble_bs_1d(&params, &grid, BoundaryKind::Dirichlet, true).unwrap();
    let pgrid = PGrid::new(4.0, 5).unwrap();
    let out = run_pipeline(
        &sys,
        &MarketParams::OneD(params),
        &pgrid,
        1.0,
        1,
        Profile::Exponential,
        PStar::Auto,
        Engine::DenseOracle,
    )
    .unwrap();
    // The unpaired highest-frequency mode and the profile kink leave an
    // imaginary residue at the auxiliary-discretisation level; it must stay
    // well below the physical scale.
    let max_re = out.u.iter().map(|z| z.re.abs()).fold(0.0f64, f64::max);
    let max_im = out.u.iter().map(|z| z.im.abs()).fold(0.0f64, f64::max);
    assert!(max_im < 0.05 * max_re, "im={max_im:.3e} re={max_re:.3e}");
}

#[test]
fn zero_steps_rejected() {
    let grid = SpatialGrid::new(-1.0, 1.0, 2).unwrap();
    let params = BsParams1D::new(0.02, 0.3, 1.0, 1.0).unwrap();
    let sys = assemble_bs_1d(&params, &grid, BoundaryKind::Dirichlet, true).unwrap();
    let pgrid = PGrid::new(1.0, 2).unwrap();
    assert!(matches!(
        run_pipeline(
            &sys,
            &MarketParams::OneD(params),
            &pgrid,
            1.0,
            0,
            Profile::Exponential,
            PStar::Auto,
            Engine::Circuit,
        ),
        Err(schrobs_simulator::SimError::InvalidSteps(0))
    ));
}
