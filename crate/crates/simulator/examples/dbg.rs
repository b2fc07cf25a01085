use schrobs_fdgrid::{assemble_bs_1d, BoundaryKind, BsParams1D, SpatialGrid};
use schrobs_pricing::bs_call_analytic;
use schrobs_schro::{assemble_hbs, dilate, eta_to_p, initial_v, p_to_eta, recover_u, PGrid, Profile};

fn aligned_grid(nx: usize, strike: f64, x_min0: f64, x_max0: f64) -> SpatialGrid {
    // Shift the window (< h/2) so the strike's log sits on a grid node.
    let n = (1usize << nx) + 1;
    let h = (x_max0 - x_min0) / n as f64;
    let k = strike.ln();
    let j = ((k - x_min0) / h).round();
    let x_min = k - j * h;
    SpatialGrid::new(x_min, x_min + (x_max0 - x_min0), nx).unwrap()
}

fn main() {
    let params = BsParams1D::new(0.02, 0.3, 30.0, 1.0).unwrap();
    let t = 0.1;
    let te = [0.6698f64, 0.3271, 0.1776];
    let ts = [0.2925f64, 0.0754, 0.0206];
    for pstar in [0.19634954084936207f64, 0.39269908169872414, 0.5890486225480862, 0.7853981633974483] {
        let mut ee = [0.0f64; 3];
        let mut es = [0.0f64; 3];
        for (lvl, (nx, np)) in [(6usize, 7usize), (7, 8), (8, 9)].into_iter().enumerate() {
            let grid = aligned_grid(nx, params.strike, 1e-4f64.ln(), 300f64.ln());
            let pgrid = PGrid::new(4.0, np).unwrap();
            let sys = assemble_bs_1d(&params, &grid, BoundaryKind::Mixed, true).unwrap();
            let d = dilate(sys.clone()).unwrap();
            let h = assemble_hbs(&d, &pgrid).unwrap();
            for (which, profile) in [(0usize, Profile::Exponential), (1, Profile::Smooth)] {
                let v0 = initial_v(&d, &pgrid, profile);
                let vt = eta_to_p(&schrobs_schro::evolve_exact(&h, &p_to_eta(&v0, &pgrid).unwrap(), t).unwrap(), &pgrid).unwrap();
                let u = recover_u(&vt, &pgrid, pstar, &d, t).unwrap();
                let e: f64 = (0..sys.dim()).map(|j| {
                    let x = grid.node(j + 1);
                    let want = bs_call_analytic(x, t, &params).unwrap() - x.exp();
                    (u[j].re - want).powi(2)
                }).sum::<f64>().sqrt();
                if which == 0 { ee[lvl] = e; } else { es[lvl] = e; }
            }
        }
        let in2 = |e: &[f64; 3], t: &[f64; 3]| (0..3).all(|i| e[i] >= t[i] / 2.0 && e[i] <= t[i] * 2.0);
        let orders = |e: &[f64; 3]| [(e[0] / e[1]).log2(), (e[1] / e[2]).log2()];
        let (oe, os) = (orders(&ee), orders(&es));
        println!("p*={pstar:.3}: exp=({:.3},{:.3},{:.3}) o=({:.2},{:.2}) in2={} | smooth=({:.3},{:.4},{:.4}) o=({:.2},{:.2}) in2={}",
            ee[0], ee[1], ee[2], oe[0], oe[1], in2(&ee, &te), es[0], es[1], es[2], os[0], os[1], in2(&es, &ts));
    }
}
