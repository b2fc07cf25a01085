//! Paired-refinement study: auxiliary and grid spacing refine together,
//! errors against the analytic value for both initial profiles, with
//! successive orders `log₂(e_i/e_{i+1})`.

use std::fmt::Write as _;

use schrobs_fdgrid::assemble_bs_1d;
use schrobs_pricing::bs_call_analytic;
use schrobs_schro::{PGrid, Profile};
use schrobs_simulator::{run_pipeline, MarketParams, PStar};

use crate::config::RunConfig;
use crate::csvfmt::sig17;
use crate::CliError;

pub struct ConvergenceSpec {
    /// Grid register size at the coarsest level.
    pub n_x0: usize,
    /// Auxiliary register size at the coarsest level.
    pub n_p0: usize,
    pub levels: usize,
}

impl Default for ConvergenceSpec {
    fn default() -> Self {
        Self { n_x0: 6, n_p0: 7, levels: 3 }
    }
}

/// Discrete L² error of the recovered solution against the analytic value,
/// cell-weighted: `(Σ_j |w_h(x_j) − w(x_j)|² · h)^{1/2}`.
fn level_error(cfg: &RunConfig, n_x: usize, n_p: usize, profile: Profile) -> Result<f64, CliError> {
    let mut level_cfg = cfg.clone();
    level_cfg.n_x = n_x;
    level_cfg.n_p = n_p;
    let grid = level_cfg.grid()?;
    let params = level_cfg.params_1d()?;
    let pgrid = PGrid::new(cfg.l_p, n_p)?;
    let sys = assemble_bs_1d(&params, &grid, level_cfg.boundary, level_cfg.neglect_left)?;
    let out = run_pipeline(
        &sys,
        &MarketParams::OneD(params),
        &pgrid,
        level_cfg.t,
        level_cfg.n_steps()?,
        profile,
        PStar::Auto,
        level_cfg.engine,
    )?;
    let h = grid.h();
    let mut acc = 0.0;
    for j in 0..sys.dim() {
        let x = grid.node(j + 1);
        let want = bs_call_analytic(x, level_cfg.t, &params)? - x.exp();
        acc += (out.u[j].re - want).powi(2) * h;
    }
    Ok(acc.sqrt())
}

pub fn run(cfg: &RunConfig, spec: &ConvergenceSpec) -> Result<String, CliError> {
    if spec.levels < 3 {
        return Err(CliError::Config("need at least 3 refinement levels".into()));
    }
    let mut rows = Vec::new();
    for lvl in 0..spec.levels {
        let (n_x, n_p) = (spec.n_x0 + lvl, spec.n_p0 + lvl);
        let e_exp = level_error(cfg, n_x, n_p, Profile::Exponential)?;
        let e_smooth = level_error(cfg, n_x, n_p, Profile::Smooth)?;
        let grid = SpatialGridView { n_x, cfg };
        rows.push((n_x, n_p, grid.dx()?, dp(cfg, n_p)?, e_exp, e_smooth));
    }
    let mut csv =
        String::from("level,n_x,n_p,dx,dp,err_exponential,order_exponential,err_smooth,order_smooth\n");
    for (lvl, row) in rows.iter().enumerate() {
        let (n_x, n_p, dx, dpv, e_exp, e_smooth) = *row;
        let (o_exp, o_smooth) = if lvl == 0 {
            (String::new(), String::new())
        } else {
            let prev = rows[lvl - 1];
            (
                sig17((prev.4 / e_exp).log2()),
                sig17((prev.5 / e_smooth).log2()),
            )
        };
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            lvl,
            n_x,
            n_p,
            sig17(dx),
            sig17(dpv),
            sig17(e_exp),
            o_exp,
            sig17(e_smooth),
            o_smooth
        )
        .expect("string write");
    }
    Ok(csv)
}

struct SpatialGridView<'a> {
    n_x: usize,
    cfg: &'a RunConfig,
}

impl SpatialGridView<'_> {
    fn dx(&self) -> Result<f64, CliError> {
        let mut c = self.cfg.clone();
        c.n_x = self.n_x;
        Ok(c.grid()?.h())
    }
}

fn dp(cfg: &RunConfig, n_p: usize) -> Result<f64, CliError> {
    Ok(PGrid::new(cfg.l_p, n_p)?.delta_p())
}
