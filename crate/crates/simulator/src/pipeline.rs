//! The end-to-end solve: dilation, state preparation, the centered
//! transform, repeated per-step evolution, inverse transform, recovery.
//!
//! Two engines share every surrounding stage.  `DenseOracle` evolves the
//! frequency-space state exactly; `Circuit` executes the synthesised gate
//! sequence step by step on the statevector.

use schrobs_linalg::ndarray::Array1;
use schrobs_linalg::{C64, CVector};

use schrobs_circuits::{build_iqft, build_qft, build_vbs, build_vbs_ddim, VbsConfig, VbsConfigD};
use schrobs_fdgrid::{BsParams1D, BsParamsD, OdeSystem};
use schrobs_schro::{
    assemble_hbs, dilate, eta_to_p, initial_v, p_to_eta, recover_u, recovery_threshold, PGrid,
    Profile, Repr, WarpedState,
};

use crate::state::StateVector;
use crate::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Circuit,
    DenseOracle,
}

#[derive(Debug, Clone, Copy)]
pub enum PStar {
    /// Smallest node one cell above the recovery threshold.
    Auto,
    At(f64),
}

/// Market scalars the circuit builders need; the dense engine ignores them.
#[derive(Debug, Clone)]
pub enum MarketParams {
    OneD(BsParams1D),
    MultiD(BsParamsD),
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub u: CVector,
    pub p_star: f64,
}

fn auto_p_star(g: &PGrid, threshold: f64) -> Result<f64> {
    let dp = g.delta_p();
    let target = threshold + dp;
    for k in 0..g.n_points() {
        let p = g.p_node(k);
        if p >= target - 1e-12 && p > threshold {
            return Ok(p);
        }
    }
    Err(SimError::NoValidRecoveryNode { threshold })
}

pub fn run_pipeline(
    sys: &OdeSystem,
    market: &MarketParams,
    pgrid: &PGrid,
    t: f64,
    n_steps: usize,
    profile: Profile,
    p_star: PStar,
    engine: Engine,
) -> Result<PipelineOutput> {
    if n_steps == 0 {
        return Err(SimError::InvalidSteps(0));
    }
    let d = dilate(sys.clone())?;
    let v0 = initial_v(&d, pgrid, profile);
    let p_star = match p_star {
        PStar::At(p) => p,
        PStar::Auto => auto_p_star(pgrid, recovery_threshold(&d, t))?,
    };

    let v_t = match engine {
        Engine::DenseOracle => {
            let h = assemble_hbs(&d, pgrid)?;
            let hat0 = p_to_eta(&v0, pgrid)?;
            let hat_t = schrobs_schro::evolve_exact(&h, &hat0, t)?;
            eta_to_p(&hat_t, pgrid)?
        }
        Engine::Circuit => {
            let tau = t / n_steps as f64;
            let np = pgrid.n_points();
            let (width, vbs, state_block) = match market {
                MarketParams::OneD(params) => {
                    let nx_dim = 1usize << sys.grid.n_x;
                    if sys.dim() != nx_dim || sys.dims != 1 {
                        return Err(SimError::ShapeMismatch {
                            expected: nx_dim,
                            got: sys.dim(),
                        });
                    }
                    let beta = if d.dilated { Some(d.b_entry) } else { None };
                    let cfg = VbsConfig::new(params, &sys.grid, pgrid, beta);
                    let width = pgrid.n_p + sys.grid.n_x + 1;
                    (width, build_vbs(tau, &cfg)?, 2 * nx_dim)
                }
                MarketParams::MultiD(params) => {
                    let nx_dim = 1usize << sys.grid.n_x;
                    let total = nx_dim.pow(sys.dims as u32);
                    if sys.dim() != total || d.dilated {
                        return Err(SimError::ShapeMismatch {
                            expected: total,
                            got: sys.dim(),
                        });
                    }
                    let cfg = VbsConfigD::new(params, &sys.grid, pgrid)?;
                    let width = pgrid.n_p + sys.dims * sys.grid.n_x;
                    (width, build_vbs_ddim(tau, &cfg)?, total)
                }
            };
            // Classical state preparation: amplitudes written directly; the
            // undilated one-dimensional case embeds into the lower branch.
            let mut amps = vec![C64::new(0.0, 0.0); state_block * np];
            amps[..v0.amplitudes.len()]
                .copy_from_slice(v0.amplitudes.as_slice().expect("contiguous"));
            let mut state = StateVector {
                width,
                amps,
                norm_factor: v0.norm_factor,
            };
            state.apply_gates(&build_qft(pgrid.n_p)?.gates);
            for _ in 0..n_steps {
                state.apply_gates(&vbs.gates);
            }
            state.apply_gates(&build_iqft(pgrid.n_p)?.gates);
            let kept = v0.amplitudes.len();
            WarpedState {
                amplitudes: Array1::from_iter(state.amps[..kept].iter().copied()),
                norm_factor: state.norm_factor,
                repr: Repr::PSpace,
                block_dim: v0.block_dim,
                n_p: pgrid.n_p,
            }
        }
    };

    let u = recover_u(&v_t, pgrid, p_star, &d, t)?;
    Ok(PipelineOutput { u, p_star })
}
