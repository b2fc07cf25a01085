//! Audits the synthesised blocks against the closed-form tallies over a
//! size sweep; any mismatch makes the run fail.

use std::fmt::Write as _;

use schrobs_circuits::{
    build_tilde_v1, build_vbs, count_gates, q_cv1_cnots, q_single, q_v1_cnots, q_vbs_cnots,
    CountMode, VbsConfig,
};
use schrobs_fdgrid::{BsParams1D, SpatialGrid};
use schrobs_schro::PGrid;

use crate::CliError;

pub struct GateCountSpec {
    pub n_x_range: (usize, usize),
    pub n_p_range: (usize, usize),
}

impl Default for GateCountSpec {
    fn default() -> Self {
        Self { n_x_range: (3, 8), n_p_range: (1, 4) }
    }
}

pub fn run(spec: &GateCountSpec) -> Result<(String, bool), CliError> {
    let params = BsParams1D::new(0.02, 0.3, 30.0, 1.0).unwrap();
    let mut csv = String::from(
        "n_x,n_p,q_v1_audit,q_v1_formula,q_cv1_audit,q_cv1_formula,q_single_audit,q_single_formula,q_vbs_audit,q_vbs_formula,ok\n",
    );
    let mut all_ok = true;
    for n_x in spec.n_x_range.0..=spec.n_x_range.1 {
        let grid = SpatialGrid::new(1e-4f64.ln(), 300f64.ln(), n_x)?;
        for n_p in spec.n_p_range.0..=spec.n_p_range.1 {
            let pgrid = PGrid::new(4.0, n_p)?;
            let cfg = VbsConfig::new(&params, &grid, &pgrid, Some(-24.0));
            let tau = 1e-3;
            let tv1 = build_tilde_v1(tau, &cfg)?;
            let v1_audit = count_gates(&tv1, CountMode::CnotBasis).cnot;
            let cv1_audit =
                count_gates(&tv1.controlled_by(n_x + 1), CountMode::CnotBasis).cnot;
            let vbs = build_vbs(tau, &cfg)?;
            let rep = count_gates(&vbs, CountMode::CnotBasis);
            let (nxu, npu) = (n_x as u64, n_p as u64);
            let ok = v1_audit == q_v1_cnots(nxu)
                && cv1_audit == q_cv1_cnots(nxu)
                && rep.single_qubit == q_single(nxu, npu)
                && rep.cnot == q_vbs_cnots(nxu, npu);
            all_ok &= ok;
            writeln!(
                csv,
                "{},{},{},{},{},{},{},{},{},{},{}",
                n_x,
                n_p,
                v1_audit,
                q_v1_cnots(nxu),
                cv1_audit,
                q_cv1_cnots(nxu),
                rep.single_qubit,
                q_single(nxu, npu),
                rep.cnot,
                q_vbs_cnots(nxu, npu),
                ok
            )
            .expect("string write");
        }
    }
    Ok((csv, all_ok))
}
