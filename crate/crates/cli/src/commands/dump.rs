//! Writes a circuit in the line dump format, verifying the round trip
//! through the parser first.

use schrobs_circuits::{
    build_iqft, build_qft, build_tilde_v1, build_tilde_v2, build_vbs, Circuit, VbsConfig,
};
use schrobs_schro::dilate;

use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpTarget {
    Vbs,
    TildeV1,
    TildeV2,
    Qft,
    Iqft,
}

pub fn run(cfg: &RunConfig, target: DumpTarget) -> Result<String, CliError> {
    let grid = cfg.grid()?;
    let params = cfg.params_1d()?;
    let pgrid = cfg.pgrid()?;
    let sys = schrobs_fdgrid::assemble_bs_1d(&params, &grid, cfg.boundary, cfg.neglect_left)?;
    let d = dilate(sys)?;
    let beta = if d.dilated { Some(d.b_entry) } else { None };
    let vcfg = VbsConfig::new(&params, &grid, &pgrid, beta);
    let tau = cfg.dt;
    let circuit = match target {
        DumpTarget::Vbs => build_vbs(tau, &vcfg)?,
        DumpTarget::TildeV1 => build_tilde_v1(tau, &vcfg)?,
        DumpTarget::TildeV2 => build_tilde_v2(tau, &vcfg)?,
        DumpTarget::Qft => build_qft(cfg.n_p)?,
        DumpTarget::Iqft => build_iqft(cfg.n_p)?,
    };
    let text = circuit.dump();
    let back = Circuit::parse(&text)?;
    if back != circuit {
        return Err(CliError::Config("dump round trip failed".into()));
    }
    Ok(text)
}
