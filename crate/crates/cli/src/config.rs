//! Run configuration: defaults per problem, optional `key=value` file,
//! command-line flags override both.

use std::collections::BTreeMap;
use std::path::Path;

use schrobs_fdgrid::{BoundaryKind, BsParams1D, BsParamsD, PayoffKind, SpatialGrid};
use schrobs_schro::{PGrid, Profile};
use schrobs_simulator::{Engine, PStar};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Bs1d,
    Bs2d,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problem: ProblemKind,
    pub n_x: usize,
    pub n_p: usize,
    pub l_p: f64,
    pub t: f64,
    pub dt: f64,
    pub r: f64,
    pub sigma: f64,
    pub sigma2: f64,
    pub strike: f64,
    pub strike2: f64,
    pub rho: f64,
    pub cash: f64,
    pub s_min: f64,
    pub s_max: f64,
    pub profile: Profile,
    pub p_star: PStar,
    pub engine: Engine,
    pub boundary: BoundaryKind,
    pub neglect_left: bool,
}

impl RunConfig {
    /// Market defaults of the one-dimensional experiment: `T = 1`,
    /// `r = 0.02`, `σ = 0.3`, `K = 30`, prices in `[1e-4, 10K]`, auxiliary
    /// scale 4.
    pub fn default_1d() -> Self {
        Self {
            problem: ProblemKind::Bs1d,
            n_x: 6,
            n_p: 6,
            l_p: 4.0,
            t: 1.0,
            dt: 1e-3,
            r: 0.02,
            sigma: 0.3,
            sigma2: 0.3,
            strike: 30.0,
            strike2: 30.0,
            rho: 0.0,
            cash: 1.0,
            s_min: 1e-4,
            s_max: 300.0,
            profile: Profile::Exponential,
            p_star: PStar::Auto,
            engine: Engine::Circuit,
            boundary: BoundaryKind::Dirichlet,
            neglect_left: true,
        }
    }

    /// Two-asset cash-or-nothing defaults at desk scale: `r = 0.03`,
    /// `σ = 0.3` both, `ρ = 0.6`, `K = 50` both, prices in `[1e-6, 4K]`,
    /// auxiliary scale 15, dense engine.
    pub fn default_2d() -> Self {
        Self {
            problem: ProblemKind::Bs2d,
            n_x: 6,
            n_p: 6,
            l_p: 15.0,
            t: 1.0,
            dt: 1e-3,
            r: 0.03,
            sigma: 0.3,
            sigma2: 0.3,
            strike: 50.0,
            strike2: 50.0,
            rho: 0.6,
            cash: 1.0,
            s_min: 1e-6,
            s_max: 200.0,
            profile: Profile::Smooth,
            p_star: PStar::Auto,
            engine: Engine::DenseOracle,
            boundary: BoundaryKind::Dirichlet,
            neglect_left: true,
        }
    }

    pub fn grid(&self) -> Result<SpatialGrid, CliError> {
        Ok(SpatialGrid::new(self.s_min.ln(), self.s_max.ln(), self.n_x)?)
    }

    pub fn pgrid(&self) -> Result<PGrid, CliError> {
        Ok(PGrid::new(self.l_p, self.n_p)?)
    }

    pub fn params_1d(&self) -> Result<BsParams1D, CliError> {
        Ok(BsParams1D::new(self.r, self.sigma, self.strike, self.t)?)
    }

    pub fn params_2d(&self) -> Result<BsParamsD, CliError> {
        Ok(BsParamsD::new(
            self.r,
            vec![self.sigma, self.sigma2],
            vec![1.0, self.rho, self.rho, 1.0],
            vec![self.strike, self.strike2],
            PayoffKind::CashOrNothing { amount: self.cash },
        )?)
    }

    /// Number of evolution steps; `dt` must divide `t` to 1e-12 relative.
    pub fn n_steps(&self) -> Result<usize, CliError> {
        if !(self.dt > 0.0) || !(self.t > 0.0) {
            return Err(CliError::Config("t and dt must be positive".into()));
        }
        let n = (self.t / self.dt).round();
        if n < 1.0 || (n * self.dt - self.t).abs() > 1e-12 * self.t.max(1.0) {
            return Err(CliError::Config(format!(
                "dt = {} does not divide t = {}",
                self.dt, self.t
            )));
        }
        Ok(n as usize)
    }

    pub fn apply_entry(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |k: &str, v: &str| CliError::Config(format!("bad value `{v}` for key `{k}`"));
        let fv = |v: &str| v.parse::<f64>().map_err(|_| bad(key, value));
        let uv = |v: &str| v.parse::<usize>().map_err(|_| bad(key, value));
        match key {
            "problem" => {
                self.problem = match value {
                    "bs1d" => ProblemKind::Bs1d,
                    "bs2d" => ProblemKind::Bs2d,
                    _ => return Err(bad(key, value)),
                }
            }
            "nx" => self.n_x = uv(value)?,
            "np" => self.n_p = uv(value)?,
            "lp" => self.l_p = fv(value)?,
            "t" => self.t = fv(value)?,
            "dt" => self.dt = fv(value)?,
            "r" => self.r = fv(value)?,
            "sigma" => self.sigma = fv(value)?,
            "sigma2" => self.sigma2 = fv(value)?,
            "strike" => self.strike = fv(value)?,
            "strike2" => self.strike2 = fv(value)?,
            "rho" => self.rho = fv(value)?,
            "cash" => self.cash = fv(value)?,
            "smin" => self.s_min = fv(value)?,
            "smax" => self.s_max = fv(value)?,
            "profile" => {
                self.profile = match value {
                    "exponential" => Profile::Exponential,
                    "smooth" => Profile::Smooth,
                    _ => return Err(bad(key, value)),
                }
            }
            "pstar" => {
                self.p_star = if value == "auto" {
                    PStar::Auto
                } else {
                    PStar::At(fv(value)?)
                }
            }
            "engine" => {
                self.engine = match value {
                    "circuit" => Engine::Circuit,
                    "dense-oracle" => Engine::DenseOracle,
                    _ => return Err(bad(key, value)),
                }
            }
            "boundary" => {
                self.boundary = match value {
                    "dirichlet" => BoundaryKind::Dirichlet,
                    "mixed" => BoundaryKind::Mixed,
                    _ => return Err(bad(key, value)),
                }
            }
            "neglect-left" => {
                self.neglect_left = match value {
                    "true" | "1" => true,
                    "false" | "0" => false,
                    _ => return Err(bad(key, value)),
                }
            }
            _ => return Err(CliError::Config(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        for (entries, _) in parse_config_text(&text)?.iter().zip(0..) {
            self.apply_entry(&entries.0, &entries.1)?;
        }
        Ok(())
    }
}

/// One `key=value` per line, `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("line {}: expected key=value", lineno + 1))
        })?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Deduplicated map form, later entries winning.
pub fn config_map(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    Ok(parse_config_text(text)?.into_iter().collect())
}
