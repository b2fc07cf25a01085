//! Grid geometry and market parameter types.

use crate::{FdError, Result};

/// Uniform log-price grid on `[left, right]`.
///
/// The interval is split into `2^n_x + 1` cells of width `h`, giving
/// `2^n_x` interior nodes `x_j = left + j·h`, `j = 1..=2^n_x`.  Boundary
/// values live at `x_0 = left` and `x_{2^n_x + 1} = right`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    pub left: f64,
    pub right: f64,
    pub n_x: usize,
}

impl SpatialGrid {
    pub fn new(left: f64, right: f64, n_x: usize) -> Result<Self> {
        if !(left < right) {
            return Err(FdError::InvalidGrid(format!(
                "left ({left}) must be below right ({right})"
            )));
        }
        if n_x == 0 {
            return Err(FdError::InvalidGrid("n_x must be at least 1".into()));
        }
        Ok(Self { left, right, n_x })
    }

    pub fn interior_count(&self) -> usize {
        1 << self.n_x
    }

    pub fn h(&self) -> f64 {
        (self.right - self.left) / (self.interior_count() + 1) as f64
    }

    /// Interior node `x_j`, `j = 1..=interior_count` (also accepts the
    /// boundary indices 0 and interior_count + 1).
    pub fn node(&self, j: usize) -> f64 {
        self.left + j as f64 * self.h()
    }
}

/// One-dimensional market data (log-price convention, absolute rate).
#[derive(Debug, Clone, Copy)]
pub struct BsParams1D {
    pub r: f64,
    pub sigma: f64,
    pub strike: f64,
    pub maturity: f64,
}

impl BsParams1D {
    pub fn new(r: f64, sigma: f64, strike: f64, maturity: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(FdError::InvalidParams(format!("sigma must be positive, got {sigma}")));
        }
        if !(strike > 0.0) {
            return Err(FdError::InvalidParams(format!("strike must be positive, got {strike}")));
        }
        if !(maturity > 0.0) {
            return Err(FdError::InvalidParams(format!(
                "maturity must be positive, got {maturity}"
            )));
        }
        Ok(Self { r, sigma, strike, maturity })
    }

    /// Convection coefficient `r − σ²/2`.
    pub fn convection(&self) -> f64 {
        self.r - 0.5 * self.sigma * self.sigma
    }

    /// Diffusion coefficient `σ²/2`.
    pub fn diffusion(&self) -> f64 {
        0.5 * self.sigma * self.sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PayoffKind {
    Call,
    /// Pays `amount` when every asset finishes above its strike.
    CashOrNothing { amount: f64 },
}

/// Multi-asset market data with a shared per-axis grid.
#[derive(Debug, Clone)]
pub struct BsParamsD {
    pub dim: usize,
    pub r: f64,
    pub sigmas: Vec<f64>,
    /// Correlation matrix, row-major `dim × dim`.
    pub rho: Vec<f64>,
    pub strikes: Vec<f64>,
    pub payoff: PayoffKind,
}

impl BsParamsD {
    pub fn new(
        r: f64,
        sigmas: Vec<f64>,
        rho: Vec<f64>,
        strikes: Vec<f64>,
        payoff: PayoffKind,
    ) -> Result<Self> {
        let d = sigmas.len();
        if d == 0 {
            return Err(FdError::InvalidParams("at least one asset required".into()));
        }
        if strikes.len() != d {
            return Err(FdError::InvalidParams("strikes/sigmas length mismatch".into()));
        }
        if rho.len() != d * d {
            return Err(FdError::InvalidParams("rho must be dim x dim".into()));
        }
        for &s in &sigmas {
            if !(s > 0.0) {
                return Err(FdError::InvalidParams("sigmas must be positive".into()));
            }
        }
        for m in 0..d {
            for n in 0..d {
                let v = rho[m * d + n];
                if !(-1.0..=1.0).contains(&v) {
                    return Err(FdError::InvalidParams("rho entries must lie in [-1, 1]".into()));
                }
                if (v - rho[n * d + m]).abs() > 1e-14 {
                    return Err(FdError::InvalidParams("rho must be symmetric".into()));
                }
            }
            if (rho[m * d + m] - 1.0).abs() > 1e-14 {
                return Err(FdError::InvalidParams("rho must have unit diagonal".into()));
            }
        }
        Ok(Self { dim: d, r, sigmas, rho, strikes, payoff })
    }

    pub fn rho_at(&self, m: usize, n: usize) -> f64 {
        self.rho[m * self.dim + n]
    }
}
