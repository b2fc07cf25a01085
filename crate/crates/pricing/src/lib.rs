//! Analytic and classical-numerical references: the univariate call
//! formula, the bivariate cash-or-nothing formula, and the dilated
//! matrix-exponential solve of the semi-discrete system.

pub mod bivariate;
pub mod classical;

pub use bivariate::bivariate_normal_cdf;
pub use classical::classical_reference;

use schrobs_fdgrid::BsParams1D;

#[derive(Debug, thiserror::Error)]
pub enum PricingError {
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("bivariate pricing needs exactly two assets, got {0}")]
    NotTwoAssets(usize),
    #[error(transparent)]
    Linalg(#[from] schrobs_linalg::LinalgError),
    #[error(transparent)]
    Schro(#[from] schrobs_schro::SchroError),
}

pub type Result<T> = std::result::Result<T, PricingError>;

/// Standard normal CDF through the complementary error function
/// (`N(y) = erfc(−y/√2)/2`).  The rational erfc implementation is accurate
/// to the last bit, far inside the 1e-12 target.
pub fn norm_cdf(y: f64) -> f64 {
    0.5 * libm::erfc(-y / std::f64::consts::SQRT_2)
}

/// European call value at log-price `x` and time-to-expiry `t`:
/// `e^x·N(d₁) − K·e^{−rt}·N(d₂)`.  At `t = 0` the payoff itself.
pub fn bs_call_analytic(x: f64, t: f64, p: &BsParams1D) -> Result<f64> {
    if t < 0.0 {
        return Err(PricingError::NegativeTime(t));
    }
    if t == 0.0 {
        return Ok((x.exp() - p.strike).max(0.0));
    }
    let sq = p.sigma * t.sqrt();
    let d1 = (x - p.strike.ln() + (p.r + 0.5 * p.sigma * p.sigma) * t) / sq;
    let d2 = d1 - sq;
    Ok(x.exp() * norm_cdf(d1) - p.strike * (-p.r * t).exp() * norm_cdf(d2))
}

/// Two-asset cash-or-nothing value `c·e^{−rτ}·B(d_x, d_y, ρ)` at log-prices
/// `(x, y)`; at `τ = 0` the indicator payoff.
pub fn cash_or_nothing_2d_analytic(
    x: f64,
    y: f64,
    tau: f64,
    r: f64,
    sigmas: (f64, f64),
    rho: f64,
    strikes: (f64, f64),
    amount: f64,
) -> Result<f64> {
    if tau < 0.0 {
        return Err(PricingError::NegativeTime(tau));
    }
    if tau == 0.0 {
        let paid = x > strikes.0.ln() && y > strikes.1.ln();
        return Ok(if paid { amount } else { 0.0 });
    }
    let (s1, s2) = sigmas;
    let dx = (x - strikes.0.ln() + (r - 0.5 * s1 * s1) * tau) / (s1 * tau.sqrt());
    let dy = (y - strikes.1.ln() + (r - 0.5 * s2 * s2) * tau) / (s2 * tau.sqrt());
    Ok(amount * (-r * tau).exp() * bivariate_normal_cdf(dx, dy, rho))
}
