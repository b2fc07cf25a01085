//! Bivariate standard-normal CDF by deterministic tensor-product
//! Gauss–Legendre quadrature.
//!
//! The quadrant `(−∞,a]×(−∞,b]` is clipped to `[−9, 9]` on each axis (the
//! discarded mass is below 1e-18) and covered by composite panels of unit
//! width, so the rule resolves the density wherever the edges sit.  A
//! power-series route in `ρ` cross-checks it in the tests.

use crate::norm_cdf;

const FAR: f64 = 9.0;
const NODES: usize = 16;

/// Nodes and weights of the `NODES`-point Gauss–Legendre rule on [-1, 1],
/// computed to machine precision by Newton iteration on the Legendre
/// polynomial (deterministic).
fn gauss_legendre() -> ([f64; NODES], [f64; NODES]) {
    let mut xs = [0.0; NODES];
    let mut ws = [0.0; NODES];
    let n = NODES;
    for i in 0..(n + 1) / 2 {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Recurrence for P_n(x) and P'_n(x).
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        xs[i] = -x;
        xs[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

fn half_line_rule(edge: f64) -> Vec<(f64, f64)> {
    // Quadrature points (s, weight) for ∫_{−FAR}^{min(edge, FAR)} f(s) ds,
    // composite over unit-width panels.
    let (xs, ws) = gauss_legendre();
    let hi_end = edge.min(FAR);
    let panels = ((hi_end + FAR).ceil() as usize).max(1);
    let width = (hi_end + FAR) / panels as f64;
    let mut out = Vec::with_capacity(panels * NODES);
    for p in 0..panels {
        let lo = -FAR + p as f64 * width;
        let (mid, half) = (lo + 0.5 * width, 0.5 * width);
        for i in 0..NODES {
            out.push((mid + half * xs[i], ws[i] * half));
        }
    }
    out
}

/// `P(X ≤ a, Y ≤ b)` for standard bivariate normal with correlation `rho`.
pub fn bivariate_normal_cdf(a: f64, b: f64, rho: f64) -> f64 {
    assert!((-1.0..=1.0).contains(&rho), "correlation out of range");
    if rho == 1.0 {
        return norm_cdf(a.min(b));
    }
    if rho == -1.0 {
        return (norm_cdf(a) + norm_cdf(b) - 1.0).max(0.0);
    }
    // Far-tail short-circuits keep the quadrature window relevant.
    if a < -FAR || b < -FAR {
        return 0.0;
    }
    let q = 1.0 - rho * rho;
    let norm = 1.0 / (2.0 * std::f64::consts::PI * q.sqrt());
    let ra = half_line_rule(a);
    let rb = half_line_rule(b);
    let mut total = 0.0;
    for &(s1, w1) in &ra {
        let mut inner = 0.0;
        for &(s2, w2) in &rb {
            let e = (s1 * s1 - 2.0 * rho * s1 * s2 + s2 * s2) / (2.0 * q);
            inner += w2 * (-e).exp();
        }
        total += w1 * inner;
    }
    total * norm
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: `B = N(a)N(b) + φ(a)φ(b) Σ_n ρ^{n+1}/(n+1)!·He_n(a)He_n(b)`
    /// with probabilists' Hermite polynomials.
    fn series_route(a: f64, b: f64, rho: f64) -> f64 {
        let phi = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut sum = 0.0;
        let (mut ha0, mut ha1) = (1.0f64, a);
        let (mut hb0, mut hb1) = (1.0f64, b);
        let mut rho_pow = rho;
        let mut fact = 1.0f64;
        let mut small_streak = 0;
        for n in 0..200usize {
            let (ha, hb) = if n == 0 { (ha0, hb0) } else { (ha1, hb1) };
            fact *= (n + 1) as f64;
            let term = rho_pow / fact * ha * hb;
            sum += term;
            // Odd-index terms vanish at the origin, so require a streak.
            if term.abs() < 1e-15 {
                small_streak += 1;
                if small_streak > 3 && n > 8 {
                    break;
                }
            } else {
                small_streak = 0;
            }
            // He_{n+1}(x) = x·He_n − n·He_{n−1}
            if n > 0 {
                let ha2 = a * ha1 - n as f64 * ha0;
                let hb2 = b * hb1 - n as f64 * hb0;
                ha0 = ha1;
                ha1 = ha2;
                hb0 = hb1;
                hb1 = hb2;
            }
            rho_pow *= rho;
        }
        norm_cdf(a) * norm_cdf(b) + phi(a) * phi(b) * sum
    }

    #[test]
    fn orthant_probability_matches_arcsine_law() {
        let want = 0.25 + (0.6f64).asin() / (2.0 * std::f64::consts::PI);
        let got = bivariate_normal_cdf(0.0, 0.0, 0.6);
        assert!((got - want).abs() < 1e-9, "got={got} want={want}");
        assert!((want - 0.35241638234956673).abs() < 1e-15);
    }

    #[test]
    fn pinned_reference_values() {
        // 30-digit quadrature references.
        assert!((bivariate_normal_cdf(1.0, 0.5, 0.6) - 0.64182899006387133).abs() < 1e-9);
        assert!((bivariate_normal_cdf(-0.3, 0.8, -0.45) - 0.24785966450240882).abs() < 1e-9);
    }

    #[test]
    fn independence_factorises() {
        let got = bivariate_normal_cdf(0.5, -1.2, 0.0);
        let want = norm_cdf(0.5) * norm_cdf(-1.2);
        assert!((got - want).abs() < 1e-10);
        assert!((want - 0.079566357389491412).abs() < 1e-15);
    }

    #[test]
    fn marginalisation_at_large_first_argument() {
        for &b in &[-1.0, 0.3, 2.0] {
            let got = bivariate_normal_cdf(8.0, b, 0.6);
            assert!((got - norm_cdf(b)).abs() < 1e-9, "b={b}");
        }
    }

    #[test]
    fn symmetric_in_arguments_and_monotone() {
        let mut prev = 0.0;
        for i in 0..20 {
            let a = -2.0 + 0.2 * i as f64;
            let v = bivariate_normal_cdf(a, 0.7, 0.35);
            let vt = bivariate_normal_cdf(0.7, a, 0.35);
            assert!((v - vt).abs() < 1e-11);
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn agrees_with_series_route() {
        for &rho in &[-0.7, -0.3, 0.0, 0.3, 0.6, 0.8] {
            for &a in &[-1.5, -0.4, 0.0, 0.9, 2.1] {
                for &b in &[-2.0, -0.2, 0.6, 1.8] {
                    let q = bivariate_normal_cdf(a, b, rho);
                    let s = series_route(a, b, rho);
                    assert!(
                        (q - s).abs() < 5e-9,
                        "a={a} b={b} rho={rho}: quad={q} series={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn perfect_correlation_edges() {
        assert!((bivariate_normal_cdf(0.4, 1.1, 1.0) - norm_cdf(0.4)).abs() < 1e-14);
        let v = bivariate_normal_cdf(0.4, 1.1, -1.0);
        assert!((v - (norm_cdf(0.4) + norm_cdf(1.1) - 1.0)).abs() < 1e-14);
    }
}
