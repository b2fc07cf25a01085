//! The auxiliary periodic grid.

use crate::{Result, SchroError};

/// Uniform grid on `[−π·l_p, π·l_p)` with `2^n_p` nodes and the matching
/// frequency ladder `η_k = (k − 2^{n_p−1})/l_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PGrid {
    pub l_p: f64,
    pub n_p: usize,
}

impl PGrid {
    pub fn new(l_p: f64, n_p: usize) -> Result<Self> {
        if !(l_p > 0.0) {
            return Err(SchroError::InvalidPGrid(format!("l_p must be positive, got {l_p}")));
        }
        if n_p == 0 {
            return Err(SchroError::InvalidPGrid("n_p must be at least 1".into()));
        }
        Ok(Self { l_p, n_p })
    }

    pub fn n_points(&self) -> usize {
        1 << self.n_p
    }

    pub fn half_width(&self) -> f64 {
        std::f64::consts::PI * self.l_p
    }

    pub fn delta_p(&self) -> f64 {
        2.0 * self.half_width() / self.n_points() as f64
    }

    pub fn p_node(&self, k: usize) -> f64 {
        -self.half_width() + k as f64 * self.delta_p()
    }

    pub fn eta(&self, k: usize) -> f64 {
        (k as f64 - (self.n_points() / 2) as f64) / self.l_p
    }

    pub fn etas(&self) -> Vec<f64> {
        (0..self.n_points()).map(|k| self.eta(k)).collect()
    }
}
