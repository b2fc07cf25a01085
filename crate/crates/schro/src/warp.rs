//! Warped states over the auxiliary grid and the centered Fourier
//! transform between node space and frequency space.

use schrobs_linalg::ndarray::{Array1, Array2};
use schrobs_linalg::{C64, CMatrix, CVector};

use crate::dilate::DilatedSystem;
use crate::pgrid::PGrid;
use crate::{Result, SchroError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Repr {
    PSpace,
    EtaSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// `e^{−|p|}`: continuous but with a kink at the origin.
    Exponential,
    /// Cubic patch on `(−1, 0)` glued C¹ to `e^{−|p|}`; lifts the
    /// convergence order of the auxiliary discretisation to two.
    Smooth,
}

/// `e^{−|p|}` or its smoothed variant.
pub fn profile_weight(profile: Profile, p: f64) -> f64 {
    match profile {
        Profile::Exponential => (-p.abs()).exp(),
        Profile::Smooth => {
            if p > -1.0 && p < 0.0 {
                let e1 = (-1.0f64).exp();
                let a3 = -3.0 + 3.0 * e1;
                let a2 = -5.0 + 4.0 * e1;
                ((a3 * p + a2) * p - 1.0) * p + 1.0
            } else {
                (-p.abs()).exp()
            }
        }
    }
}

/// Amplitudes over the `(block ⊗ auxiliary)` basis, unit-normalised, with
/// the physical scale carried separately.  The auxiliary index is least
/// significant: entry `(i, k)` lives at `i·N_p + k`.
#[derive(Debug, Clone)]
pub struct WarpedState {
    pub amplitudes: CVector,
    pub norm_factor: f64,
    pub repr: Repr,
    pub block_dim: usize,
    pub n_p: usize,
}

impl WarpedState {
    pub fn from_physical(v: CVector, repr: Repr, block_dim: usize, n_p: usize) -> Self {
        assert_eq!(v.len(), block_dim << n_p);
        let nf = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let amplitudes = if nf > 0.0 { v.mapv(|z| z / nf) } else { v };
        Self {
            amplitudes,
            norm_factor: if nf > 0.0 { nf } else { 1.0 },
            repr,
            block_dim,
            n_p,
        }
    }

    /// The un-normalised vector `norm_factor · amplitudes`.
    pub fn physical(&self) -> CVector {
        self.amplitudes.mapv(|z| z * self.norm_factor)
    }
}

/// Initial warped state `v(0) = ū(0) ⊗ [w(p_k)]`.
pub fn initial_v(d: &DilatedSystem, g: &PGrid, profile: Profile) -> WarpedState {
    let ubar = d.u0_bar();
    let np = g.n_points();
    let mut v = Array1::from_elem(ubar.len() * np, C64::new(0.0, 0.0));
    for (i, ui) in ubar.iter().enumerate() {
        for k in 0..np {
            v[i * np + k] = ui * profile_weight(profile, g.p_node(k));
        }
    }
    WarpedState::from_physical(v, Repr::PSpace, ubar.len(), g.n_p)
}

/// Unitary matrix of the centered transform: `F[k][j] = e^{i η_k p_j}/√N_p`.
///
/// The frequency-index offset `k − N_p/2` amounts to conjugating a standard
/// DFT by the parity phase `(−1)^index` (plus a sign for `n_p = 1`), so the
/// circuit realisation needs only one extra Z on each side of the usual
/// ladder.  The dense matrix below is the convention's definition; the
/// circuit is tested against it.
pub fn centered_dft(g: &PGrid) -> CMatrix {
    let n = g.n_points();
    let s = 1.0 / (n as f64).sqrt();
    Array2::from_shape_fn((n, n), |(k, j)| {
        C64::from_polar(s, g.eta(k) * g.p_node(j))
    })
}

fn transform(s: &WarpedState, g: &PGrid, f: &CMatrix, out_repr: Repr) -> WarpedState {
    let np = g.n_points();
    let block = s.block_dim;
    let mut out = Array1::from_elem(s.amplitudes.len(), C64::new(0.0, 0.0));
    // Row-block · Fᵀ, one auxiliary fibre per block row.
    for i in 0..block {
        for k in 0..np {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..np {
                acc += f[(k, j)] * s.amplitudes[i * np + j];
            }
            out[i * np + k] = acc;
        }
    }
    WarpedState {
        amplitudes: out,
        norm_factor: s.norm_factor,
        repr: out_repr,
        block_dim: block,
        n_p: s.n_p,
    }
}

/// Node space → frequency space.
pub fn p_to_eta(s: &WarpedState, g: &PGrid) -> Result<WarpedState> {
    if s.repr != Repr::PSpace || s.n_p != g.n_p {
        return Err(SchroError::WrongRepresentation);
    }
    Ok(transform(s, g, &centered_dft(g), Repr::EtaSpace))
}

/// Frequency space → node space.
pub fn eta_to_p(s: &WarpedState, g: &PGrid) -> Result<WarpedState> {
    if s.repr != Repr::EtaSpace || s.n_p != g.n_p {
        return Err(SchroError::WrongRepresentation);
    }
    let f = centered_dft(g);
    let fh = schrobs_linalg::dagger(&f);
    Ok(transform(s, g, &fh, Repr::PSpace))
}
