//! The Hermitian generator of the warped dynamics and its exact evolution.
//!
//! In frequency space the dynamics decouple over the auxiliary index:
//! `H = c1 ⊗ D_η + c2 ⊗ I` acts on slice `k` as `η_k·c1 + c2`, so the
//! evolution is computed slice by slice and the full dense matrix is only
//! materialised when it fits the oracle budget.

use schrobs_linalg::ndarray::{Array1, Array2};
use schrobs_linalg::{expmv, hermitian_eigh, identity, kron, C64, CMatrix, CVector, Operator};

use schrobs_fdgrid::{mpo_term_minus, mpo_term_plus};

use crate::dilate::DilatedSystem;
use crate::pgrid::PGrid;
use crate::warp::{Repr, WarpedState};
use crate::{Result, SchroError};

/// Largest generator materialised eagerly as a dense matrix.
const EAGER_DENSE_DIM: usize = 1 << 12;

#[derive(Debug, Clone)]
pub struct HamiltonianBS {
    pub c1: Operator,
    pub c2: Operator,
    /// `γ₁ = 1/(h² l_p)`.
    pub gamma1: f64,
    /// `γ₂ = 1/(2h)`.
    pub gamma2: f64,
    /// Per-axis ladder sum `γ₁·(Σ_j (s_j⁻ + s_j⁺) − 2I)`.
    pub h1: CMatrix,
    /// Per-axis ladder difference `−i·γ₂·Σ_j (s_j⁻ − s_j⁺)`.
    pub h2: CMatrix,
    pub pgrid: PGrid,
    /// `c1 ⊗ D_η + c2 ⊗ I`, present only inside the oracle budget.
    pub full: Option<CMatrix>,
}

impl HamiltonianBS {
    pub fn dim(&self) -> usize {
        self.c1.dim() * self.pgrid.n_points()
    }
}

pub fn assemble_hbs(d: &DilatedSystem, g: &PGrid) -> Result<HamiltonianBS> {
    let h = d.sys.grid.h();
    let gamma1 = 1.0 / (h * h * g.l_p);
    let gamma2 = 1.0 / (2.0 * h);
    let n_x = d.sys.grid.n_x;
    let nx_dim = 1usize << n_x;
    let mut ladder_sum = Array2::from_elem((nx_dim, nx_dim), C64::new(0.0, 0.0));
    let mut ladder_diff = ladder_sum.clone();
    for j in 1..=n_x {
        let sm = mpo_term_minus(j, n_x)?;
        let sp = mpo_term_plus(j, n_x)?;
        ladder_sum = &ladder_sum + &(&sm + &sp);
        ladder_diff = &ladder_diff + &(&sm - &sp);
    }
    let h1 = (&ladder_sum - &identity(nx_dim).mapv(|z| z * 2.0)).mapv(|z| z * gamma1);
    let h2 = ladder_diff.mapv(|z| z * C64::new(0.0, -gamma2));

    let np = g.n_points();
    let dim = d.dim() * np;
    // The dense form is for verification-sized instances; beyond this the
    // slice evolution never touches it (a 2^14 dense square alone would
    // occupy gigabytes, well past what the oracle path should hold).
    let full = if dim <= EAGER_DENSE_DIM {
        let d_eta = Array2::from_shape_fn((np, np), |(i, j)| {
            if i == j {
                C64::new(g.eta(i), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let c1 = d.c1.to_dense()?;
        let c2 = d.c2.to_dense()?;
        Some(&kron(&c1, &d_eta)? + &kron(&c2, &identity(np))?)
    } else {
        None
    };

    Ok(HamiltonianBS {
        c1: d.c1.clone(),
        c2: d.c2.clone(),
        gamma1,
        gamma2,
        h1,
        h2,
        pgrid: *g,
        full,
    })
}

/// `exp(i·t·H)` applied to a frequency-space state, slice by slice.
pub fn evolve_exact(h: &HamiltonianBS, v0: &WarpedState, t: f64) -> Result<WarpedState> {
    if v0.repr != Repr::EtaSpace || v0.n_p != h.pgrid.n_p {
        return Err(SchroError::WrongRepresentation);
    }
    let block = h.c1.dim();
    schrobs_linalg::budget_guard(block)?;
    let np = h.pgrid.n_points();
    assert_eq!(v0.amplitudes.len(), block * np);

    let mut out = Array1::from_elem(block * np, C64::new(0.0, 0.0));
    let gather = |amps: &CVector, k: usize| -> CVector {
        Array1::from_shape_fn(block, |i| amps[i * np + k])
    };
    let scatter = |w: &CVector, k: usize, out: &mut Array1<C64>| {
        for i in 0..block {
            out[i * np + k] = w[i];
        }
    };

    let dense_pair = match (h.c1.as_dense(), h.c2.as_dense()) {
        (Some(a), Some(b)) if block <= 1024 => Some((a, b)),
        _ => None,
    };

    if let Some((c1, c2)) = dense_pair {
        // Slices k and N−k share generators up to complex conjugation when
        // c1 is real and c2 purely imaginary (all our systems), which halves
        // the eigensolver work.
        let real_structured = c1.iter().all(|z| z.im == 0.0) && c2.iter().all(|z| z.re == 0.0);
        let mut hk = Array2::from_elem((block, block), C64::new(0.0, 0.0));
        let mut done = vec![false; np];
        for k in 0..np {
            if done[k] {
                continue;
            }
            let eta = h.pgrid.eta(k);
            for i in 0..block {
                for j in 0..block {
                    hk[(i, j)] = c1[(i, j)] * eta + c2[(i, j)];
                }
            }
            let (vals, vecs) = hermitian_eigh(&hk)?;
            let phases: Vec<C64> = vals.iter().map(|&l| C64::from_polar(1.0, t * l)).collect();
            let vh = schrobs_linalg::dagger(&vecs);
            let apply_u = |v: &CVector| -> CVector {
                let mut y = vh.dot(v);
                for (yi, ph) in y.iter_mut().zip(&phases) {
                    *yi *= *ph;
                }
                vecs.dot(&y)
            };
            let w = apply_u(&gather(&v0.amplitudes, k));
            scatter(&w, k, &mut out);
            done[k] = true;
            if real_structured && k >= 1 {
                let kp = np - k;
                if kp < np && !done[kp] {
                    let v_conj = gather(&v0.amplitudes, kp).mapv(|z| z.conj());
                    let w_pair = apply_u(&v_conj).mapv(|z| z.conj());
                    scatter(&w_pair, kp, &mut out);
                    done[kp] = true;
                }
            }
        }
    } else {
        let nb1 = h.c1.one_norm_bound();
        let nb2 = h.c2.one_norm_bound();
        for k in 0..np {
            let eta = h.pgrid.eta(k);
            let v = gather(&v0.amplitudes, k);
            let apply = |x: &CVector| -> CVector {
                let mut y = h.c1.apply(x);
                y.mapv_inplace(|z| z * eta);
                y = &y + &h.c2.apply(x);
                y.mapv(|z| z * C64::new(0.0, t))
            };
            let w = expmv(apply, t.abs() * (eta.abs() * nb1 + nb2), &v, 4.0);
            scatter(&w, k, &mut out);
        }
    }

    Ok(WarpedState {
        amplitudes: out,
        norm_factor: v0.norm_factor,
        repr: Repr::EtaSpace,
        block_dim: v0.block_dim,
        n_p: v0.n_p,
    })
}
