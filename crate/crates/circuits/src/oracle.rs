//! Matrix-level verification oracles for the circuit builders.
//!
//! Everything here is assembled from `matexp` and Kronecker products of the
//! ladder terms — never from gates — so a builder and its oracle form two
//! independent routes to the same unitary.

use schrobs_linalg::ndarray::Array2;
use schrobs_linalg::{identity, kron, matexp, C64, CMatrix};

use schrobs_fdgrid::{mpo_term_minus, mpo_term_plus};

use crate::builders::{VbsConfig, VbsConfigD};
use crate::Result;

fn pauli_x() -> CMatrix {
    let mut m = Array2::from_elem((2, 2), C64::new(0.0, 0.0));
    m[(0, 1)] = C64::new(1.0, 0.0);
    m[(1, 0)] = C64::new(1.0, 0.0);
    m
}

fn pauli_y() -> CMatrix {
    let mut m = Array2::from_elem((2, 2), C64::new(0.0, 0.0));
    m[(0, 1)] = C64::new(0.0, -1.0);
    m[(1, 0)] = C64::new(0.0, 1.0);
    m
}

fn e_proj(bit: usize) -> CMatrix {
    let mut m = Array2::from_elem((2, 2), C64::new(0.0, 0.0));
    m[(bit, bit)] = C64::new(1.0, 0.0);
    m
}

fn beta_diag(beta: f64, n_x: usize) -> CMatrix {
    let dim = 1usize << n_x;
    let mut m = Array2::from_elem((dim, dim), C64::new(0.0, 0.0));
    m[(dim - 1, dim - 1)] = C64::new(beta, 0.0);
    m
}

/// `e^{iλ} s_j⁻ + e^{−iλ} s_j⁺`.
pub fn ladder_coupling(j: usize, lambda: f64, n_x: usize) -> Result<CMatrix> {
    let sm = mpo_term_minus(j, n_x)?;
    let sp = mpo_term_plus(j, n_x)?;
    Ok(&sm.mapv(|z| z * C64::from_polar(1.0, lambda))
        + &sp.mapv(|z| z * C64::from_polar(1.0, -lambda)))
}

/// `exp(iγτ(e^{iλ}s_j⁻ + e^{−iλ}s_j⁺))`.
pub fn w_mat(j: usize, gamma_tau: f64, lambda: f64, n_x: usize) -> Result<CMatrix> {
    let g = ladder_coupling(j, lambda, n_x)?.mapv(|z| z * C64::new(0.0, gamma_tau));
    Ok(matexp(&g, 1.0)?)
}

/// Exact `exp(i·s·H₁)` with `H₁ = γ₁(Σ_j (s_j⁻+s_j⁺) − 2I)`.
pub fn u1_mat(s: f64, gamma1: f64, n_x: usize) -> Result<CMatrix> {
    let dim = 1usize << n_x;
    let mut h = identity(dim).mapv(|z| z * -2.0);
    for j in 1..=n_x {
        h = &h + &ladder_coupling(j, 0.0, n_x)?;
    }
    Ok(matexp(&h.mapv(|z| z * C64::new(0.0, gamma1 * s)), 1.0)?)
}

/// Exact `exp(i·s·H₂)` with `H₂ = −iγ₂ Σ_j (s_j⁻ − s_j⁺)`.
pub fn u2_mat(s: f64, gamma2: f64, n_x: usize) -> Result<CMatrix> {
    let dim = 1usize << n_x;
    let mut h = Array2::from_elem((dim, dim), C64::new(0.0, 0.0));
    for j in 1..=n_x {
        h = &h + &(&mpo_term_minus(j, n_x)? - &mpo_term_plus(j, n_x)?);
    }
    // i·s·H₂ = s·γ₂·Σ(s⁻ − s⁺)
    Ok(matexp(&h.mapv(|z| z * (gamma2 * s)), 1.0)?)
}

/// Split form `V₁(s) = Ph(−2γ₁s)·W_{n_x}···W_1`, all factors exact.
pub fn v1_mat(s: f64, gamma1: f64, n_x: usize) -> Result<CMatrix> {
    let mut acc = identity(1 << n_x);
    for j in 1..=n_x {
        acc = w_mat(j, gamma1 * s, 0.0, n_x)?.dot(&acc);
    }
    Ok(acc.mapv(|z| z * C64::from_polar(1.0, -2.0 * gamma1 * s)))
}

/// Split form `V₂(s) = W_{n_x}···W_1` at `λ = −π/2`.
pub fn v2_mat(s: f64, gamma2: f64, n_x: usize) -> Result<CMatrix> {
    let mut acc = identity(1 << n_x);
    for j in 1..=n_x {
        acc = w_mat(j, gamma2 * s, -std::f64::consts::FRAC_PI_2, n_x)?.dot(&acc);
    }
    Ok(acc)
}

/// Boundary coupling `exp(i(τ/l_p)·X ⊗ B/2)`.
pub fn coupling_x_mat(tau: f64, l_p: f64, beta: f64, n_x: usize) -> Result<CMatrix> {
    let g = kron(&pauli_x(), &beta_diag(beta, n_x))?
        .mapv(|z| z * C64::new(0.0, 0.5 * tau / l_p));
    Ok(matexp(&g, 1.0)?)
}

/// Boundary coupling `exp(iτ·Y ⊗ B/2)`.
pub fn coupling_y_mat(tau: f64, beta: f64, n_x: usize) -> Result<CMatrix> {
    let g = kron(&pauli_y(), &beta_diag(beta, n_x))?.mapv(|z| z * C64::new(0.0, 0.5 * tau));
    Ok(matexp(&g, 1.0)?)
}

/// Dilated block `Ṽ₁(τ)` as a matrix.
pub fn tilde_v1_mat(tau: f64, cfg: &VbsConfig) -> Result<CMatrix> {
    let nx_dim = 1usize << cfg.n_x;
    let s1 = 0.5 * cfg.sigma * cfg.sigma * tau;
    let v1 = v1_mat(s1, cfg.gamma1, cfg.n_x)?;
    let sel = &kron(&e_proj(0), &v1)? + &kron(&e_proj(1), &identity(nx_dim))?;
    let ph = C64::from_polar(1.0, -tau * cfg.r / cfg.l_p);
    let sel = sel.mapv(|z| z * ph);
    Ok(match cfg.beta {
        Some(beta) => sel.dot(&coupling_x_mat(tau, cfg.l_p, beta, cfg.n_x)?),
        None => sel,
    })
}

/// Dilated block `Ṽ₂(τ)` as a matrix.
pub fn tilde_v2_mat(tau: f64, cfg: &VbsConfig) -> Result<CMatrix> {
    let nx_dim = 1usize << cfg.n_x;
    let s2 = (cfg.r - 0.5 * cfg.sigma * cfg.sigma) * tau;
    let v2 = v2_mat(s2, cfg.gamma2, cfg.n_x)?;
    let sel = &kron(&e_proj(0), &v2)? + &kron(&e_proj(1), &identity(nx_dim))?;
    Ok(match cfg.beta {
        Some(beta) => sel.dot(&coupling_y_mat(tau, beta, cfg.n_x)?),
        None => sel,
    })
}

fn block_diagonal_over_aux(blocks: &[CMatrix]) -> CMatrix {
    let np = blocks.len();
    let bd = blocks[0].nrows();
    let mut full = Array2::from_elem((bd * np, bd * np), C64::new(0.0, 0.0));
    for (k, b) in blocks.iter().enumerate() {
        for i in 0..bd {
            for j in 0..bd {
                full[(i * np + k, j * np + k)] = b[(i, j)];
            }
        }
    }
    full
}

/// Per-step matrix `Σ_k Ṽ₂·Ṽ₁^{k−N_p/2} ⊗ |k⟩⟨k|`.
pub fn vbs_mat(tau: f64, cfg: &VbsConfig) -> Result<CMatrix> {
    let np = 1usize << cfg.n_p;
    let half = np / 2;
    let tv1 = tilde_v1_mat(tau, cfg)?;
    let tv2 = tilde_v2_mat(tau, cfg)?;
    let tv1_dag = schrobs_linalg::dagger(&tv1);
    let mut pow = identity(tv1.nrows());
    for _ in 0..half {
        pow = tv1_dag.dot(&pow);
    }
    let mut blocks = Vec::with_capacity(np);
    for _ in 0..np {
        blocks.push(tv2.dot(&pow));
        pow = tv1.dot(&pow);
    }
    Ok(block_diagonal_over_aux(&blocks))
}

fn embed_axis(m: usize, mat: &CMatrix, cfg: &VbsConfigD) -> Result<CMatrix> {
    let nx_dim = 1usize << cfg.n_x;
    let left = identity(nx_dim.pow(m as u32));
    let right = identity(nx_dim.pow((cfg.dim - 1 - m) as u32));
    kron(&kron(&left, mat)?, &right).map_err(Into::into)
}

/// Multi-asset per-step matrix with the per-power discount phase.
pub fn vbs_ddim_mat(tau: f64, cfg: &VbsConfigD) -> Result<CMatrix> {
    let np = 1usize << cfg.n_p;
    let half = np / 2;
    let nx_dim = 1usize << cfg.n_x;
    let total = nx_dim.pow(cfg.dim as u32);
    let mut v1 = identity(total);
    for m in 0..cfg.dim {
        let axis = v1_mat(cfg.diffusion[m] * tau, cfg.gamma1, cfg.n_x)?;
        v1 = embed_axis(m, &axis, cfg)?.dot(&v1);
    }
    let v1 = v1.mapv(|z| z * C64::from_polar(1.0, -tau * cfg.r / cfg.l_p));
    let mut v2 = identity(total);
    for m in 0..cfg.dim {
        let axis = v2_mat(cfg.convection[m] * tau, cfg.gamma2, cfg.n_x)?;
        v2 = embed_axis(m, &axis, cfg)?.dot(&v2);
    }
    let v1_dag = schrobs_linalg::dagger(&v1);
    let mut pow = identity(total);
    for _ in 0..half {
        pow = v1_dag.dot(&pow);
    }
    let mut blocks = Vec::with_capacity(np);
    for _ in 0..np {
        blocks.push(v2.dot(&pow));
        pow = v1.dot(&pow);
    }
    Ok(block_diagonal_over_aux(&blocks))
}
