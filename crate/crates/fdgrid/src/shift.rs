//! Shift operators on the grid index and the finite-difference matrices
//! built from them, in both dense and qubit-local tensor-product form.

use schrobs_linalg::ndarray::Array2;
use schrobs_linalg::{identity, kron, C64, CMatrix};

use crate::grid::SpatialGrid;
use crate::Result;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn sigma01() -> CMatrix {
    let mut m = Array2::from_elem((2, 2), zero());
    m[(0, 1)] = one();
    m
}

fn sigma10() -> CMatrix {
    let mut m = Array2::from_elem((2, 2), zero());
    m[(1, 0)] = one();
    m
}

/// Down-shift `S⁻ = Σ_j |j−1⟩⟨j|` on `2^n_x` grid indices.
pub fn shift_minus(n_x: usize) -> Result<CMatrix> {
    let dim = 1usize << n_x;
    schrobs_linalg::budget_guard(dim)?;
    let mut m = Array2::from_elem((dim, dim), zero());
    for j in 1..dim {
        m[(j - 1, j)] = one();
    }
    Ok(m)
}

/// Up-shift `S⁺ = (S⁻)†`.
pub fn shift_plus(n_x: usize) -> Result<CMatrix> {
    Ok(schrobs_linalg::dagger(&shift_minus(n_x)?))
}

/// Qubit-local term `s_j⁻ = I^{⊗(n_x−j)} ⊗ σ01 ⊗ σ10^{⊗(j−1)}`.
///
/// `j` counts from the least significant qubit (`j = 1` is the LSB), so a
/// basis state `|q_{n_x}…q_1⟩` encodes the grid index in binary and
/// `Σ_j s_j⁻ = S⁻`.
pub fn mpo_term_minus(j: usize, n_x: usize) -> Result<CMatrix> {
    assert!(j >= 1 && j <= n_x, "term index out of range");
    let mut m = identity(1 << (n_x - j));
    m = kron(&m, &sigma01())?;
    for _ in 0..(j - 1) {
        m = kron(&m, &sigma10())?;
    }
    Ok(m)
}

/// `s_j⁺ = (s_j⁻)†`.
pub fn mpo_term_plus(j: usize, n_x: usize) -> Result<CMatrix> {
    Ok(schrobs_linalg::dagger(&mpo_term_minus(j, n_x)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffKind {
    Forward,
    Backward,
    Central,
    Laplacian,
}

/// Finite-difference matrix with zero (Dirichlet) truncation.
pub fn diff_op(kind: DiffKind, grid: &SpatialGrid) -> Result<CMatrix> {
    let h = grid.h();
    let sm = shift_minus(grid.n_x)?;
    let sp = shift_plus(grid.n_x)?;
    let id = identity(grid.interior_count());
    let m = match kind {
        DiffKind::Forward => (&sm - &id).mapv(|z| z / h),
        DiffKind::Backward => (&id - &sp).mapv(|z| z / h),
        DiffKind::Central => (&sm - &sp).mapv(|z| z / (2.0 * h)),
        DiffKind::Laplacian => (&(&sm + &sp) - &id.mapv(|z| z * 2.0)).mapv(|z| z / (h * h)),
    };
    Ok(m)
}
