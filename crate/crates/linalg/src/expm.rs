//! Matrix exponentials and exponential actions.
//!
//! `matexp` picks its algorithm by structure: Hermitian and skew-Hermitian
//! inputs go through an eigendecomposition, everything else through
//! Padé scaling-and-squaring.  `expmv` applies `exp(G)` to a single vector
//! with a scaled Taylor iteration and never materialises `exp(G)`.

use ndarray::Array2;
use ndarray_linalg::{Eigh, Solve, UPLO};

use crate::ops::{dagger, identity, is_hermitian, one_norm, vec_norm2};
use crate::{check_square, C64, CMatrix, CVector, LinalgError, Result};

const HERM_DETECT_TOL: f64 = 1e-13;

/// Eigendecomposition of a Hermitian matrix: ascending eigenvalues and the
/// unitary of eigenvectors (columns).
pub fn hermitian_eigh(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    check_square(m)?;
    let (vals, vecs) = m
        .eigh(UPLO::Lower)
        .map_err(|e| LinalgError::EighFailed(e.to_string()))?;
    // The LAPACK call runs on the column-major view, i.e. on the conjugate
    // of `m`; conjugating the returned vectors restores the convention
    // m = V·diag(vals)·V† with eigenvectors in the columns of V.
    Ok((vals.to_vec(), vecs.mapv(|z| z.conj())))
}

/// Largest eigenvalue of a Hermitian matrix.
///
/// Small matrices use the direct eigensolver; above 1024 the same value is
/// obtained by shifted power iteration on `m + s·I` (all eigenvalues made
/// positive by `s = ‖m‖₁`), which only needs matrix-vector products.
pub fn lambda_max_hermitian(m: &CMatrix) -> Result<f64> {
    let n = check_square(m)?;
    if n <= 1024 {
        let (vals, _) = hermitian_eigh(m)?;
        return Ok(*vals.last().expect("nonempty spectrum"));
    }
    let shift = one_norm(m);
    let mut v = ndarray::Array1::from_shape_fn(n, |i| C64::new(1.0 + 0.37 * ((i % 7) as f64), 0.0));
    let nrm = vec_norm2(&v);
    v.mapv_inplace(|z| z / nrm);
    let mut lambda = 0.0f64;
    for _ in 0..5000 {
        let mut w = m.dot(&v);
        w.scaled_add(C64::new(shift, 0.0), &v);
        let wn = vec_norm2(&w);
        if wn == 0.0 {
            return Ok(-shift);
        }
        v = w.mapv(|z| z / wn);
        if (wn - lambda).abs() <= 1e-11 * wn.max(1.0) {
            lambda = wn;
            break;
        }
        lambda = wn;
    }
    Ok(lambda - shift)
}

/// Largest eigenvalue of a Hermitian operator given only its action.
///
/// Shifted power iteration on `op + s·I` with `s = shift_bound ≥ ‖op‖`;
/// deterministic staggered start, 1e-11 relative convergence.
pub fn lambda_max_hermitian_apply<F>(apply: F, dim: usize, shift_bound: f64) -> f64
where
    F: Fn(&CVector) -> CVector,
{
    let shift = shift_bound.max(1e-12);
    let mut v =
        ndarray::Array1::from_shape_fn(dim, |i| C64::new(1.0 + 0.37 * ((i % 7) as f64), 0.0));
    let nrm = vec_norm2(&v);
    v.mapv_inplace(|z| z / nrm);
    let mut lambda = 0.0f64;
    for _ in 0..5000 {
        let mut w = apply(&v);
        w.scaled_add(C64::new(shift, 0.0), &v);
        let wn = vec_norm2(&w);
        if wn == 0.0 {
            return -shift;
        }
        v = w.mapv(|z| z / wn);
        if (wn - lambda).abs() <= 1e-11 * wn.max(1.0) {
            lambda = wn;
            break;
        }
        lambda = wn;
    }
    lambda - shift
}

/// `exp(t·m)` for a square matrix `m` and real scalar `t`.
pub fn matexp(m: &CMatrix, t: f64) -> Result<CMatrix> {
    let n = check_square(m)?;
    crate::check_budget(n)?;
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) || !t.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let scale = crate::ops::max_abs(m).max(1.0);
    if is_hermitian(m, HERM_DETECT_TOL * scale) {
        let (vals, vecs) = hermitian_eigh(m)?;
        return Ok(recompose(&vecs, &vals.iter().map(|&l| C64::new((t * l).exp(), 0.0)).collect::<Vec<_>>()));
    }
    // Skew-Hermitian: m = i·h with h Hermitian, so exp(t·m) = V e^{i t λ} V†.
    let mih = m.mapv(|z| z * C64::new(0.0, -1.0));
    if is_hermitian(&mih, HERM_DETECT_TOL * scale) {
        let (vals, vecs) = hermitian_eigh(&mih)?;
        let phases: Vec<C64> = vals.iter().map(|&l| C64::from_polar(1.0, t * l)).collect();
        return Ok(recompose(&vecs, &phases));
    }
    pade_expm(&m.mapv(|z| z * t))
}

fn recompose(vecs: &CMatrix, diag: &[C64]) -> CMatrix {
    let n = vecs.nrows();
    let mut scaled = vecs.clone();
    for j in 0..n {
        let d = diag[j];
        scaled.column_mut(j).mapv_inplace(|z| z * d);
    }
    scaled.dot(&dagger(vecs))
}

/// Padé 13/13 approximant with scaling and squaring (Higham's method).
fn pade_expm(a: &CMatrix) -> Result<CMatrix> {
    const THETA_13: f64 = 5.371920351148152;
    #[rustfmt::skip]
    const B: [f64; 14] = [
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0, 129060195264000.0, 10559470521600.0,
        670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
        960960.0, 16380.0, 182.0, 1.0,
    ];
    let n = a.nrows();
    let norm = one_norm(a);
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.mapv(|z| z / C64::new(2f64.powi(s), 0.0));
    let id = identity(n);
    let a2 = a.dot(&a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    let u_inner = &a6.mapv(|z| z * B[13]) + &a4.mapv(|z| z * B[11]) + &a2.mapv(|z| z * B[9]);
    let u_poly =
        a6.dot(&u_inner) + &a6.mapv(|z| z * B[7]) + &a4.mapv(|z| z * B[5]) + &a2.mapv(|z| z * B[3]) + &id.mapv(|z| z * B[1]);
    let u = a.dot(&u_poly);
    let v_inner = &a6.mapv(|z| z * B[12]) + &a4.mapv(|z| z * B[10]) + &a2.mapv(|z| z * B[8]);
    let v =
        a6.dot(&v_inner) + &a6.mapv(|z| z * B[6]) + &a4.mapv(|z| z * B[4]) + &a2.mapv(|z| z * B[2]) + &id.mapv(|z| z * B[0]);

    // (V − U) X = (V + U), solved column by column.
    let lhs = &v - &u;
    let rhs = &v + &u;
    let mut x = Array2::from_elem((n, n), C64::new(0.0, 0.0));
    let f = factorize(&lhs)?;
    for j in 0..n {
        let col = rhs.column(j).to_owned();
        let sol = f
            .solve(&col)
            .map_err(|e| LinalgError::SolveFailed(e.to_string()))?;
        x.column_mut(j).assign(&sol);
    }
    for _ in 0..s {
        x = x.dot(&x);
    }
    Ok(x)
}

fn factorize(m: &CMatrix) -> Result<ndarray_linalg::LUFactorized<ndarray::OwnedRepr<C64>>> {
    use ndarray_linalg::Factorize;
    m.factorize()
        .map_err(|e| LinalgError::SolveFailed(e.to_string()))
}

/// Applies `exp(G)` to `v`, where `G x` is given by the closure `apply` and
/// `norm_bound ≥ ‖G‖₁`.  Scaled Taylor summation: `exp(G)v = (exp(G/s))^s v`
/// with `s` chosen so each sub-step converges in a few dozen terms.
///
/// `theta` controls the sub-step norm (≈4 is fine for generators with purely
/// imaginary spectrum; use ≈1 for non-normal matrices).
pub fn expmv<F>(apply: F, norm_bound: f64, v: &CVector, theta: f64) -> CVector
where
    F: Fn(&CVector) -> CVector,
{
    let s = ((norm_bound / theta).ceil() as usize).max(1);
    let inv_s = 1.0 / s as f64;
    let mut w = v.clone();
    for _ in 0..s {
        let mut term = w.clone();
        let mut acc = w;
        let mut small_streak = 0usize;
        for k in 1..=120usize {
            let mut t = apply(&term);
            let c = C64::new(inv_s / k as f64, 0.0);
            t.mapv_inplace(|z| z * c);
            term = t;
            acc = &acc + &term;
            let tn = vec_norm2(&term);
            let an = vec_norm2(&acc).max(1e-300);
            if tn <= 1e-16 * an {
                small_streak += 1;
                if small_streak >= 2 {
                    break;
                }
            } else {
                small_streak = 0;
            }
        }
        w = acc;
    }
    w
}
