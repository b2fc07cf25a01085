//! Elementary matrix operations: Kronecker products, Hermitian splitting,
//! spectral norm via power iteration.

use ndarray::{Array1, Array2};

use crate::{check_budget, check_square, C64, CMatrix, CVector, LinalgError, Result};

pub fn identity(n: usize) -> CMatrix {
    Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Conjugate transpose.
pub fn dagger(m: &CMatrix) -> CMatrix {
    let mut out = Array2::from_elem((m.ncols(), m.nrows()), C64::new(0.0, 0.0));
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[(j, i)] = m[(i, j)].conj();
        }
    }
    out
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.dim(), b.dim(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Maximum absolute column sum.
pub fn one_norm(m: &CMatrix) -> f64 {
    let mut best = 0.0f64;
    for j in 0..m.ncols() {
        let s: f64 = m.column(j).iter().map(|z| z.norm()).sum();
        best = best.max(s);
    }
    best
}

pub fn vec_norm2(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn matvec(m: &CMatrix, v: &CVector) -> CVector {
    m.dot(v)
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            if (m[(i, j)] - m[(j, i)].conj()).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// Kronecker product `a ⊗ b`.
///
/// Entry `((i·rb + k), (j·cb + l)) = a(i,j)·b(k,l)`, so the left operand is
/// the most significant tensor factor.  The result must stay inside the
/// dense oracle budget.
pub fn kron(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.is_empty() || b.is_empty() {
        return Err(LinalgError::Empty);
    }
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    check_budget(ra * rb)?;
    check_budget(ca * cb)?;
    let mut out = Array2::from_elem((ra * rb, ca * cb), C64::new(0.0, 0.0));
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Hermitian/anti-Hermitian splitting `m = m1 + i·m2`.
///
/// `m1 = (m + m†)/2`, `m2 = (m − m†)/(2i)`.  Both outputs are symmetrised
/// entry by entry so `m1† == m1` and `m2† == m2` hold exactly in floating
/// point.
pub fn hermitian_split(m: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let n = check_square(m)?;
    let zero = C64::new(0.0, 0.0);
    let mut m1 = Array2::from_elem((n, n), zero);
    let mut m2 = Array2::from_elem((n, n), zero);
    for i in 0..n {
        m1[(i, i)] = C64::new(m[(i, i)].re, 0.0);
        m2[(i, i)] = C64::new(m[(i, i)].im, 0.0);
        for j in (i + 1)..n {
            let h = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m1[(i, j)] = h;
            m1[(j, i)] = h.conj();
            // (m − m†)/(2i) = −i/2 · (m − m†)
            let k = (m[(i, j)] - m[(j, i)].conj()) * C64::new(0.0, -0.5);
            m2[(i, j)] = k;
            m2[(j, i)] = k.conj();
        }
    }
    Ok((m1, m2))
}

/// Largest singular value, by power iteration on `m†m`.
///
/// Deterministic: starts from the all-equal unit vector, capped at 1000
/// iterations with a 1e-12 convergence threshold.  A second pass from a
/// staggered start covers inputs whose top singular subspace is orthogonal
/// to the all-equal vector; the larger estimate wins.
pub fn opnorm2(m: &CMatrix) -> Result<f64> {
    check_square(m)?;
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    let n = m.nrows();
    if n == 0 {
        return Err(LinalgError::Empty);
    }
    let mh = dagger(m);
    let run = |start: CVector| -> f64 {
        let mut v = start;
        let nrm = vec_norm2(&v);
        if nrm == 0.0 {
            return 0.0;
        }
        v.mapv_inplace(|z| z / nrm);
        let mut lambda = 0.0f64;
        for _ in 0..1000 {
            let w = mh.dot(&m.dot(&v));
            let new_lambda = vec_norm2(&w);
            if new_lambda == 0.0 {
                return 0.0;
            }
            v = w.mapv(|z| z / new_lambda);
            if (new_lambda - lambda).abs() <= 1e-12 * new_lambda.max(1.0) {
                lambda = new_lambda;
                break;
            }
            lambda = new_lambda;
        }
        lambda.sqrt()
    };
    let flat = Array1::from_elem(n, C64::new(1.0, 0.0));
    let staggered = Array1::from_shape_fn(n, |i| C64::new(1.0 + 0.37 * ((i % 7) as f64), 0.0));
    Ok(run(flat).max(run(staggered)))
}
