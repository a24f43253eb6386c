//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Sorts `values` descending, keeping the original order among equal values.
pub(crate) fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(std::cmp::Ordering::Equal));
    idx
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues in descending
/// order (ties keep their original index order). Eigenvectors are columns.
pub fn hermitian_eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    // symmetrize to wash out rounding asymmetry
    let h = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let order = descending_order(&vals);
    let mut vecs = CMatrix::zeros(n, n);
    let mut sorted = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        sorted.push(vals[src]);
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    (sorted, vecs)
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()).scale(0.5);
    let mut vals: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    vals
}

/// Thin SVD `m = u * diag(s) * vt` with singular values descending.
pub struct Svd {
    pub u: CMatrix,
    pub s: Vec<f64>,
    pub vt: CMatrix,
}

pub fn svd(m: &CMatrix) -> Svd {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Svd { u: CMatrix::zeros(r, 0), s: vec![], vt: CMatrix::zeros(0, c) };
    }
    let dec = SVD::new(m.clone(), true, true);
    let u = dec.u.expect("u requested");
    let vt = dec.v_t.expect("v_t requested");
    let s: Vec<f64> = dec.singular_values.iter().copied().collect();
    Svd { u, s, vt }
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return vec![];
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// Largest entry modulus of `m - identity`.
pub fn identity_residual(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    worst
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let (vals, vecs) = hermitian_eigh(m);
    let n = m.nrows();
    let mut d = CMatrix::zeros(n, n);
    for (i, v) in vals.iter().enumerate() {
        d[(i, i)] = c(v.max(0.0).sqrt(), 0.0);
    }
    &vecs * d * vecs.adjoint()
}

/// Pauli matrices.
pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

/// Shannon-type entropy `-sum p ln p` with `0 ln 0 = 0`; negative rounding
/// noise is clamped away.
pub fn entropy_nats(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum()
}

/// Lowest eigenpair of the Hermitian operator `apply` by restarted Lanczos
/// with full reorthogonalization, started from `start`. The returned value
/// never exceeds the Rayleigh quotient of `start`.
pub fn lanczos_lowest<F>(apply: F, start: &[Complex64], krylov: usize, tol: f64, max_restarts: usize) -> (f64, Vec<Complex64>)
where
    F: Fn(&[Complex64]) -> Vec<Complex64>,
{
    let n = start.len();
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 { a.iter().zip(b).map(|(x, y)| x.conj() * y).sum() };
    let norm = |a: &[Complex64]| dot(a, a).re.sqrt();
    let mut x: Vec<Complex64> = start.to_vec();
    let nx = norm(&x);
    if nx == 0.0 {
        x = vec![ONE; n];
    }
    let nx = norm(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let hx = apply(&x);
    let mut theta = dot(&x, &hx).re;
    for _ in 0..=max_restarts {
        let m = krylov.min(n).max(1);
        let mut basis: Vec<Vec<Complex64>> = vec![x.clone()];
        let mut alpha = Vec::with_capacity(m);
        let mut beta: Vec<f64> = Vec::with_capacity(m);
        for j in 0..m {
            let mut w = apply(&basis[j]);
            alpha.push(dot(&basis[j], &w).re);
            // two passes of Gram-Schmidt against the whole basis
            for _ in 0..2 {
                for q in &basis {
                    let proj = dot(q, &w);
                    w.iter_mut().zip(q).for_each(|(a, b)| *a -= proj * b);
                }
            }
            let b = norm(&w);
            if j + 1 == m || b < 1e-13 {
                break;
            }
            beta.push(b);
            basis.push(w.into_iter().map(|v| v / b).collect());
        }
        let size = alpha.len();
        let t = nalgebra::DMatrix::<f64>::from_fn(size, size, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[i]
            } else if j + 1 == i {
                beta[j]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(t);
        let (imin, _) = eig.eigenvalues.iter().enumerate().min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal)).unwrap();
        let coeffs = eig.eigenvectors.column(imin);
        let mut y = vec![ZERO; n];
        for (cf, q) in coeffs.iter().zip(&basis) {
            y.iter_mut().zip(q).for_each(|(a, b)| *a += b * *cf);
        }
        let ny = norm(&y);
        y.iter_mut().for_each(|v| *v /= ny);
        let hy = apply(&y);
        let rq = dot(&y, &hy).re;
        if rq > theta {
            // no further progress at working precision
            break;
        }
        let residual = norm(&hy.iter().zip(&y).map(|(a, b)| a - b * rq).collect::<Vec<_>>());
        x = y;
        theta = rq;
        if residual < tol || size < m {
            break;
        }
    }
    (theta, x)
}
