//! Binary forms `Q(u, v) = Σ_k C(n,k) a_k u^k v^{n−k}` and their classical
//! invariants. With this convention `Q(1, z)` is the Majorana polynomial
//! `a_0 z^n + n a_1 z^{n−1} + …`.

use super::binomial;
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, ONE, ZERO};
use num_complex::Complex64;

/// Homogeneous polynomial stored as raw monomial coefficients:
/// `coeffs[k]` multiplies `u^k v^{n−k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm {
    coeffs: Vec<Complex64>,
}

impl BinaryForm {
    pub fn from_monomials(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    /// From the binomial-convention coefficients `a_0..a_n`.
    pub fn from_binomial(a: &[Complex64]) -> Self {
        let n = a.len() - 1;
        Self { coeffs: a.iter().enumerate().map(|(k, x)| x * binomial(n, k)).collect() }
    }

    pub fn binomial_coeffs(&self) -> Vec<Complex64> {
        let n = self.degree();
        self.coeffs.iter().enumerate().map(|(k, x)| x / binomial(n, k)).collect()
    }

    pub fn monomials(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, u: Complex64, v: Complex64) -> Complex64 {
        let n = self.degree();
        self.coeffs.iter().enumerate().map(|(k, a)| a * u.powu(k as u32) * v.powu((n - k) as u32)).sum()
    }

    pub fn du(&self) -> Self {
        if self.degree() == 0 {
            return Self { coeffs: vec![ZERO] };
        }
        Self { coeffs: (1..self.coeffs.len()).map(|k| self.coeffs[k] * k as f64).collect() }
    }

    pub fn dv(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self { coeffs: vec![ZERO] };
        }
        Self { coeffs: (0..n).map(|k| self.coeffs[k] * (n - k) as f64).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "forms of different degree");
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    /// `Q(αu + βv, γu + δv)`.
    pub fn substitute(&self, alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64) -> Self {
        let n = self.degree();
        let x = Self { coeffs: vec![beta, alpha] };
        let y = Self { coeffs: vec![delta, gamma] };
        let mut out = Self { coeffs: vec![ZERO; n + 1] };
        for (k, a) in self.coeffs.iter().enumerate() {
            let mut term = Self { coeffs: vec![*a] };
            for _ in 0..k {
                term = term.mul(&x);
            }
            for _ in 0..n - k {
                term = term.mul(&y);
            }
            for (o, t) in out.coeffs.iter_mut().zip(&term.coeffs) {
                *o += t;
            }
        }
        out
    }

    /// `Q_uu Q_vv − Q_uv^2`.
    pub fn hessian(&self) -> Self {
        let quu = self.du().du();
        let qvv = self.dv().dv();
        let quv = self.du().dv();
        quu.mul(&qvv).sub(&quv.mul(&quv))
    }

    /// Jacobian `Q_u H_v − Q_v H_u` of the form and its Hessian.
    pub fn hessian_jacobian(&self) -> Self {
        let h = self.hessian();
        self.du().mul(&h.dv()).sub(&self.dv().mul(&h.du()))
    }
}

/// Sylvester-matrix resultant; coefficients are given highest power first.
pub fn resultant(p: &[Complex64], q: &[Complex64]) -> Result<Complex64> {
    if p.len() < 2 || q.len() < 2 {
        return Err(Error::InvalidArgument("resultant needs polynomials of order at least one".into()));
    }
    if p[0] == ZERO || q[0] == ZERO {
        return Err(Error::InvalidArgument("leading coefficients must be nonzero".into()));
    }
    let (n, m) = (p.len() - 1, q.len() - 1);
    let size = n + m;
    let mut s = CMatrix::zeros(size, size);
    for r in 0..m {
        for (j, a) in p.iter().enumerate() {
            s[(r, r + j)] = *a;
        }
    }
    for r in 0..n {
        for (j, b) in q.iter().enumerate() {
            s[(m + r, r + j)] = *b;
        }
    }
    Ok(s.determinant())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormInvariants {
    pub degree: usize,
    pub discriminant: Complex64,
    /// Cubic only: monomial coefficients of the Hessian covariant.
    pub hessian: Option<Vec<Complex64>>,
    /// Cubic only: relative residual of `T² = 2⁴3⁶ Δ Q² − H³` at fixed points.
    pub syzygy_residual: Option<f64>,
    /// Quartic only.
    pub i1: Option<Complex64>,
    pub i2: Option<Complex64>,
}

fn syzygy_points() -> [(Complex64, Complex64); 8] {
    [
        (ONE, ZERO),
        (ZERO, ONE),
        (ONE, ONE),
        (ONE, -ONE),
        (c(0.5, 0.25), c(-1.0, 0.75)),
        (c(-0.3, 1.1), c(0.9, 0.2)),
        (c(1.7, -0.4), c(0.1, -1.3)),
        (c(0.0, 1.0), c(2.0, 0.5)),
    ]
}

fn cubic_discriminant(a: &[Complex64]) -> Complex64 {
    let (a0, a1, a2, a3) = (a[0], a[1], a[2], a[3]);
    if a0 != ZERO {
        // derivative rows of the 5x5 determinant: 3a0, 6a1, 3a2
        let p = [a0, a1 * 3.0, a2 * 3.0, a3];
        let dp = [a0 * 3.0, a1 * 6.0, a2 * 3.0];
        let det = resultant(&p, &dp).expect("nonzero leading coefficients");
        det / (a0 * 27.0)
    } else {
        a0 * a0 * a3 * a3 - a0 * a1 * a2 * a3 * 6.0 + a0 * a2 * a2 * a2 * 4.0 + a1 * a1 * a1 * a3 * 4.0 - a1 * a1 * a2 * a2 * 3.0
    }
}

pub fn quartic_invariants(a: &[Complex64]) -> (Complex64, Complex64) {
    let i1 = a[0] * a[4] - a[1] * a[3] * 4.0 + a[2] * a[2] * 3.0;
    let m = CMatrix::from_row_slice(3, 3, &[a[0], a[1], a[2], a[1], a[2], a[3], a[2], a[3], a[4]]);
    (i1, m.determinant())
}

/// Invariants of the form with binomial-convention coefficients `a_0..a_n`.
pub fn form_invariants(a: &[Complex64], degree: usize) -> Result<FormInvariants> {
    if !(2..=4).contains(&degree) {
        return Err(Error::InvalidArgument(format!("form degree must be 2, 3 or 4, got {degree}")));
    }
    if a.len() != degree + 1 {
        return Err(Error::WrongShape(format!("degree {degree} needs {} coefficients, got {}", degree + 1, a.len())));
    }
    let mut out = FormInvariants { degree, discriminant: ZERO, hessian: None, syzygy_residual: None, i1: None, i2: None };
    match degree {
        2 => out.discriminant = a[0] * a[2] - a[1] * a[1],
        3 => {
            let delta = cubic_discriminant(a);
            let q = BinaryForm::from_binomial(a);
            let h = q.hessian();
            let t = q.hessian_jacobian();
            let k = 16.0 * 729.0;
            let residual = syzygy_points()
                .iter()
                .map(|&(u, v)| {
                    let (qv, hv, tv) = (q.eval(u, v), h.eval(u, v), t.eval(u, v));
                    let lhs = tv * tv;
                    let rhs = delta * qv * qv * k;
                    let h3 = hv * hv * hv;
                    let scale = lhs.norm() + rhs.norm() + h3.norm();
                    (lhs - rhs + h3).norm() / scale.max(f64::MIN_POSITIVE)
                })
                .fold(0.0, f64::max);
            out.discriminant = delta;
            out.hessian = Some(h.monomials().to_vec());
            out.syzygy_residual = Some(residual);
        }
        _ => {
            let (i1, i2) = quartic_invariants(a);
            out.discriminant = if a[0] != ZERO {
                let p: Vec<Complex64> = (0..5).map(|k| a[k] * binomial(4, k)).collect();
                let dp: Vec<Complex64> = (0..4).map(|k| p[k] * (4 - k) as f64).collect();
                resultant(&p, &dp)? / (a[0] * 256.0)
            } else {
                i1 * i1 * i1 - i2 * i2 * 27.0
            };
            out.i1 = Some(i1);
            out.i2 = Some(i2);
        }
    }
    Ok(out)
}

/// Binomial-convention coefficients of the form attached to a symmetric state.
pub fn form_coeffs_of(state: &super::SymmetricState) -> Vec<Complex64> {
    let n = state.num_qubits();
    state
        .dicke_coeffs()
        .iter()
        .enumerate()
        .map(|(k, d)| d * (if k % 2 == 0 { 1.0 } else { -1.0 }) / binomial(n, k).sqrt())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{complex_gaussian, rng_from_seed};
    use crate::stellar::{from_constellation, tetrahedral_constellation};

    fn r(x: f64) -> Complex64 {
        c(x, 0.0)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&[ONE, -ONE], &[ONE, -ONE]).unwrap(), ZERO);
        assert!((resultant(&[ONE, -ONE], &[ONE, ONE]).unwrap() - r(2.0)).norm() < 1e-15);
        assert!(resultant(&[ZERO, ONE], &[ONE, ONE]).is_err());
    }

    #[test]
    fn quadratic_double_root() {
        let inv = form_invariants(&[r(1.0), r(-1.0), r(1.0)], 2).unwrap();
        assert_eq!(inv.discriminant, ZERO);
    }

    #[test]
    fn cubic_expanded_matches_determinant() {
        let mut rng = rng_from_seed(1);
        for _ in 0..50 {
            let a: Vec<Complex64> = (0..4).map(|_| complex_gaussian(&mut rng)).collect();
            let det = cubic_discriminant(&a);
            let mut z = a.clone();
            z[0] = ZERO;
            let expanded = z[1] * z[1] * z[1] * z[3] * 4.0 - z[1] * z[1] * z[2] * z[2] * 3.0;
            assert_eq!(cubic_discriminant(&z), expanded);
            let (a0, a1, a2, a3) = (a[0], a[1], a[2], a[3]);
            let poly = a0 * a0 * a3 * a3 - a0 * a1 * a2 * a3 * 6.0 + a0 * a2 * a2 * a2 * 4.0 + a1 * a1 * a1 * a3 * 4.0 - a1 * a1 * a2 * a2 * 3.0;
            assert!((det - poly).norm() < 1e-12 * (1.0 + poly.norm()));
        }
    }

    #[test]
    fn triple_root_cubic_has_zero_hessian() {
        // (z − 2)^3 = z^3 − 6z^2 + 12z − 8 → a = (1, −2, 4, −8)
        let inv = form_invariants(&[r(1.0), r(-2.0), r(4.0), r(-8.0)], 3).unwrap();
        assert!(inv.hessian.unwrap().iter().all(|h| h.norm() < 1e-12));
        assert!(inv.discriminant.norm() < 1e-12);
    }

    #[test]
    fn syzygy_on_random_cubics() {
        let mut rng = rng_from_seed(2);
        for _ in 0..100 {
            let a: Vec<Complex64> = (0..4).map(|_| complex_gaussian(&mut rng)).collect();
            assert!(form_invariants(&a, 3).unwrap().syzygy_residual.unwrap() < 1e-8);
        }
    }

    #[test]
    fn tetrahedral_quartic_invariants() {
        let s = from_constellation(&tetrahedral_constellation()).unwrap();
        let inv = form_invariants(&form_coeffs_of(&s), 4).unwrap();
        assert!(inv.i1.unwrap().norm() < 1e-12);
        assert!(inv.i2.unwrap().norm() > 1e-3);
        let (i1, i2) = (inv.i1.unwrap(), inv.i2.unwrap());
        assert!((inv.discriminant - (i1 * i1 * i1 - i2 * i2 * 27.0)).norm() < 1e-12);
    }

    #[test]
    fn cubic_discriminant_has_weight_six() {
        let mut rng = rng_from_seed(3);
        for _ in 0..50 {
            let a: Vec<Complex64> = (0..4).map(|_| complex_gaussian(&mut rng)).collect();
            let [al, be, ga, de] = std::array::from_fn(|_| complex_gaussian(&mut rng));
            let g = al * de - be * ga;
            let q2 = BinaryForm::from_binomial(&a).substitute(al, be, ga, de);
            let d1 = form_invariants(&a, 3).unwrap().discriminant;
            let d2 = form_invariants(&q2.binomial_coeffs(), 3).unwrap().discriminant;
            assert!((d2 - d1 * g.powu(6)).norm() <= 1e-8 * d2.norm().max(1e-300));
        }
    }

    #[test]
    fn degree_out_of_range() {
        assert!(form_invariants(&[ONE, ONE], 1).is_err());
        assert!(form_invariants(&[ONE; 6], 5).is_err());
    }
}
