//! Seeded random matrices and vectors.

use crate::linalg::{c, CMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

pub type SeededRng = ChaCha20Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (independent N(0,1) real and imaginary parts).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| complex_gaussian(rng))
}

/// Haar-random unitary via QR of a Ginibre matrix with the phase fix on R.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let qr = ginibre(rng, n).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random matrix with unit determinant.
pub fn random_special_linear<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    loop {
        let g = ginibre(rng, n);
        let det = g.determinant();
        if det.norm() > 1e-3 {
            let scale = det.powf(1.0 / n as f64);
            return g.map(|x| x / scale);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity_residual;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = rng_from_seed(3);
        for n in 1..5 {
            let u = random_unitary(&mut rng, n);
            assert!(identity_residual(&(u.adjoint() * &u)) < 1e-12);
        }
    }

    #[test]
    fn special_linear_has_unit_determinant() {
        let mut rng = rng_from_seed(4);
        let g = random_special_linear(&mut rng, 2);
        assert!((g.determinant() - c(1.0, 0.0)).norm() < 1e-12);
    }
}
