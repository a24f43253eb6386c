//! Generalized Pauli (shift/clock) strings on `K` quNits.
//!
//! Site operator `X^x Z^z` acts as `|j> ↦ ω^{z j} |j + x mod N>` with
//! `ω = e^{2πi/N}`; the string carries an extra phase `ω_{2N}^p` so that the
//! qubit `Y = i X Z` is representable.

use crate::error::{Error, Result};
use crate::linalg::ZERO;
use crate::state::PureState;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    local_dim: usize,
    x: Vec<usize>,
    z: Vec<usize>,
    phase: usize,
}

impl PauliString {
    pub fn new(local_dim: usize, x: Vec<usize>, z: Vec<usize>, phase: usize) -> Result<Self> {
        if local_dim < 2 {
            return Err(Error::InvalidArgument("local dimension must be at least 2".into()));
        }
        if x.len() != z.len() {
            return Err(Error::WrongShape("shift and clock powers differ in length".into()));
        }
        let x = x.into_iter().map(|p| p % local_dim).collect();
        let z = z.into_iter().map(|p| p % local_dim).collect();
        Ok(Self { local_dim, x, z, phase: phase % (2 * local_dim) })
    }

    pub fn identity(local_dim: usize, sites: usize) -> Self {
        Self { local_dim, x: vec![0; sites], z: vec![0; sites], phase: 0 }
    }

    /// Qubit string over `{I, X, Y, Z}`, optionally prefixed by `+`, `-`,
    /// `i` or `-i`.
    pub fn parse_qubit(s: &str) -> Result<Self> {
        let (mut phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else {
            (0, s)
        };
        let mut x = Vec::new();
        let mut z = Vec::new();
        for ch in body.chars() {
            let (xi, zi) = match ch {
                'I' => (0, 0),
                'X' => (1, 0),
                'Z' => (0, 1),
                'Y' => {
                    phase += 1;
                    (1, 1)
                }
                _ => return Err(Error::InvalidArgument(format!("bad Pauli symbol {ch:?} in {s}"))),
            };
            x.push(xi);
            z.push(zi);
        }
        if x.is_empty() {
            return Err(Error::InvalidArgument("empty Pauli string".into()));
        }
        Self::new(2, x, z, phase)
    }

    pub fn num_sites(&self) -> usize {
        self.x.len()
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// Number of sites acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(a, b)| **a != 0 || **b != 0).count()
    }

    fn phase_factor(&self) -> Complex64 {
        Complex64::from_polar(1.0, PI * self.phase as f64 / self.local_dim as f64)
    }

    /// `P |ψ>` as raw amplitudes.
    pub fn apply(&self, state: &PureState) -> Result<Vec<Complex64>> {
        self.apply_amps(state.dims(), state.amps())
    }

    pub(crate) fn apply_amps(&self, dims: &[usize], amps: &[Complex64]) -> Result<Vec<Complex64>> {
        if dims.len() != self.num_sites() || dims.iter().any(|&d| d != self.local_dim) {
            return Err(Error::WrongShape(format!("Pauli string on {} sites of dimension {} vs state dims {dims:?}", self.num_sites(), self.local_dim)));
        }
        let n = self.local_dim;
        let k = dims.len();
        let omega: Vec<Complex64> = (0..n).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)).collect();
        let global = self.phase_factor();
        let mut out = vec![ZERO; amps.len()];
        let mut digits = vec![0usize; k];
        for (idx, a) in amps.iter().enumerate() {
            if *a != ZERO {
                let mut target = 0usize;
                let mut clock = 0usize;
                for s in 0..k {
                    clock += self.z[s] * digits[s];
                    target = target * n + (digits[s] + self.x[s]) % n;
                }
                out[target] += a * omega[clock % n] * global;
            }
            // advance mixed-radix counter, last site fastest
            for s in (0..k).rev() {
                digits[s] += 1;
                if digits[s] < n {
                    break;
                }
                digits[s] = 0;
            }
            let _ = idx;
        }
        Ok(out)
    }

    /// `<ψ|P|ψ>`.
    pub fn expectation(&self, state: &PureState) -> Result<Complex64> {
        let image = self.apply(state)?;
        Ok(state.amps().iter().zip(&image).map(|(a, b)| a.conj() * b).sum())
    }

    /// All strings of weight at most `w` with trivial phase, identity first.
    pub fn up_to_weight(local_dim: usize, sites: usize, w: usize) -> Vec<Self> {
        use itertools::Itertools;
        let mut out = vec![Self::identity(local_dim, sites)];
        let nontrivial: Vec<(usize, usize)> = (0..local_dim).cartesian_product(0..local_dim).filter(|&p| p != (0, 0)).collect();
        for weight in 1..=w.min(sites) {
            for support in (0..sites).combinations(weight) {
                for ops in std::iter::repeat_n(nontrivial.iter(), weight).multi_cartesian_product() {
                    let mut p = Self::identity(local_dim, sites);
                    for (&site, &&(x, z)) in support.iter().zip(&ops) {
                        p.x[site] = x;
                        p.z[site] = z;
                    }
                    out.push(p);
                }
            }
        }
        out
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.local_dim == 2 {
            let mut phase = self.phase;
            let mut body = String::new();
            for (x, z) in self.x.iter().zip(&self.z) {
                body.push(match (x, z) {
                    (0, 0) => 'I',
                    (1, 0) => 'X',
                    (0, 1) => 'Z',
                    _ => {
                        phase = (phase + 3) % 4;
                        'Y'
                    }
                });
            }
            let prefix = ["", "i", "-", "-i"][phase];
            write!(f, "{prefix}{body}")
        } else {
            let parts: Vec<String> = self.x.iter().zip(&self.z).map(|(x, z)| format!("X{x}Z{z}")).collect();
            write!(f, "w{}^{} {}", 2 * self.local_dim, self.phase, parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, ONE};

    fn ghz3() -> PureState {
        PureState::from_bitstrings(vec![2, 2, 2], &[("000", ONE), ("111", ONE)]).unwrap()
    }

    #[test]
    fn ghz_stabilizers() {
        for s in ["IZZ", "ZIZ", "ZZI", "XXX", "III"] {
            let e = PauliString::parse_qubit(s).unwrap().expectation(&ghz3()).unwrap();
            assert!((e - ONE).norm() < 1e-14, "{s}: {e}");
        }
        let e = PauliString::parse_qubit("XII").unwrap().expectation(&ghz3()).unwrap();
        assert!(e.norm() < 1e-15);
        assert!(PauliString::parse_qubit("XI").unwrap().expectation(&ghz3()).is_err());
    }

    #[test]
    fn y_matches_matrix() {
        let plus_i = PureState::new(vec![2], vec![ONE, c(0.0, 1.0)]).unwrap();
        let e = PauliString::parse_qubit("Y").unwrap().expectation(&plus_i).unwrap();
        assert!((e - ONE).norm() < 1e-14);
        assert_eq!(PauliString::parse_qubit("-iXY").unwrap().to_string(), "-iXY");
    }

    #[test]
    fn weight_enumeration_counts() {
        // 1 + C(K,1)(N^2-1) + C(K,2)(N^2-1)^2
        assert_eq!(PauliString::up_to_weight(2, 5, 1).len(), 1 + 5 * 3);
        assert_eq!(PauliString::up_to_weight(3, 4, 2).len(), 1 + 4 * 8 + 6 * 64);
        assert!(PauliString::up_to_weight(2, 3, 1).iter().skip(1).all(|p| p.weight() == 1));
    }

    #[test]
    fn clock_and_shift_commutation() {
        // Z X = ω X Z for a qutrit
        let psi = crate::state::random_state(&[3], 4).unwrap();
        let zx = PauliString::new(3, vec![0], vec![1], 0).unwrap().apply_amps(&[3], &PauliString::new(3, vec![1], vec![0], 0).unwrap().apply(&psi).unwrap()).unwrap();
        let xz = PauliString::new(3, vec![1], vec![1], 0).unwrap().apply(&psi).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        for (a, b) in zx.iter().zip(&xz) {
            assert!((a - w * b).norm() < 1e-14);
        }
    }
}
