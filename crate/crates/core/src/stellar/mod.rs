//! Majorana stellar representation of permutation-symmetric qubit states.
//!
//! A symmetric state `Σ_k d_k |K−k, k>` (Dicke basis, `k` excitations) maps
//! to the roots of `p(z) = Σ_k (−1)^k √C(K,k) d_k z^{K−k}`. Missing leading
//! degree becomes stars at infinity, so `|0…0>` has every star at `0` (north
//! pole) and `|1…1>` has every star at `∞` (south pole). The coherent state
//! `(|0> + z|1>)^{⊗K}` has all `K` stars at `z`.

pub mod forms;
pub mod partitions;

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, ONE, ZERO};
use crate::state::PureState;
use num_complex::Complex64;
use std::f64::consts::PI;

pub use forms::{form_invariants, resultant, BinaryForm, FormInvariants};
pub use partitions::{hardy_ramanujan, partition_count};

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Star {
    Finite(Complex64),
    Infinity,
}

impl Star {
    /// Projective coordinates `(x, y)` with `z = x / y`.
    fn projective(self) -> (Complex64, Complex64) {
        match self {
            Star::Finite(z) => (z, ONE),
            Star::Infinity => (ONE, ZERO),
        }
    }

    /// Stereographic image on the unit sphere; `0` is the north pole.
    pub fn to_sphere(self) -> [f64; 3] {
        match self {
            Star::Infinity => [0.0, 0.0, -1.0],
            Star::Finite(z) => {
                let r2 = z.norm_sqr();
                if r2 <= 1.0 {
                    let den = 1.0 + r2;
                    [2.0 * z.re / den, 2.0 * z.im / den, (1.0 - r2) / den]
                } else {
                    // divide through by |z|^2 to stay finite for huge z
                    let t = 1.0 / r2;
                    let den = t + 1.0;
                    [2.0 * z.re * t / den, 2.0 * z.im * t / den, (t - 1.0) / den]
                }
            }
        }
    }

    pub fn chordal_distance(self, other: Star) -> f64 {
        let (a, b) = (self.to_sphere(), other.to_sphere());
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }
}

/// Unordered multiset of stars.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    pub finite: Vec<Complex64>,
    pub at_infinity: usize,
}

impl Constellation {
    pub fn new(stars: &[Star]) -> Self {
        let finite = stars
            .iter()
            .filter_map(|s| match s {
                Star::Finite(z) => Some(*z),
                Star::Infinity => None,
            })
            .collect();
        let at_infinity = stars.iter().filter(|s| matches!(s, Star::Infinity)).count();
        Self { finite, at_infinity }
    }

    pub fn len(&self) -> usize {
        self.finite.len() + self.at_infinity
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stars(&self) -> Vec<Star> {
        let mut out: Vec<Star> = self.finite.iter().map(|&z| Star::Finite(z)).collect();
        out.extend(std::iter::repeat_n(Star::Infinity, self.at_infinity));
        out
    }

    /// Bottleneck distance between two constellations of equal size: the
    /// smallest achievable maximum chordal distance over pairings (exact for
    /// up to 8 stars, greedy beyond).
    pub fn matching_distance(&self, other: &Constellation) -> Option<f64> {
        let (a, b) = (self.stars(), other.stars());
        if a.len() != b.len() {
            return None;
        }
        let d: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| x.chordal_distance(*y)).collect()).collect();
        if a.len() <= 8 {
            let mut perm: Vec<usize> = (0..a.len()).collect();
            let mut best = f64::INFINITY;
            permute_min(&d, &mut perm, 0, &mut best);
            Some(best)
        } else {
            let mut used = vec![false; b.len()];
            let mut worst: f64 = 0.0;
            for row in &d {
                let (j, v) = row.iter().enumerate().filter(|(j, _)| !used[*j]).min_by(|x, y| x.1.total_cmp(y.1)).expect("equal sizes");
                used[j] = true;
                worst = worst.max(*v);
            }
            Some(worst)
        }
    }
}

fn permute_min(d: &[Vec<f64>], perm: &mut [usize], k: usize, best: &mut f64) {
    if k == perm.len() {
        let worst = perm.iter().enumerate().map(|(i, &j)| d[i][j]).fold(0.0, f64::max);
        *best = best.min(worst);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        let partial = d[k][perm[k]];
        if partial < *best {
            permute_min(d, perm, k + 1, best);
        }
        perm.swap(k, i);
    }
}

/// Normalized symmetric state in the Dicke basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    dicke: Vec<Complex64>,
}

impl SymmetricState {
    /// Normalizes `dicke` (coefficient `k` multiplies `|K−k, k>`).
    pub fn new(dicke: Vec<Complex64>) -> Result<Self> {
        if dicke.len() < 2 {
            return Err(Error::InvalidArgument("a symmetric state needs at least one qubit".into()));
        }
        let n = dicke.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { dicke: dicke.into_iter().map(|x| x / n).collect() })
    }

    pub fn num_qubits(&self) -> usize {
        self.dicke.len() - 1
    }

    pub fn dicke_coeffs(&self) -> &[Complex64] {
        &self.dicke
    }

    /// Dense `K`-qubit amplitudes.
    pub fn to_pure_state(&self) -> PureState {
        let k = self.num_qubits();
        let amps = (0..1usize << k)
            .map(|idx| {
                let w = idx.count_ones() as usize;
                self.dicke[w] / binomial(k, w).sqrt()
            })
            .collect();
        PureState::from_normalized(vec![2; k], amps)
    }

    /// Projects a qubit state onto the symmetric subspace; fails when more
    /// than `tol` of the norm lies outside it.
    pub fn from_pure_state(state: &PureState, tol: f64) -> Result<Self> {
        if !state.is_qubits() {
            return Err(Error::WrongShape("symmetric states are qubit registers".into()));
        }
        let k = state.num_sites();
        let mut dicke = vec![ZERO; k + 1];
        for (idx, a) in state.amps().iter().enumerate() {
            dicke[idx.count_ones() as usize] += a;
        }
        for (w, d) in dicke.iter_mut().enumerate() {
            *d /= binomial(k, w).sqrt();
        }
        let weight: f64 = dicke.iter().map(|x| x.norm_sqr()).sum();
        if (1.0 - weight).abs() > tol {
            return Err(Error::InvalidArgument(format!("state is not permutation symmetric (symmetric weight {weight})")));
        }
        Self::new(dicke)
    }

    /// Coefficients of the Majorana polynomial, highest power first.
    pub fn majorana_coeffs(&self) -> Vec<Complex64> {
        let k = self.num_qubits();
        self.dicke.iter().enumerate().map(|(j, d)| d * (if j % 2 == 0 { 1.0 } else { -1.0 }) * binomial(k, j).sqrt()).collect()
    }
}

/// Roots of `Σ coeffs[i] z^{n−i}` (highest power first, nonzero leading
/// coefficient) via companion-matrix eigenvalues and one Newton step.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lead = coeffs[0];
    let mut comp = CMatrix::zeros(n, n);
    for j in 0..n {
        comp[(0, j)] = -coeffs[j + 1] / lead;
    }
    for i in 1..n {
        comp[(i, i - 1)] = ONE;
    }
    let eig = companion_eigenvalues(comp);
    eig.iter()
        .map(|&z| {
            let (p, dp) = horner_with_derivative(coeffs, z);
            if dp.norm() > 0.0 {
                let polished = z - p / dp;
                if horner_with_derivative(coeffs, polished).0.norm() < p.norm() {
                    return polished;
                }
            }
            z
        })
        .collect()
}

/// Shifted QR can stall on companion matrices of `z^n ± 1` (they are
/// permutation-like); on failure retry after fixed unitary similarities.
fn companion_eigenvalues(comp: CMatrix) -> Vec<Complex64> {
    let n = comp.nrows();
    let mut rng = crate::sampling::rng_from_seed(0xc0ffee);
    let mut m = comp;
    for _ in 0..8 {
        if let Some(eig) = nalgebra::Schur::try_new(m.clone(), f64::EPSILON, 10_000).and_then(|s| s.eigenvalues()) {
            return eig.iter().copied().collect();
        }
        let q = crate::sampling::random_unitary(&mut rng, n);
        m = &q * m * q.adjoint();
    }
    panic!("Schur iteration failed on a companion matrix after 8 similarity retries");
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &a in coeffs {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Relative size below which a polynomial coefficient counts as zero.
const COEFF_ZERO: f64 = 1e-12;

pub fn to_constellation(state: &SymmetricState) -> Constellation {
    let coeffs = state.majorana_coeffs();
    let max = coeffs.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let is_zero = |x: &Complex64| x.norm() <= COEFF_ZERO * max;
    let lead = coeffs.iter().take_while(|x| is_zero(x)).count();
    let trail = coeffs.iter().rev().take_while(|x| is_zero(x)).count();
    let core = &coeffs[lead..coeffs.len() - trail];
    let mut finite = vec![ZERO; trail];
    finite.extend(polynomial_roots(core));
    Constellation { finite, at_infinity: lead }
}

/// Inverse of [`to_constellation`]; the first nonzero Dicke coefficient is
/// made real and positive.
pub fn from_constellation(constellation: &Constellation) -> Result<SymmetricState> {
    let k = constellation.len();
    if k == 0 {
        return Err(Error::InvalidArgument("empty constellation".into()));
    }
    // monic product of (z − z_i) over the finite stars, highest power first
    let mut poly = vec![ONE];
    for &z in &constellation.finite {
        let mut next = vec![ZERO; poly.len() + 1];
        for (i, &a) in poly.iter().enumerate() {
            next[i] += a;
            next[i + 1] -= a * z;
        }
        poly = next;
    }
    // coefficient of z^{K−j} sits at poly index j − at_infinity
    let mut dicke = vec![ZERO; k + 1];
    for (i, &a) in poly.iter().enumerate() {
        let j = i + constellation.at_infinity;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        dicke[j] = a * sign / binomial(k, j).sqrt();
    }
    let first = dicke.iter().find(|x| x.norm() > 0.0).copied().unwrap_or(ONE);
    let phase = first.conj() / first.norm();
    SymmetricState::new(dicke.into_iter().map(|x| x * phase).collect())
}

/// `z ↦ (az + b) / (cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        if (a * d - b * c).norm() <= 1e-12 {
            return Err(Error::InvalidArgument("Mobius map must have ad − bc ≠ 0".into()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: ONE, b: ZERO, c: ZERO, d: ONE }
    }

    /// Star motion induced by applying the single-qubit matrix `u` to every
    /// site of a symmetric state.
    pub fn from_local_matrix(u: &CMatrix) -> Result<Self> {
        if u.shape() != (2, 2) {
            return Err(Error::WrongShape("expected a 2x2 matrix".into()));
        }
        Self::new(u[(1, 1)], u[(1, 0)], u[(0, 1)], u[(0, 0)])
    }

    pub fn apply(&self, s: Star) -> Star {
        let (x, y) = s.projective();
        let num = self.a * x + self.b * y;
        let den = self.c * x + self.d * y;
        if den == ZERO {
            Star::Infinity
        } else {
            Star::Finite(num / den)
        }
    }
}

pub fn apply_mobius(constellation: &Constellation, map: &MobiusMap) -> Constellation {
    let stars: Vec<Star> = constellation.stars().into_iter().map(|s| map.apply(s)).collect();
    Constellation::new(&stars)
}

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;

/// Partition of `K` by star-coincidence clusters (single linkage on the
/// chordal metric), descending.
pub fn degeneracy_type(constellation: &Constellation, tol: f64) -> Vec<usize> {
    let stars = constellation.stars();
    let n = stars.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if stars[i].chordal_distance(stars[j]) <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut sizes = vec![0usize; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        sizes[r] += 1;
    }
    let mut out: Vec<usize> = sizes.into_iter().filter(|&s| s > 0).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Cross ratio `(z1−z3)(z2−z4) / ((z2−z3)(z1−z4))` with projective handling of ∞.
pub fn cross_ratio(z1: Star, z2: Star, z3: Star, z4: Star) -> Result<Star> {
    let p = [z1.projective(), z2.projective(), z3.projective(), z4.projective()];
    let det = |i: usize, j: usize| p[i].0 * p[j].1 - p[j].0 * p[i].1;
    let num = det(0, 2) * det(1, 3);
    let den = det(1, 2) * det(0, 3);
    match (num == ZERO, den == ZERO) {
        (true, true) => Err(Error::Indeterminate),
        (false, true) => Ok(Star::Infinity),
        _ => Ok(Star::Finite(num / den)),
    }
}

/// The six values taken by the cross ratio under reordering of its points.
pub fn cross_ratio_orbit(l: Complex64) -> [Complex64; 6] {
    [l, ONE / l, ONE - l, ONE / (ONE - l), l / (l - ONE), (l - ONE) / l]
}

const REGION_SLACK: f64 = 1e-12;

/// Orbit representative with `|λ| ≤ 1` and `Re λ ≤ 1/2`; ties prefer
/// `Im λ ≥ 0`, then the lexicographically smallest `(Re, Im)`.
pub fn orbit_canonical(l: Complex64) -> Result<Complex64> {
    if !(l.re.is_finite() && l.im.is_finite()) || l == ZERO || l == ONE {
        return Err(Error::InvalidArgument(format!("cross ratio {l} is degenerate")));
    }
    let orbit = cross_ratio_orbit(l);
    let in_region: Vec<Complex64> = orbit.iter().copied().filter(|z| z.norm() <= 1.0 + REGION_SLACK && z.re <= 0.5 + REGION_SLACK).collect();
    let upper: Vec<Complex64> = in_region.iter().copied().filter(|z| z.im >= -REGION_SLACK).collect();
    let pool = if upper.is_empty() { in_region } else { upper };
    pool.into_iter()
        .min_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)))
        .ok_or_else(|| Error::InvalidArgument(format!("no orbit value of {l} in the fundamental region")))
}

/// Orbit-flag tolerance for GHZ-equivalence, tetrahedral and concyclic tests.
pub const ORBIT_FLAG_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricClassification {
    pub num_qubits: usize,
    pub degeneracy: Vec<usize>,
    /// Canonical cross ratio, present when four distinct stars exist.
    pub cross_ratio: Option<Complex64>,
    pub ghz_equivalent: bool,
    pub tetrahedral: bool,
    pub concyclic: bool,
}

impl SymmetricClassification {
    pub fn label(&self) -> String {
        match (self.num_qubits, self.degeneracy.as_slice()) {
            (_, [_]) => "separable".into(),
            (3, [2, 1]) => "W".into(),
            (3, [1, 1, 1]) => "GHZ".into(),
            (4, [3, 1]) => "W".into(),
            _ if self.ghz_equivalent => "GHZ".into(),
            _ if self.tetrahedral => "tetrahedral".into(),
            _ => format_partition(&self.degeneracy),
        }
    }
}

pub fn format_partition(p: &[usize]) -> String {
    let inner: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn classify_sym(state: &SymmetricState) -> Result<SymmetricClassification> {
    let k = state.num_qubits();
    if k != 3 && k != 4 {
        return Err(Error::InvalidArgument(format!("symmetric classification supports 3 or 4 qubits, got {k}")));
    }
    let cons = to_constellation(state);
    let degeneracy = degeneracy_type(&cons, DEFAULT_CLUSTER_TOL);
    let mut out = SymmetricClassification { num_qubits: k, degeneracy, cross_ratio: None, ghz_equivalent: false, tetrahedral: false, concyclic: false };
    if k == 4 && out.degeneracy.len() == 4 {
        let s = cons.stars();
        if let Star::Finite(l) = cross_ratio(s[0], s[1], s[2], s[3])? {
            let canon = orbit_canonical(l)?;
            out.ghz_equivalent = (canon + ONE).norm() < ORBIT_FLAG_TOL;
            out.tetrahedral = (canon - Complex64::from_polar(1.0, PI / 3.0)).norm() < ORBIT_FLAG_TOL;
            out.concyclic = canon.im.abs() < ORBIT_FLAG_TOL;
            out.cross_ratio = Some(canon);
        }
    }
    Ok(out)
}

/// Tetrahedral constellation `{0, √2, √2ω, √2ω²}`.
pub fn tetrahedral_constellation() -> Constellation {
    let r = 2f64.sqrt();
    Constellation { finite: vec![ZERO, c(r, 0.0), Complex64::from_polar(r, 2.0 * PI / 3.0), Complex64::from_polar(r, 4.0 * PI / 3.0)], at_infinity: 0 }
}

pub fn parse_constellation(text: &str, expected: Option<usize>) -> Result<Constellation> {
    let mut stars = Vec::new();
    for (line, body) in crate::io::content_lines(text) {
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["star", "inf"] => stars.push(Star::Infinity),
            ["star", re, im] => stars.push(Star::Finite(c(crate::io::parse_f64(re, line)?, crate::io::parse_f64(im, line)?))),
            _ => return Err(Error::Parse { line, msg: "expected `star re im` or `star inf`".into() }),
        }
    }
    if let Some(k) = expected {
        if stars.len() != k {
            return Err(Error::InvalidArgument(format!("constellation has {} stars, expected {k}", stars.len())));
        }
    }
    if stars.is_empty() {
        return Err(Error::InvalidArgument("empty constellation".into()));
    }
    Ok(Constellation::new(&stars))
}

pub fn format_constellation(cons: &Constellation) -> String {
    let mut out = String::new();
    for s in cons.stars() {
        match s {
            Star::Finite(z) => out.push_str(&format!("star {:?} {:?}\n", z.re, z.im)),
            Star::Infinity => out.push_str("star inf\n"),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{complex_gaussian, random_unitary, rng_from_seed};
    use crate::state::{apply_local, LocalMode};

    fn sym(d: &[f64]) -> SymmetricState {
        SymmetricState::new(d.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn ghz_stars_form_equilateral_triangle() {
        let cons = to_constellation(&sym(&[1.0, 0.0, 0.0, 1.0]));
        assert_eq!(cons.at_infinity, 0);
        let s = cons.stars();
        for z in &cons.finite {
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
        let d01 = s[0].chordal_distance(s[1]);
        assert!((d01 - s[1].chordal_distance(s[2])).abs() < 1e-12);
        assert!((d01 - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(degeneracy_type(&cons, DEFAULT_CLUSTER_TOL), vec![1, 1, 1]);
    }

    #[test]
    fn dicke_and_coherent_constellations() {
        let w = to_constellation(&sym(&[0.0, 1.0, 0.0, 0.0]));
        assert_eq!((w.finite.clone(), w.at_infinity), (vec![ZERO, ZERO], 1));
        assert_eq!(degeneracy_type(&w, DEFAULT_CLUSTER_TOL), vec![2, 1]);
        let zero4 = to_constellation(&sym(&[1.0, 0.0, 0.0, 0.0, 0.0]));
        assert_eq!(degeneracy_type(&zero4, DEFAULT_CLUSTER_TOL), vec![4]);
        let z = c(0.3, -0.7);
        let coherent: Vec<Complex64> = (0..=3).map(|k| z.powu(k as u32) * binomial(3, k).sqrt()).collect();
        let cons = to_constellation(&SymmetricState::new(coherent).unwrap());
        assert!(cons.finite.iter().all(|r| (r - z).norm() < 1e-5));
    }

    #[test]
    fn dense_round_trip() {
        let s = SymmetricState::new(vec![c(0.2, 0.1), c(-0.5, 0.0), c(0.0, 0.3), c(0.4, 0.4)]).unwrap();
        let back = SymmetricState::from_pure_state(&s.to_pure_state(), 1e-10).unwrap();
        for (a, b) in back.dicke_coeffs().iter().zip(s.dicke_coeffs()) {
            assert!((a - b).norm() < 1e-14);
        }
        let asym = PureState::from_real(vec![2, 2], &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(SymmetricState::from_pure_state(&asym, 1e-10).is_err());
    }

    #[test]
    fn from_constellation_examples() {
        let w = from_constellation(&Constellation { finite: vec![ZERO, ZERO], at_infinity: 1 }).unwrap();
        assert!((w.dicke_coeffs()[1] - ONE).norm() < 1e-15);
        let one = from_constellation(&Constellation { finite: vec![ZERO], at_infinity: 0 }).unwrap();
        assert_eq!(one.dicke_coeffs(), &[ONE, ZERO]);
        let mut rng = rng_from_seed(8);
        for _ in 0..50 {
            let stars: Vec<Complex64> = (0..5).map(|_| complex_gaussian(&mut rng)).collect();
            let cons = Constellation { finite: stars, at_infinity: 0 };
            let back = to_constellation(&from_constellation(&cons).unwrap());
            assert!(back.matching_distance(&cons).unwrap() < 1e-8);
        }
    }

    #[test]
    fn shared_unitary_rotates_stars() {
        let mut rng = rng_from_seed(12);
        for _ in 0..20 {
            let dicke: Vec<Complex64> = (0..5).map(|_| complex_gaussian(&mut rng)).collect();
            let s = SymmetricState::new(dicke).unwrap();
            let u = random_unitary(&mut rng, 2);
            let rotated = apply_local(&s.to_pure_state(), &vec![u.clone(); 4], LocalMode::Unitary).unwrap();
            let lhs = to_constellation(&SymmetricState::from_pure_state(&rotated, 1e-10).unwrap());
            let rhs = apply_mobius(&to_constellation(&s), &MobiusMap::from_local_matrix(&u).unwrap());
            assert!(lhs.matching_distance(&rhs).unwrap() < 1e-8);
            let before = to_constellation(&s).stars();
            let after = rhs.stars();
            for i in 0..4 {
                for j in 0..4 {
                    assert!((before[i].chordal_distance(before[j]) - after[i].chordal_distance(after[j])).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn boost_moves_stars_north() {
        let cons = Constellation { finite: vec![c(1.0, 1.0), c(-2.0, 0.5), c(0.1, 0.0)], at_infinity: 0 };
        let boost = MobiusMap::new(c(0.5, 0.0), ZERO, ZERO, c(2.0, 0.0)).unwrap();
        let moved = apply_mobius(&cons, &boost);
        let north = Star::Finite(ZERO);
        for (a, b) in cons.stars().iter().zip(moved.stars()) {
            assert!(b.chordal_distance(north) < a.chordal_distance(north));
        }
        assert_eq!(apply_mobius(&cons, &MobiusMap::identity()), cons);
    }

    #[test]
    fn cross_ratio_examples() {
        let f = |re: f64, im: f64| Star::Finite(c(re, im));
        let l = cross_ratio(f(1.0, 0.0), f(-1.0, 0.0), f(0.0, 1.0), f(0.0, -1.0)).unwrap();
        let Star::Finite(l) = l else { panic!("finite expected") };
        assert!((l + ONE).norm() < 1e-15);
        assert!((orbit_canonical(l).unwrap() + ONE).norm() < 1e-15);
        let deg = cross_ratio(f(0.0, 0.0), f(0.0, 0.0), f(1.0, 0.0), Star::Infinity).unwrap();
        assert!(matches!(deg, Star::Infinity) || matches!(deg, Star::Finite(z) if z == ZERO || z == ONE));
        assert_eq!(cross_ratio(f(0.0, 0.0), f(0.0, 0.0), f(0.0, 0.0), f(1.0, 0.0)), Err(Error::Indeterminate));
    }

    #[test]
    fn orbit_values_share_representative() {
        let mut rng = rng_from_seed(21);
        for _ in 0..200 {
            let l = complex_gaussian(&mut rng);
            let canon = orbit_canonical(l).unwrap();
            for v in cross_ratio_orbit(l) {
                assert!((orbit_canonical(v).unwrap() - canon).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn symmetric_classification() {
        let ghz4 = classify_sym(&sym(&[1.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(ghz4.degeneracy, vec![1, 1, 1, 1]);
        assert!(ghz4.ghz_equivalent && ghz4.concyclic && !ghz4.tetrahedral);
        let d4 = classify_sym(&sym(&[0.0, 0.0, 1.0, 0.0, 0.0])).unwrap();
        assert_eq!(d4.degeneracy, vec![2, 2]);
        assert_eq!(classify_sym(&sym(&[0.0, 0.0, 0.0, 0.0, 1.0])).unwrap().label(), "separable");
        let tet = classify_sym(&from_constellation(&tetrahedral_constellation()).unwrap()).unwrap();
        assert!(tet.tetrahedral && !tet.ghz_equivalent, "{tet:?}");
        assert_eq!(classify_sym(&sym(&[1.0, 0.0, 0.0, 1.0])).unwrap().label(), "GHZ");
        assert_eq!(classify_sym(&sym(&[0.0, 1.0, 0.0, 0.0])).unwrap().label(), "W");
        assert!(classify_sym(&sym(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn constellation_text_round_trip() {
        let cons = Constellation { finite: vec![c(0.5, -1.0)], at_infinity: 2 };
        let back = parse_constellation(&format_constellation(&cons), Some(3)).unwrap();
        assert_eq!(back, cons);
        assert!(parse_constellation("star 1 0\n", Some(2)).is_err());
        assert!(matches!(parse_constellation("star x 0\n", None), Err(Error::Parse { line: 1, .. })));
    }
}
