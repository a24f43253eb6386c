//! Dense pure states of `K` subsystems, local operations, reductions and spectra.
//!
//! Amplitudes are stored in row-major product-basis order: the first
//! subsystem's digit is the most significant, so `|i_A j_B k_C>` sits at flat
//! index `(i * d_B + j) * d_C + k`.
//!
//! Entropies are reported in nats; divide by `ln 2` for bits.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, ONE, ZERO};
use crate::sampling;
use num_complex::Complex64;
use rand::Rng;

/// Normalized pure state with one index per subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
    normalization: f64,
}

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::InvalidDims("at least one subsystem is required".into()));
    }
    if dims.contains(&0) {
        return Err(Error::InvalidDims("local dimensions must be positive".into()));
    }
    dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).ok_or_else(|| Error::TooLarge("Hilbert space dimension overflows".into()))
}

impl PureState {
    /// Normalizes `amps` and wraps them; the scale factor applied is kept.
    pub fn new(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        let total = check_dims(&dims)?;
        if amps.len() != total {
            return Err(Error::DimensionMismatch { expected: total, got: amps.len() });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        let factor = 1.0 / norm;
        let amps = amps.into_iter().map(|a| a * factor).collect();
        Ok(Self { dims, amps, normalization: factor })
    }

    pub fn from_real(dims: Vec<usize>, amps: &[f64]) -> Result<Self> {
        Self::new(dims, amps.iter().map(|&x| c(x, 0.0)).collect())
    }

    /// Builds a state from `(digits, amplitude)` pairs; omitted strings are zero.
    pub fn from_terms(dims: Vec<usize>, terms: &[(&[usize], Complex64)]) -> Result<Self> {
        let total = check_dims(&dims)?;
        let mut amps = vec![ZERO; total];
        for (digits, a) in terms {
            let idx = index_of(&dims, digits)?;
            amps[idx] += *a;
        }
        Self::new(dims, amps)
    }

    /// Like [`PureState::from_terms`] with basis strings such as `"0112"`.
    pub fn from_bitstrings(dims: Vec<usize>, terms: &[(&str, Complex64)]) -> Result<Self> {
        let parsed: Vec<(Vec<usize>, Complex64)> = terms
            .iter()
            .map(|(s, a)| {
                s.chars()
                    .map(|ch| ch.to_digit(36).map(|d| d as usize).ok_or_else(|| Error::InvalidArgument(format!("bad basis string {s}"))))
                    .collect::<Result<Vec<_>>>()
                    .map(|d| (d, *a))
            })
            .collect::<Result<_>>()?;
        let refs: Vec<(&[usize], Complex64)> = parsed.iter().map(|(d, a)| (d.as_slice(), *a)).collect();
        Self::from_terms(dims, &refs)
    }

    pub fn basis(dims: Vec<usize>, digits: &[usize]) -> Result<Self> {
        Self::from_terms(dims, &[(digits, ONE)])
    }

    /// Tensor product of single-site vectors.
    pub fn product(factors: &[Vec<Complex64>]) -> Result<Self> {
        let dims: Vec<usize> = factors.iter().map(|f| f.len()).collect();
        check_dims(&dims)?;
        let mut amps = vec![ONE];
        for f in factors {
            let mut next = Vec::with_capacity(amps.len() * f.len());
            for a in &amps {
                for b in f {
                    next.push(a * b);
                }
            }
            amps = next;
        }
        Self::new(dims, amps)
    }

    pub(crate) fn from_normalized(dims: Vec<usize>, amps: Vec<Complex64>) -> Self {
        Self { dims, amps, normalization: 1.0 }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn num_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Factor that was multiplied into the input amplitudes on construction.
    pub fn normalization_factor(&self) -> f64 {
        self.normalization
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<Complex64> {
        Ok(self.amps[index_of(&self.dims, digits)?])
    }

    pub fn digits_of(&self, index: usize) -> Vec<usize> {
        digits_of(&self.dims, index)
    }

    /// Qubit register of `k` sites, or the common local dimension if uniform.
    pub fn uniform_local_dim(&self) -> Option<usize> {
        let d = self.dims[0];
        self.dims.iter().all(|&x| x == d).then_some(d)
    }

    pub fn is_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    pub fn conj(&self) -> Self {
        Self { dims: self.dims.clone(), amps: self.amps.iter().map(|a| a.conj()).collect(), normalization: 1.0 }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::WrongShape(format!("dims {:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Reorders subsystems: new site `j` is old site `perm[j]`.
    pub fn permute_sites(&self, perm: &[usize]) -> Result<Self> {
        let k = self.num_sites();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidSites(format!("{perm:?} is not a permutation of {k} sites")));
        }
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut amps = vec![ZERO; self.dim()];
        for (idx, a) in self.amps.iter().enumerate() {
            let old = digits_of(&self.dims, idx);
            let new: Vec<usize> = perm.iter().map(|&p| old[p]).collect();
            amps[flat_index(&new_dims, &new)] = *a;
        }
        Ok(Self { dims: new_dims, amps, normalization: 1.0 })
    }

    /// Reshapes into a matrix whose rows enumerate the `left` sites (ascending
    /// site order) and whose columns enumerate the remaining sites.
    pub fn matricize(&self, left: &[usize]) -> Result<CMatrix> {
        let (left, right) = split_sites(self.num_sites(), left, true)?;
        let dl: usize = left.iter().map(|&s| self.dims[s]).product();
        let dr: usize = right.iter().map(|&s| self.dims[s]).product();
        if left.iter().enumerate().all(|(i, &s)| i == s) {
            return Ok(CMatrix::from_row_slice(dl, dr, &self.amps));
        }
        let mut m = CMatrix::zeros(dl, dr);
        for (idx, a) in self.amps.iter().enumerate() {
            let d = digits_of(&self.dims, idx);
            let row = left.iter().fold(0, |acc, &s| acc * self.dims[s] + d[s]);
            let col = right.iter().fold(0, |acc, &s| acc * self.dims[s] + d[s]);
            m[(row, col)] = *a;
        }
        Ok(m)
    }
}

pub(crate) fn flat_index(dims: &[usize], digits: &[usize]) -> usize {
    dims.iter().zip(digits).fold(0, |acc, (&d, &x)| acc * d + x)
}

pub fn index_of(dims: &[usize], digits: &[usize]) -> Result<usize> {
    if digits.len() != dims.len() {
        return Err(Error::WrongShape(format!("basis string has {} digits, state has {} sites", digits.len(), dims.len())));
    }
    if let Some((k, _)) = digits.iter().zip(dims).enumerate().find(|(_, (x, d))| *x >= *d) {
        return Err(Error::InvalidArgument(format!("digit {} on site {k} exceeds local dimension {}", digits[k], dims[k])));
    }
    Ok(flat_index(dims, digits))
}

pub fn digits_of(dims: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    out
}

/// Validates a site subset and returns it sorted with its complement.
fn split_sites(num_sites: usize, sites: &[usize], allow_all: bool) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut left = sites.to_vec();
    left.sort_unstable();
    left.dedup();
    if left.len() != sites.len() {
        return Err(Error::InvalidSites("duplicate site".into()));
    }
    if let Some(&s) = left.iter().find(|&&s| s >= num_sites) {
        return Err(Error::InvalidSites(format!("site {s} out of range for {num_sites} sites")));
    }
    if left.is_empty() || (!allow_all && left.len() == num_sites) {
        return Err(Error::InvalidSites("subset must be non-empty and proper".into()));
    }
    let right = (0..num_sites).filter(|s| !left.contains(s)).collect();
    Ok((left, right))
}

/// Split of the sites into `left | right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    pub fn new(left_sites: &[usize], num_sites: usize) -> Result<Self> {
        let (left, right) = split_sites(num_sites, left_sites, false)?;
        Ok(Self { left, right })
    }

    /// The cut after the first `size` sites.
    pub fn prefix(size: usize, num_sites: usize) -> Result<Self> {
        Self::new(&(0..size).collect::<Vec<_>>(), num_sites)
    }

    pub fn left_sites(&self) -> &[usize] {
        &self.left
    }

    pub fn right_sites(&self) -> &[usize] {
        &self.right
    }
}

/// Whether [`apply_local`] must preserve the norm or may renormalize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalMode {
    Unitary,
    Slocc,
}

const UNITARY_TOL: f64 = 1e-10;

/// Applies one operator per site, `(L_1 ⊗ ... ⊗ L_K) |ψ>`.
pub fn apply_local(state: &PureState, ops: &[CMatrix], mode: LocalMode) -> Result<PureState> {
    if ops.len() != state.num_sites() {
        return Err(Error::WrongShape(format!("{} operators for {} sites", ops.len(), state.num_sites())));
    }
    for (site, (op, &d)) in ops.iter().zip(state.dims()).enumerate() {
        if op.shape() != (d, d) {
            return Err(Error::WrongShape(format!("operator on site {site} is {:?}, expected {d}x{d}", op.shape())));
        }
        match mode {
            LocalMode::Unitary => {
                let residual = linalg::identity_residual(&(op.adjoint() * op));
                if residual > UNITARY_TOL {
                    return Err(Error::NotUnitary { site, residual });
                }
            }
            LocalMode::Slocc => {
                let s = linalg::singular_values(op);
                if s.last().copied().unwrap_or(0.0) <= 1e-12 * s[0].max(f64::MIN_POSITIVE) {
                    return Err(Error::Singular { site });
                }
            }
        }
    }
    let mut amps = state.amps().to_vec();
    for (site, op) in ops.iter().enumerate() {
        apply_site_operator(&mut amps, state.dims(), site, op);
    }
    match mode {
        LocalMode::Unitary => Ok(PureState::from_normalized(state.dims().to_vec(), amps)),
        LocalMode::Slocc => PureState::new(state.dims().to_vec(), amps),
    }
}

/// In-place `op` on one site of a flat amplitude vector.
pub(crate) fn apply_site_operator(amps: &mut [Complex64], dims: &[usize], site: usize, op: &CMatrix) {
    let d = dims[site];
    let stride: usize = dims[site + 1..].iter().product();
    let outer: usize = dims[..site].iter().product();
    let mut buf = vec![ZERO; d];
    for o in 0..outer {
        for s in 0..stride {
            let base = o * d * stride + s;
            for (j, b) in buf.iter_mut().enumerate() {
                *b = amps[base + j * stride];
            }
            for i in 0..d {
                let mut acc = ZERO;
                for (j, b) in buf.iter().enumerate() {
                    acc += op[(i, j)] * b;
                }
                amps[base + i * stride] = acc;
            }
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::InvalidDensityMatrix(format!("shape {:?} is not square", entries.shape())));
        }
        let herm = linalg::max_abs_diff(&entries, &entries.adjoint());
        if herm > 1e-12 {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian (residual {herm:.3e})")));
        }
        let tr = entries.trace();
        if (tr - ONE).norm() > 1e-12 {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr} != 1")));
        }
        let min = linalg::hermitian_eigenvalues(&entries).last().copied().unwrap_or(0.0);
        if min < -1e-10 {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_matrix_unchecked(entries: CMatrix) -> Self {
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.entries)
    }

    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|x| x.norm_sqr()).sum()
    }

    pub fn trace_power(&self, n: u32) -> Complex64 {
        let mut p = self.entries.clone();
        for _ in 1..n {
            p = &p * &self.entries;
        }
        p.trace()
    }

    pub fn determinant(&self) -> f64 {
        self.entries.determinant().re
    }
}

/// Reduced state on `kept_sites`, basis ordered by ascending site index.
pub fn partial_trace(state: &PureState, kept_sites: &[usize]) -> Result<DensityMatrix> {
    split_sites(state.num_sites(), kept_sites, false)?;
    let m = state.matricize(kept_sites)?;
    let rho = &m * m.adjoint();
    let rho = (&rho + rho.adjoint()).scale(0.5);
    Ok(DensityMatrix::from_matrix_unchecked(rho))
}

/// Schmidt vector and bases for one bipartition.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Descending Schmidt coefficients (squared singular values), length
    /// `min(d_left, d_right)`.
    pub lambdas: Vec<f64>,
    /// Columns are orthonormal left Schmidt vectors.
    pub left_basis: CMatrix,
    /// Columns are orthonormal right Schmidt vectors.
    pub right_basis: CMatrix,
    pub rank: usize,
}

/// Relative cutoff for counting a Schmidt coefficient towards the rank.
pub const RANK_THRESHOLD: f64 = 1e-10;

pub fn numerical_rank(lambdas: &[f64]) -> usize {
    let max = lambdas.first().copied().unwrap_or(0.0);
    lambdas.iter().filter(|&&l| l > RANK_THRESHOLD * max).count()
}

pub fn schmidt(state: &PureState, bipartition: &Bipartition) -> Result<SchmidtDecomposition> {
    let m = state.matricize(bipartition.left_sites())?;
    let dec = linalg::svd(&m);
    let lambdas: Vec<f64> = dec.s.iter().map(|s| s * s).collect();
    let rank = numerical_rank(&lambdas);
    Ok(SchmidtDecomposition { lambdas, left_basis: dec.u, right_basis: dec.vt.transpose(), rank })
}

/// Spectral summary of a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectraReport {
    pub eigenvalues: Vec<f64>,
    pub von_neumann: f64,
    pub linear_entropy: f64,
    pub purity: f64,
}

pub fn spectra_report(dm: &DensityMatrix) -> SpectraReport {
    let eigenvalues = dm.eigenvalues();
    let purity = dm.purity();
    SpectraReport { von_neumann: linalg::entropy_nats(&eigenvalues), linear_entropy: 1.0 - purity, purity, eigenvalues }
}

/// Von Neumann entropy of the reduction on `sites`, via Schmidt values.
pub fn entanglement_entropy(state: &PureState, sites: &[usize]) -> Result<f64> {
    let bip = Bipartition::new(sites, state.num_sites())?;
    let s = linalg::singular_values(&state.matricize(bip.left_sites())?);
    let p: Vec<f64> = s.iter().map(|x| x * x).collect();
    Ok(linalg::entropy_nats(&p))
}

/// Fubini–Study random state: complex Gaussian amplitudes, normalized.
pub fn random_state(dims: &[usize], seed: u64) -> Result<PureState> {
    let mut rng = sampling::rng_from_seed(seed);
    random_state_with(dims, &mut rng)
}

pub fn random_state_with<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<PureState> {
    let total = check_dims(dims)?;
    PureState::new(dims.to_vec(), sampling::gaussian_vector(rng, total))
}

/// Large-environment estimate of the mean entanglement entropy of a
/// `size_x`-site region of a random state: `|X| ln N - N^{|X|-|X̄|} / 2`.
pub fn page_expected_entropy(size_x: usize, size_xbar: usize, n: usize) -> Result<f64> {
    if size_x > size_xbar {
        return Err(Error::InvalidArgument(format!("region of {size_x} sites exceeds its complement of {size_xbar}")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("local dimension must be at least 2".into()));
    }
    let nf = n as f64;
    Ok(size_x as f64 * nf.ln() - 0.5 * nf.powi(size_x as i32 - size_xbar as i32))
}

/// Exact mean entropy of an `m`-dimensional reduction of a random pure state
/// on `m x n` (`m <= n`): `sum_{k=n+1}^{mn} 1/k - (m-1)/(2n)`.
pub fn page_exact_entropy(m: usize, n: usize) -> f64 {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    let harmonic: f64 = ((n + 1)..=(m * n)).rev().map(|k| 1.0 / k as f64).sum();
    harmonic - (m as f64 - 1.0) / (2.0 * n as f64)
}
