//! Matrix product states: Vidal-canonical decomposition, truncation,
//! contraction, periodic chains and the one-dimensional PEPS construction.

pub mod dmrg;
pub mod format;
pub mod hamiltonian;
pub mod scaling;

use crate::error::{Error, Result};
use crate::linalg::{entropy_nats, svd, CMatrix, ONE, ZERO};
use crate::sampling::{gaussian_vector, rng_from_seed};
use crate::state::{numerical_rank, PureState};
use num_complex::Complex64;

pub use dmrg::{dmrg_ground_state, GroundStateResult};
pub use hamiltonian::{Mpo, NnHamiltonian};
pub use scaling::{scaling_experiment, ScalingRow, ScalingSource, ScalingTable};

/// Largest dense vector `to_dense` and `peps_1d` will build.
pub const MAX_DENSE: usize = 1 << 24;

/// Residual tolerance for the canonical conditions.
pub const CANONICAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Periodic,
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        })
    }
}

/// Three-index tensor `A[a, i, b]` of shape `(left, phys, right)`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteTensor {
    left: usize,
    phys: usize,
    right: usize,
    data: Vec<Complex64>,
}

fn row_major(m: &CMatrix) -> Vec<Complex64> {
    m.transpose().as_slice().to_vec()
}

impl SiteTensor {
    pub fn new(left: usize, phys: usize, right: usize, data: Vec<Complex64>) -> Result<Self> {
        if left == 0 || phys == 0 || right == 0 {
            return Err(Error::WrongShape(format!("tensor shape ({left}, {phys}, {right}) has a zero extent")));
        }
        if data.len() != left * phys * right {
            return Err(Error::DimensionMismatch { expected: left * phys * right, got: data.len() });
        }
        Ok(Self { left, phys, right, data })
    }

    /// Tensor whose slices are the given `left x right` matrices.
    pub fn from_matrices(mats: &[CMatrix]) -> Result<Self> {
        let (l, r) = mats.first().map(|m| m.shape()).ok_or_else(|| Error::WrongShape("no matrices".into()))?;
        if mats.iter().any(|m| m.shape() != (l, r)) {
            return Err(Error::WrongShape("site matrices differ in shape".into()));
        }
        let mut data = vec![ZERO; l * mats.len() * r];
        for (i, m) in mats.iter().enumerate() {
            for a in 0..l {
                for b in 0..r {
                    data[(a * mats.len() + i) * r + b] = m[(a, b)];
                }
            }
        }
        Self::new(l, mats.len(), r, data)
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.left, self.phys, self.right)
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, a: usize, i: usize, b: usize) -> Complex64 {
        self.data[(a * self.phys + i) * self.right + b]
    }

    /// The `left x right` slice `A^i`.
    pub fn matrix(&self, i: usize) -> CMatrix {
        CMatrix::from_fn(self.left, self.right, |a, b| self.get(a, i, b))
    }

    /// `(left·phys) x right` reshaping.
    fn as_left_matrix(&self) -> CMatrix {
        CMatrix::from_row_slice(self.left * self.phys, self.right, &self.data)
    }

    /// `left x (phys·right)` reshaping.
    fn as_right_matrix(&self) -> CMatrix {
        CMatrix::from_row_slice(self.left, self.phys * self.right, &self.data)
    }

    fn from_left_matrix(m: &CMatrix, left: usize, phys: usize) -> Self {
        Self { left, phys, right: m.ncols(), data: row_major(m) }
    }

    fn from_right_matrix(m: &CMatrix, phys: usize) -> Self {
        Self { left: m.nrows(), phys, right: m.ncols() / phys, data: row_major(m) }
    }
}

/// Peak number of complex entries held by one intermediate during a
/// contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ContractionStats {
    pub peak_elements: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalResiduals {
    /// `‖Σ_i A^i† A^i − 1‖_max` per site.
    pub isometry: Vec<f64>,
    /// `‖Σ_i A^i Λ_k A^i† − Λ_{k−1}‖_max` per site.
    pub consistency: Vec<f64>,
}

impl CanonicalResiduals {
    pub fn max(&self) -> f64 {
        self.isometry.iter().chain(&self.consistency).fold(0.0, |a, &b| a.max(b))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Truncation {
    pub mps: MpsState,
    /// Discarded Schmidt weight at each internal bond, bond 1 first.
    pub discarded: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MpsState {
    tensors: Vec<SiteTensor>,
    /// Schmidt spectrum `Λ_k` at bonds `1..K−1` when known to be canonical.
    spectra: Option<Vec<Vec<f64>>>,
    boundary: Boundary,
}

impl MpsState {
    pub fn new(tensors: Vec<SiteTensor>, boundary: Boundary) -> Result<Self> {
        let k = tensors.len();
        if k == 0 {
            return Err(Error::InvalidDims("an MPS needs at least one site".into()));
        }
        for j in 0..k.saturating_sub(1) {
            if tensors[j].right != tensors[j + 1].left {
                return Err(Error::WrongShape(format!("bond {} mismatch: {} vs {}", j + 1, tensors[j].right, tensors[j + 1].left)));
            }
        }
        match boundary {
            Boundary::Open if tensors[0].left != 1 || tensors[k - 1].right != 1 => {
                Err(Error::WrongShape("open boundary needs unit outer bonds".into()))
            }
            Boundary::Periodic if tensors[0].left != tensors[k - 1].right => {
                Err(Error::WrongShape("periodic boundary needs matching outer bonds".into()))
            }
            _ => Ok(Self { tensors, spectra: None, boundary }),
        }
    }

    /// Same tensors on every site of a periodic chain.
    pub fn uniform_periodic(tensor: SiteTensor, sites: usize) -> Result<Self> {
        Self::new(vec![tensor; sites], Boundary::Periodic)
    }

    pub fn num_sites(&self) -> usize {
        self.tensors.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.tensors.iter().map(|t| t.phys).collect()
    }

    pub fn tensors(&self) -> &[SiteTensor] {
        &self.tensors
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn spectra(&self) -> Option<&[Vec<f64>]> {
        self.spectra.as_deref()
    }

    /// Internal bond dimensions `r_1 … r_{K−1}`.
    pub fn bond_dims(&self) -> Vec<usize> {
        self.tensors[..self.num_sites() - 1].iter().map(|t| t.right).collect()
    }

    pub fn max_bond(&self) -> usize {
        self.tensors.iter().map(|t| t.left.max(t.right)).max().unwrap_or(1)
    }

    fn require_open(&self, what: &str) -> Result<()> {
        if self.boundary != Boundary::Open {
            return Err(Error::InvalidArgument(format!("{what} needs an open-boundary MPS")));
        }
        Ok(())
    }

    /// Successive SVDs of the dense tensor, left to right.
    pub fn from_dense(state: &PureState) -> Self {
        let dims = state.dims();
        let k = dims.len();
        let mut tensors = Vec::with_capacity(k);
        let mut spectra = Vec::with_capacity(k - 1);
        let mut rest: Vec<Complex64> = state.amps().to_vec();
        let mut r = 1usize;
        let mut cols = state.dim();
        for &n in &dims[..k - 1] {
            cols /= n;
            let m = CMatrix::from_row_slice(r * n, cols, &rest);
            let dec = svd(&m);
            let lambdas: Vec<f64> = dec.s.iter().map(|s| s * s).collect();
            let keep = numerical_rank(&lambdas).max(1);
            let total: f64 = lambdas[..keep].iter().sum();
            spectra.push(lambdas[..keep].iter().map(|l| l / total).collect());
            tensors.push(SiteTensor::from_left_matrix(&dec.u.columns(0, keep).into_owned(), r, n));
            let sv = CMatrix::from_fn(keep, cols, |a, b| dec.vt[(a, b)] * dec.s[a]);
            rest = row_major(&sv);
            r = keep;
        }
        let norm = rest.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        rest.iter_mut().for_each(|x| *x /= norm);
        tensors.push(SiteTensor { left: r, phys: dims[k - 1], right: 1, data: rest });
        Self { tensors, spectra: Some(spectra), boundary: Boundary::Open }
    }

    /// Amplitudes of the chain without normalization: matrix products for
    /// an open chain, their trace for a periodic one.
    pub fn to_dense_amplitudes(&self) -> Result<Vec<Complex64>> {
        let total = self.dims().iter().try_fold(1usize, |acc, &d| acc.checked_mul(d).filter(|&t| t <= MAX_DENSE));
        let total = total.ok_or_else(|| Error::TooLarge(format!("dense vector over {MAX_DENSE} entries")))?;
        let d0 = self.tensors[0].left;
        // v[(a0 * prefix + p) * r + b]
        let mut prefix = 1usize;
        let mut r = d0;
        let mut v = vec![ZERO; d0 * d0];
        for a in 0..d0 {
            v[a * d0 + a] = ONE;
        }
        for t in &self.tensors {
            let (l, n, rr) = t.shape();
            debug_assert_eq!(l, r);
            let mut next = vec![ZERO; d0 * prefix * n * rr];
            for a0 in 0..d0 {
                for p in 0..prefix {
                    for a in 0..l {
                        let x = v[(a0 * prefix + p) * r + a];
                        if x == ZERO {
                            continue;
                        }
                        for i in 0..n {
                            let dst = (a0 * prefix * n + p * n + i) * rr;
                            let src = (a * n + i) * rr;
                            for b in 0..rr {
                                next[dst + b] += x * t.data[src + b];
                            }
                        }
                    }
                }
            }
            v = next;
            prefix *= n;
            r = rr;
        }
        debug_assert_eq!(prefix, total);
        Ok((0..total).map(|p| (0..d0).map(|a| v[(a * prefix + p) * r + a]).sum()).collect())
    }

    pub fn to_dense(&self) -> Result<PureState> {
        PureState::new(self.dims(), self.to_dense_amplitudes()?)
    }

    /// Residuals of the two canonical conditions against the stored spectra.
    pub fn check_canonical(&self) -> Result<CanonicalResiduals> {
        self.require_open("check_canonical")?;
        let spectra = self.spectra.as_ref().ok_or_else(|| Error::InvalidArgument("MPS carries no Schmidt spectra".into()))?;
        let k = self.num_sites();
        let lambda = |bond: usize| -> Vec<f64> {
            if bond == 0 || bond == k {
                vec![1.0]
            } else {
                spectra[bond - 1].clone()
            }
        };
        let mut isometry = Vec::with_capacity(k);
        let mut consistency = Vec::with_capacity(k);
        for (j, t) in self.tensors.iter().enumerate() {
            let (l, n, r) = t.shape();
            let (lam_l, lam_r) = (lambda(j), lambda(j + 1));
            if lam_l.len() != l || lam_r.len() != r {
                return Err(Error::WrongShape(format!("spectra do not match bond dimensions at site {j}")));
            }
            let mut iso = CMatrix::zeros(r, r);
            let mut con = CMatrix::zeros(l, l);
            for i in 0..n {
                let a = t.matrix(i);
                iso += a.adjoint() * &a;
                let scaled = CMatrix::from_fn(l, r, |x, y| a[(x, y)] * lam_r[y]);
                con += scaled * a.adjoint();
            }
            isometry.push(crate::linalg::identity_residual(&iso));
            let target = CMatrix::from_fn(l, l, |x, y| if x == y { Complex64::new(lam_l[x], 0.0) } else { ZERO });
            consistency.push(crate::linalg::max_abs_diff(&con, &target));
        }
        Ok(CanonicalResiduals { isometry, consistency })
    }

    pub fn is_canonical(&self) -> bool {
        self.check_canonical().map(|r| r.max() <= CANONICAL_TOL).unwrap_or(false)
    }

    /// Left-canonical form with exact Schmidt spectra and unit norm, built
    /// by a right-to-left orthonormalization followed by a left-to-right
    /// SVD sweep. Never forms the dense vector.
    pub fn canonicalize(&self) -> Result<Self> {
        self.require_open("canonicalize")?;
        let mut t = right_orthonormalize(self.tensors.clone());
        let k = t.len();
        let mut spectra = Vec::with_capacity(k - 1);
        for j in 0..k - 1 {
            let (l, n, _) = t[j].shape();
            let dec = svd(&t[j].as_left_matrix());
            let lambdas: Vec<f64> = dec.s.iter().map(|s| s * s).collect();
            let total: f64 = lambdas.iter().sum();
            if total == 0.0 {
                return Err(Error::ZeroVector);
            }
            let keep = numerical_rank(&lambdas).max(1);
            spectra.push(lambdas[..keep].iter().map(|x| x / total).collect());
            t[j] = SiteTensor::from_left_matrix(&dec.u.columns(0, keep).into_owned(), l, n);
            let carry = CMatrix::from_fn(keep, dec.vt.ncols(), |a, b| dec.vt[(a, b)] * dec.s[a]);
            let next = &carry * t[j + 1].as_right_matrix();
            t[j + 1] = SiteTensor::from_right_matrix(&next, t[j + 1].phys);
        }
        let last = &mut t[k - 1];
        let norm = last.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        last.data.iter_mut().for_each(|x| *x /= norm);
        Ok(Self { tensors: t, spectra: Some(spectra), boundary: Boundary::Open })
    }

    /// Keeps at most `max_bond` Schmidt values at every bond.
    pub fn truncate(&self, max_bond: usize) -> Result<Truncation> {
        self.truncate_with(|_| max_bond)
    }

    /// Truncates only `bond` (between sites `bond−1` and `bond`).
    pub fn truncate_bond(&self, bond: usize, max_bond: usize) -> Result<Truncation> {
        if bond == 0 || bond >= self.num_sites() {
            return Err(Error::InvalidArgument(format!("bond {bond} out of range 1..{}", self.num_sites())));
        }
        self.truncate_with(|b| if b == bond { max_bond } else { usize::MAX })
    }

    fn truncate_with(&self, limit: impl Fn(usize) -> usize) -> Result<Truncation> {
        let mut t = self.canonicalize()?.tensors;
        let k = t.len();
        let mut discarded = vec![0.0; k - 1];
        // the centre sits on the last site; sweep it leftwards
        for j in (1..k).rev() {
            let d = limit(j);
            if d == 0 {
                return Err(Error::InvalidArgument("bond dimension must be at least 1".into()));
            }
            let dec = svd(&t[j].as_right_matrix());
            let weights: Vec<f64> = dec.s.iter().map(|s| s * s).collect();
            let total: f64 = weights.iter().sum();
            let keep = numerical_rank(&weights).max(1).min(d);
            let kept: f64 = weights[..keep].iter().sum();
            discarded[j - 1] = ((total - kept) / total).max(0.0);
            let scale = (total / kept).sqrt();
            t[j] = SiteTensor::from_right_matrix(&dec.vt.rows(0, keep).into_owned(), t[j].phys);
            let us = CMatrix::from_fn(dec.u.nrows(), keep, |a, b| dec.u[(a, b)] * dec.s[b] * scale);
            let (l, n, _) = t[j - 1].shape();
            t[j - 1] = SiteTensor::from_left_matrix(&(t[j - 1].as_left_matrix() * us), l, n);
        }
        let mps = Self { tensors: t, spectra: None, boundary: Boundary::Open }.canonicalize()?;
        Ok(Truncation { mps, discarded })
    }

    /// Inserts `G G⁻¹` on `bond`; the state is unchanged but the stored
    /// spectra no longer certify the tensors.
    pub fn with_gauge(&self, bond: usize, g: &CMatrix) -> Result<Self> {
        if bond == 0 || bond >= self.num_sites() {
            return Err(Error::InvalidArgument(format!("bond {bond} out of range 1..{}", self.num_sites())));
        }
        let r = self.tensors[bond].left;
        if g.shape() != (r, r) {
            return Err(Error::WrongShape(format!("gauge must be {r}x{r}")));
        }
        let inv = g.clone().try_inverse().ok_or(Error::Singular { site: bond })?;
        let mut t = self.tensors.clone();
        let (l, n, _) = t[bond - 1].shape();
        t[bond - 1] = SiteTensor::from_left_matrix(&(t[bond - 1].as_left_matrix() * g), l, n);
        t[bond] = SiteTensor::from_right_matrix(&(inv * t[bond].as_right_matrix()), t[bond].phys);
        Ok(Self { tensors: t, spectra: self.spectra.clone(), boundary: self.boundary })
    }

    /// Von Neumann entropy across `bond` from the canonical spectrum,
    /// canonicalizing first when the stored form is not certified.
    pub fn entanglement_entropy(&self, bond: usize) -> Result<f64> {
        self.require_open("entanglement_entropy")?;
        if bond == 0 || bond >= self.num_sites() {
            return Err(Error::InvalidArgument(format!("bond {bond} out of range 1..{}", self.num_sites())));
        }
        if self.is_canonical() {
            return Ok(entropy_nats(&self.spectra.as_ref().expect("canonical")[bond - 1]));
        }
        Ok(entropy_nats(&self.canonicalize()?.spectra.expect("canonical")[bond - 1]))
    }

    pub fn bond_entropies(&self) -> Result<Vec<f64>> {
        let c = if self.is_canonical() { self.clone() } else { self.canonicalize()? };
        Ok(c.spectra.expect("canonical").iter().map(|l| entropy_nats(l)).collect())
    }

    pub fn norm(&self) -> Result<f64> {
        Ok(overlap(self, self)?.re.max(0.0).sqrt())
    }
}

/// Right-to-left sweep leaving sites `1..K` right-orthonormal and the
/// norm on site 0. Exactly-zero directions are dropped.
pub(crate) fn right_orthonormalize(mut t: Vec<SiteTensor>) -> Vec<SiteTensor> {
    for j in (1..t.len()).rev() {
        let dec = svd(&t[j].as_right_matrix());
        let smax = dec.s.first().copied().unwrap_or(0.0);
        let keep = dec.s.iter().filter(|&&s| s > 1e-14 * smax).count().max(1);
        t[j] = SiteTensor::from_right_matrix(&dec.vt.rows(0, keep).into_owned(), t[j].phys);
        let us = CMatrix::from_fn(dec.u.nrows(), keep, |a, b| dec.u[(a, b)] * dec.s[b]);
        let (l, n, _) = t[j - 1].shape();
        t[j - 1] = SiteTensor::from_left_matrix(&(t[j - 1].as_left_matrix() * us), l, n);
    }
    t
}

/// `<a|b>` by a site-by-site sweep, with the peak intermediate size.
pub fn overlap_with_stats(a: &MpsState, b: &MpsState) -> Result<(Complex64, ContractionStats)> {
    if a.dims() != b.dims() {
        return Err(Error::WrongShape(format!("overlap of MPS with dims {:?} and {:?}", a.dims(), b.dims())));
    }
    if a.boundary != b.boundary {
        return Err(Error::InvalidArgument("overlap needs matching boundaries".into()));
    }
    let mut stats = ContractionStats::default();
    let mut note = |m: &CMatrix| stats.peak_elements = stats.peak_elements.max(m.len());
    match a.boundary {
        Boundary::Open => {
            let mut e = CMatrix::from_element(1, 1, ONE);
            for (ta, tb) in a.tensors.iter().zip(&b.tensors) {
                let mut next = CMatrix::zeros(ta.right, tb.right);
                for i in 0..ta.phys {
                    let half = &e * tb.matrix(i);
                    note(&half);
                    next += ta.matrix(i).adjoint() * half;
                }
                note(&next);
                e = next;
            }
            Ok((e[(0, 0)], stats))
        }
        Boundary::Periodic => {
            // transfer matrices on the doubled bond space
            let (la, lb) = (a.tensors[0].left, b.tensors[0].left);
            let mut e = CMatrix::identity(la * lb, la * lb);
            for (ta, tb) in a.tensors.iter().zip(&b.tensors) {
                let mut transfer = CMatrix::zeros(ta.left * tb.left, ta.right * tb.right);
                for i in 0..ta.phys {
                    transfer += ta.matrix(i).map(|x| x.conj()).kronecker(&tb.matrix(i));
                }
                note(&transfer);
                e *= transfer;
                note(&e);
            }
            Ok((e.trace(), stats))
        }
    }
}

pub fn overlap(a: &MpsState, b: &MpsState) -> Result<Complex64> {
    Ok(overlap_with_stats(a, b)?.0)
}

pub fn product_mps(factors: &[Vec<Complex64>]) -> Result<MpsState> {
    let tensors = factors.iter().map(|f| SiteTensor::new(1, f.len(), 1, f.clone())).collect::<Result<Vec<_>>>()?;
    MpsState::new(tensors, Boundary::Open)?.canonicalize()
}

fn diag2(x: Complex64, y: Complex64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[x, ZERO, ZERO, y])
}

/// Bond-dimension-two GHZ chain with `A^0 = diag(1,0)`, `A^1 = diag(0,1)`
/// in the bulk.
pub fn ghz_mps(k: usize) -> Result<MpsState> {
    if k < 2 {
        return Err(Error::InvalidArgument("GHZ chain needs at least two sites".into()));
    }
    let first = SiteTensor::from_matrices(&[CMatrix::from_row_slice(1, 2, &[ONE, ZERO]), CMatrix::from_row_slice(1, 2, &[ZERO, ONE])])?;
    let bulk = SiteTensor::from_matrices(&[diag2(ONE, ZERO), diag2(ZERO, ONE)])?;
    let last = SiteTensor::from_matrices(&[CMatrix::from_row_slice(2, 1, &[ONE, ZERO]), CMatrix::from_row_slice(2, 1, &[ZERO, ONE])])?;
    let mut t = vec![first];
    t.extend(std::iter::repeat_n(bulk, k - 2));
    t.push(last);
    MpsState::new(t, Boundary::Open)?.canonicalize()
}

/// W chain: bond state 1 records that the excitation has been placed.
pub fn w_mps(k: usize) -> Result<MpsState> {
    if k < 2 {
        return Err(Error::InvalidArgument("W chain needs at least two sites".into()));
    }
    let first = SiteTensor::from_matrices(&[CMatrix::from_row_slice(1, 2, &[ONE, ZERO]), CMatrix::from_row_slice(1, 2, &[ZERO, ONE])])?;
    let bulk = SiteTensor::from_matrices(&[diag2(ONE, ONE), CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO])])?;
    let last = SiteTensor::from_matrices(&[CMatrix::from_row_slice(2, 1, &[ZERO, ONE]), CMatrix::from_row_slice(2, 1, &[ONE, ZERO])])?;
    let mut t = vec![first];
    t.extend(std::iter::repeat_n(bulk, k - 2));
    t.push(last);
    MpsState::new(t, Boundary::Open)?.canonicalize()
}

/// Canonical MPS with Gaussian tensors and bond dimensions
/// `min(D, left dimension, right dimension)`.
pub fn random_mps(dims: &[usize], max_bond: usize, seed: u64) -> Result<MpsState> {
    if dims.is_empty() || dims.contains(&0) || max_bond == 0 {
        return Err(Error::InvalidDims(format!("random MPS needs positive dims and bond, got {dims:?}, D = {max_bond}")));
    }
    let mut rng = rng_from_seed(seed);
    let k = dims.len();
    let capped = |sites: &[usize]| sites.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d).filter(|&x| x < max_bond)).unwrap_or(max_bond);
    let bonds: Vec<usize> = (0..=k).map(|j| capped(&dims[..j]).min(capped(&dims[j..]))).collect();
    let tensors = (0..k)
        .map(|j| {
            let (l, n, r) = (bonds[j], dims[j], bonds[j + 1]);
            SiteTensor::new(l, n, r, gaussian_vector(&mut rng, l * n * r))
        })
        .collect::<Result<Vec<_>>>()?;
    MpsState::new(tensors, Boundary::Open)?.canonicalize()
}

/// Periodic tensors read off PEPS site maps `A^{i}_{ab} = map[i, a·D + b]`.
pub fn periodic_from_maps(site_maps: &[CMatrix], bond: usize) -> Result<MpsState> {
    let tensors = site_maps
        .iter()
        .map(|m| {
            if m.ncols() != bond * bond {
                return Err(Error::WrongShape(format!("site map has {} columns, expected D^2 = {}", m.ncols(), bond * bond)));
            }
            let mats: Vec<CMatrix> = (0..m.nrows()).map(|i| CMatrix::from_fn(bond, bond, |a, b| m[(i, a * bond + b)])).collect();
            SiteTensor::from_matrices(&mats)
        })
        .collect::<Result<Vec<_>>>()?;
    MpsState::new(tensors, Boundary::Periodic)
}

/// Applies one linear map `C^D ⊗ C^D → C^{N_k}` per site to the ring of
/// maximally entangled pairs `|φ+>` linking neighbouring sites.
pub fn peps_1d(site_maps: &[CMatrix], bond: usize) -> Result<PureState> {
    let k = site_maps.len();
    if k == 0 || bond == 0 {
        return Err(Error::InvalidArgument("peps_1d needs at least one site and D >= 1".into()));
    }
    if let Some(m) = site_maps.iter().find(|m| m.ncols() != bond * bond) {
        return Err(Error::WrongShape(format!("site map has {} columns, expected D^2 = {}", m.ncols(), bond * bond)));
    }
    let dims: Vec<usize> = site_maps.iter().map(|m| m.nrows()).collect();
    let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d).filter(|&t| t <= MAX_DENSE));
    let total = total.ok_or_else(|| Error::TooLarge(format!("dense vector over {MAX_DENSE} entries")))?;
    let links = bond.checked_pow(k as u32).filter(|&x| x <= MAX_DENSE).ok_or_else(|| Error::TooLarge("too many link configurations".into()))?;
    let mut amps = vec![ZERO; total];
    let mut c = vec![0usize; k];
    for _ in 0..links {
        // link j joins the right factor of site j to the left factor of site j+1
        let mut vec = vec![ONE];
        for (j, m) in site_maps.iter().enumerate() {
            let col = c[(j + k - 1) % k] * bond + c[j];
            let mut next = Vec::with_capacity(vec.len() * m.nrows());
            for x in &vec {
                for i in 0..m.nrows() {
                    next.push(x * m[(i, col)]);
                }
            }
            vec = next;
        }
        amps.iter_mut().zip(&vec).for_each(|(a, v)| *a += v);
        for j in (0..k).rev() {
            c[j] += 1;
            if c[j] < bond {
                break;
            }
            c[j] = 0;
        }
    }
    PureState::new(dims, amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::ginibre;
    use crate::state::{random_state, schmidt, Bipartition};
    use crate::uniformity::catalog::{ghz, w};
    use std::f64::consts::LN_2;

    #[test]
    fn ghz_and_w_ranks() {
        for k in 2..=10 {
            for s in [ghz(k).unwrap(), w(k).unwrap()] {
                let m = MpsState::from_dense(&s);
                assert!(m.bond_dims().iter().all(|&r| r == 2), "{:?}", m.bond_dims());
                assert!(m.check_canonical().unwrap().max() < 1e-10);
            }
        }
        let p = PureState::basis(vec![2; 5], &[0, 1, 1, 0, 1]).unwrap();
        let m = MpsState::from_dense(&p);
        assert!(m.bond_dims().iter().all(|&r| r == 1));
        let res = m.check_canonical().unwrap();
        assert_eq!(res.max(), 0.0, "{res:?}");
    }

    #[test]
    fn round_trip_and_spectra() {
        let psi = random_state(&[2, 3, 2, 2, 3], 3).unwrap();
        let m = MpsState::from_dense(&psi);
        assert!(m.to_dense().unwrap().fidelity(&psi).unwrap() > 1.0 - 1e-12);
        for bond in 1..5 {
            let s = schmidt(&psi, &Bipartition::prefix(bond, 5).unwrap()).unwrap();
            let lam = &m.spectra().unwrap()[bond - 1];
            for (a, b) in lam.iter().zip(&s.lambdas) {
                assert!((a - b).abs() < 1e-10);
            }
        }
        assert!(m.check_canonical().unwrap().max() < 1e-10);
    }

    #[test]
    fn canonicalize_matches_from_dense() {
        let psi = random_state(&[2; 7], 11).unwrap();
        let m = MpsState::from_dense(&psi);
        let mut rng = rng_from_seed(5);
        let g = ginibre(&mut rng, m.bond_dims()[2]);
        let gauged = m.with_gauge(3, &g).unwrap();
        assert!(gauged.check_canonical().unwrap().max() > 1e-3);
        assert!((overlap(&gauged, &m).unwrap() - ONE).norm() < 1e-10);
        let fixed = gauged.canonicalize().unwrap();
        assert!(fixed.check_canonical().unwrap().max() < 1e-10);
        for (a, b) in fixed.spectra().unwrap().iter().zip(m.spectra().unwrap()) {
            assert!(a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-10));
        }
    }

    #[test]
    fn hand_built_chains() {
        for k in [2, 3, 6] {
            assert!(ghz_mps(k).unwrap().to_dense().unwrap().fidelity(&ghz(k).unwrap()).unwrap() > 1.0 - 1e-12);
            assert!(w_mps(k).unwrap().to_dense().unwrap().fidelity(&w(k).unwrap()).unwrap() > 1.0 - 1e-12);
        }
        assert!(overlap(&ghz_mps(5).unwrap(), &w_mps(5).unwrap()).unwrap().norm() < 1e-15);
        assert!((ghz_mps(7).unwrap().norm().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn periodic_ghz_trace() {
        let t = SiteTensor::from_matrices(&[diag2(ONE, ZERO), diag2(ZERO, ONE)]).unwrap();
        let amps = MpsState::uniform_periodic(t.clone(), 4).unwrap().to_dense_amplitudes().unwrap();
        for (idx, a) in amps.iter().enumerate() {
            let expected = if idx == 0 || idx == 15 { ONE } else { ZERO };
            assert_eq!(*a, expected);
        }
        let one = MpsState::uniform_periodic(t, 1).unwrap().to_dense_amplitudes().unwrap();
        assert_eq!(one, vec![ONE, ONE]);
    }

    #[test]
    fn truncation() {
        let g = MpsState::from_dense(&ghz(6).unwrap());
        let t = g.truncate(1).unwrap();
        assert!(t.mps.bond_dims().iter().all(|&r| r == 1));
        let ov = overlap(&g, &t.mps).unwrap().norm_sqr();
        assert!((ov - 0.5).abs() < 1e-10);
        let same = g.truncate(4).unwrap();
        assert!(same.discarded.iter().all(|&d| d == 0.0));
        assert!((overlap(&g, &same.mps).unwrap().norm_sqr() - 1.0).abs() < 1e-12);

        let psi = random_state(&[2; 8], 2).unwrap();
        let m = MpsState::from_dense(&psi);
        let t = m.truncate_bond(4, 3).unwrap();
        let kept: f64 = m.spectra().unwrap()[3][..3].iter().sum();
        assert!((overlap(&m, &t.mps).unwrap().norm_sqr() - kept).abs() < 1e-9);
        assert!((t.discarded[3] - (1.0 - kept)).abs() < 1e-12);
        assert_eq!(t.mps.bond_dims()[3], 3);
    }

    #[test]
    fn overlap_matches_dense() {
        let a = random_mps(&[2; 8], 5, 1).unwrap();
        let b = random_mps(&[2; 8], 3, 2).unwrap();
        let (ov, stats) = overlap_with_stats(&a, &b).unwrap();
        let dense = a.to_dense().unwrap().inner(&b.to_dense().unwrap()).unwrap();
        assert!((ov - dense).norm() < 1e-10);
        assert!(stats.peak_elements <= a.max_bond() * b.max_bond());
    }

    #[test]
    fn entropies() {
        let g = MpsState::from_dense(&ghz(6).unwrap());
        for bond in 1..6 {
            assert!((g.entanglement_entropy(bond).unwrap() - LN_2).abs() < 1e-12);
        }
        let gauged = g.with_gauge(2, &diag2(ONE, Complex64::new(3.0, 0.0))).unwrap();
        assert!((gauged.entanglement_entropy(2).unwrap() - LN_2).abs() < 1e-12);
        let prod = product_mps(&[vec![ONE, ONE], vec![ONE, ZERO], vec![ZERO, ONE]]).unwrap();
        assert_eq!(prod.entanglement_entropy(1).unwrap(), 0.0);
        assert!(g.entanglement_entropy(6).is_err());
    }

    #[test]
    fn peps_matches_periodic_evaluation() {
        let mut rng = rng_from_seed(9);
        let maps: Vec<CMatrix> = (0..6).map(|_| CMatrix::from_fn(2, 9, |_, _| crate::sampling::complex_gaussian(&mut rng))).collect();
        let peps = peps_1d(&maps, 3).unwrap();
        let per = periodic_from_maps(&maps, 3).unwrap().to_dense().unwrap();
        for (a, b) in peps.amps().iter().zip(per.amps()) {
            assert!((a - b).norm() < 1e-10);
        }
        let ghz_map = CMatrix::from_row_slice(2, 4, &[ONE, ZERO, ZERO, ZERO, ZERO, ZERO, ZERO, ONE]);
        let g = peps_1d(&vec![ghz_map; 5], 2).unwrap();
        assert!(g.fidelity(&ghz(5).unwrap()).unwrap() > 1.0 - 1e-14);
        let prod = peps_1d(&vec![CMatrix::from_row_slice(2, 1, &[ONE, ONE]); 3], 1).unwrap();
        assert!(MpsState::from_dense(&prod).bond_dims().iter().all(|&r| r == 1));
    }

    #[test]
    fn shape_errors() {
        let t = SiteTensor::new(1, 2, 2, vec![ONE; 4]).unwrap();
        assert!(MpsState::new(vec![t.clone(), t.clone()], Boundary::Open).is_err());
        assert!(SiteTensor::new(1, 2, 2, vec![ONE; 3]).is_err());
        assert!(peps_1d(&[CMatrix::zeros(2, 3)], 2).is_err());
        let per = MpsState::uniform_periodic(SiteTensor::new(2, 2, 2, vec![ONE; 8]).unwrap(), 3).unwrap();
        assert!(per.canonicalize().is_err());
        assert!(overlap(&per, &ghz_mps(3).unwrap()).is_err());
    }
}
