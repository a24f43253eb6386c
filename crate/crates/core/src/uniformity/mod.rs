//! Average-purity measures `Q_k`, `k`-uniformity and AME verification.

pub mod catalog;
pub mod pauli;

use crate::error::{Error, Result};
use crate::linalg::{identity_residual, CMatrix};
use crate::state::PureState;
use itertools::Itertools;
use num_complex::Complex64;

pub use catalog::catalog_state;
pub use pauli::PauliString;

fn local_dim(state: &PureState) -> Result<usize> {
    state.uniform_local_dim().ok_or_else(|| Error::InvalidDims(format!("uniformity needs equal local dimensions, got {:?}", state.dims())))
}

fn check_k(state: &PureState, k: usize) -> Result<()> {
    let max = state.num_sites() / 2;
    if k < 1 || k > max {
        return Err(Error::InvalidArgument(format!("k must lie in 1..={max}, got {k}")));
    }
    Ok(())
}

/// `Tr ρ_X^2`, using whichever Gram matrix of the reshaped state is smaller.
fn subset_purity(state: &PureState, subset: &[usize]) -> Result<f64> {
    let m = state.matricize(subset)?;
    let g = if m.nrows() <= m.ncols() { &m * m.adjoint() } else { m.adjoint() * &m };
    Ok(g.iter().map(|x| x.norm_sqr()).sum())
}

/// `N^k/(N^k − 1) · (1 − mean_X Tr ρ_X^2)` over all `k`-site subsets `X`.
pub fn q_measure(state: &PureState, k: usize) -> Result<f64> {
    let n = local_dim(state)?;
    check_k(state, k)?;
    let mut total = 0.0;
    let mut count = 0usize;
    for subset in (0..state.num_sites()).combinations(k) {
        total += subset_purity(state, &subset)?;
        count += 1;
    }
    let nk = (n as f64).powi(k as i32);
    Ok(nk / (nk - 1.0) * (1.0 - total / count as f64))
}

pub const DEFAULT_UNIFORM_TOL: f64 = 1e-9;

/// Whether every `k`-site reduction is maximally mixed, tested as
/// `‖N^k Γ_X Γ_X^† − 1‖_max ≤ tol` on the `N^k × N^{K−k}` reshaping `Γ_X`.
pub fn is_k_uniform(state: &PureState, k: usize, tol: f64) -> Result<bool> {
    let n = local_dim(state)?;
    check_k(state, k)?;
    let scale = (n as f64).powi(k as i32);
    for subset in (0..state.num_sites()).combinations(k) {
        let m: CMatrix = state.matricize(&subset)?;
        if identity_residual(&(&m * m.adjoint()).scale(scale)) > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest `k ≤ ⌊K/2⌋` such that the state is `k`-uniform (0 if none).
pub fn k_uniform_level(state: &PureState, tol: f64) -> Result<usize> {
    local_dim(state)?;
    let mut level = 0;
    for k in 1..=state.num_sites() / 2 {
        if !is_k_uniform(state, k, tol)? {
            break;
        }
        level = k;
    }
    Ok(level)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport {
    /// `Q_1 … Q_m`.
    pub q_values: Vec<f64>,
    pub k_uniform_level: usize,
    pub is_ame: bool,
}

pub fn uniformity_report(state: &PureState, max_k: Option<usize>, tol: f64) -> Result<UniformityReport> {
    let half = state.num_sites() / 2;
    let m = max_k.unwrap_or(half).min(half);
    let q_values = (1..=m).map(|k| q_measure(state, k)).collect::<Result<Vec<_>>>()?;
    let level = k_uniform_level(state, tol)?;
    Ok(UniformityReport { q_values, k_uniform_level: level, is_ame: half > 0 && level == half })
}

/// `<ψ|P|ψ>` for each string.
pub fn stabilizer_check(state: &PureState, strings: &[PauliString]) -> Result<Vec<Complex64>> {
    strings.iter().map(|p| p.expectation(state)).collect()
}
