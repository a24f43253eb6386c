//! Local spectra of qubit states and entanglement-polytope membership.
//!
//! Coordinates are the *smallest* eigenvalue of each single-qubit reduction,
//! so the separable corner is the origin and the GHZ corner is `(1/2, …, 1/2)`.

use crate::error::{Error, Result};
use crate::linalg::c;
use crate::state::{partial_trace, PureState};

#[derive(Debug, Clone, PartialEq)]
pub struct LocalSpectra {
    pub lambdas: Vec<f64>,
}

pub fn local_spectra(state: &PureState) -> Result<LocalSpectra> {
    if !state.is_qubits() {
        return Err(Error::WrongShape(format!("local spectra need qubits, got dims {:?}", state.dims())));
    }
    if state.num_sites() < 2 {
        return Err(Error::InvalidArgument("local spectra need at least two qubits".into()));
    }
    let lambdas = (0..state.num_sites())
        .map(|k| {
            let rho = partial_trace(state, &[k]).expect("single site is a proper subset");
            let r = rho.entries();
            // closed form for a 2x2 Hermitian matrix
            let mean = 0.5 * (r[(0, 0)].re + r[(1, 1)].re);
            let half_gap = (0.25 * (r[(0, 0)].re - r[(1, 1)].re).powi(2) + r[(0, 1)].norm_sqr()).sqrt();
            (mean - half_gap).max(0.0)
        })
        .collect();
    Ok(LocalSpectra { lambdas })
}

pub const POLYGON_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonCheck {
    pub pass: bool,
    /// `Σ_{j≠k} λ_j − λ_k` for each `k`.
    pub slack: Vec<f64>,
    /// Some slack is within tolerance of zero.
    pub on_boundary: bool,
}

pub fn polygon_check(spectra: &LocalSpectra) -> PolygonCheck {
    let total: f64 = spectra.lambdas.iter().sum();
    let slack: Vec<f64> = spectra.lambdas.iter().map(|&l| total - 2.0 * l).collect();
    PolygonCheck {
        pass: slack.iter().all(|&s| s >= -POLYGON_TOL),
        on_boundary: slack.iter().any(|&s| s.abs() <= POLYGON_TOL),
        slack,
    }
}

/// `λ_A + λ_B + λ_C ≤ 1`; a violation certifies a GHZ-class state.
pub fn w_pyramid_test(spectra: &LocalSpectra) -> Result<bool> {
    if spectra.lambdas.len() != 3 {
        return Err(Error::InvalidArgument("the W pyramid is defined for three qubits".into()));
    }
    Ok(spectra.lambdas.iter().sum::<f64>() <= 1.0 + POLYGON_TOL)
}

/// `a|001> + b|010> + c|100> + d|111>` with the requested local spectra.
pub fn realize_spectra3(la: f64, lb: f64, lc: f64) -> Result<PureState> {
    let ls = [la, lb, lc];
    if ls.iter().any(|&l| !(-POLYGON_TOL..=0.5 + POLYGON_TOL).contains(&l)) {
        return Err(Error::InvalidArgument(format!("spectra {ls:?} must lie in [0, 1/2]")));
    }
    let check = polygon_check(&LocalSpectra { lambdas: ls.to_vec() });
    if !check.pass {
        return Err(Error::InvalidArgument(format!("spectra {ls:?} violate the triangle inequalities")));
    }
    let a2 = (0.5 * (la + lb - lc)).max(0.0);
    let b2 = (0.5 * (la + lc - lb)).max(0.0);
    let c2 = (0.5 * (lb + lc - la)).max(0.0);
    let d2 = (1.0 - a2 - b2 - c2).max(0.0);
    let mut amps = vec![c(0.0, 0.0); 8];
    amps[0b001] = c(a2.sqrt(), 0.0);
    amps[0b010] = c(b2.sqrt(), 0.0);
    amps[0b100] = c(c2.sqrt(), 0.0);
    amps[0b111] = c(d2.sqrt(), 0.0);
    PureState::new(vec![2, 2, 2], amps)
}

/// Extreme points: every `{0, 1/2}` vector except those with exactly one
/// nonzero entry, `2^K − K` in total.
pub fn polytope_vertices(k: usize) -> Result<Vec<Vec<f64>>> {
    if !(3..=8).contains(&k) {
        return Err(Error::InvalidArgument(format!("vertex enumeration supports 3 to 8 qubits, got {k}")));
    }
    Ok((0..1usize << k)
        .filter(|m| m.count_ones() != 1)
        .map(|m| (0..k).map(|j| if (m >> (k - 1 - j)) & 1 == 1 { 0.5 } else { 0.0 }).collect())
        .collect())
}

/// Flags of the four-qubit vertex table: three families `F1..F3` and six
/// subpolytopes `P1..P6`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourQubitVertex {
    pub point: [f64; 4],
    pub families: [bool; 3],
    pub subpolytopes: [bool; 6],
}

/// Permutation-inequivalent copies of `F1..F3, P1..P6`.
pub const FOUR_QUBIT_PERMUTATION_COUNTS: [usize; 9] = [4, 4, 4, 4, 4, 6, 1, 1, 6];

/// Static transcription of the four-qubit table. Only the extra vertex
/// `V = (1/4, 1/2, 1/2, 1/2)` is not a cube corner.
pub fn four_qubit_vertex_table() -> Vec<FourQubitVertex> {
    const H: f64 = 0.5;
    let all_p = [true; 6];
    let row = |point: [f64; 4], f: [u8; 3], p: [bool; 6]| FourQubitVertex { point, families: f.map(|x| x == 1), subpolytopes: p };
    vec![
        row([H, H, H, H], [1, 0, 0], [false, false, false, true, false, true]),
        row([0.25, H, H, H], [0, 0, 0], [true, false, false, false, false, false]),
        row([H, H, H, 0.0], [1, 1, 0], [true, false, false, false, false, false]),
        row([H, H, 0.0, H], [1, 0, 0], [true, true, false, false, false, false]),
        row([H, 0.0, H, H], [1, 0, 0], [true, true, true, false, false, true]),
        row([0.0, H, H, H], [0, 0, 0], [true, true, true, false, false, true]),
        row([H, H, 0.0, 0.0], [1, 1, 1], all_p),
        row([H, 0.0, 0.0, H], [1, 0, 1], all_p),
        row([H, 0.0, H, 0.0], [1, 1, 0], all_p),
        row([0.0, H, H, 0.0], [0, 1, 0], all_p),
        row([0.0, H, 0.0, H], [0, 0, 1], all_p),
        row([0.0, 0.0, H, H], [0, 0, 0], all_p),
        row([0.0, 0.0, 0.0, 0.0], [0, 1, 1], all_p),
    ]
}
