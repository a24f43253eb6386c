//! Three-qubit local-unitary invariants, tangles, SLOCC classes and the
//! five-parameter canonical form; plus the four-qubit tangle.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, ONE, ZERO};
use crate::sampling;
use crate::state::{apply_local, apply_site_operator, DensityMatrix, LocalMode, PureState};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::TAU;

fn require_qubits(state: &PureState, k: usize) -> Result<()> {
    if state.dims().len() != k || !state.is_qubits() {
        return Err(Error::WrongShape(format!("expected {k} qubits, got dims {:?}", state.dims())));
    }
    Ok(())
}

/// `g[i][j][k]` view of a three-qubit amplitude vector.
fn tensor3(state: &PureState) -> [[[Complex64; 2]; 2]; 2] {
    let a = state.amps();
    let mut g = [[[ZERO; 2]; 2]; 2];
    for (idx, v) in a.iter().enumerate() {
        g[idx >> 2][(idx >> 1) & 1][idx & 1] = *v;
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuInvariants {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub i5: f64,
    pub i6: f64,
    pub det3: Complex64,
}

/// Cayley hyperdeterminant of a 2x2x2 tensor, expanded polynomial form.
pub fn det3(state: &PureState) -> Result<Complex64> {
    require_qubits(state, 3)?;
    let a = state.amps();
    let (g000, g001, g010, g011, g100, g101, g110, g111) = (a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]);
    let squares = g000 * g000 * g111 * g111 + g001 * g001 * g110 * g110 + g010 * g010 * g101 * g101 + g100 * g100 * g011 * g011;
    let twos = g000 * g111 * (g011 * g100 + g101 * g010 + g110 * g001)
        + g011 * g100 * (g101 * g010 + g110 * g001)
        + g101 * g010 * g110 * g001;
    let fours = g000 * g110 * g101 * g011 + g111 * g001 * g010 * g100;
    Ok(squares - twos * 2.0 + fours * 4.0)
}

pub fn lu_invariants(state: &PureState) -> Result<LuInvariants> {
    require_qubits(state, 3)?;
    let g = tensor3(state);
    let b = [0usize, 1];
    let mut i1 = 0.0;
    let (mut i2, mut i3, mut i4) = (ZERO, ZERO, ZERO);
    for &x1 in &b {
        for &x2 in &b {
            for &x3 in &b {
                i1 += g[x1][x2][x3].norm_sqr();
                for &y1 in &b {
                    for &y2 in &b {
                        for &y3 in &b {
                            let gg = g[x1][x2][x3] * g[y1][y2][y3];
                            i2 += gg * (g[y1][x2][x3] * g[x1][y2][y3]).conj();
                            i3 += gg * (g[x1][y2][x3] * g[y1][x2][y3]).conj();
                            i4 += gg * (g[x1][x2][y3] * g[y1][y2][x3]).conj();
                        }
                    }
                }
            }
        }
    }
    let mut i5 = ZERO;
    for idx in 0..512usize {
        let [i1_, i2_, i3_, j1, j2, j3, k1, k2, k3] = std::array::from_fn(|t| (idx >> (8 - t)) & 1);
        let top = g[i1_][i2_][i3_] * g[j1][j2][j3] * g[k1][k2][k3];
        if top == ZERO {
            continue;
        }
        i5 += top * (g[i1_][j2][k3] * g[j1][k2][i3_] * g[k1][i2_][j3]).conj();
    }
    let det3 = det3(state)?;
    Ok(LuInvariants { i1, i2: i2.re, i3: i3.re, i4: i4.re, i5: i5.re, i6: (det3 * 2.0).norm_sqr(), det3 })
}

fn sigma_yy() -> CMatrix {
    let y = linalg::pauli_y();
    linalg::kron(&y, &y)
}

/// Wootters concurrence and tangle of a two-qubit density matrix.
///
/// The `mu_i` are computed as squared singular values of `V^T (Y⊗Y) V`,
/// where `rho = V V^†`; this avoids taking square roots of rounding noise.
pub fn concurrence_tangle_mixed(dm: &DensityMatrix) -> Result<(f64, f64)> {
    if dm.dim() != 4 {
        return Err(Error::WrongShape(format!("expected a 4x4 density matrix, got {}", dm.dim())));
    }
    let (vals, vecs) = linalg::hermitian_eigh(dm.entries());
    let cutoff = 1e-14 * vals[0].max(0.0);
    let mut v = vecs;
    for (j, p) in vals.iter().enumerate() {
        let w = if *p > cutoff { p.sqrt() } else { 0.0 };
        for i in 0..4 {
            v[(i, j)] *= w;
        }
    }
    let t = v.transpose() * sigma_yy() * &v;
    let s = linalg::singular_values(&t);
    let conc = (s[0] - s[1] - s[2] - s[3]).max(0.0).min(1.0);
    Ok((conc, conc * conc))
}

/// `<ψ| σ_y^{⊗K} |ψ*>` for a qubit register.
fn spin_flip_overlap(state: &PureState) -> Complex64 {
    let mut flipped: Vec<Complex64> = state.amps().iter().map(|a| a.conj()).collect();
    let y = linalg::pauli_y();
    for site in 0..state.num_sites() {
        apply_site_operator(&mut flipped, state.dims(), site, &y);
    }
    state.amps().iter().zip(&flipped).map(|(a, b)| a.conj() * b).sum()
}

/// Pure two-qubit tangle `4 |det Γ|^2`.
pub fn tangle_pure2(state: &PureState) -> Result<f64> {
    require_qubits(state, 2)?;
    let a = state.amps();
    Ok(4.0 * (a[0] * a[3] - a[1] * a[2]).norm_sqr())
}

/// `|<ψ|σ_y^{⊗4}|ψ*>|^2`.
pub fn four_tangle(state: &PureState) -> Result<f64> {
    require_qubits(state, 4)?;
    Ok(spin_flip_overlap(state).norm_sqr())
}

/// Spin-flip form of the two-qubit tangle, kept as an independent route.
pub fn tangle_pure2_spin_flip(state: &PureState) -> Result<f64> {
    require_qubits(state, 2)?;
    Ok(spin_flip_overlap(state).norm_sqr())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangleReport {
    pub tau_a_bc: f64,
    pub tau_b_ac: f64,
    pub tau_c_ab: f64,
    pub tau_ab: f64,
    pub tau_bc: f64,
    pub tau_ac: f64,
    pub tau1: f64,
    pub tau2: f64,
    /// Residual tangle from the subtraction `τ_{A|BC} − τ_{A|B} − τ_{A|C}`.
    pub tau3: f64,
    /// `4 |Det3|`.
    pub tau3_det: f64,
    /// `τ_{X|YZ} − τ_{X|Y} − τ_{X|Z}` anchored at A, B, C.
    pub monogamy_residuals: [f64; 3],
}

/// Tolerance of the cross-check between the two 3-tangle routes.
pub const TAU3_AGREEMENT: f64 = 1e-7;

fn one_vs_rest(state: &PureState, site: usize) -> f64 {
    let rho = crate::state::partial_trace(state, &[site]).expect("valid site");
    let r = rho.entries();
    let det = (r[(0, 0)] * r[(1, 1)] - r[(0, 1)] * r[(1, 0)]).re;
    (4.0 * det).clamp(0.0, 1.0)
}

fn pair_tangle(state: &PureState, sites: [usize; 2]) -> Result<f64> {
    let rho = crate::state::partial_trace(state, &sites)?;
    Ok(concurrence_tangle_mixed(&rho)?.1)
}

pub fn tangle_report(state: &PureState) -> Result<TangleReport> {
    require_qubits(state, 3)?;
    let (ta, tb, tc) = (one_vs_rest(state, 0), one_vs_rest(state, 1), one_vs_rest(state, 2));
    let tab = pair_tangle(state, [0, 1])?;
    let tbc = pair_tangle(state, [1, 2])?;
    let tac = pair_tangle(state, [0, 2])?;
    let tau3 = ta - tab - tac;
    let tau3_det = 4.0 * det3(state)?.norm();
    if (tau3 - tau3_det).abs() > TAU3_AGREEMENT {
        return Err(Error::InvalidArgument(format!("3-tangle routes disagree: {tau3} vs {tau3_det}")));
    }
    Ok(TangleReport {
        tau_a_bc: ta,
        tau_b_ac: tb,
        tau_c_ab: tc,
        tau_ab: tab,
        tau_bc: tbc,
        tau_ac: tac,
        tau1: (ta + tb + tc) / 3.0,
        tau2: (tab + tbc + tac) / 3.0,
        tau3,
        tau3_det,
        monogamy_residuals: [ta - tab - tac, tb - tab - tbc, tc - tac - tbc],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SloccLabel {
    Separable,
    BisepA,
    BisepB,
    BisepC,
    W,
    Ghz,
}

impl SloccLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            SloccLabel::Separable => "Separable",
            SloccLabel::BisepA => "BisepA",
            SloccLabel::BisepB => "BisepB",
            SloccLabel::BisepC => "BisepC",
            SloccLabel::W => "W",
            SloccLabel::Ghz => "GHZ",
        }
    }
}

impl std::fmt::Display for SloccLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SloccClass {
    pub label: SloccLabel,
    pub local_ranks: [usize; 3],
    pub det3_abs: f64,
}

pub const DEFAULT_SLOCC_TOL: f64 = 1e-8;

pub fn slocc_classify3(state: &PureState, tol: f64) -> Result<SloccClass> {
    require_qubits(state, 3)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let mut ranks = [0usize; 3];
    for (site, r) in ranks.iter_mut().enumerate() {
        let s = linalg::singular_values(&state.matricize(&[site])?);
        *r = s.iter().filter(|&&x| x > tol).count();
    }
    let det3_abs = det3(state)?.norm();
    let label = match ranks {
        [1, 1, 1] => SloccLabel::Separable,
        [1, 2, 2] => SloccLabel::BisepA,
        [2, 1, 2] => SloccLabel::BisepB,
        [2, 2, 1] => SloccLabel::BisepC,
        [2, 2, 2] if det3_abs > tol => SloccLabel::Ghz,
        [2, 2, 2] => SloccLabel::W,
        // exactly two unit ranks cannot occur for a pure state; the
        // remaining pair is a product, so the state is fully separable
        _ => SloccLabel::Separable,
    };
    Ok(SloccClass { label, local_ranks: ranks, det3_abs })
}

/// `r0 e^{iφ}|000> + r1|100> + r2|010> + r3|001> + r4|111>`.
#[derive(Debug, Clone)]
pub struct CanonicalForm3 {
    pub r: [f64; 5],
    pub phi: f64,
    /// `U_A, U_B, U_C` with `(U_A ⊗ U_B ⊗ U_C)|ψ>` equal to the canonical vector.
    pub local_unitaries: [CMatrix; 3],
    /// Overlap of the input with its closest product state.
    pub max_product_overlap: f64,
}

impl CanonicalForm3 {
    pub fn to_state(&self) -> PureState {
        let mut amps = vec![ZERO; 8];
        amps[0] = Complex64::from_polar(self.r[0], self.phi);
        amps[4] = c(self.r[1], 0.0);
        amps[2] = c(self.r[2], 0.0);
        amps[1] = c(self.r[3], 0.0);
        amps[7] = c(self.r[4], 0.0);
        PureState::from_normalized(vec![2, 2, 2], amps)
    }
}

const CANONICAL_RESTARTS: usize = 32;
const CANONICAL_SEED: u64 = 0x5eed_3b17;
const MAX_SWEEPS: usize = 20_000;
const GAIN_TOL: f64 = 1e-12;
const STATIONARITY_TOL: f64 = 1e-10;
const ZERO_PATTERN_TOL: f64 = 1e-8;

type V2 = [Complex64; 2];

fn normalize2(v: V2) -> Option<V2> {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    (n > 1e-300).then(|| [v[0] / n, v[1] / n])
}

/// Contraction of `ψ` with conjugated vectors on every site but `site`.
fn contract_except(g: &[[[Complex64; 2]; 2]; 2], vecs: &[V2; 3], site: usize) -> V2 {
    let mut out = [ZERO; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let d = [i, j, k];
                let mut w = g[i][j][k];
                for (s, v) in vecs.iter().enumerate() {
                    if s != site {
                        w *= v[d[s]].conj();
                    }
                }
                out[d[site]] += w;
            }
        }
    }
    out
}

struct ProductFit {
    vecs: [V2; 3],
    overlap: f64,
    residual: f64,
}

fn stationarity(g: &[[[Complex64; 2]; 2]; 2], vecs: &[V2; 3]) -> f64 {
    (0..3)
        .map(|s| {
            let v = contract_except(g, vecs, s);
            let a = vecs[s];
            // component of v orthogonal to a
            (a[1] * v[0] - a[0] * v[1]).norm()
        })
        .fold(0.0, f64::max)
}

fn fit_product(g: &[[[Complex64; 2]; 2]; 2], mut vecs: [V2; 3]) -> ProductFit {
    let mut overlap = 0.0;
    for _ in 0..MAX_SWEEPS {
        let mut current = overlap;
        for s in 0..3 {
            let v = contract_except(g, &vecs, s);
            if let Some(u) = normalize2(v) {
                vecs[s] = u;
                current = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            }
        }
        let gain = current - overlap;
        overlap = current;
        if gain < GAIN_TOL && stationarity(g, &vecs) < STATIONARITY_TOL {
            break;
        }
    }
    ProductFit { residual: stationarity(g, &vecs), vecs, overlap }
}

/// Row `s` of the phase system: which of `(αA, αB, αC, βA, βB, βC)` the
/// basis string picks up under `diag(e^{iα}, e^{iβ})` on each site.
fn phase_row(bits: [usize; 3]) -> [f64; 6] {
    let mut row = [0.0; 6];
    for (site, &b) in bits.iter().enumerate() {
        row[site + 3 * b] = 1.0;
    }
    row
}

fn matrix_rank(rows: &[[f64; 6]]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), 6, |i, j| rows[i][j]);
    m.singular_values().iter().filter(|&&s| s > 1e-9).count()
}

pub fn canonical_form3(state: &PureState) -> Result<CanonicalForm3> {
    require_qubits(state, 3)?;
    let g = tensor3(state);
    let mut rng = sampling::rng_from_seed(CANONICAL_SEED);
    let mut best: Option<ProductFit> = None;
    let mut best_residual = f64::INFINITY;
    for _ in 0..CANONICAL_RESTARTS {
        let mut start = [[ZERO; 2]; 3];
        for v in start.iter_mut() {
            let raw = sampling::gaussian_vector(&mut rng, 2);
            *v = normalize2([raw[0], raw[1]]).unwrap_or([ONE, ZERO]);
        }
        let fit = fit_product(&g, start);
        best_residual = best_residual.min(fit.residual);
        if fit.residual < STATIONARITY_TOL && best.as_ref().is_none_or(|b| fit.overlap > b.overlap) {
            best = Some(fit);
        }
    }
    let fit = best.ok_or(Error::NonConvergence { best_residual })?;

    // rows are <a_perp| and <a| so that the product optimum becomes |111>
    let mut unitaries: Vec<CMatrix> = fit
        .vecs
        .iter()
        .map(|a| CMatrix::from_row_slice(2, 2, &[-a[1], a[0], a[0].conj(), a[1].conj()]))
        .collect();
    let rotated = apply_local(state, &unitaries, LocalMode::Unitary)?;
    let amp = |bits: [usize; 3]| rotated.amps()[bits[0] * 4 + bits[1] * 2 + bits[2]];
    let pattern = [[1, 1, 0], [1, 0, 1], [0, 1, 1]].iter().map(|&b| amp(b).norm()).fold(0.0, f64::max);
    if pattern > ZERO_PATTERN_TOL {
        return Err(Error::NonConvergence { best_residual: pattern });
    }

    let order = [[1, 1, 1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut rows = Vec::new();
    let mut targets = Vec::new();
    for bits in order {
        let a = amp(bits);
        if a.norm() > 1e-12 {
            rows.push(phase_row(bits));
            targets.push(-a.arg());
        }
    }
    let a000 = amp([0, 0, 0]);
    if a000.norm() > 1e-12 {
        let mut extended = rows.clone();
        extended.push(phase_row([0, 0, 0]));
        if matrix_rank(&extended) > matrix_rank(&rows) {
            rows = extended;
            targets.push(-a000.arg());
        }
    }
    let mut shifts = [0.0; 6];
    if !rows.is_empty() {
        let m = DMatrix::from_fn(rows.len(), 6, |i, j| rows[i][j]);
        let b = DVector::from_vec(targets);
        let sol = m.svd(true, true).solve(&b, 1e-12).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        shifts.copy_from_slice(sol.as_slice());
    }
    for (site, u) in unitaries.iter_mut().enumerate() {
        let d = CMatrix::from_row_slice(2, 2, &[Complex64::from_polar(1.0, shifts[site]), ZERO, ZERO, Complex64::from_polar(1.0, shifts[site + 3])]);
        *u = d * &*u;
    }
    let canon = apply_local(state, &unitaries, LocalMode::Unitary)?;
    let a = canon.amps();
    let r = [a[0].norm(), a[4].norm(), a[2].norm(), a[1].norm(), a[7].norm()];
    let phi = if r[0] > 1e-12 { a[0].arg().rem_euclid(TAU) } else { 0.0 };
    let phi = if phi >= TAU { 0.0 } else { phi };
    let [ua, ub, uc]: [CMatrix; 3] = unitaries.try_into().expect("three sites");
    Ok(CanonicalForm3 { r, phi, local_unitaries: [ua, ub, uc], max_product_overlap: fit.overlap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{partial_trace, random_state};

    fn st(terms: &[(&str, f64)]) -> PureState {
        let t: Vec<(&str, Complex64)> = terms.iter().map(|(s, a)| (*s, c(*a, 0.0))).collect();
        PureState::from_bitstrings(vec![2; terms[0].0.len()], &t).unwrap()
    }

    fn ghz() -> PureState {
        st(&[("000", 1.0), ("111", 1.0)])
    }

    fn w() -> PureState {
        st(&[("001", 1.0), ("010", 1.0), ("100", 1.0)])
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn assert_table_row(state: &PureState, row: [f64; 5]) {
        let inv = lu_invariants(state).unwrap();
        let got = [inv.i2, inv.i3, inv.i4, inv.i5, inv.i6];
        for (g, e) in got.iter().zip(row) {
            assert!(close(*g, e, 1e-12), "{got:?} vs {row:?}");
        }
        assert!(close(inv.i1, 1.0, 1e-12));
    }

    #[test]
    fn table_rows() {
        assert_table_row(&ghz(), [0.5, 0.5, 0.5, 0.25, 0.25]);
        assert_table_row(&w(), [5.0 / 9.0, 5.0 / 9.0, 5.0 / 9.0, 2.0 / 9.0, 0.0]);
        assert_table_row(&st(&[("000", 1.0)]), [1.0, 1.0, 1.0, 1.0, 0.0]);
        assert_table_row(&st(&[("000", 1.0), ("011", 1.0)]), [1.0, 0.5, 0.5, 0.25, 0.0]);
        assert_table_row(&st(&[("000", 1.0), ("101", 1.0)]), [0.5, 1.0, 0.5, 0.25, 0.0]);
        assert_table_row(&st(&[("000", 1.0), ("110", 1.0)]), [0.5, 0.5, 1.0, 0.25, 0.0]);
    }

    #[test]
    fn purities_match_reductions() {
        let psi = random_state(&[2, 2, 2], 1).unwrap();
        let inv = lu_invariants(&psi).unwrap();
        for (site, val) in [inv.i2, inv.i3, inv.i4].iter().enumerate() {
            assert!(close(partial_trace(&psi, &[site]).unwrap().purity(), *val, 1e-13));
        }
    }

    #[test]
    fn conjugation_blindness() {
        for seed in 0..20 {
            let psi = random_state(&[2, 2, 2], seed).unwrap();
            let a = lu_invariants(&psi).unwrap();
            let b = lu_invariants(&psi.conj()).unwrap();
            for (x, y) in [(a.i2, b.i2), (a.i3, b.i3), (a.i4, b.i4), (a.i5, b.i5), (a.i6, b.i6)] {
                assert!(close(x, y, 1e-12));
            }
        }
    }

    #[test]
    fn concurrence_examples() {
        let bell = st(&[("00", 1.0), ("11", 1.0)]);
        let proj = bell.matricize(&[0, 1]).unwrap();
        let rho = DensityMatrix::new(&proj * proj.adjoint()).unwrap();
        let (cc, t) = concurrence_tangle_mixed(&rho).unwrap();
        assert!(close(cc, 1.0, 1e-12) && close(t, 1.0, 1e-12));
        let mixed = DensityMatrix::new(CMatrix::identity(4, 4).scale(0.25)).unwrap();
        assert_eq!(concurrence_tangle_mixed(&mixed).unwrap().0, 0.0);
        let rab = partial_trace(&w(), &[0, 1]).unwrap();
        assert!(close(concurrence_tangle_mixed(&rab).unwrap().1, 4.0 / 9.0, 1e-12));
    }

    #[test]
    fn pure_two_qubit_tangle() {
        assert!(close(tangle_pure2(&st(&[("00", 1.0), ("11", 1.0)])).unwrap(), 1.0, 1e-14));
        assert_eq!(tangle_pure2(&st(&[("00", 1.0)])).unwrap(), 0.0);
        let th = std::f64::consts::PI / 8.0;
        let s = st(&[("00", th.cos()), ("11", th.sin())]);
        assert!(close(tangle_pure2(&s).unwrap(), 0.5, 1e-14));
        assert!(close(tangle_pure2_spin_flip(&s).unwrap(), 0.5, 1e-14));
        for seed in 0..50 {
            let psi = random_state(&[2, 2], seed).unwrap();
            assert!(close(tangle_pure2(&psi).unwrap(), tangle_pure2_spin_flip(&psi).unwrap(), 1e-10));
        }
    }

    #[test]
    fn tangle_reports() {
        let g = tangle_report(&ghz()).unwrap();
        assert!(close(g.tau1, 1.0, 1e-12) && close(g.tau2, 0.0, 1e-12) && close(g.tau3, 1.0, 1e-12));
        let r = tangle_report(&w()).unwrap();
        assert!(close(r.tau2, 4.0 / 9.0, 1e-12) && close(r.tau3, 0.0, 1e-7));
        assert!(close(r.tau_a_bc, 8.0 / 9.0, 1e-12));
    }

    #[test]
    fn four_tangle_examples() {
        assert!(close(four_tangle(&st(&[("0000", 1.0), ("1111", 1.0)])).unwrap(), 1.0, 1e-14));
        assert_eq!(four_tangle(&st(&[("0000", 1.0)])).unwrap(), 0.0);
        let w4 = st(&[("0001", 1.0), ("0010", 1.0), ("0100", 1.0), ("1000", 1.0)]);
        assert!(four_tangle(&w4).unwrap().abs() < 1e-15);
        assert!(four_tangle(&ghz()).is_err());
    }

    #[test]
    fn slocc_labels() {
        let bisep = st(&[("000", 1.0), ("011", 1.0)]);
        let cls = slocc_classify3(&bisep, DEFAULT_SLOCC_TOL).unwrap();
        assert_eq!((cls.label, cls.local_ranks), (SloccLabel::BisepA, [1, 2, 2]));
        let cls = slocc_classify3(&w(), DEFAULT_SLOCC_TOL).unwrap();
        assert_eq!((cls.label, cls.local_ranks), (SloccLabel::W, [2, 2, 2]));
        assert!(cls.det3_abs < 1e-15);
        assert_eq!(slocc_classify3(&ghz(), DEFAULT_SLOCC_TOL).unwrap().label, SloccLabel::Ghz);
        assert_eq!(slocc_classify3(&st(&[("101", 1.0)]), DEFAULT_SLOCC_TOL).unwrap().label, SloccLabel::Separable);
    }

    #[test]
    fn canonical_examples() {
        let cf = canonical_form3(&st(&[("111", 1.0)])).unwrap();
        assert!(close(cf.r[4], 1.0, 1e-12) && cf.r[..4].iter().all(|&x| x < 1e-12));
        let cf = canonical_form3(&ghz()).unwrap();
        let h = 0.5f64.sqrt();
        assert!(close(cf.r[0], h, 1e-10) && close(cf.r[4], h, 1e-10), "{:?}", cf.r);
        assert!(cf.r[1..4].iter().all(|&x| x < 1e-10));
        assert!(cf.phi.abs() < 1e-10 || (cf.phi - TAU).abs() < 1e-10);
    }

    #[test]
    fn canonical_reconstructs() {
        for seed in 0..30 {
            let psi = random_state(&[2, 2, 2], 100 + seed).unwrap();
            let cf = canonical_form3(&psi).unwrap();
            let out = apply_local(&psi, &cf.local_unitaries, LocalMode::Unitary).unwrap();
            let target = cf.to_state();
            let res = out.amps().iter().zip(target.amps()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(res < 1e-8, "seed {seed}: residual {res}");
            assert!((0.0..TAU).contains(&cf.phi));
            assert!(close(cf.r.iter().map(|x| x * x).sum::<f64>(), 1.0, 1e-9));
        }
    }
}
