//! Single-site variational ground-state search on open MPS.

use super::hamiltonian::{MpoTensor, NnHamiltonian};
use super::{random_mps, right_orthonormalize, Boundary, MpsState, SiteTensor};
use crate::error::{Error, Result};
use crate::linalg::{lanczos_lowest, svd, CMatrix, ONE, ZERO};
use num_complex::Complex64;

/// Largest chain the search accepts.
pub const MAX_DMRG_SITES: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateResult {
    pub energy: f64,
    pub mps: MpsState,
    /// Energy after each full left-right-left sweep.
    pub rayleigh_history: Vec<f64>,
    pub converged: bool,
}

/// Contracted block `E[a, x, a']`, bra index first, ket index last.
#[derive(Debug, Clone)]
pub(crate) struct Env {
    bra: usize,
    w: usize,
    ket: usize,
    pub(crate) data: Vec<Complex64>,
}

impl Env {
    pub(crate) fn trivial() -> Self {
        Self { bra: 1, w: 1, ket: 1, data: vec![ONE] }
    }
}

/// `T[a, y, i, b'] = Σ_{x, a', i'} L[a, x, a'] W[x, y, i, i'] v[a', i', b']`.
fn left_apply(env: &Env, w: &MpoTensor, v: &[Complex64], l: usize, r: usize) -> Vec<Complex64> {
    let n = w.n;
    debug_assert_eq!(env.ket, l);
    let mut t1 = vec![ZERO; env.bra * env.w * n * r];
    for a in 0..env.bra {
        for x in 0..env.w {
            for ap in 0..l {
                let e = env.data[(a * env.w + x) * env.ket + ap];
                if e == ZERO {
                    continue;
                }
                for ip in 0..n {
                    let src = (ap * n + ip) * r;
                    let dst = ((a * env.w + x) * n + ip) * r;
                    for b in 0..r {
                        t1[dst + b] += e * v[src + b];
                    }
                }
            }
        }
    }
    let mut t2 = vec![ZERO; env.bra * w.wr * n * r];
    for x in 0..w.wl {
        for y in 0..w.wr {
            for i in 0..n {
                for ip in 0..n {
                    let h = w.get(x, y, i, ip);
                    if h == ZERO {
                        continue;
                    }
                    for a in 0..env.bra {
                        let src = ((a * env.w + x) * n + ip) * r;
                        let dst = ((a * w.wr + y) * n + i) * r;
                        for b in 0..r {
                            t2[dst + b] += h * t1[src + b];
                        }
                    }
                }
            }
        }
    }
    t2
}

pub(crate) fn extend_left(env: &Env, t: &SiteTensor, w: &MpoTensor) -> Env {
    let (l, n, r) = t.shape();
    let t2 = left_apply(env, w, &t.data, l, r);
    let mut out = vec![ZERO; r * w.wr * r];
    for a in 0..l {
        for i in 0..n {
            for b in 0..r {
                let conj = t.get(a, i, b).conj();
                if conj == ZERO {
                    continue;
                }
                for y in 0..w.wr {
                    let src = ((a * w.wr + y) * n + i) * r;
                    let dst = (b * w.wr + y) * r;
                    for bp in 0..r {
                        out[dst + bp] += conj * t2[src + bp];
                    }
                }
            }
        }
    }
    Env { bra: r, w: w.wr, ket: r, data: out }
}

fn extend_right(env: &Env, t: &SiteTensor, w: &MpoTensor) -> Env {
    let (l, n, r) = t.shape();
    let nn = n;
    // T1[a', i', b, y] = Σ_{b'} B[a', i', b'] R[b, y, b']
    let mut t1 = vec![ZERO; l * nn * r * w.wr];
    for ap in 0..l {
        for ip in 0..nn {
            for bp in 0..r {
                let x = t.get(ap, ip, bp);
                if x == ZERO {
                    continue;
                }
                for b in 0..r {
                    for y in 0..w.wr {
                        t1[((ap * nn + ip) * r + b) * w.wr + y] += x * env.data[(b * env.w + y) * env.ket + bp];
                    }
                }
            }
        }
    }
    // T2[a', x, i, b] = Σ_{y, i'} W[x, y, i, i'] T1[a', i', b, y]
    let mut t2 = vec![ZERO; l * w.wl * nn * r];
    for xw in 0..w.wl {
        for y in 0..w.wr {
            for i in 0..nn {
                for ip in 0..nn {
                    let h = w.get(xw, y, i, ip);
                    if h == ZERO {
                        continue;
                    }
                    for ap in 0..l {
                        for b in 0..r {
                            t2[((ap * w.wl + xw) * nn + i) * r + b] += h * t1[((ap * nn + ip) * r + b) * w.wr + y];
                        }
                    }
                }
            }
        }
    }
    let mut out = vec![ZERO; l * w.wl * l];
    for a in 0..l {
        for i in 0..nn {
            for b in 0..r {
                let conj = t.get(a, i, b).conj();
                if conj == ZERO {
                    continue;
                }
                for xw in 0..w.wl {
                    for ap in 0..l {
                        out[(a * w.wl + xw) * l + ap] += conj * t2[((ap * w.wl + xw) * nn + i) * r + b];
                    }
                }
            }
        }
    }
    Env { bra: l, w: w.wl, ket: l, data: out }
}

/// Effective one-site Hamiltonian applied to `v[a', i', b']`.
fn effective_apply(left: &Env, w: &MpoTensor, right: &Env, v: &[Complex64], l: usize, r: usize) -> Vec<Complex64> {
    let n = w.n;
    let t2 = left_apply(left, w, v, l, r);
    let mut out = vec![ZERO; l * n * r];
    for a in 0..l {
        for y in 0..w.wr {
            for i in 0..n {
                let src = ((a * w.wr + y) * n + i) * r;
                for b in 0..r {
                    let mut acc = ZERO;
                    let row = (b * right.w + y) * right.ket;
                    for bp in 0..r {
                        acc += t2[src + bp] * right.data[row + bp];
                    }
                    out[(a * n + i) * r + b] += acc;
                }
            }
        }
    }
    out
}

fn solve_site(left: &Env, w: &MpoTensor, right: &Env, t: &SiteTensor) -> (f64, SiteTensor) {
    let (l, n, r) = t.shape();
    let dim = l * n * r;
    let (e, v) = lanczos_lowest(|x| effective_apply(left, w, right, x, l, r), &t.data, dim.min(40), 1e-11, 30);
    (e, SiteTensor { left: l, phys: n, right: r, data: v })
}

/// Sweeps left-to-right then right-to-left, solving each site's effective
/// eigenproblem with Lanczos started from the current tensor so that the
/// energy never rises. Bond dimensions are fixed by the random start
/// `min(D, N^k, N^{K−k})`. Stops once a sweep lowers the energy by less
/// than `tol`.
pub fn dmrg_ground_state(h: &NnHamiltonian, max_bond: usize, max_sweeps: usize, tol: f64, seed: u64) -> Result<GroundStateResult> {
    let k = h.num_sites();
    if k > MAX_DMRG_SITES {
        return Err(Error::TooLarge(format!("{k} sites exceed the limit of {MAX_DMRG_SITES}")));
    }
    if !(tol > 0.0) || max_bond == 0 || max_sweeps == 0 {
        return Err(Error::InvalidArgument("need tol > 0, bond >= 1 and at least one sweep".into()));
    }
    let mpo = h.to_mpo();
    let w = &mpo.tensors;
    let start = random_mps(&vec![h.local_dim(); k], max_bond, seed)?;
    let mut t = right_orthonormalize(start.tensors);
    let mut left: Vec<Env> = vec![Env::trivial(); k];
    let mut right: Vec<Env> = vec![Env::trivial(); k];
    for j in (1..k).rev() {
        right[j - 1] = extend_right(&right[j], &t[j], &w[j]);
    }
    let mut history: Vec<f64> = Vec::new();
    let mut energy = f64::INFINITY;
    let mut converged = false;
    for _ in 0..max_sweeps {
        for j in 0..k {
            let (e, v) = solve_site(&left[j], &w[j], &right[j], &t[j]);
            energy = e;
            if j + 1 < k {
                let (l, n, _) = v.shape();
                let dec = svd(&v.as_left_matrix());
                let m = dec.s.len();
                t[j] = SiteTensor::from_left_matrix(&dec.u.columns(0, m).into_owned(), l, n);
                let carry = CMatrix::from_fn(m, dec.vt.ncols(), |a, b| dec.vt[(a, b)] * dec.s[a]);
                t[j + 1] = SiteTensor::from_right_matrix(&(carry * t[j + 1].as_right_matrix()), t[j + 1].phys);
                left[j + 1] = extend_left(&left[j], &t[j], &w[j]);
            } else {
                t[j] = v;
            }
        }
        for j in (0..k).rev() {
            let (e, v) = solve_site(&left[j], &w[j], &right[j], &t[j]);
            energy = e;
            if j > 0 {
                let dec = svd(&v.as_right_matrix());
                let m = dec.s.len();
                t[j] = SiteTensor::from_right_matrix(&dec.vt.rows(0, m).into_owned(), v.phys);
                let us = CMatrix::from_fn(dec.u.nrows(), m, |a, b| dec.u[(a, b)] * dec.s[b]);
                let (l, n, _) = t[j - 1].shape();
                t[j - 1] = SiteTensor::from_left_matrix(&(t[j - 1].as_left_matrix() * us), l, n);
                right[j - 1] = extend_right(&right[j], &t[j], &w[j]);
            } else {
                t[j] = v;
            }
        }
        let gain = history.last().map(|prev| prev - energy);
        history.push(energy);
        if gain.is_some_and(|g| g < tol) {
            converged = true;
            break;
        }
    }
    let mps = MpsState::new(t, Boundary::Open)?.canonicalize()?;
    Ok(GroundStateResult { energy, mps, rayleigh_history: history, converged })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ising_matches_exact() {
        for g in [0.5, 1.0] {
            let h = NnHamiltonian::transverse_ising(6, g).unwrap();
            let res = dmrg_ground_state(&h, 8, 20, 1e-12, 0).unwrap();
            let exact = h.exact_ground_energy().unwrap();
            assert!(res.converged);
            assert!((res.energy - exact).abs() < 1e-8, "{} vs {exact}", res.energy);
            assert!(res.rayleigh_history.windows(2).all(|p| p[1] <= p[0] + 1e-12));
            assert!((h.to_mpo().expectation(&res.mps).unwrap() - res.energy).abs() < 1e-9);
        }
    }

    #[test]
    fn classical_ising() {
        let h = NnHamiltonian::transverse_ising(8, 0.0).unwrap();
        let res = dmrg_ground_state(&h, 4, 20, 1e-12, 0).unwrap();
        assert!((res.energy + 7.0).abs() < 1e-9);
    }

    #[test]
    fn larger_bond_never_worse() {
        let h = NnHamiltonian::heisenberg(8).unwrap();
        let small = dmrg_ground_state(&h, 2, 10, 1e-10, 1).unwrap();
        let big = dmrg_ground_state(&h, 8, 10, 1e-10, 1).unwrap();
        let exact = h.exact_ground_energy().unwrap();
        assert!(big.energy <= small.energy + 1e-12);
        assert!(small.energy >= exact - 1e-10);
    }

    #[test]
    fn rejects_bad_options() {
        let h = NnHamiltonian::transverse_ising(4, 1.0).unwrap();
        assert!(dmrg_ground_state(&h, 4, 10, 0.0, 0).is_err());
        assert!(dmrg_ground_state(&h, 0, 10, 1e-8, 0).is_err());
    }
}
