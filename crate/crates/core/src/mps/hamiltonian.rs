//! Nearest-neighbour chain Hamiltonians, their MPO form and dense oracles.

use super::MpsState;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, lanczos_lowest, pauli_x, pauli_y, pauli_z, svd, CMatrix, ONE, ZERO};
use crate::sampling::{gaussian_vector, rng_from_seed};
use num_complex::Complex64;

const HERMITIAN_TOL: f64 = 1e-12;

/// `H = Σ_k h_{k,k+1} + Σ_k f_k` on a chain of `K` quNits.
#[derive(Debug, Clone, PartialEq)]
pub struct NnHamiltonian {
    local_dim: usize,
    /// `N² x N²` operators, rows indexed by `(i_k, i_{k+1})`.
    bonds: Vec<CMatrix>,
    /// `N x N` single-site terms.
    fields: Vec<CMatrix>,
}

fn check_hermitian(m: &CMatrix, what: &str) -> Result<()> {
    let dev = crate::linalg::max_abs_diff(m, &m.adjoint());
    if dev > HERMITIAN_TOL || m.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(Error::InvalidArgument(format!("{what} is not Hermitian (deviation {dev:.3e})")));
    }
    Ok(())
}

impl NnHamiltonian {
    pub fn new(local_dim: usize, bonds: Vec<CMatrix>, fields: Vec<CMatrix>) -> Result<Self> {
        let k = fields.len();
        if k == 0 || bonds.len() + 1 != k {
            return Err(Error::InvalidArgument(format!("{} sites need {} bond terms, got {}", k, k.saturating_sub(1), bonds.len())));
        }
        let n2 = local_dim * local_dim;
        for (j, b) in bonds.iter().enumerate() {
            if b.shape() != (n2, n2) {
                return Err(Error::WrongShape(format!("bond {j} operator must be {n2}x{n2}")));
            }
            check_hermitian(b, &format!("bond {j} operator"))?;
        }
        for (j, f) in fields.iter().enumerate() {
            if f.shape() != (local_dim, local_dim) {
                return Err(Error::WrongShape(format!("field {j} must be {local_dim}x{local_dim}")));
            }
            check_hermitian(f, &format!("field {j}"))?;
        }
        Ok(Self { local_dim, bonds, fields })
    }

    /// `−Σ Z_k Z_{k+1} − g Σ X_k`.
    pub fn transverse_ising(sites: usize, g: f64) -> Result<Self> {
        let zz = -pauli_z().kronecker(&pauli_z());
        let x = pauli_x().scale(-g);
        Self::new(2, vec![zz; sites.saturating_sub(1)], vec![x; sites])
    }

    /// `Σ (X X + Y Y + Z Z)` on neighbouring qubits.
    pub fn heisenberg(sites: usize) -> Result<Self> {
        let b = pauli_x().kronecker(&pauli_x()) + pauli_y().kronecker(&pauli_y()) + pauli_z().kronecker(&pauli_z());
        Self::new(2, vec![b; sites.saturating_sub(1)], vec![CMatrix::zeros(2, 2); sites])
    }

    pub fn num_sites(&self) -> usize {
        self.fields.len()
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn dense_dim(&self) -> Result<usize> {
        self.local_dim
            .checked_pow(self.num_sites() as u32)
            .filter(|&d| d <= super::MAX_DENSE)
            .ok_or_else(|| Error::TooLarge(format!("{}^{} amplitudes", self.local_dim, self.num_sites())))
    }

    /// `H |ψ>` on dense amplitudes.
    pub fn apply(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.local_dim;
        let total = self.dense_dim()?;
        if amps.len() != total {
            return Err(Error::DimensionMismatch { expected: total, got: amps.len() });
        }
        let k = self.num_sites();
        let mut out = vec![ZERO; total];
        for (site, f) in self.fields.iter().enumerate() {
            let inner = n.pow((k - 1 - site) as u32);
            apply_block(amps, &mut out, f, n, inner);
        }
        for (site, b) in self.bonds.iter().enumerate() {
            let inner = n.pow((k - 2 - site) as u32);
            apply_block(amps, &mut out, b, n * n, inner);
        }
        Ok(out)
    }

    /// Dense matrix, for dimensions up to 4096.
    pub fn dense_matrix(&self) -> Result<CMatrix> {
        let d = self.dense_dim()?;
        if d > 4096 {
            return Err(Error::TooLarge(format!("dense Hamiltonian of dimension {d}")));
        }
        let mut m = CMatrix::zeros(d, d);
        let mut e = vec![ZERO; d];
        for col in 0..d {
            e[col] = ONE;
            for (row, v) in self.apply(&e)?.into_iter().enumerate() {
                m[(row, col)] = v;
            }
            e[col] = ZERO;
        }
        Ok(m)
    }

    /// Ground energy by full dense diagonalization (dimension ≤ 1024), else
    /// by Lanczos on the sparse action.
    pub fn exact_ground_energy(&self) -> Result<f64> {
        let d = self.dense_dim()?;
        if d <= 1024 {
            return Ok(*hermitian_eigenvalues(&self.dense_matrix()?).last().expect("nonempty"));
        }
        self.lanczos_ground_energy()
    }

    pub fn lanczos_ground_energy(&self) -> Result<f64> {
        let d = self.dense_dim()?;
        let start = gaussian_vector(&mut rng_from_seed(0x1a2c05), d);
        let (e, _) = lanczos_lowest(|v| self.apply(v).expect("matching dimension"), &start, 120, 1e-10, 60);
        Ok(e)
    }

    /// MPO whose bond terms come from the operator Schmidt decomposition
    /// `h = Σ_s L_s ⊗ R_s`. Bond index 0 means "term finished", the last
    /// index "nothing placed yet" and the ones between carry `R_s`.
    pub fn to_mpo(&self) -> Mpo {
        let n = self.local_dim;
        let k = self.num_sites();
        let ident = CMatrix::identity(n, n);
        let splits: Vec<Vec<(CMatrix, CMatrix)>> = self.bonds.iter().map(|b| operator_schmidt(b, n)).collect();
        let mut tensors = Vec::with_capacity(k);
        for site in 0..k {
            let left_terms: &[(CMatrix, CMatrix)] = if site > 0 { &splits[site - 1] } else { &[] };
            let right_terms: &[(CMatrix, CMatrix)] = if site + 1 < k { &splits[site] } else { &[] };
            let wl = left_terms.len() + 2;
            let wr = right_terms.len() + 2;
            let mut w = MpoTensor::zeros(wl, wr, n);
            w.set(wl - 1, wr - 1, &ident);
            w.set(0, 0, &ident);
            w.set(wl - 1, 0, &self.fields[site]);
            for (s, (l, _)) in right_terms.iter().enumerate() {
                w.set(wl - 1, 1 + s, l);
            }
            for (s, (_, r)) in left_terms.iter().enumerate() {
                w.set(1 + s, 0, r);
            }
            if site == 0 {
                w = w.select_rows(wl - 1);
            }
            if site == k - 1 {
                w = w.select_cols(0);
            }
            tensors.push(w);
        }
        Mpo { tensors }
    }
}

/// Applies `op` (dimension `m`) to the index block of stride `inner`.
fn apply_block(amps: &[Complex64], out: &mut [Complex64], op: &CMatrix, m: usize, inner: usize) {
    let outer = amps.len() / (m * inner);
    for o in 0..outer {
        for r in 0..m {
            for c in 0..m {
                let h = op[(r, c)];
                if h == ZERO {
                    continue;
                }
                let src = (o * m + c) * inner;
                let dst = (o * m + r) * inner;
                for x in 0..inner {
                    out[dst + x] += h * amps[src + x];
                }
            }
        }
    }
}

fn operator_schmidt(h: &CMatrix, n: usize) -> Vec<(CMatrix, CMatrix)> {
    // realign (i j),(i' j') -> (i i'),(j j')
    let r = CMatrix::from_fn(n * n, n * n, |row, col| {
        let (i, ip) = (row / n, row % n);
        let (j, jp) = (col / n, col % n);
        h[(i * n + j, ip * n + jp)]
    });
    let dec = svd(&r);
    let smax = dec.s.first().copied().unwrap_or(0.0);
    dec.s
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 1e-14 * smax && s > 0.0)
        .map(|(idx, &s)| {
            let root = s.sqrt();
            let l = CMatrix::from_fn(n, n, |i, ip| dec.u[(i * n + ip, idx)] * root);
            let rr = CMatrix::from_fn(n, n, |j, jp| dec.vt[(idx, j * n + jp)] * root);
            (l, rr)
        })
        .collect()
}

/// Operator-valued matrix `W[x, y]` with entries `<i|W_{xy}|i'>`, stored as
/// `(x, y, i, i')` row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MpoTensor {
    pub(crate) wl: usize,
    pub(crate) wr: usize,
    pub(crate) n: usize,
    pub(crate) data: Vec<Complex64>,
}

impl MpoTensor {
    fn zeros(wl: usize, wr: usize, n: usize) -> Self {
        Self { wl, wr, n, data: vec![ZERO; wl * wr * n * n] }
    }

    pub(crate) fn get(&self, x: usize, y: usize, i: usize, ip: usize) -> Complex64 {
        self.data[((x * self.wr + y) * self.n + i) * self.n + ip]
    }

    fn set(&mut self, x: usize, y: usize, op: &CMatrix) {
        for i in 0..self.n {
            for ip in 0..self.n {
                let idx = ((x * self.wr + y) * self.n + i) * self.n + ip;
                self.data[idx] = op[(i, ip)];
            }
        }
    }

    fn select_rows(&self, x: usize) -> Self {
        let block = self.wr * self.n * self.n;
        Self { wl: 1, wr: self.wr, n: self.n, data: self.data[x * block..(x + 1) * block].to_vec() }
    }

    fn select_cols(&self, y: usize) -> Self {
        let nn = self.n * self.n;
        let data = (0..self.wl).flat_map(|x| self.data[(x * self.wr + y) * nn..(x * self.wr + y + 1) * nn].to_vec()).collect();
        Self { wl: self.wl, wr: 1, n: self.n, data }
    }

    pub fn bond_dims(&self) -> (usize, usize) {
        (self.wl, self.wr)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mpo {
    pub(crate) tensors: Vec<MpoTensor>,
}

impl Mpo {
    pub fn tensors(&self) -> &[MpoTensor] {
        &self.tensors
    }

    /// `<ψ|H|ψ> / <ψ|ψ>` for an open-boundary MPS.
    pub fn expectation(&self, mps: &MpsState) -> Result<f64> {
        if mps.boundary() != super::Boundary::Open || mps.num_sites() != self.tensors.len() {
            return Err(Error::InvalidArgument("MPO expectation needs an open MPS of matching length".into()));
        }
        let mut env = super::dmrg::Env::trivial();
        for (t, w) in mps.tensors().iter().zip(&self.tensors) {
            if t.shape().1 != w.n {
                return Err(Error::WrongShape("local dimension mismatch".into()));
            }
            env = super::dmrg::extend_left(&env, t, w);
        }
        let num = env.data[0];
        let den = super::overlap(mps, mps)?;
        Ok((num / den).re)
    }

    /// Dense matrix of the MPO, for checking against the Hamiltonian.
    pub fn to_dense(&self) -> CMatrix {
        // contract left to right: rows/cols grow, bond index stays last
        let mut acc: Vec<CMatrix> = vec![CMatrix::from_element(1, 1, ONE)];
        for w in &self.tensors {
            let mut next = vec![CMatrix::zeros(acc[0].nrows() * w.n, acc[0].ncols() * w.n); w.wr];
            for (x, a) in acc.iter().enumerate() {
                for (y, slot) in next.iter_mut().enumerate() {
                    let op = CMatrix::from_fn(w.n, w.n, |i, ip| w.get(x, y, i, ip));
                    if op.iter().any(|v| *v != ZERO) {
                        *slot += a.kronecker(&op);
                    }
                }
            }
            acc = next;
        }
        acc.swap_remove(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::mps::random_mps;

    #[test]
    fn mpo_reproduces_dense() {
        for h in [NnHamiltonian::transverse_ising(5, 0.7).unwrap(), NnHamiltonian::heisenberg(4).unwrap()] {
            assert!(max_abs_diff(&h.to_mpo().to_dense(), &h.dense_matrix().unwrap()) < 1e-12);
        }
        let single = NnHamiltonian::transverse_ising(1, 2.0).unwrap();
        assert!(max_abs_diff(&single.to_mpo().to_dense(), &pauli_x().scale(-2.0)) < 1e-15);
    }

    #[test]
    fn expectation_matches_dense() {
        let h = NnHamiltonian::transverse_ising(6, 1.3).unwrap();
        let m = random_mps(&[2; 6], 3, 4).unwrap();
        let psi = m.to_dense().unwrap();
        let hpsi = h.apply(psi.amps()).unwrap();
        let dense: Complex64 = psi.amps().iter().zip(&hpsi).map(|(a, b)| a.conj() * b).sum();
        assert!((h.to_mpo().expectation(&m).unwrap() - dense.re).abs() < 1e-10);
    }

    #[test]
    fn ground_energies() {
        let e = NnHamiltonian::transverse_ising(8, 0.0).unwrap().exact_ground_energy().unwrap();
        assert!((e + 7.0).abs() < 1e-10);
        // two-site Heisenberg singlet
        let e = NnHamiltonian::heisenberg(2).unwrap().exact_ground_energy().unwrap();
        assert!((e + 3.0).abs() < 1e-12);
        let h = NnHamiltonian::transverse_ising(8, 1.0).unwrap();
        assert!((h.lanczos_ground_energy().unwrap() - h.exact_ground_energy().unwrap()).abs() < 1e-9);
    }

    #[test]
    fn rejects_non_hermitian() {
        let bad = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO]);
        assert!(NnHamiltonian::new(2, vec![], vec![bad]).is_err());
        assert!(NnHamiltonian::new(2, vec![CMatrix::zeros(4, 4)], vec![CMatrix::zeros(2, 2)]).is_err());
    }
}
