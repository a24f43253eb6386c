//! Shared inputs for the kernel benchmarks under `benches/`.

use entangle_core::{random_state, MpsState, NnHamiltonian, PureState};

/// Fixed-seed random qubit register.
pub fn qubits(k: usize, seed: u64) -> PureState {
    random_state(&vec![2; k], seed).expect("valid qubit dims")
}

pub fn chain(k: usize, seed: u64) -> MpsState {
    MpsState::from_dense(&qubits(k, seed))
}

pub fn critical_ising(k: usize) -> NnHamiltonian {
    NnHamiltonian::transverse_ising(k, 1.0).expect("valid chain")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        assert_eq!(qubits(5, 3), qubits(5, 3));
        assert_eq!(chain(6, 1).num_sites(), 6);
        assert_eq!(critical_ising(4).num_sites(), 4);
    }
}
