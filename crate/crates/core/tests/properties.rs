use entangle_core::codes::{hamming_distance, LinearCode};
use entangle_core::invariants3::det3;
use entangle_core::io::{format_state, parse_state};
use entangle_core::linalg::{c, CMatrix};
use entangle_core::mps::format::{format_mps, parse_mps};
use entangle_core::mps::random_mps;
use entangle_core::sampling::{random_special_linear, random_unitary, rng_from_seed};
use entangle_core::stellar::{from_constellation, to_constellation};
use entangle_core::{
    apply_local, entanglement_entropy, local_spectra, lu_invariants, overlap, polygon_check, q_measure, random_state,
    schmidt, Bipartition, LocalMode, MpsState, PureState, SymmetricState,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn eps(a: usize, b: usize) -> f64 {
    match (a, b) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

/// Half the full epsilon contraction over twelve indices. With `ε_01 = 1`
/// this is the negative of the expanded hyperdeterminant polynomial.
fn det3_epsilon(s: &PureState) -> Complex64 {
    let g = |i1: usize, i2: usize, i3: usize| s.amps()[i1 * 4 + i2 * 2 + i3];
    let mut acc = c(0.0, 0.0);
    for idx in 0..1usize << 12 {
        let b = |k: usize| (idx >> k) & 1;
        let (i1, i2, i3, j1, j2, j3) = (b(0), b(1), b(2), b(3), b(4), b(5));
        let (k1, k2, k3, l1, l2, l3) = (b(6), b(7), b(8), b(9), b(10), b(11));
        let e = eps(i1, j1) * eps(i2, j2) * eps(k1, l1) * eps(k2, l2) * eps(i3, k3) * eps(j3, l3);
        if e != 0.0 {
            acc += g(i1, i2, i3) * g(j1, j2, j3) * g(k1, k2, k3) * g(l1, l2, l3) * e;
        }
    }
    acc * 0.5
}

fn locals(seed: u64, k: usize, unitary: bool) -> Vec<CMatrix> {
    let mut rng = rng_from_seed(seed);
    (0..k).map(|_| if unitary { random_unitary(&mut rng, 2) } else { random_special_linear(&mut rng, 2) }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn det3_matches_epsilon_contraction(seed in any::<u64>()) {
        let s = random_state(&[2, 2, 2], seed).unwrap();
        prop_assert!((det3(&s).unwrap() + det3_epsilon(&s)).norm() < 1e-12);
    }

    #[test]
    fn lu_invariants_survive_local_unitaries(seed in any::<u64>()) {
        let s = random_state(&[2, 2, 2], seed).unwrap();
        let moved = apply_local(&s, &locals(seed ^ 1, 3, true), LocalMode::Unitary).unwrap();
        let (a, b) = (lu_invariants(&s).unwrap(), lu_invariants(&moved).unwrap());
        for (x, y) in [(a.i2, b.i2), (a.i3, b.i3), (a.i4, b.i4), (a.i5, b.i5), (a.i6, b.i6)] {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn det3_is_relative_slocc_invariant(seed in any::<u64>()) {
        let s = random_state(&[2, 2, 2], seed).unwrap();
        let moved = apply_local(&s, &locals(seed ^ 2, 3, false), LocalMode::Slocc).unwrap();
        // unit determinants: only the renormalization rescales Det3
        let scale = moved.normalization_factor().powi(4);
        prop_assert!((det3(&moved).unwrap() / scale - det3(&s).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn schmidt_spectrum_is_shared(seed in any::<u64>(), k in 2usize..7, cut in 1usize..6) {
        prop_assume!(cut < k);
        let s = random_state(&vec![2; k], seed).unwrap();
        let left: Vec<usize> = (0..cut).collect();
        let right: Vec<usize> = (cut..k).collect();
        let d = schmidt(&s, &Bipartition::new(&left, k).unwrap()).unwrap();
        prop_assert!((d.lambdas.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(d.lambdas.windows(2).all(|p| p[0] >= p[1]));
        let (sl, sr) = (entanglement_entropy(&s, &left).unwrap(), entanglement_entropy(&s, &right).unwrap());
        prop_assert!((sl - sr).abs() < 1e-10);
    }

    #[test]
    fn polygon_inequalities_hold(seed in any::<u64>(), k in 2usize..7) {
        let s = random_state(&vec![2; k], seed).unwrap();
        prop_assert!(polygon_check(&local_spectra(&s).unwrap()).pass);
    }

    #[test]
    fn q_measures_are_bounded_lu_invariants(seed in any::<u64>(), k in 2usize..7) {
        let s = random_state(&vec![2; k], seed).unwrap();
        let moved = apply_local(&s, &locals(seed ^ 3, k, true), LocalMode::Unitary).unwrap();
        for m in 1..=k / 2 {
            let q = q_measure(&s, m).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&q));
            prop_assert!((q - q_measure(&moved, m).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn state_text_round_trip(seed in any::<u64>(), dims in prop::collection::vec(2usize..4, 1..5)) {
        let s = random_state(&dims, seed).unwrap();
        let back = parse_state(&format_state(&s)).unwrap();
        prop_assert!((s.fidelity(&back).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn constellation_round_trip(re in prop::collection::vec(-2.0f64..2.0, 8)) {
        let d: Vec<Complex64> = (0..4).map(|i| c(re[2 * i], re[2 * i + 1])).collect();
        prop_assume!(d.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3);
        let sym = SymmetricState::new(d).unwrap();
        let back = from_constellation(&to_constellation(&sym)).unwrap();
        let ov: Complex64 = sym.dicke_coeffs().iter().zip(back.dicke_coeffs()).map(|(a, b)| a.conj() * b).sum();
        prop_assert!((ov.norm() - 1.0).abs() < 1e-8, "overlap {}", ov.norm());
    }

    #[test]
    fn mps_round_trip_and_canonical(seed in any::<u64>(), k in 2usize..9) {
        let s = random_state(&vec![2; k], seed).unwrap();
        let m = MpsState::from_dense(&s);
        prop_assert!(m.check_canonical().unwrap().max() < 1e-10);
        let back = m.to_dense().unwrap();
        prop_assert!((s.fidelity(&back).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn single_bond_truncation_is_eckart_young(seed in any::<u64>(), k in 4usize..9, d in 1usize..4) {
        let s = random_state(&vec![2; k], seed).unwrap();
        let cut = k / 2;
        let lambdas = schmidt(&s, &Bipartition::prefix(cut, k).unwrap()).unwrap().lambdas;
        let kept: f64 = lambdas.iter().take(d).sum();
        let exact = MpsState::from_dense(&s);
        let t = exact.truncate_bond(cut, d).unwrap();
        let f = overlap(&exact, &t.mps).unwrap().norm_sqr() / t.mps.norm().unwrap().powi(2);
        prop_assert!((f - kept).abs() < 1e-10);
        prop_assert!((t.discarded[cut - 1] - (1.0 - kept)).abs() < 1e-10);
        prop_assert!(t.mps.bond_dims()[cut - 1] <= d);
    }

    #[test]
    fn mps_text_round_trip(seed in any::<u64>(), k in 2usize..8, d in 1usize..5) {
        let m = random_mps(&vec![2; k], d, seed).unwrap();
        let back = parse_mps(&format_mps(&m).unwrap()).unwrap();
        prop_assert!((overlap(&m, &back).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hamming_code_is_linear_and_corrects(a in 0u8..16, b in 0u8..16, pos in 0usize..7) {
        let h = LinearCode::hamming74();
        let msg = |m: u8| (0..4).map(|j| (m >> (3 - j)) & 1).collect::<Vec<u8>>();
        let (wa, wb) = (h.encode(&msg(a)).unwrap(), h.encode(&msg(b)).unwrap());
        let sum: Vec<u8> = wa.iter().zip(&wb).map(|(x, y)| x ^ y).collect();
        prop_assert_eq!(&sum, &h.encode(&msg(a ^ b)).unwrap());
        if a != b {
            prop_assert!(hamming_distance(&wa, &wb).unwrap() >= 3);
        }
        let mut r = wa.clone();
        r[pos] ^= 1;
        prop_assert_eq!(h.syndrome_decode_weight1(&r).unwrap(), (wa, Some(pos)));
    }
}

#[test]
fn ghz_det3_sign() {
    let s = PureState::from_bitstrings(vec![2; 3], &[("000", c(1.0, 0.0)), ("111", c(1.0, 0.0))]).unwrap();
    assert!((det3_epsilon(&s) + c(0.25, 0.0)).norm() < 1e-15);
    assert!((det3(&s).unwrap() - c(0.25, 0.0)).norm() < 1e-15);
}
