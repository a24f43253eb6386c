//! Named states used throughout the toolkit.

use super::pauli::PauliString;
use crate::error::{Error, Result};
use crate::linalg::{ONE, ZERO};
use crate::state::PureState;

/// Generators of the five-qubit stabilizer whose +1 eigenstate is AME(5,2).
pub const AME52_GENERATORS: [&str; 5] = ["XXZIZ", "ZXXZI", "IZXXZ", "ZIZXX", "ZZZZZ"];

/// Basis strings of the AME(4,3) state, each with amplitude 1/3.
pub const AME43_TERMS: [&str; 9] = ["0000", "0112", "0221", "1011", "1120", "1202", "2022", "2101", "2210"];

pub fn ghz(k: usize) -> Result<PureState> {
    ghz_qudit(k, 2)
}

/// `Σ_j |j…j> / √N`.
pub fn ghz_qudit(k: usize, n: usize) -> Result<PureState> {
    if k < 1 || n < 2 {
        return Err(Error::InvalidArgument(format!("ghz needs K >= 1 and N >= 2, got K={k}, N={n}")));
    }
    let dims = vec![n; k];
    let total: usize = dims.iter().product();
    let step = (total - 1) / (n - 1);
    let mut amps = vec![ZERO; total];
    for j in 0..n {
        amps[j * step] = ONE;
    }
    PureState::new(dims, amps)
}

pub fn w(k: usize) -> Result<PureState> {
    dicke(k, 1)
}

/// Equal superposition of all `K`-bit strings of Hamming weight `m`.
pub fn dicke(k: usize, m: usize) -> Result<PureState> {
    if k < 1 || m > k {
        return Err(Error::InvalidArgument(format!("dicke needs 0 <= m <= K, got K={k}, m={m}")));
    }
    if k > 24 {
        return Err(Error::TooLarge(format!("{k} qubits")));
    }
    let amps = (0..1usize << k).map(|i| if i.count_ones() as usize == m { ONE } else { ZERO }).collect();
    PureState::new(vec![2; k], amps)
}

pub fn ame43() -> PureState {
    let terms: Vec<(&str, _)> = AME43_TERMS.iter().map(|s| (*s, ONE)).collect();
    PureState::from_bitstrings(vec![3; 4], &terms).expect("valid qutrit strings")
}

/// Joint +1 eigenstate of [`AME52_GENERATORS`], from `Π (1 + G_i)/2` applied
/// to the first computational basis state it does not annihilate.
pub fn ame52() -> PureState {
    let gens: Vec<PauliString> = AME52_GENERATORS.iter().map(|g| PauliString::parse_qubit(g).expect("valid generator")).collect();
    let dims = vec![2; 5];
    for start in 0..32 {
        let mut amps = vec![ZERO; 32];
        amps[start] = ONE;
        for g in &gens {
            let image = g.apply_amps(&dims, &amps).expect("five qubits");
            for (a, b) in amps.iter_mut().zip(image) {
                *a = (*a + b) * 0.5;
            }
        }
        if amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-6 {
            return PureState::new(dims, amps).expect("nonzero projection");
        }
    }
    unreachable!("the stabilizer projector has rank one")
}

/// Parses `ghz(K)`, `ghz(K,N)`, `w(K)`, `dicke(K,m)`, `ame43`, `ame52`.
pub fn catalog_state(desc: &str) -> Result<PureState> {
    let desc = desc.trim();
    let (name, args) = match desc.split_once('(') {
        Some((name, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| Error::InvalidArgument(format!("missing ')' in {desc}")))?;
            let args = inner
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad parameter {t:?} in {desc}"))))
                .collect::<Result<Vec<_>>>()?;
            (name.trim(), args)
        }
        None => (desc, vec![]),
    };
    match (name, args.as_slice()) {
        ("ghz", [k]) => ghz(*k),
        ("ghz", [k, n]) => ghz_qudit(*k, *n),
        ("w", [k]) => w(*k),
        ("dicke", [k, m]) => dicke(*k, *m),
        ("ame43", []) => Ok(ame43()),
        ("ame52", []) => Ok(ame52()),
        _ => Err(Error::InvalidArgument(format!("unknown catalog state {desc}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz3_amplitudes() {
        let g = ghz(3).unwrap();
        let h = 0.5f64.sqrt();
        assert!((g.amps()[0].re - h).abs() < 1e-15 && (g.amps()[7].re - h).abs() < 1e-15);
        let q = ghz_qudit(2, 3).unwrap();
        assert!((q.amplitude(&[2, 2]).unwrap().re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ame43_amplitudes() {
        let s = ame43();
        for t in AME43_TERMS {
            let d: Vec<usize> = t.chars().map(|ch| ch.to_digit(10).unwrap() as usize).collect();
            assert!((s.amplitude(&d).unwrap().re - 1.0 / 3.0).abs() < 1e-15);
        }
        assert_eq!(s.amps().iter().filter(|a| a.norm() > 0.0).count(), 9);
    }

    #[test]
    fn ame52_is_stabilized() {
        let s = ame52();
        for g in AME52_GENERATORS {
            let e = PauliString::parse_qubit(g).unwrap().expectation(&s).unwrap();
            assert!((e - ONE).norm() < 1e-10, "{g}: {e}");
        }
    }

    #[test]
    fn catalog_parsing() {
        assert_eq!(catalog_state("dicke(4, 2)").unwrap(), dicke(4, 2).unwrap());
        assert_eq!(catalog_state("w(3)").unwrap().dims(), &[2, 2, 2]);
        assert!(catalog_state("ghz").is_err());
        assert!(catalog_state("bell(2)").is_err());
        assert!(dicke(3, 4).is_err());
    }
}
