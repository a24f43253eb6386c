//! Binary linear codes and the Knill–Laflamme condition for states.

use crate::error::{Error, Result};
use crate::io::content_lines;
use crate::state::PureState;
use crate::uniformity::PauliString;
use num_complex::Complex64;

pub type BitVec = Vec<u8>;

pub fn hamming_distance(u: &[u8], v: &[u8]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::Code(format!("length mismatch: {} vs {}", u.len(), v.len())));
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count())
}

pub fn weight(u: &[u8]) -> usize {
    u.iter().filter(|&&b| b != 0).count()
}

pub fn parse_bits(s: &str) -> Result<BitVec> {
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Code(format!("bad bit {ch:?} in {s:?}"))),
        })
        .collect()
}

pub fn format_bits(u: &[u8]) -> String {
    u.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// Rank over GF(2) by Gaussian elimination.
fn gf2_rank(rows: &[BitVec]) -> usize {
    let mut m: Vec<BitVec> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] == 1) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][col] == 1 {
                let pivot = m[rank].clone();
                for (a, b) in m[r].iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    generator: Vec<BitVec>,
}

impl LinearCode {
    pub fn new(generator: Vec<BitVec>) -> Result<Self> {
        let n = generator.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::Code("generator must have at least one nonempty row".into()));
        }
        if generator.iter().any(|r| r.len() != n || r.iter().any(|&b| b > 1)) {
            return Err(Error::Code("generator rows must be bit vectors of equal length".into()));
        }
        if gf2_rank(&generator) != generator.len() {
            return Err(Error::Code("generator rows are linearly dependent".into()));
        }
        Ok(Self { n, generator })
    }

    /// `[7,4]` Hamming code in standard form.
    pub fn hamming74() -> Self {
        let rows = ["1000011", "0100101", "0010110", "0001111"];
        Self::new(rows.iter().map(|r| parse_bits(r).unwrap()).collect()).unwrap()
    }

    /// `[12,4]` code repeating a 4-bit message three times.
    pub fn repetition_12_4() -> Self {
        let rows = (0..4).map(|i| (0..12).map(|j| u8::from(j % 4 == i)).collect()).collect();
        Self::new(rows).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[BitVec] {
        &self.generator
    }

    /// Generator of the form `[1 | A]`.
    pub fn is_standard_form(&self) -> bool {
        let k = self.k();
        self.generator.iter().enumerate().all(|(i, r)| (0..k).all(|j| r[j] == u8::from(i == j)))
    }

    /// `H = [Aᵀ | 1]` (signs are immaterial over GF(2)).
    pub fn parity_check(&self) -> Result<Vec<BitVec>> {
        if !self.is_standard_form() {
            return Err(Error::Code("generator is not in standard form".into()));
        }
        let (n, k) = (self.n, self.k());
        Ok((0..n - k)
            .map(|i| {
                let mut row = vec![0u8; n];
                for (j, g) in self.generator.iter().enumerate() {
                    row[j] = g[k + i];
                }
                row[k + i] = 1;
                row
            })
            .collect())
    }

    pub fn encode(&self, message: &[u8]) -> Result<BitVec> {
        if message.len() != self.k() {
            return Err(Error::Code(format!("message length {} differs from k = {}", message.len(), self.k())));
        }
        let mut word = vec![0u8; self.n];
        for (&m, row) in message.iter().zip(&self.generator) {
            if m & 1 == 1 {
                for (w, g) in word.iter_mut().zip(row) {
                    *w ^= g;
                }
            }
        }
        Ok(word)
    }

    /// Every codeword, indexed by message bits (first bit most significant).
    pub fn codewords(&self) -> Result<Vec<BitVec>> {
        let k = self.k();
        if k > 24 {
            return Err(Error::TooLarge(format!("2^{k} codewords")));
        }
        (0..1usize << k).map(|m| self.encode(&(0..k).map(|j| ((m >> (k - 1 - j)) & 1) as u8).collect::<Vec<_>>())).collect()
    }

    /// Minimal weight over nonzero codewords; `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<usize>> {
        Ok(self.codewords()?.iter().map(|w| weight(w)).filter(|&w| w > 0).min())
    }

    pub fn syndrome(&self, received: &[u8]) -> Result<BitVec> {
        if received.len() != self.n {
            return Err(Error::Code(format!("received length {} differs from n = {}", received.len(), self.n)));
        }
        Ok(self.parity_check()?.iter().map(|h| h.iter().zip(received).fold(0, |acc, (a, b)| acc ^ (a & b))).collect())
    }

    /// Corrects a single flipped bit by matching the syndrome to a column of
    /// `H`. Returns the corrected word and the 0-based error position.
    pub fn syndrome_decode_weight1(&self, received: &[u8]) -> Result<(BitVec, Option<usize>)> {
        let s = self.syndrome(received)?;
        if s.iter().all(|&b| b == 0) {
            return Ok((received.to_vec(), None));
        }
        let h = self.parity_check()?;
        let pos = (0..self.n).find(|&j| h.iter().zip(&s).all(|(row, &sb)| row[j] == sb));
        match pos {
            Some(j) => {
                let mut fixed = received.to_vec();
                fixed[j] ^= 1;
                Ok((fixed, Some(j)))
            }
            None => Err(Error::Uncorrectable { syndrome: s }),
        }
    }
}

/// `n k` header followed by `k` generator rows.
pub fn parse_code(text: &str) -> Result<LinearCode> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let (hline, header) = lines.first().ok_or(Error::Parse { line: 0, msg: "empty code file".into() })?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse { line: *hline, msg: format!("bad integer {s:?}") });
    if nums.len() != 2 {
        return Err(Error::Parse { line: *hline, msg: "header must be `n k`".into() });
    }
    let (n, k) = (parse(nums[0])?, parse(nums[1])?);
    let rows: Vec<BitVec> = lines[1..]
        .iter()
        .map(|(ln, l)| {
            let r = parse_bits(l.trim()).map_err(|e| Error::Parse { line: *ln, msg: e.to_string() })?;
            if r.len() != n {
                return Err(Error::Parse { line: *ln, msg: format!("row has length {}, expected {n}", r.len()) });
            }
            Ok(r)
        })
        .collect::<Result<_>>()?;
    if rows.len() != k {
        return Err(Error::Parse { line: *hline, msg: format!("expected {k} rows, found {}", rows.len()) });
    }
    LinearCode::new(rows)
}

pub const KL_TOL: f64 = 1e-9;
pub const KL_MAX_PAIRS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct KnillLaflamme {
    pub pass: bool,
    pub worst_violation: f64,
    pub num_errors: usize,
}

/// Checks `<Ψ|E_I† E_J|Ψ> = δ_IJ` over all generalized Pauli strings of
/// weight at most `w`.
pub fn knill_laflamme_check(state: &PureState, w: usize) -> Result<KnillLaflamme> {
    let n = state
        .uniform_local_dim()
        .ok_or_else(|| Error::InvalidDims(format!("KL check needs equal local dimensions, got {:?}", state.dims())))?;
    let k = state.num_sites();
    if 2 * w > k {
        return Err(Error::InvalidArgument(format!("need 2w <= K, got w = {w}, K = {k}")));
    }
    // count before enumerating
    let mut count: usize = 0;
    let mut binom: usize = 1;
    for j in 0..=w {
        if j > 0 {
            binom = binom * (k - j + 1) / j;
        }
        let term = (n * n - 1).checked_pow(j as u32).and_then(|p| p.checked_mul(binom));
        count = term.and_then(|t| count.checked_add(t)).unwrap_or(usize::MAX);
    }
    if count.saturating_mul(count) > KL_MAX_PAIRS {
        return Err(Error::TooLarge(format!("{count} errors give more than {KL_MAX_PAIRS} pairs")));
    }
    let images: Vec<Vec<Complex64>> =
        PauliString::up_to_weight(n, k, w).iter().map(|p| p.apply(state)).collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for (i, a) in images.iter().enumerate() {
        for (j, b) in images.iter().enumerate().skip(i) {
            let g: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - target).norm());
        }
    }
    Ok(KnillLaflamme { pass: worst <= KL_TOL, worst_violation: worst, num_errors: images.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uniformity::catalog::{ame43, ame52, dicke, ghz};

    #[test]
    fn distances() {
        assert_eq!(hamming_distance(&[0, 0, 0], &[1, 1, 1]).unwrap(), 3);
        assert_eq!(hamming_distance(&[0, 1, 0, 1], &[0, 1, 1, 0]).unwrap(), 2);
        assert!(hamming_distance(&[0], &[0, 1]).is_err());
        assert_eq!(LinearCode::hamming74().min_distance().unwrap(), Some(3));
        assert_eq!(LinearCode::repetition_12_4().min_distance().unwrap(), Some(3));
    }

    #[test]
    fn parity_checks_annihilate() {
        for code in [LinearCode::hamming74(), LinearCode::repetition_12_4()] {
            let h = code.parity_check().unwrap();
            assert_eq!(h.len(), code.n() - code.k());
            for w in code.codewords().unwrap() {
                assert!(code.syndrome(&w).unwrap().iter().all(|&b| b == 0));
            }
        }
        let full = LinearCode::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(full.parity_check().unwrap().is_empty());
        let nonstd = LinearCode::new(vec![vec![0, 1, 1]]).unwrap();
        assert!(nonstd.parity_check().is_err());
        assert!(LinearCode::new(vec![vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn hamming_encode_decode() {
        let code = LinearCode::hamming74();
        let word = code.encode(&[0, 1, 0, 1]).unwrap();
        assert_eq!(format_bits(&word), "0101010");
        let mut bad = word.clone();
        bad[3] ^= 1;
        assert_eq!(code.syndrome_decode_weight1(&bad).unwrap(), (word.clone(), Some(3)));
        assert_eq!(code.syndrome_decode_weight1(&word).unwrap(), (word.clone(), None));
        let mut two = word.clone();
        two[0] ^= 1;
        two[1] ^= 1;
        // two flips land on some other codeword's ball, never back on the original
        if let Ok((fixed, _)) = code.syndrome_decode_weight1(&two) {
            assert_ne!(fixed, word);
        }
    }

    #[test]
    fn repetition_rejects_double_error() {
        let code = LinearCode::repetition_12_4();
        let mut w = code.encode(&[1, 0, 1, 1]).unwrap();
        w[0] ^= 1;
        w[1] ^= 1;
        assert!(matches!(code.syndrome_decode_weight1(&w), Err(Error::Uncorrectable { .. })));
    }

    #[test]
    fn code_text_format() {
        let c = parse_code("# hamming\n7 4\n1000011\n0100101\n0010110\n0001111\n").unwrap();
        assert_eq!(c, LinearCode::hamming74());
        assert!(parse_code("7 4\n1000011\n").is_err());
        assert!(parse_code("3 1\n10\n").is_err());
        assert!(parse_code("3 1\n1a0\n").is_err());
    }

    #[test]
    fn knill_laflamme_examples() {
        assert!(knill_laflamme_check(&ame52(), 1).unwrap().pass);
        assert!(knill_laflamme_check(&ame43(), 1).unwrap().pass);
        let product = knill_laflamme_check(&dicke(5, 0).unwrap(), 1).unwrap();
        assert!(!product.pass && (product.worst_violation - 1.0).abs() < 1e-12);
        assert!(knill_laflamme_check(&ghz(4).unwrap(), 0).unwrap().pass);
        assert!(!knill_laflamme_check(&ghz(4).unwrap(), 1).unwrap().pass);
        assert!(knill_laflamme_check(&ghz(3).unwrap(), 2).is_err());
        assert!(knill_laflamme_check(&ghz(20).unwrap(), 10).is_err());
    }
}
