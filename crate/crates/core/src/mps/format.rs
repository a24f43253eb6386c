//! Text format for MPS files.
//!
//! ```text
//! mps K N open|periodic
//! site 0 1 2
//! <re> <im>          # r_left·N·r_right entries, row-major (a, i, b)
//! ...
//! bond 1 0.5 0.5     # optional Schmidt spectrum of an internal bond
//! ```

use super::{Boundary, MpsState, SiteTensor};
use crate::error::{Error, Result};
use crate::io::{content_lines, parse_f64, parse_usize};
use num_complex::Complex64;
use std::fmt::Write as _;

pub fn format_mps(mps: &MpsState) -> Result<String> {
    let dims = mps.dims();
    let n = dims[0];
    if dims.iter().any(|&d| d != n) {
        return Err(Error::InvalidDims("the MPS file format needs one local dimension".into()));
    }
    let mut out = String::new();
    writeln!(out, "mps {} {} {}", mps.num_sites(), n, mps.boundary()).unwrap();
    for (k, t) in mps.tensors().iter().enumerate() {
        let (l, _, r) = t.shape();
        writeln!(out, "site {k} {l} {r}").unwrap();
        for z in t.data() {
            writeln!(out, "{:?} {:?}", z.re, z.im).unwrap();
        }
    }
    if let Some(spectra) = mps.spectra() {
        for (b, lam) in spectra.iter().enumerate() {
            let vals: Vec<String> = lam.iter().map(|v| format!("{v:?}")).collect();
            writeln!(out, "bond {} {}", b + 1, vals.join(" ")).unwrap();
        }
    }
    Ok(out)
}

pub fn parse_mps(text: &str) -> Result<MpsState> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let (hl, header) = *lines.first().ok_or_else(|| err(0, "empty MPS file".into()))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 4 || h[0] != "mps" {
        return Err(err(hl, "header must be `mps K N boundary`".into()));
    }
    let k = parse_usize(h[1], hl)?;
    let n = parse_usize(h[2], hl)?;
    let boundary = match h[3] {
        "open" => Boundary::Open,
        "periodic" => Boundary::Periodic,
        other => return Err(err(hl, format!("unknown boundary {other:?}"))),
    };
    let mut tensors: Vec<SiteTensor> = Vec::with_capacity(k);
    let mut spectra: Vec<Vec<f64>> = Vec::new();
    let mut idx = 1;
    while idx < lines.len() {
        let (ln, line) = lines[idx];
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok[0] {
            "site" => {
                if tok.len() != 4 {
                    return Err(err(ln, "expected `site k r_left r_right`".into()));
                }
                let site = parse_usize(tok[1], ln)?;
                if site != tensors.len() {
                    return Err(err(ln, format!("expected site {}, found {site}", tensors.len())));
                }
                let (l, r) = (parse_usize(tok[2], ln)?, parse_usize(tok[3], ln)?);
                let count = l * n * r;
                if lines.len() - idx - 1 < count {
                    return Err(err(ln, format!("site {site} needs {count} entries")));
                }
                let mut data = Vec::with_capacity(count);
                for &(el, entry) in &lines[idx + 1..idx + 1 + count] {
                    let parts: Vec<&str> = entry.split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(err(el, "expected `re im`".into()));
                    }
                    data.push(Complex64::new(parse_f64(parts[0], el)?, parse_f64(parts[1], el)?));
                }
                tensors.push(SiteTensor::new(l, n, r, data).map_err(|e| err(ln, e.to_string()))?);
                idx += 1 + count;
            }
            "bond" => {
                let b = tok.get(1).ok_or_else(|| err(ln, "expected `bond k values...`".into()))?;
                let b = parse_usize(b, ln)?;
                if b != spectra.len() + 1 {
                    return Err(err(ln, format!("expected bond {}, found {b}", spectra.len() + 1)));
                }
                spectra.push(tok[2..].iter().map(|v| parse_f64(v, ln)).collect::<Result<_>>()?);
                idx += 1;
            }
            other => return Err(err(ln, format!("unexpected keyword {other:?}"))),
        }
    }
    if tensors.len() != k {
        return Err(err(hl, format!("header promises {k} sites, found {}", tensors.len())));
    }
    let mut mps = MpsState::new(tensors, boundary)?;
    if !spectra.is_empty() {
        if boundary != Boundary::Open || spectra.len() + 1 != k {
            return Err(err(hl, "spectra must cover every internal bond of an open chain".into()));
        }
        mps.spectra = Some(spectra);
    }
    Ok(mps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mps::{overlap, random_mps, ghz_mps};

    #[test]
    fn round_trip() {
        let m = random_mps(&[2; 6], 4, 7).unwrap();
        let back = parse_mps(&format_mps(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!(back.check_canonical().unwrap().max() < 1e-10);
        assert!((overlap(&m, &back).unwrap().re - 1.0).abs() < 1e-12);
        let g = ghz_mps(3).unwrap();
        assert_eq!(parse_mps(&format_mps(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn malformed() {
        assert!(parse_mps("").is_err());
        assert!(parse_mps("mps 1 2 open\nsite 0 1 1\n1 0\n").is_err());
        assert!(parse_mps("mps 1 2 sideways\n").is_err());
        let e = parse_mps("mps 1 2 open\nsite 0 1 1\n1 0\n0 x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
        assert!(parse_mps("mps 1 2 open\nsite 0 1 1\n1 0\n0 0\n").is_ok());
    }
}
