//! Text formats shared by the library and the command-line tool.
//!
//! State files: first content line `dims d1 d2 ... dK`, then one
//! `basis-string re im` line per nonzero amplitude. `#` starts a comment,
//! omitted strings are zero and the loaded state is normalized.

use crate::error::{Error, Result};
use crate::linalg::{c, ZERO};
use crate::state::{digits_of, index_of, PureState};
use std::collections::HashSet;

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    let v: f64 = tok.parse().map_err(|_| Error::Parse { line, msg: format!("not a number: {tok}") })?;
    if !v.is_finite() {
        return Err(Error::Parse { line, msg: format!("non-finite value {tok}") });
    }
    Ok(v)
}

pub(crate) fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("not a non-negative integer: {tok}") })
}

fn parse_digit(ch: char, line: usize) -> Result<usize> {
    ch.to_digit(36).map(|d| d as usize).ok_or_else(|| Error::Parse { line, msg: format!("bad basis digit {ch:?}") })
}

fn digit_char(d: usize) -> char {
    std::char::from_digit(d as u32, 36).expect("local dimension above 36 has no digit encoding")
}

pub fn parse_state(text: &str) -> Result<PureState> {
    let mut lines = content_lines(text);
    let Some((line_no, header)) = lines.next() else {
        return Err(Error::ZeroVector);
    };
    let mut toks = header.split_whitespace();
    if toks.next() != Some("dims") {
        return Err(Error::Parse { line: line_no, msg: "expected `dims d1 ... dK`".into() });
    }
    let dims = toks.map(|t| parse_usize(t, line_no)).collect::<Result<Vec<_>>>()?;
    if dims.is_empty() || dims.iter().any(|&d| d == 0 || d > 36) {
        return Err(Error::Parse { line: line_no, msg: "dims must list 1 or more values in 1..=36".into() });
    }
    let total = dims.iter().try_fold(1usize, |a, &d| a.checked_mul(d)).ok_or_else(|| Error::TooLarge("state dimension".into()))?;
    let mut amps = vec![ZERO; total];
    let mut seen = HashSet::new();
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::Parse { line, msg: "expected `basis-string re im`".into() });
        }
        let digits = toks[0].chars().map(|ch| parse_digit(ch, line)).collect::<Result<Vec<_>>>()?;
        let idx = index_of(&dims, &digits).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        if !seen.insert(idx) {
            return Err(Error::Parse { line, msg: format!("duplicate basis string {}", toks[0]) });
        }
        amps[idx] = c(parse_f64(toks[1], line)?, parse_f64(toks[2], line)?);
    }
    PureState::new(dims, amps)
}

pub fn read_state(path: &std::path::Path) -> Result<PureState> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    parse_state(&text)
}

/// Serializes nonzero amplitudes with round-trip float precision.
pub fn format_state(state: &PureState) -> String {
    let mut out = String::from("dims");
    for d in state.dims() {
        out.push_str(&format!(" {d}"));
    }
    out.push('\n');
    for (idx, a) in state.amps().iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let label: String = digits_of(state.dims(), idx).into_iter().map(digit_char).collect();
        out.push_str(&format!("{label} {:?} {:?}\n", a.re, a.im));
    }
    out
}
