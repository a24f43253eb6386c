//! Key-value reports with locale-independent number formatting.

use anyhow::{bail, Result};
use num_complex::Complex64;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Complex(Complex64),
    Floats(Vec<f64>),
    Int(i64),
    Ints(Vec<usize>),
    Bool(bool),
    Text(String),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<Complex64> for Value {
    fn from(v: Complex64) -> Self {
        Value::Complex(v)
    }
}

impl From<Vec<f64>> for Value {
    fn from(v: Vec<f64>) -> Self {
        Value::Floats(v)
    }
}

impl From<&[f64]> for Value {
    fn from(v: &[f64]) -> Self {
        Value::Floats(v.to_vec())
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i64)
    }
}

impl From<Vec<usize>> for Value {
    fn from(v: Vec<usize>) -> Self {
        Value::Ints(v)
    }
}

impl From<&[usize]> for Value {
    fn from(v: &[usize]) -> Self {
        Value::Ints(v.to_vec())
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

/// 12 significant digits, shortest round-trip rendering of the rounded value.
pub fn format_float(x: f64) -> Result<String> {
    if !x.is_finite() {
        bail!("refusing to serialize non-finite value {x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("scientific notation parses");
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    Ok(format!("{rounded:?}"))
}

impl Value {
    fn render(&self) -> Result<String> {
        Ok(match self {
            Value::Float(x) => format_float(*x)?,
            Value::Complex(z) => format!("{} {}", format_float(z.re)?, format_float(z.im)?),
            Value::Floats(v) => v.iter().map(|x| format_float(*x)).collect::<Result<Vec<_>>>()?.join(" "),
            Value::Int(i) => i.to_string(),
            Value::Ints(v) => v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: Value,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub entries: Vec<Entry>,
    /// 0 success, 2 classification near a threshold.
    pub status: i32,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), entries: Vec::new(), status: 0 }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.push_entry(key.into(), value.into(), None);
    }

    pub fn push_noted(&mut self, key: impl Into<String>, value: impl Into<Value>, note: impl Into<String>) {
        self.push_entry(key.into(), value.into(), Some(note.into()));
    }

    fn push_entry(&mut self, key: String, value: Value, note: Option<String>) {
        assert!(!key.is_empty() && !key.contains(char::is_whitespace), "bad report key {key:?}");
        assert!(self.get(&key).is_none(), "duplicate report key {key}");
        self.entries.push(Entry { key, value, note });
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|e| e.key == key).map(|e| &e.value)
    }

    /// Flags a classification that sat close to its decision threshold.
    pub fn warn(&mut self, what: impl Into<String>) {
        self.status = 2;
        let n = self.entries.iter().filter(|e| e.key.starts_with("warning")).count();
        self.push(format!("warning{}", n + 1), what.into());
    }

    pub fn render(&self) -> Result<String> {
        let mut out = format!("# entangle report: {}\n", self.command);
        for e in &self.entries {
            let v = e.value.render().map_err(|err| err.context(format!("field {}", e.key)))?;
            out.push_str(&e.key);
            if !v.is_empty() {
                out.push(' ');
                out.push_str(&v);
            }
            if let Some(note) = &e.note {
                out.push_str("  # ");
                out.push_str(note);
            }
            out.push('\n');
        }
        out.push_str(&format!("status {}\n", self.status));
        Ok(out)
    }

    /// Writes to `path`, or stdout when absent. Nothing is written if any
    /// field fails to render.
    pub fn emit(&self, path: Option<&Path>) -> Result<()> {
        let text = self.render()?;
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| anyhow::anyhow!("writing {}: {e}", p.display()))?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }
}
