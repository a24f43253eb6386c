//! Integer partitions, which count the degeneracy types of `K` stars.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Exact `p(K)` by the standard coin-change recurrence.
pub fn partition_count(k: usize) -> Result<u128> {
    let mut p = vec![0u128; k + 1];
    p[0] = 1;
    for part in 1..=k {
        for n in part..=k {
            p[n] = p[n].checked_add(p[n - part]).ok_or_else(|| Error::Overflow(format!("p({k}) exceeds 128 bits")))?;
        }
    }
    Ok(p[k])
}

/// Leading asymptotic `exp(π √(2K/3)) / (4 √3 K)`.
pub fn hardy_ramanujan(k: usize) -> f64 {
    let k = k as f64;
    (PI * (2.0 * k / 3.0).sqrt()).exp() / (4.0 * 3f64.sqrt() * k)
}
