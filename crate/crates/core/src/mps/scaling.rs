//! Entropy of contiguous regions versus region size.

use super::{ghz_mps, random_mps};
use crate::error::{Error, Result};
use crate::linalg::{entropy_nats, singular_values};
use crate::parallel::{map_indexed, sample_seed};
use crate::state::{page_exact_entropy, page_expected_entropy, random_state};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingSource {
    /// Fubini–Study random dense states.
    RandomDense,
    /// The GHZ chain (one sample).
    Ghz,
    /// Random canonical MPS with the given bond dimension.
    RandomMps { bond: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    /// `|X|`, the first sites of the chain.
    pub region: usize,
    pub mean: f64,
    pub std_err: f64,
    pub max: f64,
    /// `|X| ln N − N^{|X|−|X̄|}/2`, random dense branch only.
    pub page_estimate: Option<f64>,
    /// Exact Page mean, random dense branch only.
    pub page_exact: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingTable {
    pub num_sites: usize,
    pub local_dim: usize,
    pub source: ScalingSource,
    pub samples: usize,
    pub rows: Vec<ScalingRow>,
}

/// Mean entropy of the leftmost `|X|` sites. The dense branch covers
/// `|X| ≤ K/2`; the chain branches cover every cut.
pub fn scaling_experiment(k: usize, n: usize, source: ScalingSource, samples: usize, seed: u64, threads: usize) -> Result<ScalingTable> {
    if k < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!("need K >= 2 and N >= 2, got K={k}, N={n}")));
    }
    let samples = if source == ScalingSource::Ghz { 1 } else { samples };
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let dims = vec![n; k];
    let cuts = match source {
        ScalingSource::RandomDense => k / 2,
        _ => k - 1,
    };
    if source == ScalingSource::Ghz && n != 2 {
        return Err(Error::InvalidArgument("the GHZ chain is built for qubits".into()));
    }
    let per_sample: Vec<Result<Vec<f64>>> = map_indexed(samples, threads, |i| {
        let s = sample_seed(seed, i);
        match source {
            ScalingSource::RandomDense => {
                let psi = random_state(&dims, s)?;
                (1..=cuts)
                    .map(|x| {
                        let sv = singular_values(&psi.matricize(&(0..x).collect::<Vec<_>>())?);
                        Ok(entropy_nats(&sv.iter().map(|v| v * v).collect::<Vec<_>>()))
                    })
                    .collect()
            }
            ScalingSource::Ghz => ghz_mps(k)?.bond_entropies(),
            ScalingSource::RandomMps { bond } => random_mps(&dims, bond, s)?.bond_entropies(),
        }
    });
    let data = per_sample.into_iter().collect::<Result<Vec<_>>>()?;
    let rows = (0..cuts)
        .map(|c| {
            let vals: Vec<f64> = data.iter().map(|row| row[c]).collect();
            let m = vals.len() as f64;
            let mean = vals.iter().sum::<f64>() / m;
            let var = if vals.len() > 1 { vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0) } else { 0.0 };
            let region = c + 1;
            let dense = source == ScalingSource::RandomDense;
            ScalingRow {
                region,
                mean,
                std_err: (var / m).sqrt(),
                max: vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                page_estimate: if dense { page_expected_entropy(region, k - region, n).ok() } else { None },
                page_exact: if dense { Some(page_exact_entropy(n.pow(region as u32), n.pow((k - region) as u32))) } else { None },
            }
        })
        .collect();
    Ok(ScalingTable { num_sites: k, local_dim: n, source, samples, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn ghz_area_law() {
        let t = scaling_experiment(9, 2, ScalingSource::Ghz, 5, 0, 1).unwrap();
        assert_eq!(t.rows.len(), 8);
        assert!(t.rows.iter().all(|r| (r.mean - LN_2).abs() < 1e-12));
    }

    #[test]
    fn mps_entropy_capped() {
        let t = scaling_experiment(14, 2, ScalingSource::RandomMps { bond: 3 }, 8, 1, 2).unwrap();
        assert!(t.rows.iter().all(|r| r.max <= 3f64.ln() + 1e-12));
    }

    #[test]
    fn dense_tracks_exact_page() {
        let t = scaling_experiment(8, 2, ScalingSource::RandomDense, 200, 3, 1).unwrap();
        for r in &t.rows {
            let exact = r.page_exact.unwrap();
            assert!((r.mean - exact).abs() < 4.0 * r.std_err + 1e-12, "|X|={} {} vs {exact}", r.region, r.mean);
        }
        let again = scaling_experiment(8, 2, ScalingSource::RandomDense, 200, 3, 3).unwrap();
        assert_eq!(t, again);
    }
}
