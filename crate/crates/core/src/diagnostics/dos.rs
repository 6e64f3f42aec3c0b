//! Ensemble density of states.

use crate::error::{Error, Result};

/// Binning rule for the histogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bins {
    /// Freedman–Diaconis width on the pooled ensemble.
    Auto,
    Fixed(usize),
}

/// Normalized density histogram: Σ density·Δ = 1.
#[derive(Debug, Clone)]
pub struct DosHistogram {
    pub bin_edges: Vec<f64>,
    pub density: Vec<f64>,
    pub n_samples: usize,
    pub n_eigenvalues: usize,
}

impl DosHistogram {
    /// Σ ρ_k (e_{k+1} - e_k); equals 1 up to rounding by construction.
    pub fn integral(&self) -> f64 {
        self.density
            .iter()
            .zip(self.bin_edges.windows(2))
            .map(|(rho, e)| rho * (e[1] - e[0]))
            .sum()
    }
}

/// Aggregate a normalized density of states over the ensemble.
pub fn density_of_states(ensemble: &[Vec<f64>], bins: Bins) -> Result<DosHistogram> {
    let n_samples = ensemble.len();
    if n_samples == 0 {
        return Err(Error::Input("empty ensemble".into()));
    }
    for s in ensemble {
        if s.len() < 2 {
            return Err(Error::Input(
                "each sample needs at least two eigenvalues".into(),
            ));
        }
    }
    let mut pooled: Vec<f64> = ensemble.iter().flatten().copied().collect();
    pooled.sort_by(f64::total_cmp);
    let n = pooled.len();
    let lo = pooled[0];
    let hi = pooled[n - 1];
    let range = (hi - lo).max(f64::MIN_POSITIVE);

    let n_bins = match bins {
        Bins::Fixed(b) => {
            if b < 1 {
                return Err(Error::Input("need at least one bin".into()));
            }
            b
        }
        Bins::Auto => {
            let q1 = pooled[n / 4];
            let q3 = pooled[(3 * n) / 4];
            let iqr = (q3 - q1).max(f64::MIN_POSITIVE);
            let width = 2.0 * iqr / (n as f64).cbrt();
            ((range / width).ceil() as usize).clamp(10, 2000)
        }
    };

    let width = range / n_bins as f64;
    let mut counts = vec![0usize; n_bins];
    for &e in &pooled {
        let k = (((e - lo) / width) as usize).min(n_bins - 1);
        counts[k] += 1;
    }
    let norm = 1.0 / (n as f64 * width);
    let density: Vec<f64> = counts.iter().map(|&c| c as f64 * norm).collect();
    let bin_edges: Vec<f64> = (0..=n_bins).map(|k| lo + k as f64 * width).collect();
    Ok(DosHistogram {
        bin_edges,
        density,
        n_samples,
        n_eigenvalues: n,
    })
}

/// Fraction of pooled eigenvalues with |E| > threshold — a binning-free
/// probe of how soft the spectral edges are.
pub fn tail_mass(ensemble: &[Vec<f64>], threshold: f64) -> f64 {
    let mut total = 0usize;
    let mut outside = 0usize;
    for s in ensemble {
        total += s.len();
        outside += s.iter().filter(|e| e.abs() > threshold).count();
    }
    if total == 0 {
        0.0
    } else {
        outside as f64 / total as f64
    }
}
