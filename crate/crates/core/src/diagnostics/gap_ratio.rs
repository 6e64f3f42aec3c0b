//! Nearest-gap ratio statistics.
//!
//! r_i = min(s_{i+1}/s_i, s_i/s_{i+1}) with s_i = E_{i+1} - E_i from the
//! raw sorted spectrum; ratios are scale-free, so no unfolding enters.
//! Reference bulk means: GUE 0.59975, GOE ≈ 0.5307, Poisson 2ln2 - 1.

use crate::error::{Error, Result};

/// Mean with its standard error and count.
#[derive(Debug, Clone, Copy)]
pub struct MeanWithError {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
}

/// Per-index statistics of r_i at fixed i across the ensemble.
#[derive(Debug, Clone, Copy)]
pub struct IndexStat {
    pub mean: f64,
    pub stderr: f64,
    pub count: usize,
}

/// Ensemble gap-ratio data: ⟨r_i⟩ per index and the whole-spectrum
/// histogram.
#[derive(Debug, Clone)]
pub struct GapRatioCurve {
    pub per_index: Vec<IndexStat>,
    pub histogram_edges: Vec<f64>,
    pub histogram_density: Vec<f64>,
    /// Ratios dropped because a spacing was exactly zero (degeneracy
    /// leaking through the policy); reported, never silently ignored.
    pub excluded_zero_spacings: usize,
}

/// r_i sequence of one sorted spectrum; `None` marks an undefined ratio
/// (zero spacing).
fn ratios(spectrum: &[f64]) -> (Vec<Option<f64>>, usize) {
    let n = spectrum.len();
    if n < 3 {
        return (Vec::new(), 0);
    }
    let mut out = Vec::with_capacity(n - 2);
    let mut zeros = 0;
    for i in 0..n - 2 {
        let s0 = spectrum[i + 1] - spectrum[i];
        let s1 = spectrum[i + 2] - spectrum[i + 1];
        if s0 > 0.0 && s1 > 0.0 {
            out.push(Some((s0 / s1).min(s1 / s0)));
        } else {
            out.push(None);
            zeros += 1;
        }
    }
    (out, zeros)
}

/// Per-index means ⟨r_i⟩ with standard errors, plus the aggregated
/// whole-spectrum histogram of r on [0, 1].
pub fn gap_ratio_stats(ensemble: &[Vec<f64>]) -> Result<GapRatioCurve> {
    if ensemble.is_empty() {
        return Err(Error::Input("empty ensemble".into()));
    }
    let max_len = ensemble
        .iter()
        .map(|s| s.len().saturating_sub(2))
        .max()
        .unwrap_or(0);
    if max_len == 0 {
        return Err(Error::Input("spectra too short for gap ratios".into()));
    }
    let mut sums = vec![0.0; max_len];
    let mut sq_sums = vec![0.0; max_len];
    let mut counts = vec![0usize; max_len];
    let n_bins = 50;
    let mut hist = vec![0usize; n_bins];
    let mut total_ratios = 0usize;
    let mut excluded = 0usize;

    for spectrum in ensemble {
        let (rs, zeros) = ratios(spectrum);
        excluded += zeros;
        for (i, r) in rs.into_iter().enumerate() {
            if let Some(r) = r {
                sums[i] += r;
                sq_sums[i] += r * r;
                counts[i] += 1;
                let bin = ((r * n_bins as f64) as usize).min(n_bins - 1);
                hist[bin] += 1;
                total_ratios += 1;
            }
        }
    }
    if total_ratios == 0 {
        return Err(Error::Input("no finite gap ratios in the ensemble".into()));
    }
    let per_index = (0..max_len)
        .map(|i| {
            let c = counts[i];
            if c == 0 {
                return IndexStat { mean: f64::NAN, stderr: f64::NAN, count: 0 };
            }
            let mean = sums[i] / c as f64;
            let var = (sq_sums[i] / c as f64 - mean * mean).max(0.0);
            let stderr = if c > 1 { (var / (c - 1) as f64).sqrt() } else { f64::NAN };
            IndexStat { mean, stderr, count: c }
        })
        .collect();
    let width = 1.0 / n_bins as f64;
    let norm = 1.0 / (total_ratios as f64 * width);
    let histogram_density = hist.iter().map(|&c| c as f64 * norm).collect();
    let histogram_edges = (0..=n_bins).map(|k| k as f64 * width).collect();
    Ok(GapRatioCurve {
        per_index,
        histogram_edges,
        histogram_density,
        excluded_zero_spacings: excluded,
    })
}

/// Ensemble mean of r over the bulk: ratio indices within the middle
/// (1 - 2·edge_fraction) of each spectrum. `edge_fraction = 0.2` keeps
/// the middle 60%.
pub fn bulk_gap_ratio(ensemble: &[Vec<f64>], edge_fraction: f64) -> Result<MeanWithError> {
    if !(0.0..0.5).contains(&edge_fraction) {
        return Err(Error::Input(format!(
            "edge fraction must lie in [0, 0.5), got {edge_fraction}"
        )));
    }
    let mut sum = 0.0;
    let mut sq_sum = 0.0;
    let mut n = 0usize;
    for spectrum in ensemble {
        let (rs, _) = ratios(spectrum);
        if rs.is_empty() {
            continue;
        }
        let k = (edge_fraction * rs.len() as f64).floor() as usize;
        for r in rs.iter().take(rs.len() - k).skip(k).flatten() {
            sum += r;
            sq_sum += r * r;
            n += 1;
        }
    }
    if n < 2 {
        return Err(Error::Input("too few bulk ratios".into()));
    }
    let mean = sum / n as f64;
    let var = (sq_sum / n as f64 - mean * mean).max(0.0);
    Ok(MeanWithError {
        mean,
        stderr: (var / (n - 1) as f64).sqrt(),
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_of_spacings_one_and_two() {
        let (rs, zeros) = ratios(&[0.0, 1.0, 3.0]);
        assert_eq!(zeros, 0);
        assert!((rs[0].unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn equal_spacings_give_unit_ratios() {
        let spectrum: Vec<f64> = (0..20).map(|i| 0.3 * i as f64).collect();
        let (rs, _) = ratios(&spectrum);
        for r in rs {
            assert!((r.unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_spacings_are_flagged_and_excluded() {
        let curve = gap_ratio_stats(&[vec![0.0, 1.0, 1.0, 2.0, 3.0]]).unwrap();
        assert_eq!(curve.excluded_zero_spacings, 2);
        // index 2 ratio (spacings 1,1) survives
        assert_eq!(curve.per_index[2].count, 1);
    }

    #[test]
    fn affine_invariance_of_ratios() {
        let spectrum = vec![-1.7, -0.4, 0.05, 0.8, 1.1, 2.6, 3.3];
        let (base, _) = ratios(&spectrum);
        // Power-of-two scaling with zero shift is exact in floats.
        let scaled: Vec<f64> = spectrum.iter().map(|e| 4.0 * e).collect();
        let (scaled_r, _) = ratios(&scaled);
        for (a, b) in base.iter().zip(scaled_r.iter()) {
            assert_eq!(a.unwrap(), b.unwrap());
        }
        // A general affine map agrees to rounding.
        let affine: Vec<f64> = spectrum.iter().map(|e| 1.37 * e - 0.81).collect();
        let (affine_r, _) = ratios(&affine);
        for (a, b) in base.iter().zip(affine_r.iter()) {
            assert!((a.unwrap() - b.unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn bulk_trim_keeps_the_middle() {
        // 102 levels → 100 ratios; trimming 20% per side keeps 60.
        let ensemble: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..102).map(|i| i as f64).collect())
            .collect();
        let bulk = bulk_gap_ratio(&ensemble, 0.2).unwrap();
        assert_eq!(bulk.n, 180);
        assert!((bulk.mean - 1.0).abs() < 1e-12);
    }

    #[test]
    fn poisson_reference_value() {
        // Exponential spacings (Poisson spectrum) give ⟨r⟩ = 2 ln 2 - 1.
        let n_samples = 400;
        let n_levels = 200;
        let mut ensemble = Vec::with_capacity(n_samples);
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut uniform = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / (1u64 << 53) as f64
        };
        for _ in 0..n_samples {
            let mut e = 0.0;
            let mut spectrum = Vec::with_capacity(n_levels);
            for _ in 0..n_levels {
                e += -(1.0 - uniform()).ln();
                spectrum.push(e);
            }
            ensemble.push(spectrum);
        }
        let bulk = bulk_gap_ratio(&ensemble, 0.0).unwrap();
        let poisson = 2.0 * std::f64::consts::LN_2 - 1.0;
        assert!(
            (bulk.mean - poisson).abs() < 5.0 * bulk.stderr + 2e-3,
            "mean {} vs Poisson {poisson}",
            bulk.mean
        );
    }
}
