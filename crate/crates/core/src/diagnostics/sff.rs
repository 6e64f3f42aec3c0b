//! Spectral form factor.
//!
//! Z(t) = Σ_j e^{-i t E_j} over all symmetry sectors of one sample; the
//! reported series is ⟨|Z(t)|²⟩ / ⟨|Z(0)|²⟩. For a chaotic spectrum the
//! curve shows the slope–dip–ramp–plateau profile; the plateau sits at
//! 1/n_distinct, i.e. 2^{-N/2} without degeneracy and 2^{1-N/2} with a
//! global two-fold degeneracy.

use crate::error::{Error, Result};

/// Normalized SFF series on a time grid.
#[derive(Debug, Clone)]
pub struct SffSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// Exact global spectral degeneracy folded out by the sector policy
    /// (2 when every level is doubled in the full spectrum, else 1).
    /// It cancels in the normalized ratio but fixes the plateau 1/n……
    pub degeneracy_factor: usize,
    pub n_samples: usize,
}

/// Plateau and ramp read off an ensemble-averaged series.
#[derive(Debug, Clone, Copy)]
pub struct SffSummary {
    /// Mean over the last decade of the grid.
    pub plateau: f64,
    pub plateau_window: (f64, f64),
    /// Log-log slope of the ramp fit, when a usable window exists.
    pub ramp_slope: Option<f64>,
    pub ramp_window: (f64, f64),
    /// Time of the minimum of the smoothed curve (the dip).
    pub dip_time: f64,
}

/// Log-spaced grid with t = 0 prepended (so the t → 0 value is exactly 1).
pub fn log_time_grid(t_min: f64, t_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0) || !(t_max > t_min) || points < 2 {
        return Err(Error::Input(format!(
            "need 0 < t_min < t_max and >= 2 points, got ({t_min}, {t_max}, {points})"
        )));
    }
    let mut grid = Vec::with_capacity(points + 1);
    grid.push(0.0);
    let log_min = t_min.ln();
    let step = (t_max.ln() - log_min) / (points - 1) as f64;
    for k in 0..points {
        grid.push((log_min + step * k as f64).exp());
    }
    Ok(grid)
}

/// ⟨|Z(t)|²⟩ / ⟨|Z(0)|²⟩ over the ensemble. Each sample's eigenvalue list
/// should already combine all its symmetry sectors.
pub fn spectral_form_factor(
    ensemble: &[Vec<f64>],
    times: &[f64],
    degeneracy_factor: usize,
) -> Result<SffSeries> {
    if ensemble.is_empty() {
        return Err(Error::Input("empty ensemble".into()));
    }
    if times.is_empty() {
        return Err(Error::Input("empty time grid".into()));
    }
    if degeneracy_factor == 0 {
        return Err(Error::Input("degeneracy factor must be >= 1".into()));
    }
    let mut numerator = vec![0.0f64; times.len()];
    let mut z0_sq_sum = 0.0f64;
    for spectrum in ensemble {
        if spectrum.is_empty() {
            return Err(Error::Input("sample with no eigenvalues".into()));
        }
        let n = spectrum.len() as f64;
        z0_sq_sum += n * n;
        for (k, &t) in times.iter().enumerate() {
            if t == 0.0 {
                numerator[k] += n * n;
                continue;
            }
            let mut re = 0.0;
            let mut im = 0.0;
            for &e in spectrum {
                let (s, c) = (t * e).sin_cos();
                re += c;
                im -= s;
            }
            numerator[k] += re * re + im * im;
        }
    }
    let values = numerator.iter().map(|v| v / z0_sq_sum).collect();
    Ok(SffSeries {
        times: times.to_vec(),
        values,
        degeneracy_factor,
        n_samples: ensemble.len(),
    })
}

impl SffSeries {
    /// Plateau predicted for `n_distinct` distinct levels: 1/n_distinct.
    pub fn predicted_plateau(n_distinct: usize) -> f64 {
        1.0 / n_distinct as f64
    }
}

/// Measure plateau and ramp slope on an ensemble-averaged series.
///
/// The plateau is the average over the last decade of the grid. The ramp
/// is fitted by least squares on log-log axes over the window between
/// the dip and the plateau onset of the smoothed (geometric moving
/// average) curve.
pub fn analyze_sff(series: &SffSeries) -> Result<SffSummary> {
    // Positive-time points only.
    let pts: Vec<(f64, f64)> = series
        .times
        .iter()
        .zip(series.values.iter())
        .filter(|(t, v)| **t > 0.0 && **v > 0.0)
        .map(|(t, v)| (*t, *v))
        .collect();
    if pts.len() < 20 {
        return Err(Error::Input("too few positive grid points".into()));
    }
    let t_max = pts.last().unwrap().0;
    let plateau_window = (t_max / 10.0, t_max);
    let plateau_pts: Vec<f64> = pts
        .iter()
        .filter(|(t, _)| *t >= plateau_window.0)
        .map(|(_, v)| *v)
        .collect();
    let plateau = plateau_pts.iter().sum::<f64>() / plateau_pts.len() as f64;

    // Smooth in log space with a ±w moving average.
    let w = 4usize;
    let logs: Vec<f64> = pts.iter().map(|(_, v)| v.ln()).collect();
    let smoothed: Vec<f64> = (0..logs.len())
        .map(|i| {
            let lo = i.saturating_sub(w);
            let hi = (i + w + 1).min(logs.len());
            logs[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect();

    // Plateau onset: first time the smoothed curve reaches 60% of the
    // plateau after its global minimum.
    let dip_idx = (0..smoothed.len())
        .min_by(|&a, &b| smoothed[a].total_cmp(&smoothed[b]))
        .unwrap();
    let dip_time = pts[dip_idx].0;
    let onset = (dip_idx..pts.len())
        .find(|&i| smoothed[i] >= (0.6 * plateau).ln())
        .map(|i| pts[i].0)
        .unwrap_or(t_max);

    // Ramp window between dip and onset, away from both ends.
    let (lo, hi) = (2.0 * dip_time, 0.5 * onset);
    let mut window: Vec<(f64, f64)> = pts
        .iter()
        .filter(|(t, _)| *t >= lo && *t <= hi)
        .copied()
        .collect();
    if window.len() < 6 {
        window = pts
            .iter()
            .filter(|(t, _)| *t >= 1.3 * dip_time && *t <= 0.8 * onset)
            .copied()
            .collect();
    }
    let ramp_slope = if window.len() >= 4 {
        Some(log_log_slope(&window))
    } else {
        None
    };
    Ok(SffSummary {
        plateau,
        plateau_window,
        ramp_slope,
        ramp_window: (lo, hi),
        dip_time,
    })
}

fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(t, v) in points {
        let x = t.ln();
        let y = v.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_time_zero_is_exactly_one() {
        let grid = log_time_grid(0.1, 100.0, 50).unwrap();
        assert_eq!(grid[0], 0.0);
        let sff = spectral_form_factor(&[vec![-1.0, 0.3, 2.0]], &grid, 1).unwrap();
        assert_eq!(sff.values[0], 1.0);
        for v in &sff.values {
            assert!(*v >= 0.0);
        }
    }

    #[test]
    fn single_level_spectrum_is_constant_one() {
        let grid = log_time_grid(0.1, 1000.0, 80).unwrap();
        let sff = spectral_form_factor(&[vec![0.7]], &grid, 1).unwrap();
        for v in &sff.values {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn plateau_of_random_spectra_is_one_over_n() {
        // Non-degenerate random levels: late-time average → n/n² = 1/n.
        let n_levels = 64;
        let mut state = 77u64;
        let mut uniform = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / (1u64 << 53) as f64
        };
        let ensemble: Vec<Vec<f64>> = (0..300)
            .map(|_| {
                let mut s: Vec<f64> = (0..n_levels).map(|_| uniform() * 10.0 - 5.0).collect();
                s.sort_by(f64::total_cmp);
                s
            })
            .collect();
        let grid = log_time_grid(0.1, 1e5, 200).unwrap();
        let sff = spectral_form_factor(&ensemble, &grid, 1).unwrap();
        let summary = analyze_sff(&sff).unwrap();
        let predicted = SffSeries::predicted_plateau(n_levels);
        assert!(
            (summary.plateau - predicted).abs() < 0.2 * predicted,
            "plateau {} vs predicted {predicted}",
            summary.plateau
        );
    }

    #[test]
    fn degenerate_pairs_double_the_plateau() {
        // Doubling every level halves n_distinct: plateau 2/n instead of
        // 1/n in the normalized ratio with the doubled list.
        let n_levels = 32;
        let mut state = 123u64;
        let mut uniform = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / (1u64 << 53) as f64
        };
        let ensemble: Vec<Vec<f64>> = (0..400)
            .map(|_| {
                let mut s = Vec::with_capacity(2 * n_levels);
                for _ in 0..n_levels {
                    let e = uniform() * 8.0 - 4.0;
                    s.push(e);
                    s.push(e);
                }
                s.sort_by(f64::total_cmp);
                s
            })
            .collect();
        let grid = log_time_grid(0.1, 1e5, 200).unwrap();
        let sff = spectral_form_factor(&ensemble, &grid, 2).unwrap();
        let summary = analyze_sff(&sff).unwrap();
        let predicted = SffSeries::predicted_plateau(n_levels); // 1/32
        assert!(
            (summary.plateau - predicted).abs() < 0.2 * predicted,
            "plateau {} vs predicted {predicted}",
            summary.plateau
        );
    }

    #[test]
    fn empty_inputs_are_errors() {
        assert!(spectral_form_factor(&[], &[0.0], 1).is_err());
        assert!(spectral_form_factor(&[vec![1.0]], &[], 1).is_err());
        assert!(log_time_grid(0.0, 1.0, 10).is_err());
    }
}
