//! Polynomial unfolding of spectra.
//!
//! The cumulative level count N(E) is fitted with a polynomial; mapping
//! each level through the fit yields a spectrum with unit mean density,
//! on which universal spacing statistics can be compared. Small sectors
//! (too few levels for a stable per-sample fit) can instead be unfolded
//! against the ensemble-averaged staircase.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// A spectrum together with its unfolded image and bulk spacings.
#[derive(Debug, Clone)]
pub struct UnfoldedSpectrum {
    pub raw: Vec<f64>,
    /// Unfolded levels on the retained (edge-trimmed) range.
    pub unfolded: Vec<f64>,
    /// Nearest-neighbor spacings of the retained unfolded levels.
    pub spacings: Vec<f64>,
    pub poly_degree: usize,
    pub edge_trim: f64,
}

impl UnfoldedSpectrum {
    /// Mean spacing of the retained bulk; ≈ 1 for a good fit.
    pub fn mean_spacing(&self) -> f64 {
        if self.spacings.is_empty() {
            return f64::NAN;
        }
        self.spacings.iter().sum::<f64>() / self.spacings.len() as f64
    }
}

/// Least-squares polynomial fit y ≈ p(t) with t the affine map of x onto
/// [-1, 1]; returns a closure evaluating the fit.
struct PolyFit {
    center: f64,
    half_width: f64,
    coeffs: Vec<f64>,
}

impl PolyFit {
    fn fit(x: &[f64], y: &[f64], degree: usize) -> Result<Self> {
        let n = x.len();
        let lo = x[0];
        let hi = x[n - 1];
        let center = 0.5 * (lo + hi);
        let half_width = (0.5 * (hi - lo)).max(f64::MIN_POSITIVE);
        let mut a = DMatrix::<f64>::zeros(n, degree + 1);
        for (i, &xi) in x.iter().enumerate() {
            let t = (xi - center) / half_width;
            let mut p = 1.0;
            for j in 0..=degree {
                a[(i, j)] = p;
                p *= t;
            }
        }
        let b = DVector::from_column_slice(y);
        let svd = a.svd(true, true);
        let coeffs = svd
            .solve(&b, 1e-12)
            .map_err(|e| Error::Numerical(format!("polynomial fit failed: {e}")))?;
        Ok(Self {
            center,
            half_width,
            coeffs: coeffs.iter().copied().collect(),
        })
    }

    fn eval(&self, x: f64) -> f64 {
        let t = (x - self.center) / self.half_width;
        let mut acc = 0.0;
        let mut p = 1.0;
        for &c in &self.coeffs {
            acc += c * p;
            p *= t;
        }
        acc
    }
}

fn check_sorted(spectrum: &[f64]) -> Result<()> {
    if spectrum.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Input("spectrum must be sorted ascending".into()));
    }
    Ok(())
}

fn retained_range(n: usize, edge_trim: f64) -> (usize, usize) {
    let k = ((edge_trim * n as f64).ceil() as usize).min(n / 2);
    (k, n - k)
}

fn trim_map(
    raw: &[f64],
    fit: &PolyFit,
    poly_degree: usize,
    edge_trim: f64,
) -> Result<UnfoldedSpectrum> {
    let (lo, hi) = retained_range(raw.len(), edge_trim);
    let retained = &raw[lo..hi];
    if retained.len() < 3 {
        return Err(Error::Input("trim leaves fewer than 3 levels".into()));
    }
    let unfolded: Vec<f64> = retained.iter().map(|&e| fit.eval(e)).collect();
    for (i, w) in unfolded.windows(2).enumerate() {
        if w[1] <= w[0] {
            return Err(Error::Unfolding(format!(
                "fit is non-monotone between retained levels {} and {} \
                 (raise the degree or the trim)",
                i,
                i + 1
            )));
        }
    }
    let spacings: Vec<f64> = unfolded.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(UnfoldedSpectrum {
        raw: raw.to_vec(),
        unfolded,
        spacings,
        poly_degree,
        edge_trim,
    })
}

/// Unfold a single spectrum with its own staircase fit.
///
/// Requires at least 50 levels and degree ≥ 3; the counting function
/// N(E_i) = i + 1/2 is fitted on the retained (edge-trimmed) window —
/// the only region where it is evaluated — and each retained level is
/// mapped through the fit. Fails if the fit is non-monotone there.
pub fn unfold(spectrum: &[f64], poly_degree: usize, edge_trim: f64) -> Result<UnfoldedSpectrum> {
    if spectrum.len() < 50 {
        return Err(Error::Input(format!(
            "per-sample unfolding needs >= 50 levels, got {}",
            spectrum.len()
        )));
    }
    if poly_degree < 3 {
        return Err(Error::Input(format!(
            "unfolding degree must be >= 3, got {poly_degree}"
        )));
    }
    if !(0.0..0.5).contains(&edge_trim) {
        return Err(Error::Input(format!(
            "edge trim must lie in [0, 0.5), got {edge_trim}"
        )));
    }
    check_sorted(spectrum)?;
    let (lo, hi) = retained_range(spectrum.len(), edge_trim);
    let y: Vec<f64> = (lo..hi).map(|i| i as f64 + 0.5).collect();
    let fit = PolyFit::fit(&spectrum[lo..hi], &y, poly_degree)?;
    trim_map(spectrum, &fit, poly_degree, edge_trim)
}

/// Unfold every sample against the pooled (ensemble-averaged) staircase.
///
/// The pooled sorted spectrum defines N(E) = (global rank + 1/2)/n_samples;
/// one polynomial is fitted to it and applied to each sample. This is the
/// right tool for small symmetry sectors, where a per-sample fit has too
/// few levels.
pub fn ensemble_unfold(
    ensemble: &[Vec<f64>],
    poly_degree: usize,
    edge_trim: f64,
) -> Result<Vec<UnfoldedSpectrum>> {
    if ensemble.is_empty() {
        return Err(Error::Input("empty ensemble".into()));
    }
    if poly_degree < 3 {
        return Err(Error::Input(format!(
            "unfolding degree must be >= 3, got {poly_degree}"
        )));
    }
    let mut pooled: Vec<f64> = ensemble.iter().flatten().copied().collect();
    if pooled.len() < 50 {
        return Err(Error::Input(format!(
            "pooled ensemble needs >= 50 levels, got {}",
            pooled.len()
        )));
    }
    pooled.sort_by(f64::total_cmp);
    let scale = 1.0 / ensemble.len() as f64;
    let (lo, hi) = retained_range(pooled.len(), edge_trim);
    let y: Vec<f64> = (lo..hi).map(|i| (i as f64 + 0.5) * scale).collect();
    let fit = PolyFit::fit(&pooled[lo..hi], &y, poly_degree)?;
    ensemble
        .iter()
        .map(|sample| {
            check_sorted(sample)?;
            trim_map(sample, &fit, poly_degree, edge_trim)
        })
        .collect()
}
