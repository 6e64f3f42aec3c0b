//! Sampled energy-variance normalization across the model grid.

use rayon::prelude::*;
use syklab::dense::DenseBudget;
use syklab::models::{ModelFamily, ModelSpec};

/// Sampled mean of Tr H² / dim over `samples` disorder draws.
fn mean_energy_variance(spec: &ModelSpec, samples: u64) -> f64 {
    let dim = spec.hilbert_dim() as f64;
    let total: f64 = (0..samples)
        .into_par_iter()
        .map(|s| {
            let h = spec.build(s).unwrap();
            h.dense(DenseBudget::default()).unwrap().frobenius_squared() / dim
        })
        .sum();
    total / samples as f64
}

#[test]
fn qudit_energy_variance_is_unity_across_the_grid() {
    // ⟨Tr H²⟩/d^L = 1 within 3 standard errors; the per-sample relative
    // spread is √(2/K) for K couplings.
    let samples = 200u64;
    for d in [2usize, 3, 4] {
        for sites in [2usize, 3, 4] {
            for locality in [2usize, 3] {
                if locality > sites {
                    continue;
                }
                let spec = ModelSpec::new(
                    ModelFamily::QuditSyk { d, sites, locality },
                    0xBEEF + d as u64,
                );
                let k = spec.coupling_count().unwrap() as f64;
                let mean = mean_energy_variance(&spec, samples);
                let sigma_est = (2.0 / k / samples as f64).sqrt();
                assert!(
                    (mean - 1.0).abs() < 3.0 * sigma_est,
                    "d={d} L={sites} q={locality}: mean {mean}, 3σ {}",
                    3.0 * sigma_est
                );
            }
        }
    }
}

#[test]
fn overlapping_energy_variance_is_window_independent() {
    // With J² = (6/N³)·C(N,4)/#couplings the total energy variance
    // matches the original four-local model at every window size.
    let n = 12usize;
    let samples = 300u64;
    let expected = 6.0 / (n as f64).powi(3) * 495.0; // C(12,4)
    let mut means = Vec::new();
    for window in [2usize, 3, 4, n] {
        let spec = ModelSpec::new(
            ModelFamily::OverlappingClustersSyk { majoranas: n, window, locality: 2 },
            77,
        );
        let k = spec.coupling_count().unwrap() as f64;
        let mean = mean_energy_variance(&spec, samples);
        let sigma_est = expected * (2.0 / k / samples as f64).sqrt();
        assert!(
            (mean - expected).abs() < 3.0 * sigma_est,
            "window {window}: mean {mean} vs {expected}"
        );
        means.push(mean);
    }
    // And the original model itself.
    let original = ModelSpec::new(ModelFamily::OriginalSyk { majoranas: n }, 77);
    let mean = mean_energy_variance(&original, samples);
    let sigma_est = expected * (2.0 / 495.0 / samples as f64).sqrt();
    assert!((mean - expected).abs() < 3.0 * sigma_est);
}
