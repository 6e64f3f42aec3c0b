//! Random-matrix reference ensembles.
//!
//! Seeded GOE/GUE samplers serving as independent oracles for the
//! spectral-statistics pipeline: their bulk gap ratios and unfolded
//! spacing distributions are the reference values the model ensembles
//! are compared against.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dense::{CMat, RMat};
use crate::linalg::{eigvalsh_complex, eigvalsh_real};

/// A GOE matrix: (G + Gᵀ)/2 with iid standard-normal entries of G.
pub fn sample_goe(dim: usize, rng: &mut impl Rng) -> RMat {
    let mut m = RMat::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let g: f64 = rng.sample(StandardNormal);
            if i == j {
                m[(i, i)] = g;
            } else {
                let h: f64 = rng.sample(StandardNormal);
                let v = 0.5 * (g + h);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
    }
    m
}

/// A GUE matrix: (G + G†)/2 with iid complex standard-normal entries.
pub fn sample_gue(dim: usize, rng: &mut impl Rng) -> CMat {
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            if i == j {
                let g: f64 = rng.sample(StandardNormal);
                m[(i, i)] = Complex64::new(g, 0.0);
            } else {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                let v = Complex64::new(0.5 * re, 0.5 * im);
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
    }
    m
}

/// Sorted spectra of `n_samples` seeded GOE matrices.
pub fn goe_spectra(dim: usize, n_samples: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..n_samples)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9E3779B9));
            eigvalsh_real(&sample_goe(dim, &mut rng))
        })
        .collect()
}

/// Sorted spectra of `n_samples` seeded GUE matrices.
pub fn gue_spectra(dim: usize, n_samples: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..n_samples)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9E3779B9));
            eigvalsh_complex(&sample_gue(dim, &mut rng))
        })
        .collect()
}
