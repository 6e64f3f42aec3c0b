//! Wigner surmises and spacing-histogram comparison.

use crate::error::{Error, Result};

/// Random-matrix universality class of the spacing distribution.
pub use crate::sectors::Universality;

/// Asymptotic GUE mean nearest-gap ratio.
pub const GUE_MEAN_GAP_RATIO: f64 = 0.59975;

/// Wigner surmise density at spacing `s`, normalized to unit mean
/// spacing: GOE (π/2)s·exp(-πs²/4), GUE (32/π²)s²·exp(-4s²/π).
pub fn wigner_surmise(class: Universality, s: f64) -> f64 {
    if s < 0.0 {
        return 0.0;
    }
    match class {
        Universality::Goe => {
            std::f64::consts::FRAC_PI_2 * s * (-std::f64::consts::FRAC_PI_4 * s * s).exp()
        }
        Universality::Gue => {
            let pi = std::f64::consts::PI;
            32.0 / (pi * pi) * s * s * (-4.0 * s * s / pi).exp()
        }
    }
}

/// Pooled spacing histogram on [0, max_s], normalized by the total
/// spacing count so that overflow mass beyond max_s is simply missing
/// from the integral.
pub fn spacing_histogram(
    spacings: &[f64],
    max_s: f64,
    n_bins: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if spacings.is_empty() {
        return Err(Error::Input("no spacings to histogram".into()));
    }
    if n_bins == 0 || !(max_s > 0.0) {
        return Err(Error::Input("need positive max_s and at least one bin".into()));
    }
    let width = max_s / n_bins as f64;
    let mut counts = vec![0usize; n_bins];
    for &s in spacings {
        if (0.0..max_s).contains(&s) {
            counts[(s / width) as usize] += 1;
        } else if s == max_s {
            counts[n_bins - 1] += 1;
        }
    }
    let norm = 1.0 / (spacings.len() as f64 * width);
    let density = counts.iter().map(|&c| c as f64 * norm).collect();
    let edges = (0..=n_bins).map(|k| k as f64 * width).collect();
    Ok((edges, density))
}

/// Integrated absolute deviation between a spacing histogram and the
/// surmise: Σ_k |ρ_k - p(mid_k)|·Δ plus the mismatch of the mass beyond
/// the histogram range.
pub fn surmise_l1_distance(edges: &[f64], density: &[f64], class: Universality) -> f64 {
    let mut l1 = 0.0;
    let mut emp_mass = 0.0;
    for (rho, e) in density.iter().zip(edges.windows(2)) {
        let width = e[1] - e[0];
        let mid = 0.5 * (e[0] + e[1]);
        l1 += (rho - wigner_surmise(class, mid)).abs() * width;
        emp_mass += rho * width;
    }
    let max_s = *edges.last().unwrap_or(&0.0);
    let surmise_tail = 1.0 - simpson(|s| wigner_surmise(class, s), 0.0, max_s, 4000);
    l1 + ((1.0 - emp_mass) - surmise_tail).abs()
}

/// Composite Simpson quadrature with `n` (even) panels.
pub(crate) fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_repulsion_at_zero() {
        assert_eq!(wigner_surmise(Universality::Goe, 0.0), 0.0);
        assert_eq!(wigner_surmise(Universality::Gue, 0.0), 0.0);
    }

    #[test]
    fn surmises_are_normalized_with_unit_mean() {
        for class in [Universality::Goe, Universality::Gue] {
            let total = simpson(|s| wigner_surmise(class, s), 0.0, 30.0, 30000);
            let mean = simpson(|s| s * wigner_surmise(class, s), 0.0, 30.0, 30000);
            assert!((total - 1.0).abs() < 1e-8, "{class:?} norm {total}");
            assert!((mean - 1.0).abs() < 1e-8, "{class:?} mean {mean}");
        }
    }

    #[test]
    fn gue_peak_location_from_numeric_maximization() {
        // Golden-section search for the mode of the GUE surmise.
        let f = |s: f64| wigner_surmise(Universality::Gue, s);
        let (mut a, mut b) = (0.1, 2.0);
        let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
        for _ in 0..200 {
            let c = b - phi * (b - a);
            let d = a + phi * (b - a);
            if f(c) > f(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let peak = 0.5 * (a + b);
        // The mode sits at √π/2.
        let expected = std::f64::consts::PI.sqrt() / 2.0;
        assert!((peak - expected).abs() < 1e-6, "peak {peak}");
    }

    #[test]
    fn histogram_of_surmise_samples_is_close() {
        // Inverse-transform sample the GOE surmise (closed-form CDF
        // 1 - exp(-πs²/4)) and check the L1 distance is small.
        let n = 200_000;
        let spacings: Vec<f64> = (0..n)
            .map(|i| {
                let u = (i as f64 + 0.5) / n as f64;
                (-(4.0 / std::f64::consts::PI) * (1.0 - u).ln()).sqrt()
            })
            .collect();
        let (edges, density) = spacing_histogram(&spacings, 4.0, 40).unwrap();
        let d = surmise_l1_distance(&edges, &density, Universality::Goe);
        assert!(d < 0.01, "distance {d}");
        // And it is far from the GUE surmise.
        let d_wrong = surmise_l1_distance(&edges, &density, Universality::Gue);
        assert!(d_wrong > 0.1, "distance to wrong class {d_wrong}");
    }
}
