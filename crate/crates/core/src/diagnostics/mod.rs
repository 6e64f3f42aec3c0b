//! Quantum-chaos diagnostics on ensembles of sorted spectra.
//!
//! Four observables: density of states, unfolded nearest-neighbor level
//! spacings against the Wigner surmises, nearest-gap ratios (per-index
//! and whole-spectrum), and the spectral form factor. An "ensemble" is
//! simply a slice of sorted eigenvalue lists, one per disorder sample
//! (or per sector record).

mod dos;
mod gap_ratio;
mod sff;
mod surmise;
mod unfold;

pub use dos::{density_of_states, tail_mass, Bins, DosHistogram};
pub use gap_ratio::{bulk_gap_ratio, gap_ratio_stats, GapRatioCurve, IndexStat, MeanWithError};
pub use sff::{analyze_sff, log_time_grid, spectral_form_factor, SffSeries, SffSummary};
pub use surmise::{
    spacing_histogram, surmise_l1_distance, wigner_surmise, Universality, GUE_MEAN_GAP_RATIO,
};
pub use unfold::{ensemble_unfold, unfold, UnfoldedSpectrum};

/// Threshold below which an eigenvalue counts as an exact zero mode.
pub const ZERO_MODE_TOL: f64 = 1e-10;

/// Remove eigenvalues with |E| < [`ZERO_MODE_TOL`] from every spectrum,
/// returning how many were dropped. Exact zero modes are excluded from
/// level statistics; the count is reported alongside.
pub fn strip_zero_modes(ensemble: &mut [Vec<f64>]) -> usize {
    let mut removed = 0;
    for spectrum in ensemble.iter_mut() {
        let before = spectrum.len();
        spectrum.retain(|e| e.abs() >= ZERO_MODE_TOL);
        removed += before - spectrum.len();
    }
    removed
}
