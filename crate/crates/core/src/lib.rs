//! Exact-diagonalization laboratory for two-local SYK-type random Hamiltonians.
//!
//! The crate builds disorder ensembles of several closely related model
//! families — qudit SYK (random SU(d) generator couplings), clusters
//! spin-SYK, gauged clusters SYK, overlapping clusters SYK, and the
//! original four-local Majorana SYK as a reference — resolves their
//! conserved charges into symmetry sectors, and computes the standard
//! quantum-chaos diagnostics on the resulting spectra:
//!
//! - density of states,
//! - unfolded nearest-neighbor level spacings against the Wigner surmises,
//! - nearest-gap ratios (per-index and whole-spectrum),
//! - the spectral form factor with its ramp/plateau structure.
//!
//! It also compiles the Pauli-string Hamiltonians into one-qubit rotations
//! plus CNOT ladders and accounts for the two-qubit gate cost of a Trotter
//! step, which is the practical payoff of the two-local structure.
//!
//! Everything is desk-scale by design: spectra come from full dense
//! diagonalization, with Hilbert-space dimensions capped by an explicit
//! budget.

pub mod dense;
pub mod diagnostics;
pub mod error;
pub mod fermion;
pub mod gellmann;
pub mod linalg;
pub mod models;
pub mod pauli;
pub mod rmt;
pub mod rng;
pub mod sectors;
pub mod trotter;

pub use error::{Error, Result};
