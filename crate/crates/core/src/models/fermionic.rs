//! Builders for the Majorana-fermion families (gauged clusters,
//! overlapping clusters, original SYK).
//!
//! All fermionic terms are assembled as products of Jordan-Wigner strings.
//! A product of 2k distinct Majoranas has letter phase ±1 for even k and
//! ±i for odd k; in the latter case the term enters the Hamiltonian
//! multiplied by i, the usual convention that keeps H Hermitian with real
//! couplings.

use itertools::Itertools;

use crate::error::Result;
use crate::fermion::jordan_wigner;
use crate::pauli::{PauliString, PauliSum, Phase};
use crate::rng::TupleGaussian;

use super::{streams, CouplingTable, HamiltonianInstance, ModelSpec, TermSum};

/// Product χ_{c1} χ_{c2} ⋯ of distinct 1-based Majorana indices.
fn majorana_product(indices: &[u32], n_qubits: usize) -> Result<PauliString> {
    let mut acc = PauliString::identity(n_qubits)?;
    for &c in indices {
        acc = acc.mul(&jordan_wigner(c as usize, n_qubits)?)?;
    }
    Ok(acc)
}

/// Push coupling · (Majorana product) onto the sum, multiplying
/// anti-Hermitian products (odd pair count) by i.
fn push_majorana_term(
    sum: &mut PauliSum,
    coupling: f64,
    product: PauliString,
) -> Result<()> {
    if product.is_hermitian() {
        sum.push(coupling, product)
    } else {
        sum.push(coupling, product.with_extra_phase(Phase::PlusI))
    }
}

/// Gauged clusters SYK: N = cluster_size · clusters Majoranas, clusters of
/// cluster_size/2 qubit sites; each term takes one fermion pair from each
/// of two distinct clusters, with site indices strictly increasing inside
/// a cluster and both ψ components allowed.
pub(super) fn build_gauged_clusters_syk(
    spec: &ModelSpec,
    cluster_size: usize,
    clusters: usize,
    sample_id: u64,
) -> Result<HamiltonianInstance> {
    let j = spec.coupling_variance()?.sqrt();
    let gaussian = TupleGaussian::new(spec.seed, sample_id, streams::GAUGED);
    let window = cluster_size / 2; // qubit sites per cluster
    let n_qubits = window * clusters;

    // Within one cluster: all (site pair, component pair) bilinears,
    // addressed by their raw χ indices. Sites are 1-based here.
    let cluster_bilinears = |i: usize| -> Vec<(u32, u32)> {
        let first = window * i + 1;
        let sites: Vec<usize> = (first..first + window).collect();
        let mut out = Vec::new();
        for pair in sites.iter().combinations(2) {
            for a in 1..=2u32 {
                for b in 1..=2u32 {
                    let c1 = (2 * pair[0] - 2) as u32 + a;
                    let c2 = (2 * pair[1] - 2) as u32 + b;
                    out.push((c1, c2));
                }
            }
        }
        out
    };

    let mut sum = PauliSum::new(n_qubits)?;
    let mut entries = Vec::with_capacity(spec.coupling_count()?);
    for pair in (0..clusters).combinations(2) {
        for &(c1, c2) in &cluster_bilinears(pair[0]) {
            for &(c3, c4) in &cluster_bilinears(pair[1]) {
                let tuple = vec![c1, c2, c3, c4];
                let coupling = j * gaussian.draw(&tuple);
                let product = majorana_product(&tuple, n_qubits)?;
                push_majorana_term(&mut sum, coupling, product)?;
                entries.push((tuple, coupling));
            }
        }
    }
    debug_assert_eq!(entries.len(), spec.coupling_count()?);
    Ok(HamiltonianInstance::new(
        *spec,
        sample_id,
        TermSum::Pauli(sum),
        CouplingTable::new(entries),
    ))
}

/// All index tuples r_1 < s_1 < r_2 < s_2 < … < r_q̃ < s_q̃ ≤ N with
/// s_i - r_i < window. Indices are 1-based and never wrap around N.
pub fn overlapping_tuples(majoranas: usize, window: usize, locality: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::with_capacity(2 * locality);
    fn recurse(
        n: usize,
        window: usize,
        pairs_left: usize,
        start: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pairs_left == 0 {
            out.push(current.clone());
            return;
        }
        // Each remaining pair needs at least 2 indices.
        let last_r = n.saturating_sub(2 * pairs_left - 1);
        for r in start..=last_r {
            let s_max = (r + window - 1).min(n - 2 * (pairs_left - 1));
            for s in (r + 1)..=s_max {
                current.push(r as u32);
                current.push(s as u32);
                recurse(n, window, pairs_left - 1, s + 1, current, out);
                current.pop();
                current.pop();
            }
        }
    }
    recurse(majoranas, window, locality, 1, &mut current, &mut out);
    out
}

/// Overlapping clusters SYK:
/// H = Σ J_{r1 s1 … rq̃ sq̃} (χ_{r1} χ_{s1}) ⋯ (χ_{rq̃} χ_{sq̃}).
pub(super) fn build_overlapping_clusters_syk(
    spec: &ModelSpec,
    majoranas: usize,
    window: usize,
    locality: usize,
    sample_id: u64,
) -> Result<HamiltonianInstance> {
    let j = spec.coupling_variance()?.sqrt();
    let gaussian = TupleGaussian::new(spec.seed, sample_id, streams::OVERLAPPING);
    let n_qubits = majoranas / 2;

    let mut sum = PauliSum::new(n_qubits)?;
    let tuples = overlapping_tuples(majoranas, window, locality);
    let mut entries = Vec::with_capacity(tuples.len());
    for tuple in tuples {
        let coupling = j * gaussian.draw(&tuple);
        let product = majorana_product(&tuple, n_qubits)?;
        push_majorana_term(&mut sum, coupling, product)?;
        entries.push((tuple, coupling));
    }
    Ok(HamiltonianInstance::new(
        *spec,
        sample_id,
        TermSum::Pauli(sum),
        CouplingTable::new(entries),
    ))
}

/// Original SYK: H = Σ_{p<q<r<s} J_{pqrs} χ_p χ_q χ_r χ_s with
/// coupling variance 6/N³.
pub(super) fn build_original_syk(
    spec: &ModelSpec,
    majoranas: usize,
    sample_id: u64,
) -> Result<HamiltonianInstance> {
    let j = spec.coupling_variance()?.sqrt();
    let gaussian = TupleGaussian::new(spec.seed, sample_id, streams::ORIGINAL);
    let n_qubits = majoranas / 2;

    let mut sum = PauliSum::new(n_qubits)?;
    let mut entries = Vec::with_capacity(spec.coupling_count()?);
    for combo in (1..=majoranas as u32).combinations(4) {
        let coupling = j * gaussian.draw(&combo);
        let product = majorana_product(&combo, n_qubits)?;
        push_majorana_term(&mut sum, coupling, product)?;
        entries.push((combo, coupling));
    }
    debug_assert_eq!(entries.len(), spec.coupling_count()?);
    Ok(HamiltonianInstance::new(
        *spec,
        sample_id,
        TermSum::Pauli(sum),
        CouplingTable::new(entries),
    ))
}
