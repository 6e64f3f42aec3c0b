//! Builders for the qudit SYK and clusters spin-SYK families.

use itertools::Itertools;

use crate::error::Result;
use crate::gellmann::{QuditSum, QuditTerm};
use crate::pauli::{PauliLetter, PauliString, PauliSum};
use crate::rng::TupleGaussian;

use super::{streams, CouplingTable, HamiltonianInstance, ModelSpec, TermSum};

/// H = Σ_{i1<…<iq} Σ_{α1…αq} J · T_{i1,α1} ⋯ T_{iq,αq}.
pub(super) fn build_qudit_syk(
    spec: &ModelSpec,
    d: usize,
    sites: usize,
    locality: usize,
    sample_id: u64,
) -> Result<HamiltonianInstance> {
    let j = spec.coupling_variance()?.sqrt();
    let gaussian = TupleGaussian::new(spec.seed, sample_id, streams::QUDIT);
    let n_generators = d * d - 1;

    let mut sum = QuditSum::new(d, sites)?;
    let mut entries = Vec::with_capacity(spec.coupling_count()?);
    for site_combo in (0..sites).combinations(locality) {
        for alphas in std::iter::repeat(0..n_generators)
            .take(locality)
            .multi_cartesian_product()
        {
            let mut tuple = Vec::with_capacity(2 * locality);
            let mut factors = Vec::with_capacity(locality);
            for (&site, &alpha) in site_combo.iter().zip(alphas.iter()) {
                tuple.push(site as u32);
                tuple.push(alpha as u32);
                factors.push((site, alpha));
            }
            let coupling = j * gaussian.draw(&tuple);
            sum.push(QuditTerm::new(sites, factors, coupling)?)?;
            entries.push((tuple, coupling));
        }
    }
    debug_assert_eq!(entries.len(), spec.coupling_count()?);
    Ok(HamiltonianInstance::new(
        *spec,
        sample_id,
        TermSum::Qudit(sum),
        CouplingTable::new(entries),
    ))
}

const SPIN_LETTERS: [PauliLetter; 3] = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

/// H = Σ_{i1<i2} Σ_{α1β1α2β2} J · (σ_{2i1-1,α1} σ_{2i1,β1})(σ_{2i2-1,α2} σ_{2i2,β2}),
/// cluster i occupying qubits (2i-1, 2i) in 1-based counting.
pub(super) fn build_clusters_spin_syk(
    spec: &ModelSpec,
    clusters: usize,
    sample_id: u64,
) -> Result<HamiltonianInstance> {
    let j = spec.coupling_variance()?.sqrt();
    let gaussian = TupleGaussian::new(spec.seed, sample_id, streams::CLUSTERS_SPIN);
    let n_qubits = 2 * clusters;

    let mut sum = PauliSum::new(n_qubits)?;
    let mut entries = Vec::with_capacity(spec.coupling_count()?);
    for pair in (0..clusters).combinations(2) {
        let (i1, i2) = (pair[0], pair[1]);
        for a1 in 0..3 {
            for b1 in 0..3 {
                for a2 in 0..3 {
                    for b2 in 0..3 {
                        let tuple =
                            vec![i1 as u32, a1 as u32, b1 as u32, i2 as u32, a2 as u32, b2 as u32];
                        let coupling = j * gaussian.draw(&tuple);
                        let string = four_qubit_product(
                            n_qubits,
                            [
                                (2 * i1, SPIN_LETTERS[a1]),
                                (2 * i1 + 1, SPIN_LETTERS[b1]),
                                (2 * i2, SPIN_LETTERS[a2]),
                                (2 * i2 + 1, SPIN_LETTERS[b2]),
                            ],
                        )?;
                        sum.push(coupling, string)?;
                        entries.push((tuple, coupling));
                    }
                }
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

fn four_qubit_product(
    n_qubits: usize,
    factors: [(usize, PauliLetter); 4],
) -> Result<PauliString> {
    let mut s = PauliString::identity(n_qubits)?;
    for (qubit, letter) in factors {
        s = s.mul(&PauliString::single(n_qubits, qubit, letter)?)?;
    }
    Ok(s)
}
