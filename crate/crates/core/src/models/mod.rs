//! Model factory: seeded disorder ensembles for every Hamiltonian family.
//!
//! Five families share one interface:
//!
//! - **Qudit SYK** — q-local products of SU(d) generators with Gaussian
//!   couplings, normalized so the disorder-averaged energy variance is 1
//!   (⟨Tr H²⟩ = d^L).
//! - **Clusters spin-SYK** — pairs of two-qubit clusters, each term a
//!   product of four Pauli operators (two per cluster).
//! - **Gauged clusters SYK** — four-Majorana terms drawing two fermions
//!   from each of two disjoint clusters of M Majoranas (M = 4 or 6);
//!   conserves a parity per cluster.
//! - **Overlapping clusters SYK** — products of q̃ Majorana pairs
//!   (χ_r χ_s) with window constraint s - r < M; the M = 2, q̃ = 2 case is
//!   a real symmetric model in X/Z strings, and M ≥ N restores the
//!   original SYK term set.
//! - **Original SYK** — the four-local reference model with coupling
//!   variance 6/N³.
//!
//! Couplings are standard-normal draws addressed by (seed, sample id,
//! index tuple), scaled by the family's variance rule, so assembly is
//! order-independent and bit-reproducible.

mod fermionic;
mod qudit;

use std::sync::OnceLock;

use crate::dense::{DenseBudget, DenseOperator};
use crate::error::{Error, Result};
use crate::gellmann::QuditSum;
use crate::pauli::PauliSum;

pub use fermionic::overlapping_tuples;

/// Which Hamiltonian family to build, with its structural parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelFamily {
    /// q-local SU(d) model on `sites` qudits.
    QuditSyk { d: usize, sites: usize, locality: usize },
    /// Two-local pairs of two-qubit clusters on `clusters` clusters.
    ClustersSpinSyk { clusters: usize },
    /// Two-cluster four-Majorana model; `cluster_size` Majoranas per
    /// cluster (4 or 6), N = cluster_size · clusters.
    GaugedClustersSyk { cluster_size: usize, clusters: usize },
    /// q̃-local overlapping-window model on `majoranas` Majorana fermions
    /// with window `m` (s_i - r_i < m).
    OverlappingClustersSyk { majoranas: usize, window: usize, locality: usize },
    /// Four-local reference model on `majoranas` Majorana fermions.
    OriginalSyk { majoranas: usize },
}

/// How the Gaussian coupling variance J² is fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarianceConvention {
    /// Family rule: unit energy variance for the qudit and spin-cluster
    /// families; the 6/N³-matched rule for the fermionic families (which
    /// for the M = 2 overlapping model reduces to (N-1)/(2N²)).
    EnergyNormalized,
    /// Explicit J², overriding the family rule.
    Explicit(f64),
}

/// Full static description of an ensemble member distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub family: ModelFamily,
    pub seed: u64,
    pub variance: VarianceConvention,
}

impl ModelSpec {
    pub fn new(family: ModelFamily, seed: u64) -> Self {
        Self {
            family,
            seed,
            variance: VarianceConvention::EnergyNormalized,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            ModelFamily::QuditSyk { d, sites, locality } => {
                if d < 2 {
                    return Err(Error::InvalidParameter(format!("d must be >= 2, got {d}")));
                }
                if locality < 1 || locality > sites {
                    return Err(Error::InvalidParameter(format!(
                        "locality must satisfy 1 <= q <= L, got q={locality}, L={sites}"
                    )));
                }
            }
            ModelFamily::ClustersSpinSyk { clusters } => {
                if clusters < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "need at least 2 clusters, got {clusters}"
                    )));
                }
            }
            ModelFamily::GaugedClustersSyk { cluster_size, clusters } => {
                if cluster_size != 4 && cluster_size != 6 {
                    return Err(Error::InvalidParameter(format!(
                        "supported cluster sizes are 4 and 6, got {cluster_size}"
                    )));
                }
                if clusters < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "need at least 2 clusters, got {clusters}"
                    )));
                }
            }
            ModelFamily::OverlappingClustersSyk { majoranas, window, locality } => {
                if majoranas % 2 != 0 || majoranas < 6 {
                    return Err(Error::InvalidParameter(format!(
                        "Majorana count must be even and >= 6, got {majoranas}"
                    )));
                }
                if window < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "window must be >= 2, got {window}"
                    )));
                }
                if locality < 2 || 2 * locality > majoranas {
                    return Err(Error::InvalidParameter(format!(
                        "locality must satisfy 2 <= q̃ <= N/2, got {locality}"
                    )));
                }
            }
            ModelFamily::OriginalSyk { majoranas } => {
                if majoranas % 2 != 0 || majoranas < 4 {
                    return Err(Error::InvalidParameter(format!(
                        "Majorana count must be even and >= 4, got {majoranas}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Hilbert-space dimension: d^L for qudits, 2^{n_qubits} otherwise.
    pub fn hilbert_dim(&self) -> usize {
        match self.family {
            ModelFamily::QuditSyk { d, sites, .. } => d.pow(sites as u32),
            _ => 1usize << self.n_qubits().expect("qubit-based family"),
        }
    }

    /// Number of qubits for qubit-based families; None for qudit models.
    pub fn n_qubits(&self) -> Option<usize> {
        match self.family {
            ModelFamily::QuditSyk { .. } => None,
            ModelFamily::ClustersSpinSyk { clusters } => Some(2 * clusters),
            ModelFamily::GaugedClustersSyk { cluster_size, clusters } => {
                Some(cluster_size / 2 * clusters)
            }
            ModelFamily::OverlappingClustersSyk { majoranas, .. } => Some(majoranas / 2),
            ModelFamily::OriginalSyk { majoranas } => Some(majoranas / 2),
        }
    }

    /// Majorana count for the fermionic families (gauged models count
    /// cluster_size · clusters).
    pub fn n_majorana(&self) -> Option<usize> {
        match self.family {
            ModelFamily::GaugedClustersSyk { cluster_size, clusters } => {
                Some(cluster_size * clusters)
            }
            ModelFamily::OverlappingClustersSyk { majoranas, .. } => Some(majoranas),
            ModelFamily::OriginalSyk { majoranas } => Some(majoranas),
            _ => None,
        }
    }

    /// Exact number of independent Gaussian couplings.
    pub fn coupling_count(&self) -> Result<usize> {
        self.validate()?;
        Ok(match self.family {
            ModelFamily::QuditSyk { d, sites, locality } => {
                let gens = (d * d - 1) as u128;
                let count = binomial(sites, locality) * gens.pow(locality as u32);
                count as usize
            }
            ModelFamily::ClustersSpinSyk { clusters } => (binomial(clusters, 2) * 81) as usize,
            ModelFamily::GaugedClustersSyk { cluster_size, clusters } => {
                let per_cluster = binomial(cluster_size / 2, 2) * 4;
                (binomial(clusters, 2) * per_cluster * per_cluster) as usize
            }
            ModelFamily::OverlappingClustersSyk { majoranas, window, locality } => {
                overlapping_tuples(majoranas, window, locality).len()
            }
            ModelFamily::OriginalSyk { majoranas } => binomial(majoranas, 4) as usize,
        })
    }

    /// The coupling variance J² for this spec.
    pub fn coupling_variance(&self) -> Result<f64> {
        if let VarianceConvention::Explicit(j_sq) = self.variance {
            if !(j_sq > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "explicit variance must be positive, got {j_sq}"
                )));
            }
            return Ok(j_sq);
        }
        self.validate()?;
        Ok(match self.family {
            ModelFamily::QuditSyk { d, sites, locality } => qudit_variance(d, sites, locality)?,
            ModelFamily::ClustersSpinSyk { .. } => 1.0 / self.coupling_count()? as f64,
            ModelFamily::GaugedClustersSyk { cluster_size, clusters } => {
                fermionic_variance(cluster_size * clusters, self.coupling_count()?)?
            }
            ModelFamily::OverlappingClustersSyk { majoranas, window, locality } => {
                if window == 2 && locality == 2 {
                    overlapping_m2_variance(majoranas)?
                } else {
                    fermionic_variance(majoranas, self.coupling_count()?)?
                }
            }
            ModelFamily::OriginalSyk { majoranas } => {
                fermionic_variance(majoranas, self.coupling_count()?)?
            }
        })
    }

    /// Build one disorder sample.
    pub fn build(&self, sample_id: u64) -> Result<HamiltonianInstance> {
        self.validate()?;
        match self.family {
            ModelFamily::QuditSyk { d, sites, locality } => {
                qudit::build_qudit_syk(self, d, sites, locality, sample_id)
            }
            ModelFamily::ClustersSpinSyk { clusters } => {
                qudit::build_clusters_spin_syk(self, clusters, sample_id)
            }
            ModelFamily::GaugedClustersSyk { cluster_size, clusters } => {
                fermionic::build_gauged_clusters_syk(self, cluster_size, clusters, sample_id)
            }
            ModelFamily::OverlappingClustersSyk { majoranas, window, locality } => {
                fermionic::build_overlapping_clusters_syk(
                    self, majoranas, window, locality, sample_id,
                )
            }
            ModelFamily::OriginalSyk { majoranas } => {
                fermionic::build_original_syk(self, majoranas, sample_id)
            }
        }
    }

    /// Short token for file names, e.g. "qudit_d3_L6_q2".
    pub fn describe(&self) -> String {
        match self.family {
            ModelFamily::QuditSyk { d, sites, locality } => {
                format!("qudit_d{d}_L{sites}_q{locality}")
            }
            ModelFamily::ClustersSpinSyk { clusters } => format!("spinclusters_L{clusters}"),
            ModelFamily::GaugedClustersSyk { cluster_size, clusters } => {
                format!("gauged_M{cluster_size}_L{clusters}")
            }
            ModelFamily::OverlappingClustersSyk { majoranas, window, locality } => {
                format!("overlap_N{majoranas}_M{window}_qt{locality}")
            }
            ModelFamily::OriginalSyk { majoranas } => format!("syk_N{majoranas}"),
        }
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Unit-energy-variance coupling variance for the qudit model:
/// J² = [ C(L,q) · (2(d²-1)/d)^q ]⁻¹, which makes ⟨Tr H²⟩ = d^L.
pub fn qudit_variance(d: usize, sites: usize, locality: usize) -> Result<f64> {
    if d < 2 || locality < 1 || locality > sites {
        return Err(Error::InvalidParameter(format!(
            "qudit variance needs d >= 2 and 1 <= q <= L, got d={d}, L={sites}, q={locality}"
        )));
    }
    let combos = binomial(sites, locality) as f64;
    let per_site = 2.0 * (d * d - 1) as f64 / d as f64;
    Ok(1.0 / (combos * per_site.powi(locality as i32)))
}

/// Coupling variance of the window-2 overlapping clusters model:
/// J² = (6/N³) · C(N,4)/C(N-2,2) = (N-1)/(2N²).
pub fn overlapping_m2_variance(majoranas: usize) -> Result<f64> {
    if majoranas % 2 != 0 || majoranas < 6 {
        return Err(Error::InvalidParameter(format!(
            "variance rule needs even N >= 6, got {majoranas}"
        )));
    }
    let n = majoranas as f64;
    Ok((n - 1.0) / (2.0 * n * n))
}

/// Fermionic variance rule: distribute the original-SYK energy variance
/// (coupling variance 6/N³ over C(N,4) terms) across `n_couplings` terms,
/// J² = (6/N³) · C(N,4) / n_couplings. The total energy variance is then
/// independent of the window size.
pub fn fermionic_variance(majoranas: usize, n_couplings: usize) -> Result<f64> {
    if majoranas % 2 != 0 || majoranas < 4 {
        return Err(Error::InvalidParameter(format!(
            "variance rule needs even N >= 4, got {majoranas}"
        )));
    }
    if n_couplings == 0 {
        return Err(Error::InvalidParameter("no couplings to normalize".into()));
    }
    let n = majoranas as f64;
    Ok(6.0 / (n * n * n) * binomial(majoranas, 4) as f64 / n_couplings as f64)
}

/// The drawn couplings of one sample, keyed by index tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTable {
    entries: Vec<(Vec<u32>, f64)>,
}

impl CouplingTable {
    pub(crate) fn new(entries: Vec<(Vec<u32>, f64)>) -> Self {
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Vec<u32>, f64)] {
        &self.entries
    }
}

/// The operator content of a built Hamiltonian.
#[derive(Debug, Clone)]
pub enum TermSum {
    Pauli(PauliSum),
    Qudit(QuditSum),
}

impl TermSum {
    pub fn n_terms(&self) -> usize {
        match self {
            TermSum::Pauli(s) => s.n_terms(),
            TermSum::Qudit(s) => s.n_terms(),
        }
    }

    pub fn as_pauli(&self) -> Option<&PauliSum> {
        match self {
            TermSum::Pauli(s) => Some(s),
            TermSum::Qudit(_) => None,
        }
    }

    pub fn as_qudit(&self) -> Option<&QuditSum> {
        match self {
            TermSum::Qudit(s) => Some(s),
            TermSum::Pauli(_) => None,
        }
    }
}

/// One disorder sample: spec, drawn couplings, operator sum, and a
/// lazily built dense matrix.
#[derive(Debug)]
pub struct HamiltonianInstance {
    pub spec: ModelSpec,
    pub sample_id: u64,
    terms: TermSum,
    couplings: CouplingTable,
    dense: OnceLock<DenseOperator>,
}

impl HamiltonianInstance {
    pub(crate) fn new(
        spec: ModelSpec,
        sample_id: u64,
        terms: TermSum,
        couplings: CouplingTable,
    ) -> Self {
        Self {
            spec,
            sample_id,
            terms,
            couplings,
            dense: OnceLock::new(),
        }
    }

    pub fn terms(&self) -> &TermSum {
        &self.terms
    }

    pub fn couplings(&self) -> &CouplingTable {
        &self.couplings
    }

    /// Dense matrix, built once on first use under the given budget.
    pub fn dense(&self, budget: DenseBudget) -> Result<&DenseOperator> {
        if let Some(op) = self.dense.get() {
            return Ok(op);
        }
        let op = match &self.terms {
            TermSum::Pauli(sum) => DenseOperator::from_pauli_sum(sum, budget)?,
            TermSum::Qudit(sum) => DenseOperator::from_qudit_sum(sum, budget)?,
        };
        Ok(self.dense.get_or_init(|| op))
    }
}

/// Stream tags separating coupling families in the counter RNG.
pub(crate) mod streams {
    pub const QUDIT: u64 = 1;
    pub const CLUSTERS_SPIN: u64 = 2;
    pub const GAUGED: u64 = 3;
    pub const OVERLAPPING: u64 = 4;
    pub const ORIGINAL: u64 = 5;
}
