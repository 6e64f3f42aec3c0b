//! Generalized Gell-Mann generators of SU(d) and qudit operator terms.
//!
//! The basis consists of the symmetric matrices S_ab, the antisymmetric
//! matrices A_ab (a < b), and the diagonal matrices D_n, normalized so
//! that Tr(τ_α τ_β) = 2 δ_αβ. The ordering is fixed as: all S_ab in
//! lexicographic (a, b) order, then all A_ab, then D_1 … D_{d-1}. For
//! d = 2 this yields exactly (X, Y, Z); for d = 3 the Gell-Mann matrices
//! up to reordering, with the last generator equal to λ₈.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

type CMat = DMatrix<Complex64>;

/// The d²−1 Hermitian traceless generators of SU(d), fundamental
/// representation, with Tr(τ_α τ_β) = 2 δ_αβ.
#[derive(Debug, Clone)]
pub struct GellMannBasis {
    d: usize,
    generators: Vec<CMat>,
}

impl GellMannBasis {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!(
                "qudit dimension must be >= 2, got {d}"
            )));
        }
        let mut generators = Vec::with_capacity(d * d - 1);
        // Symmetric: (S_ab)_ij = δ_ai δ_bj + δ_aj δ_bi.
        for a in 0..d {
            for b in (a + 1)..d {
                let mut m = CMat::zeros(d, d);
                m[(a, b)] = Complex64::new(1.0, 0.0);
                m[(b, a)] = Complex64::new(1.0, 0.0);
                generators.push(m);
            }
        }
        // Antisymmetric, with the sign that makes A_12 equal Pauli Y for
        // d = 2 (and τ₂, τ₅, τ₇ for d = 3): entry (a, b) = -i, (b, a) = +i.
        for a in 0..d {
            for b in (a + 1)..d {
                let mut m = CMat::zeros(d, d);
                m[(a, b)] = Complex64::new(0.0, -1.0);
                m[(b, a)] = Complex64::new(0.0, 1.0);
                generators.push(m);
            }
        }
        // Diagonal: D_n = diag(1,…,1,−n,0,…,0)·sqrt(2/(n(n+1))) with n ones.
        for n in 1..d {
            let norm = (2.0 / (n as f64 * (n as f64 + 1.0))).sqrt();
            let mut m = CMat::zeros(d, d);
            for j in 0..n {
                m[(j, j)] = Complex64::new(norm, 0.0);
            }
            m[(n, n)] = Complex64::new(-(n as f64) * norm, 0.0);
            generators.push(m);
        }
        Ok(Self { d, generators })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of generators, d²−1.
    pub fn count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, index: usize) -> Result<&CMat> {
        self.generators.get(index).ok_or_else(|| {
            Error::IndexOutOfRange(format!(
                "generator {index} out of range for SU({})",
                self.d
            ))
        })
    }

    pub fn generators(&self) -> &[CMat] {
        &self.generators
    }
}

/// A product T_{i1,α1} ⋯ T_{iq,αq} of generators on distinct qudits
/// (strictly increasing sites), identity elsewhere, with a real weight.
#[derive(Debug, Clone)]
pub struct QuditTerm {
    n_sites: usize,
    /// (site, generator index), sites strictly increasing.
    factors: Vec<(usize, usize)>,
    pub coefficient: f64,
}

impl QuditTerm {
    pub fn new(n_sites: usize, factors: Vec<(usize, usize)>, coefficient: f64) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidParameter(
                    "qudit term sites must be strictly increasing".into(),
                ));
            }
        }
        if let Some(&(site, _)) = factors.last() {
            if site >= n_sites {
                return Err(Error::IndexOutOfRange(format!(
                    "site {site} out of range for {n_sites} qudits"
                )));
            }
        }
        Ok(Self {
            n_sites,
            factors,
            coefficient,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }
}

/// A real-weighted sum of qudit generator products on L qudits.
#[derive(Debug, Clone)]
pub struct QuditSum {
    basis: GellMannBasis,
    n_sites: usize,
    terms: Vec<QuditTerm>,
}

impl QuditSum {
    pub fn new(d: usize, n_sites: usize) -> Result<Self> {
        Ok(Self {
            basis: GellMannBasis::new(d)?,
            n_sites,
            terms: Vec::new(),
        })
    }

    pub fn push(&mut self, term: QuditTerm) -> Result<()> {
        if term.n_sites() != self.n_sites {
            return Err(Error::DimensionMismatch(format!(
                "term on {} sites added to sum on {}",
                term.n_sites(),
                self.n_sites
            )));
        }
        for &(_, alpha) in term.factors() {
            if alpha >= self.basis.count() {
                return Err(Error::IndexOutOfRange(format!(
                    "generator index {alpha} out of range for SU({})",
                    self.basis.d()
                )));
            }
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.basis.d()
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn basis(&self) -> &GellMannBasis {
        &self.basis
    }

    pub fn terms(&self) -> &[QuditTerm] {
        &self.terms
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace_product(a: &CMat, b: &CMat) -> Complex64 {
        (a * b).trace()
    }

    #[test]
    fn trace_orthonormality_for_small_d() {
        for d in 2..=6 {
            let basis = GellMannBasis::new(d).unwrap();
            assert_eq!(basis.count(), d * d - 1);
            for (i, a) in basis.generators().iter().enumerate() {
                assert!(a.trace().norm() < 1e-13, "generator {i} not traceless");
                let defect = (a - a.adjoint()).map(|c| c.norm()).max();
                assert!(defect == 0.0, "generator {i} not Hermitian");
                for (j, b) in basis.generators().iter().enumerate() {
                    let t = trace_product(a, b);
                    let expected = if i == j { 2.0 } else { 0.0 };
                    assert!(
                        (t.re - expected).abs() < 1e-13 && t.im.abs() < 1e-13,
                        "Tr(τ_{i} τ_{j}) = {t} for d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn d2_basis_is_pauli_matrices() {
        let basis = GellMannBasis::new(2).unwrap();
        let x = basis.generator(0).unwrap();
        let y = basis.generator(1).unwrap();
        let z = basis.generator(2).unwrap();
        assert_eq!(x[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(x[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(y[(0, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], Complex64::new(0.0, 1.0));
        assert_eq!(z[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(z[(1, 1)], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn d3_basis_matches_gell_mann_up_to_ordering() {
        let basis = GellMannBasis::new(3).unwrap();
        // Ordering: S12 S13 S23 A12 A13 A23 D1 D2 = λ1 λ4 λ6 λ2 λ5 λ7 λ3 λ8.
        let s12 = basis.generator(0).unwrap();
        assert_eq!(s12[(0, 1)], Complex64::new(1.0, 0.0));
        let a23 = basis.generator(5).unwrap();
        assert_eq!(a23[(1, 2)], Complex64::new(0.0, -1.0));
        assert_eq!(a23[(2, 1)], Complex64::new(0.0, 1.0));
        let d1 = basis.generator(6).unwrap();
        assert_eq!(d1[(0, 0)].re, 1.0);
        assert_eq!(d1[(1, 1)].re, -1.0);
        assert_eq!(d1[(2, 2)].re, 0.0);
        // Last generator is λ₈ = diag(1, 1, -2)/√3.
        let d2 = basis.generator(7).unwrap();
        let s = 1.0 / 3.0_f64.sqrt();
        assert!((d2[(0, 0)].re - s).abs() < 1e-15);
        assert!((d2[(1, 1)].re - s).abs() < 1e-15);
        assert!((d2[(2, 2)].re + 2.0 * s).abs() < 1e-15);
    }

    #[test]
    fn qudit_term_requires_increasing_sites() {
        assert!(QuditTerm::new(3, vec![(0, 1), (0, 2)], 1.0).is_err());
        assert!(QuditTerm::new(3, vec![(1, 0), (0, 1)], 1.0).is_err());
        assert!(QuditTerm::new(3, vec![(0, 0), (2, 5)], 1.0).is_ok());
        assert!(QuditTerm::new(2, vec![(2, 0)], 1.0).is_err());
    }

    #[test]
    fn qudit_sum_rejects_bad_generator_index() {
        let mut sum = QuditSum::new(2, 2).unwrap();
        let term = QuditTerm::new(2, vec![(0, 3)], 1.0).unwrap();
        assert!(sum.push(term).is_err());
    }
}
