//! Dense matrix realization of Pauli and qudit operator sums.
//!
//! Dense builds are the workhorse of this crate: every spectrum comes from
//! full diagonalization of a dense matrix, so the Hilbert-space dimension
//! is guarded by an explicit budget. Pauli strings map one basis column to
//! exactly one row, and every Gell-Mann generator has at most one nonzero
//! entry per column, so assembly costs O(#terms · dim).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gellmann::{QuditSum, QuditTerm};
use crate::pauli::{PauliString, PauliSum};

pub type CMat = DMatrix<Complex64>;
pub type RMat = DMatrix<f64>;

/// Upper bound on the dimension of dense builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseBudget {
    pub max_dim: usize,
}

impl DenseBudget {
    pub fn new(max_dim: usize) -> Self {
        Self { max_dim }
    }

    pub fn check(&self, dim: usize, what: &str) -> Result<()> {
        if dim > self.max_dim {
            return Err(Error::Capacity(format!(
                "{what} needs dimension {dim}, budget allows {}",
                self.max_dim
            )));
        }
        Ok(())
    }
}

impl Default for DenseBudget {
    /// Desk-scale default: dimensions up to 3^10 = 59049.
    fn default() -> Self {
        Self { max_dim: 59049 }
    }
}

/// An exact dense operator with symbolic Hermiticity/reality flags.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    dim: usize,
    matrix: CMat,
    hermitian: bool,
    real: bool,
}

impl DenseOperator {
    /// Wrap a raw matrix, detecting the flags numerically.
    pub fn from_matrix(matrix: CMat) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "operator matrix must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let dim = matrix.nrows();
        let scale = matrix.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let herm_defect = hermiticity_defect(&matrix);
        let hermitian = herm_defect <= 1e-12 * scale.max(1.0);
        let real = matrix.iter().all(|c| c.im == 0.0);
        Ok(Self {
            dim,
            matrix,
            hermitian,
            real,
        })
    }

    /// Dense matrix of a single Pauli string (including its phase).
    pub fn from_pauli_string(string: &PauliString, budget: DenseBudget) -> Result<Self> {
        let dim = checked_pow2(string.n_qubits(), budget)?;
        let mut matrix = CMat::zeros(dim, dim);
        for col in 0..dim as u64 {
            let (row, value) = string.map_basis_state(col);
            matrix[(row as usize, col as usize)] = value;
        }
        Ok(Self {
            dim,
            matrix,
            hermitian: string.is_hermitian(),
            real: string.is_exactly_real() && string.phase().is_real(),
        })
    }

    /// Dense matrix of a Hermitian Pauli sum.
    ///
    /// When every string has an even number of Y letters the entries are
    /// exactly real (the imaginary parts are never touched), and the
    /// reality flag is set symbolically.
    pub fn from_pauli_sum(sum: &PauliSum, budget: DenseBudget) -> Result<Self> {
        let dim = checked_pow2(sum.n_qubits(), budget)?;
        let mut matrix = CMat::zeros(dim, dim);
        for term in sum.terms() {
            let w = term.coefficient;
            for col in 0..dim as u64 {
                let (row, value) = term.string.map_basis_state(col);
                matrix[(row as usize, col as usize)] += w * value;
            }
        }
        Ok(Self {
            dim,
            matrix,
            hermitian: true,
            real: sum.is_exactly_real(),
        })
    }

    /// Dense matrix of a single qudit generator product.
    pub fn from_qudit_term(sum: &QuditSum, term: &QuditTerm, budget: DenseBudget) -> Result<Self> {
        let dim = checked_pow_d(sum.d(), sum.n_sites(), budget)?;
        let mut matrix = CMat::zeros(dim, dim);
        add_qudit_term(&mut matrix, sum, term)?;
        Self::from_matrix(matrix)
    }

    /// Dense matrix of a qudit sum.
    pub fn from_qudit_sum(sum: &QuditSum, budget: DenseBudget) -> Result<Self> {
        let dim = checked_pow_d(sum.d(), sum.n_sites(), budget)?;
        let mut matrix = CMat::zeros(dim, dim);
        for term in sum.terms() {
            add_qudit_term(&mut matrix, sum, term)?;
        }
        let real = matrix.iter().all(|c| c.im == 0.0);
        Ok(Self {
            dim,
            matrix,
            hermitian: true,
            real,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// The real part as an f64 matrix; only valid when `is_real()`.
    pub fn real_matrix(&self) -> Result<RMat> {
        if !self.real {
            return Err(Error::Numerical(
                "operator has imaginary entries; no real view".into(),
            ));
        }
        Ok(self.matrix.map(|c| c.re))
    }

    /// Tr(A† A), the squared Frobenius norm (equals Tr(A²) for Hermitian A).
    pub fn frobenius_squared(&self) -> f64 {
        self.matrix.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }
}

fn checked_pow2(n_qubits: usize, budget: DenseBudget) -> Result<usize> {
    if n_qubits >= usize::BITS as usize {
        return Err(Error::Capacity(format!("2^{n_qubits} overflows")));
    }
    let dim = 1usize << n_qubits;
    budget.check(dim, "Pauli dense build")?;
    Ok(dim)
}

fn checked_pow_d(d: usize, sites: usize, budget: DenseBudget) -> Result<usize> {
    let mut dim = 1usize;
    for _ in 0..sites {
        dim = dim
            .checked_mul(d)
            .ok_or_else(|| Error::Capacity(format!("{d}^{sites} overflows")))?;
        budget.check(dim, "qudit dense build")?;
    }
    Ok(dim)
}

/// Accumulate coefficient · T_{i1,α1}⋯T_{iq,αq} into `matrix`.
///
/// Exploits that every generator has at most one nonzero entry per
/// column: each basis column maps to at most one row.
fn add_qudit_term(matrix: &mut CMat, sum: &QuditSum, term: &QuditTerm) -> Result<()> {
    let d = sum.d();
    let sites = sum.n_sites();
    let dim = matrix.nrows();
    // Per-factor column maps: col_digit -> Option<(row_digit, value)>.
    let mut maps: Vec<(usize, Vec<Option<(usize, Complex64)>>)> =
        Vec::with_capacity(term.factors().len());
    for &(site, alpha) in term.factors() {
        let g = sum.basis().generator(alpha)?;
        let mut col_map = vec![None; d];
        for col in 0..d {
            for row in 0..d {
                let v = g[(row, col)];
                if v.norm_sqr() != 0.0 {
                    col_map[col] = Some((row, v));
                    break;
                }
            }
        }
        maps.push((site, col_map));
    }
    // Site i has place value d^(sites-1-i), matching Kronecker order.
    let place: Vec<usize> = (0..sites)
        .map(|i| d.pow((sites - 1 - i) as u32))
        .collect();
    'cols: for col in 0..dim {
        let mut row = col;
        let mut value = Complex64::new(term.coefficient, 0.0);
        for (site, col_map) in &maps {
            let digit = (col / place[*site]) % d;
            match col_map[digit] {
                Some((row_digit, v)) => {
                    row = row - digit * place[*site] + row_digit * place[*site];
                    value *= v;
                }
                None => continue 'cols,
            }
        }
        matrix[(row, col)] += value;
    }
    Ok(())
}

/// Max |A - A†| entry.
pub fn hermiticity_defect(matrix: &CMat) -> f64 {
    let mut defect = 0.0_f64;
    for i in 0..matrix.nrows() {
        for j in i..matrix.ncols() {
            let d = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
            defect = defect.max(d);
        }
    }
    defect
}
