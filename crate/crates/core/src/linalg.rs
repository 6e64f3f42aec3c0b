//! Dense eigensolvers and small matrix utilities.
//!
//! Real symmetric matrices go through the f64 path, complex Hermitian
//! ones through the Complex64 path; both return eigenvalues sorted
//! ascending. Dimensions are desk-scale (≲ a few thousand), so the
//! O(n³) dense algorithms are the right tool.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dense::{CMat, DenseOperator, RMat};
use crate::error::{Error, Result};

/// Eigenvalues of a real symmetric matrix, sorted ascending.
pub fn eigvalsh_real(matrix: &RMat) -> Vec<f64> {
    let eig = matrix.clone().symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Eigenvalues of a complex Hermitian matrix, sorted ascending.
pub fn eigvalsh_complex(matrix: &CMat) -> Vec<f64> {
    let eig = matrix.clone().symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Eigenvalues of a Hermitian dense operator, routed by its reality flag.
pub fn eigvalsh(op: &DenseOperator) -> Result<Vec<f64>> {
    if !op.is_hermitian() {
        return Err(Error::Numerical(
            "eigvalsh requires a Hermitian operator".into(),
        ));
    }
    if op.is_real() {
        Ok(eigvalsh_real(&op.real_matrix()?))
    } else {
        Ok(eigvalsh_complex(op.matrix()))
    }
}

/// exp(-i t H) for Hermitian H, via eigendecomposition: V e^{-itΛ} V†.
pub fn expm_i_hermitian(h: &CMat, t: f64) -> CMat {
    let eig = h.clone().symmetric_eigen();
    let phases: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&lambda| Complex64::new(0.0, -t * lambda).exp())
        .collect();
    let v = &eig.eigenvectors;
    let d = DMatrix::from_diagonal(&DVector::from_vec(phases));
    v * d * v.adjoint()
}

/// Max |A_ij| entry.
pub fn max_abs(matrix: &CMat) -> f64 {
    matrix.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Max |Im A_ij| entry.
pub fn max_imag(matrix: &CMat) -> f64 {
    matrix.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
}

/// Max entry of the commutator [A, B] = AB - BA.
pub fn commutator_norm(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a * b - b * a))
}

/// Max entry of the anticommutator {A, B} = AB + BA.
pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// Distance between two unitaries up to a global phase:
/// min_φ max|A - e^{iφ}B|, with φ read off the largest entry.
pub fn unitary_distance_up_to_phase(a: &CMat, b: &CMat) -> f64 {
    // Align phases on the largest-magnitude entry of B.
    let mut best = (0usize, 0usize);
    let mut best_norm = -1.0;
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            let n = b[(i, j)].norm();
            if n > best_norm {
                best_norm = n;
                best = (i, j);
            }
        }
    }
    if best_norm <= 0.0 {
        return max_abs(&(a - b));
    }
    let phase = a[best] / b[best];
    let phase = if phase.norm() > 0.0 {
        phase / phase.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    max_abs(&(a - b * phase))
}
