//! Jordan-Wigner representation of Majorana fermions.
//!
//! N Majorana operators χ_1 … χ_N act on N/2 qubits through
//!
//!   χ_{2j-1} = Z_1 ⋯ Z_{j-1} X_j,    χ_{2j} = Z_1 ⋯ Z_{j-1} Y_j,
//!
//! which realizes {χ_j, χ_k} = 2 δ_jk exactly. Majorana indices are
//! 1-based throughout, matching the χ_r notation; the paired numbering
//! ψ_{j,1} = χ_{2j-1}, ψ_{j,2} = χ_{2j} groups them by qubit site.

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString};

/// A 1-based Majorana index χ_r with its (site, component) view
/// ψ_{j,a}: r = 2j-1 ↔ a = 1, r = 2j ↔ a = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MajoranaIndex {
    r: usize,
}

impl MajoranaIndex {
    pub fn new(r: usize, n_majorana: usize) -> Result<Self> {
        if r == 0 || r > n_majorana {
            return Err(Error::IndexOutOfRange(format!(
                "Majorana index {r} out of range 1..={n_majorana}"
            )));
        }
        Ok(Self { r })
    }

    pub fn raw(&self) -> usize {
        self.r
    }

    /// Qubit site j in ψ_{j,a}, 1-based.
    pub fn site(&self) -> usize {
        self.r.div_ceil(2)
    }

    /// Component a in ψ_{j,a}: 1 for odd r, 2 for even r.
    pub fn component(&self) -> usize {
        2 - self.r % 2
    }

    /// Inverse of the (site, component) view.
    pub fn from_site(site: usize, component: usize, n_majorana: usize) -> Result<Self> {
        if component != 1 && component != 2 {
            return Err(Error::InvalidParameter(format!(
                "Majorana component must be 1 or 2, got {component}"
            )));
        }
        Self::new(2 * site - 2 + component, n_majorana)
    }
}

/// The Pauli string for χ_r on `n_qubits` qubits (r is 1-based,
/// r ≤ 2·n_qubits). The result is Hermitian with letter phase +1.
pub fn jordan_wigner(r: usize, n_qubits: usize) -> Result<PauliString> {
    if r == 0 || r > 2 * n_qubits {
        return Err(Error::IndexOutOfRange(format!(
            "Majorana index {r} out of range 1..={}",
            2 * n_qubits
        )));
    }
    let site = r.div_ceil(2); // 1-based qubit
    let mut letters = vec![PauliLetter::I; n_qubits];
    for l in letters.iter_mut().take(site - 1) {
        *l = PauliLetter::Z;
    }
    letters[site - 1] = if r % 2 == 1 {
        PauliLetter::X
    } else {
        PauliLetter::Y
    };
    PauliString::from_letters(&letters)
}

/// The neighbor bilinear χ_r χ_{r+1} as a single Pauli string:
/// i·Z_j for r = 2j-1, i·X_j X_{j+1} for r = 2j.
pub fn majorana_bilinear(r: usize, n_qubits: usize) -> Result<PauliString> {
    if r + 1 > 2 * n_qubits {
        return Err(Error::IndexOutOfRange(format!(
            "bilinear χ_{r} χ_{} needs {} Majoranas, have {}",
            r + 1,
            r + 1,
            2 * n_qubits
        )));
    }
    let a = jordan_wigner(r, n_qubits)?;
    let b = jordan_wigner(r + 1, n_qubits)?;
    a.mul(&b)
}

/// A general Majorana pair product χ_r χ_s, r < s (anti-Hermitian for
/// distinct indices: the letter phase is ±i).
pub fn majorana_pair(r: usize, s: usize, n_qubits: usize) -> Result<PauliString> {
    if r >= s {
        return Err(Error::InvalidParameter(format!(
            "pair indices must satisfy r < s, got ({r}, {s})"
        )));
    }
    let a = jordan_wigner(r, n_qubits)?;
    let b = jordan_wigner(s, n_qubits)?;
    a.mul(&b)
}
