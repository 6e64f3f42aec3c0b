//! Pauli strings as X/Z bit masks with a quartic phase.
//!
//! A string is stored as `i^k · X^x Z^z` where `x` and `z` are bit masks
//! over the qubits and `k` is an exponent of the imaginary unit. Products
//! are pure bit arithmetic:
//!
//!   (i^p X^a Z^b)(i^q X^c Z^d) = i^{p+q} (-1)^{|b∧c|} X^{a⊕c} Z^{b⊕d}
//!
//! since Z and X anticommute on each qubit. The letter Y is represented by
//! overlapping X and Z bits together with a phase bookkeeping via
//! `Y = i·X·Z`, equivalently `X·Z = -i·Y`.
//!
//! Bit layout: qubit `j` occupies mask bit `n_qubits - 1 - j`, so a basis
//! index reads left-to-right as qubit 0, 1, … and dense matrices built from
//! strings match the ordinary Kronecker-product convention.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Phase of a Pauli string, an element of the group {+1, +i, -1, -i}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    /// Phase from an exponent of i (taken mod 4).
    pub fn from_exponent(k: u8) -> Self {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    /// Exponent k with phase = i^k, in 0..4.
    pub fn exponent(self) -> u8 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    /// Complex value of the phase.
    pub fn value(self) -> Complex64 {
        match self {
            Phase::PlusOne => Complex64::new(1.0, 0.0),
            Phase::PlusI => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    /// True for ±1.
    pub fn is_real(self) -> bool {
        matches!(self, Phase::PlusOne | Phase::MinusOne)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Phase::PlusOne => "+",
            Phase::PlusI => "+i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        };
        write!(f, "{s}")
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

/// A phased Pauli string on up to 64 qubits.
///
/// The canonical (letter-form) phase reported by [`PauliString::phase`]
/// is the prefactor of the string written with letters I, X, Y, Z; a
/// string is Hermitian exactly when that phase is ±1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: u32,
    x_mask: u64,
    z_mask: u64,
    /// Exponent k in the internal form i^k · X^x Z^z.
    phase_xz: u8,
}

impl PauliString {
    /// The identity string on `n_qubits` qubits.
    pub fn identity(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 64 {
            return Err(Error::InvalidParameter(format!(
                "n_qubits must be in 1..=64, got {n_qubits}"
            )));
        }
        Ok(Self {
            n_qubits: n_qubits as u32,
            x_mask: 0,
            z_mask: 0,
            phase_xz: 0,
        })
    }

    /// One Pauli letter on qubit `qubit` (0-based), identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, letter: PauliLetter) -> Result<Self> {
        let mut s = Self::identity(n_qubits)?;
        if qubit >= n_qubits {
            return Err(Error::IndexOutOfRange(format!(
                "qubit {qubit} out of range for {n_qubits} qubits"
            )));
        }
        let bit = s.qubit_bit(qubit);
        match letter {
            PauliLetter::I => {}
            PauliLetter::X => s.x_mask |= bit,
            PauliLetter::Z => s.z_mask |= bit,
            PauliLetter::Y => {
                // Y = i·X·Z, so the X^xZ^z form carries one power of i.
                s.x_mask |= bit;
                s.z_mask |= bit;
                s.phase_xz = 1;
            }
        }
        Ok(s)
    }

    /// Build from a letter slice, qubit 0 first, with letter-form phase +1.
    pub fn from_letters(letters: &[PauliLetter]) -> Result<Self> {
        let mut s = Self::identity(letters.len())?;
        let mut y_count = 0u8;
        for (q, &l) in letters.iter().enumerate() {
            let bit = s.qubit_bit(q);
            match l {
                PauliLetter::I => {}
                PauliLetter::X => s.x_mask |= bit,
                PauliLetter::Z => s.z_mask |= bit,
                PauliLetter::Y => {
                    s.x_mask |= bit;
                    s.z_mask |= bit;
                    y_count = y_count.wrapping_add(1);
                }
            }
        }
        s.phase_xz = y_count % 4;
        Ok(s)
    }

    /// Parse from a text form like "XIZY" (qubit 0 first).
    pub fn parse(text: &str) -> Result<Self> {
        let letters: Result<Vec<PauliLetter>> = text
            .chars()
            .map(|c| match c {
                'I' | 'i' => Ok(PauliLetter::I),
                'X' | 'x' => Ok(PauliLetter::X),
                'Y' | 'y' => Ok(PauliLetter::Y),
                'Z' | 'z' => Ok(PauliLetter::Z),
                other => Err(Error::Input(format!("invalid Pauli letter '{other}'"))),
            })
            .collect();
        Self::from_letters(&letters?)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits as usize
    }

    fn qubit_bit(&self, qubit: usize) -> u64 {
        1u64 << (self.n_qubits as usize - 1 - qubit)
    }

    /// The letter on `qubit`.
    pub fn letter(&self, qubit: usize) -> PauliLetter {
        let bit = self.qubit_bit(qubit);
        match (self.x_mask & bit != 0, self.z_mask & bit != 0) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (false, true) => PauliLetter::Z,
            (true, true) => PauliLetter::Y,
        }
    }

    /// Number of qubits with X or Z content (the string length ℓ).
    pub fn weight(&self) -> usize {
        (self.x_mask | self.z_mask).count_ones() as usize
    }

    /// Qubits (ascending) on which the string acts nontrivially.
    pub fn support(&self) -> Vec<usize> {
        let occupied = self.x_mask | self.z_mask;
        (0..self.n_qubits as usize)
            .filter(|&q| occupied & self.qubit_bit(q) != 0)
            .collect()
    }

    pub fn is_identity_string(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    /// Number of Y letters (X and Z bits overlapping).
    pub fn y_count(&self) -> usize {
        (self.x_mask & self.z_mask).count_ones() as usize
    }

    /// Letter-form phase: the prefactor when the string is written with
    /// I, X, Y, Z letters.
    pub fn phase(&self) -> Phase {
        let k = (self.phase_xz as i32 - self.y_count() as i32).rem_euclid(4);
        Phase::from_exponent(k as u8)
    }

    /// Hermitian iff the letter-form phase is ±1.
    pub fn is_hermitian(&self) -> bool {
        self.phase().is_real()
    }

    /// Group product `self · other` with exact phase tracking.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        // Z^b X^c = (-1)^{|b∧c|} X^c Z^b on disjoint per-qubit factors.
        let anticomm = (self.z_mask & other.x_mask).count_ones();
        let phase = (self.phase_xz as u32 + other.phase_xz as u32 + 2 * anticomm) % 4;
        Ok(Self {
            n_qubits: self.n_qubits,
            x_mask: self.x_mask ^ other.x_mask,
            z_mask: self.z_mask ^ other.z_mask,
            phase_xz: phase as u8,
        })
    }

    /// Multiply the global phase by `phase`.
    pub fn with_extra_phase(&self, phase: Phase) -> Self {
        Self {
            phase_xz: (self.phase_xz + phase.exponent()) % 4,
            ..*self
        }
    }

    /// Hermitian conjugate.
    pub fn adjoint(&self) -> Self {
        // (i^k X^x Z^z)† = i^{-k} Z^z X^x = i^{-k} (-1)^{|x∧z|} X^x Z^z.
        let y = (self.x_mask & self.z_mask).count_ones();
        let k = ((4 - self.phase_xz as u32 % 4) + 2 * y) % 4;
        Self {
            phase_xz: k as u8,
            ..*self
        }
    }

    /// True when the two strings commute as operators.
    pub fn commutes_with(&self, other: &Self) -> bool {
        let a = (self.x_mask & other.z_mask).count_ones();
        let b = (self.z_mask & other.x_mask).count_ones();
        (a + b) % 2 == 0
    }

    /// Split into the canonical Hermitian representative (letter-form
    /// phase +1) and the phase `m` with `self = m · canonical`.
    pub fn hermitianized(&self) -> (Phase, Self) {
        let m = self.phase();
        let canonical = Self {
            phase_xz: (self.y_count() % 4) as u8,
            ..*self
        };
        (m, canonical)
    }

    /// Diagonal in the computational basis (no X content).
    pub fn is_diagonal(&self) -> bool {
        self.x_mask == 0
    }

    /// Image of the basis state with index `col`: returns `(row, value)`
    /// such that `P |col⟩ = value · |row⟩`.
    pub fn map_basis_state(&self, col: u64) -> (u64, Complex64) {
        let row = col ^ self.x_mask;
        let sign_flips = (self.z_mask & col).count_ones();
        let k = (self.phase_xz as u32 + 2 * sign_flips) % 4;
        (row, Phase::from_exponent(k as u8).value())
    }

    /// Entries of a string with ±1 letter phase and an even number of Y
    /// letters are exactly real; used to route dense builds.
    pub fn is_exactly_real(&self) -> bool {
        self.phase_xz % 2 == 0
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase())?;
        for q in 0..self.n_qubits as usize {
            let c = match self.letter(q) {
                PauliLetter::I => 'I',
                PauliLetter::X => 'X',
                PauliLetter::Y => 'Y',
                PauliLetter::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

/// A real-weighted sum of Hermitian Pauli strings.
///
/// Each stored string carries letter-form phase +1; any ±1 sign from
/// canonicalization is folded into the coefficient, so the sum is
/// Hermitian by construction.
#[derive(Debug, Clone)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

#[derive(Debug, Clone, Copy)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub string: PauliString,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Result<Self> {
        PauliString::identity(n_qubits)?;
        Ok(Self {
            n_qubits,
            terms: Vec::new(),
        })
    }

    /// Append `coefficient · string`; the string must be Hermitian
    /// (letter-form phase ±1), and the sign is folded into the
    /// coefficient.
    pub fn push(&mut self, coefficient: f64, string: PauliString) -> Result<()> {
        if string.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "term on {} qubits added to sum on {}",
                string.n_qubits(),
                self.n_qubits
            )));
        }
        let (m, canonical) = string.hermitianized();
        let sign = match m {
            Phase::PlusOne => 1.0,
            Phase::MinusOne => -1.0,
            _ => {
                return Err(Error::Algebra(format!(
                    "non-Hermitian term with phase {m} cannot join a real-weighted sum"
                )))
            }
        };
        self.terms.push(PauliTerm {
            coefficient: coefficient * sign,
            string: canonical,
        });
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    /// True when every term's dense matrix is exactly real (even number
    /// of Y letters per string).
    pub fn is_exactly_real(&self) -> bool {
        self.terms.iter().all(|t| t.string.is_exactly_real())
    }

    /// Largest string length among the terms.
    pub fn max_weight(&self) -> usize {
        self.terms.iter().map(|t| t.string.weight()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, q: usize) -> PauliString {
        PauliString::single(n, q, PauliLetter::X).unwrap()
    }
    fn y(n: usize, q: usize) -> PauliString {
        PauliString::single(n, q, PauliLetter::Y).unwrap()
    }
    fn z(n: usize, q: usize) -> PauliString {
        PauliString::single(n, q, PauliLetter::Z).unwrap()
    }

    #[test]
    fn single_x_squares_to_identity() {
        let a = x(1, 0);
        let p = a.mul(&a).unwrap();
        assert!(p.is_identity_string());
        assert_eq!(p.phase(), Phase::PlusOne);
    }

    #[test]
    fn xz_is_minus_i_y() {
        // X·Z = -i·Y under the bit-mask multiplication rule.
        let p = x(1, 0).mul(&z(1, 0)).unwrap();
        assert_eq!(p.letter(0), PauliLetter::Y);
        assert_eq!(p.phase(), Phase::MinusI);
        // and Z·X = +i·Y
        let q = z(1, 0).mul(&x(1, 0)).unwrap();
        assert_eq!(q.phase(), Phase::PlusI);
    }

    #[test]
    fn disjoint_supports_compose_without_phase() {
        let p = z(2, 0).mul(&z(2, 1)).unwrap();
        assert_eq!(p.letter(0), PauliLetter::Z);
        assert_eq!(p.letter(1), PauliLetter::Z);
        assert_eq!(p.phase(), Phase::PlusOne);
    }

    #[test]
    fn phase_group_closure_and_associativity() {
        let gens = [x(3, 0), y(3, 1), z(3, 2), y(3, 0), x(3, 2)];
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let ab_c = a.mul(b).unwrap().mul(c).unwrap();
                    let a_bc = a.mul(&b.mul(c).unwrap()).unwrap();
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }

    #[test]
    fn hermiticity_follows_letter_phase() {
        let p = x(2, 0).mul(&z(2, 0)).unwrap(); // -i·Y
        assert!(!p.is_hermitian());
        let (m, canon) = p.hermitianized();
        assert_eq!(m, Phase::MinusI);
        assert!(canon.is_hermitian());
        assert_eq!(canon.letter(0), PauliLetter::Y);
    }

    #[test]
    fn adjoint_is_involutive_and_matches_phase_conjugation() {
        let p = y(3, 0).mul(&x(3, 1)).unwrap().with_extra_phase(Phase::PlusI);
        assert_eq!(p.adjoint().adjoint(), p);
        // P·P† has phase +1 and empty masks.
        let prod = p.mul(&p.adjoint()).unwrap();
        assert!(prod.is_identity_string());
        assert_eq!(prod.phase(), Phase::PlusOne);
    }

    #[test]
    fn commutation_via_symplectic_form() {
        assert!(!x(1, 0).commutes_with(&z(1, 0)));
        assert!(x(2, 0).commutes_with(&z(2, 1)));
        let xx = x(2, 0).mul(&x(2, 1)).unwrap();
        let zz = z(2, 0).mul(&z(2, 1)).unwrap();
        assert!(xx.commutes_with(&zz));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let p = PauliString::parse("XIZY").unwrap();
        assert_eq!(p.to_string(), "+XIZY");
        assert_eq!(p.weight(), 3);
        assert_eq!(p.support(), vec![0, 2, 3]);
    }

    #[test]
    fn sum_rejects_non_hermitian_terms() {
        let mut sum = PauliSum::new(1).unwrap();
        let p = x(1, 0).mul(&z(1, 0)).unwrap(); // -i·Y
        assert!(sum.push(1.0, p).is_err());
        assert!(sum.push(0.5, y(1, 0)).is_ok());
        assert_eq!(sum.n_terms(), 1);
    }

    #[test]
    fn sum_folds_negative_letter_phase_into_coefficient() {
        let mut sum = PauliSum::new(1).unwrap();
        let minus_z = z(1, 0).with_extra_phase(Phase::MinusOne);
        sum.push(2.0, minus_z).unwrap();
        let t = sum.terms()[0];
        assert_eq!(t.coefficient, -2.0);
        assert_eq!(t.string.phase(), Phase::PlusOne);
    }

    #[test]
    fn exact_reality_rule() {
        assert!(x(2, 0).is_exactly_real());
        assert!(z(2, 1).is_exactly_real());
        assert!(!y(2, 0).is_exactly_real());
        let yy = y(2, 0).mul(&y(2, 1)).unwrap();
        assert!(yy.is_exactly_real()); // two Y's multiply to real entries
    }
}
