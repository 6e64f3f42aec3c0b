//! Compilation of Pauli-string exponentials into CNOT ladders, and gate
//! accounting for Trotterized time evolution.
//!
//! A Hermitian string P of length ℓ is exponentiated with the standard
//! circuit identity
//!
//!   exp(-iε Z_{p1}⋯Z_{pℓ}) = ladder · Rz(2ε)_{pℓ} · ladder†
//!
//! where the ladder is CNOT_{p1,p2} ⋯ CNOT_{pℓ-1,pℓ} — exactly 2(ℓ-1)
//! CNOT gates — and single-qubit basis changes turn X into Z (via h) and
//! Y into Z (via s·h). Rz(θ) is exp(-iθZ/2), so each per-term circuit
//! equals the exact exponential with no leftover global phase.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dense::CMat;
use crate::error::{Error, Result};
use crate::models::{binomial, HamiltonianInstance, ModelFamily, ModelSpec, TermSum};
use crate::pauli::{PauliLetter, PauliString, Phase};

/// One elementary gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateOp {
    H(usize),
    S(usize),
    Sdg(usize),
    Rz { qubit: usize, angle: f64 },
    Cnot { control: usize, target: usize },
}

/// An ordered gate list with a cached CNOT count.
#[derive(Debug, Clone, Default)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<GateOp>,
    cnot_count: usize,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            ops: Vec::new(),
            cnot_count: 0,
        }
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        let check = |q: usize| -> Result<()> {
            if q >= self.n_qubits {
                return Err(Error::IndexOutOfRange(format!(
                    "qubit {q} out of range for {} qubits",
                    self.n_qubits
                )));
            }
            Ok(())
        };
        match op {
            GateOp::H(q) | GateOp::S(q) | GateOp::Sdg(q) | GateOp::Rz { qubit: q, .. } => {
                check(q)?
            }
            GateOp::Cnot { control, target } => {
                check(control)?;
                check(target)?;
                if control == target {
                    return Err(Error::InvalidParameter(
                        "CNOT control and target must differ".into(),
                    ));
                }
                self.cnot_count += 1;
            }
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "circuit widths differ: {} vs {}",
                self.n_qubits, other.n_qubits
            )));
        }
        for &op in &other.ops {
            self.push(op)?;
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn cnot_count(&self) -> usize {
        self.cnot_count
    }

    /// Plain-text netlist, one gate per line: `H q`, `S q`, `SDG q`,
    /// `RZ q angle`, `CNOT c t`. Angles use the shortest round-trippable
    /// f64 form.
    pub fn netlist(&self) -> String {
        let mut out = String::new();
        for op in &self.ops {
            match op {
                GateOp::H(q) => out.push_str(&format!("H {q}\n")),
                GateOp::S(q) => out.push_str(&format!("S {q}\n")),
                GateOp::Sdg(q) => out.push_str(&format!("SDG {q}\n")),
                GateOp::Rz { qubit, angle } => out.push_str(&format!("RZ {qubit} {angle}\n")),
                GateOp::Cnot { control, target } => {
                    out.push_str(&format!("CNOT {control} {target}\n"))
                }
            }
        }
        out
    }

    /// Dense unitary of the circuit (up to 12 qubits).
    pub fn to_unitary(&self) -> Result<CMat> {
        if self.n_qubits > 12 {
            return Err(Error::Capacity(format!(
                "dense circuit verification capped at 12 qubits, got {}",
                self.n_qubits
            )));
        }
        let dim = 1usize << self.n_qubits;
        let mut u = CMat::identity(dim, dim);
        for op in &self.ops {
            apply_gate(&mut u, *op, self.n_qubits);
        }
        Ok(u)
    }
}

/// Left-multiply the matrix by the gate: U ← G·U.
fn apply_gate(u: &mut CMat, op: GateOp, n_qubits: usize) {
    let dim = u.nrows();
    match op {
        GateOp::Cnot { control, target } => {
            let cbit = 1usize << (n_qubits - 1 - control);
            let tbit = 1usize << (n_qubits - 1 - target);
            for row in 0..dim {
                // Swap rows (row, row^tbit) for rows with the control set,
                // visiting each pair once.
                if row & cbit != 0 && row & tbit == 0 {
                    u.swap_rows(row, row ^ tbit);
                }
            }
        }
        GateOp::H(q) | GateOp::S(q) | GateOp::Sdg(q) | GateOp::Rz { qubit: q, .. } => {
            let g = single_qubit_matrix(op);
            let bit = 1usize << (n_qubits - 1 - q);
            for row0 in 0..dim {
                if row0 & bit != 0 {
                    continue;
                }
                let row1 = row0 | bit;
                for col in 0..dim {
                    let a = u[(row0, col)];
                    let b = u[(row1, col)];
                    u[(row0, col)] = g[(0, 0)] * a + g[(0, 1)] * b;
                    u[(row1, col)] = g[(1, 0)] * a + g[(1, 1)] * b;
                }
            }
        }
    }
}

fn single_qubit_matrix(op: GateOp) -> DMatrix<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match op {
        GateOp::H(_) => {
            let h = 1.0 / 2.0_f64.sqrt();
            DMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(h, 0.0),
                    Complex64::new(h, 0.0),
                    Complex64::new(h, 0.0),
                    Complex64::new(-h, 0.0),
                ],
            )
        }
        GateOp::S(_) => {
            DMatrix::from_row_slice(2, 2, &[one, zero, zero, Complex64::new(0.0, 1.0)])
        }
        GateOp::Sdg(_) => {
            DMatrix::from_row_slice(2, 2, &[one, zero, zero, Complex64::new(0.0, -1.0)])
        }
        GateOp::Rz { angle, .. } => {
            // Rz(θ) = exp(-iθZ/2) = diag(e^{-iθ/2}, e^{iθ/2}).
            let half = angle / 2.0;
            DMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(0.0, -half).exp(),
                    zero,
                    zero,
                    Complex64::new(0.0, half).exp(),
                ],
            )
        }
        GateOp::Cnot { .. } => unreachable!("handled separately"),
    }
}

/// Compile exp(-iε·P) for a Hermitian Pauli string P into basis changes,
/// a CNOT ladder over the support, one Rz, and the mirrored tail.
/// Exactly 2(ℓ-1) CNOT gates for a string of length ℓ.
pub fn compile_pauli_exponential(p: &PauliString, epsilon: f64) -> Result<Circuit> {
    let (phase, canonical) = p.hermitianized();
    let sign = match phase {
        Phase::PlusOne => 1.0,
        Phase::MinusOne => -1.0,
        _ => {
            return Err(Error::Algebra(format!(
                "cannot exponentiate a non-Hermitian string (phase {phase})"
            )))
        }
    };
    if canonical.is_identity_string() {
        return Err(Error::TrivialCircuit(
            "exp of the identity string is a global phase; skip the term".into(),
        ));
    }
    let support = canonical.support();
    let mut circuit = Circuit::new(canonical.n_qubits());

    // Basis change into Z: X = h·Z·h, Y = (s·h)·Z·(s·h)†, so W = h·s†
    // maps Y to Z (emitted as SDG then H).
    for &q in &support {
        match canonical.letter(q) {
            PauliLetter::X => circuit.push(GateOp::H(q))?,
            PauliLetter::Y => {
                circuit.push(GateOp::Sdg(q))?;
                circuit.push(GateOp::H(q))?;
            }
            _ => {}
        }
    }
    for w in support.windows(2) {
        circuit.push(GateOp::Cnot { control: w[0], target: w[1] })?;
    }
    let last = *support.last().expect("non-identity string has support");
    circuit.push(GateOp::Rz { qubit: last, angle: 2.0 * epsilon * sign })?;
    for w in support.windows(2).rev() {
        circuit.push(GateOp::Cnot { control: w[0], target: w[1] })?;
    }
    for &q in support.iter().rev() {
        match canonical.letter(q) {
            PauliLetter::X => circuit.push(GateOp::H(q))?,
            PauliLetter::Y => {
                circuit.push(GateOp::H(q))?;
                circuit.push(GateOp::S(q))?;
            }
            _ => {}
        }
    }
    debug_assert_eq!(circuit.cnot_count(), 2 * (support.len() - 1));
    Ok(circuit)
}

/// One first-order Trotter step exp(-i c_1 P_1 dt)⋯exp(-i c_k P_k dt),
/// terms in their stored (construction) order.
pub fn trotter_step(h: &HamiltonianInstance, dt: f64) -> Result<Circuit> {
    let sum = h.terms().as_pauli().ok_or_else(|| {
        Error::InvalidParameter(
            "Trotter compilation requires a Pauli-string Hamiltonian (qudit \
             families have no CNOT realization here)"
                .into(),
        )
    })?;
    let mut circuit = Circuit::new(sum.n_qubits());
    for term in sum.terms() {
        let per_term = compile_pauli_exponential(&term.string, term.coefficient * dt)?;
        circuit.extend(&per_term)?;
    }
    Ok(circuit)
}

/// Structural gate costs of one Trotter step for a model family.
#[derive(Debug, Clone)]
pub struct GateCostReport {
    pub model: String,
    pub n_terms: usize,
    pub max_string_len: usize,
    pub mean_string_len: f64,
    pub cnots_per_step: usize,
    /// The four-local reference model at the same Majorana count.
    pub baseline: Option<BaselineCost>,
}

#[derive(Debug, Clone, Copy)]
pub struct BaselineCost {
    pub majoranas: usize,
    pub n_terms: usize,
    pub cnots_per_step: usize,
}

impl GateCostReport {
    /// cnots(model)/cnots(baseline), when a baseline exists.
    pub fn cnot_ratio(&self) -> Option<f64> {
        self.baseline
            .map(|b| self.cnots_per_step as f64 / b.cnots_per_step as f64)
    }

    /// Tabular one-line summary plus a header, for the cost table file.
    pub fn table(&self) -> String {
        let mut out = String::from(
            "model n_terms max_len mean_len cnots_per_step baseline_terms baseline_cnots ratio\n",
        );
        let (bt, bc, ratio) = match self.baseline {
            Some(b) => (
                b.n_terms.to_string(),
                b.cnots_per_step.to_string(),
                format!("{:.6}", self.cnot_ratio().unwrap()),
            ),
            None => ("-".into(), "-".into(), "-".into()),
        };
        out.push_str(&format!(
            "{} {} {} {:.4} {} {} {} {}\n",
            self.model,
            self.n_terms,
            self.max_string_len,
            self.mean_string_len,
            self.cnots_per_step,
            bt,
            bc,
            ratio
        ));
        out
    }
}

/// Pauli-term structure of one sample (couplings affect only angles, so
/// any sample id yields the same counts).
fn term_structure(spec: &ModelSpec) -> Result<(usize, usize, f64, usize)> {
    let h = spec.build(0)?;
    let sum = h.terms().as_pauli().ok_or_else(|| {
        Error::InvalidParameter(
            "gate-cost accounting requires a Pauli-string family".into(),
        )
    })?;
    let n_terms = sum.n_terms();
    let mut max_len = 0usize;
    let mut total_len = 0usize;
    let mut cnots = 0usize;
    for term in sum.terms() {
        let l = term.string.weight();
        max_len = max_len.max(l);
        total_len += l;
        cnots += 2 * (l - 1);
    }
    Ok((n_terms, max_len, total_len as f64 / n_terms as f64, cnots))
}

/// Term counts, string lengths, and CNOTs per first-order Trotter step,
/// with the original four-local model at equal N as the baseline.
pub fn gate_cost_report(spec: &ModelSpec) -> Result<GateCostReport> {
    let (n_terms, max_string_len, mean_string_len, cnots_per_step) = term_structure(spec)?;
    let baseline_n = match spec.family {
        ModelFamily::OriginalSyk { .. } => None,
        ModelFamily::ClustersSpinSyk { clusters } => Some(4 * clusters),
        _ => spec.n_majorana(),
    };
    let baseline = match baseline_n {
        Some(n) if n >= 4 => {
            let base_spec = ModelSpec::new(ModelFamily::OriginalSyk { majoranas: n }, spec.seed);
            let (bt, _, _, bc) = term_structure(&base_spec)?;
            debug_assert_eq!(bt as u128, binomial(n, 4));
            Some(BaselineCost {
                majoranas: n,
                n_terms: bt,
                cnots_per_step: bc,
            })
        }
        _ => None,
    };
    Ok(GateCostReport {
        model: spec.describe(),
        n_terms,
        max_string_len,
        mean_string_len,
        cnots_per_step,
        baseline,
    })
}
