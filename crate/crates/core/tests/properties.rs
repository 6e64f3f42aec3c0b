//! Property tests over randomized inputs.

use proptest::prelude::*;
use syklab::dense::{DenseBudget, DenseOperator};
use syklab::pauli::{PauliLetter, PauliString};
use syklab::trotter::compile_pauli_exponential;

fn letter_strategy() -> impl Strategy<Value = PauliLetter> {
    prop_oneof![
        Just(PauliLetter::I),
        Just(PauliLetter::X),
        Just(PauliLetter::Y),
        Just(PauliLetter::Z),
    ]
}

fn string_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    prop::collection::vec(letter_strategy(), n)
        .prop_map(|ls| PauliString::from_letters(&ls).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dense_build_is_a_group_homomorphism(
        a in string_strategy(5),
        b in string_strategy(5),
    ) {
        let budget = DenseBudget::default();
        let da = DenseOperator::from_pauli_string(&a, budget).unwrap();
        let db = DenseOperator::from_pauli_string(&b, budget).unwrap();
        let dab = DenseOperator::from_pauli_string(&a.mul(&b).unwrap(), budget).unwrap();
        let defect = (da.matrix() * db.matrix() - dab.matrix())
            .map(|c| c.norm())
            .max();
        prop_assert!(defect < 1e-12, "homomorphism defect {}", defect);
    }

    #[test]
    fn multiplication_is_associative(
        a in string_strategy(6),
        b in string_strategy(6),
        c in string_strategy(6),
    ) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn cnot_count_is_two_ell_minus_one(
        letters in prop::collection::vec(letter_strategy(), 1..=8),
        eps in 0.01f64..1.0,
    ) {
        let s = PauliString::from_letters(&letters).unwrap();
        prop_assume!(!s.is_identity_string());
        let circuit = compile_pauli_exponential(&s, eps).unwrap();
        prop_assert_eq!(circuit.cnot_count(), 2 * (s.weight() - 1));
    }

    #[test]
    fn gap_ratios_are_affine_invariant(
        mut levels in prop::collection::vec(-100.0f64..100.0, 10..40),
        scale in 0.01f64..50.0,
        shift in -10.0f64..10.0,
    ) {
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        prop_assume!(levels.len() >= 5);
        let mapped: Vec<f64> = levels.iter().map(|e| scale * e + shift).collect();
        let r = |s: &[f64]| -> Vec<f64> {
            s.windows(3)
                .filter_map(|w| {
                    let (a, b) = (w[1] - w[0], w[2] - w[1]);
                    (a > 0.0 && b > 0.0).then(|| (a / b).min(b / a))
                })
                .collect()
        };
        let base = r(&levels);
        let image = r(&mapped);
        prop_assert_eq!(base.len(), image.len());
        for (x, y) in base.iter().zip(image.iter()) {
            prop_assert!((x - y).abs() < 1e-9, "ratio changed: {} vs {}", x, y);
        }
    }
}
