use proptest::prelude::*;

use super::*;
use crate::Cyclo;

fn z(n: u32, k: i64) -> Cyclo {
    Cyclo::root_of_unity(n, k)
}

fn int(k: i64) -> Cyclo {
    Cyclo::from_int(k)
}

#[test]
fn i_squared_is_minus_one() {
    assert_eq!(&z(4, 1) * &z(4, 1), int(-1));
}

#[test]
fn fifth_roots_sum_to_zero() {
    let s = (0..5).fold(Cyclo::zero(), |acc, k| &acc + &z(5, k));
    assert!(s.is_zero());
}

#[test]
fn inverse_of_cube_root() {
    assert_eq!(z(3, 1).inv().unwrap(), z(3, 2));
    assert_eq!(int(0).inv(), Err(ArithError::InverseOfZero));
}

#[test]
fn inverse_of_general_element() {
    let x = &int(2) + &z(7, 3);
    let y = x.inv().unwrap();
    assert_eq!(&x * &y, int(1));
}

#[test]
fn conjugation_examples() {
    assert_eq!(z(3, 1).conj(), z(3, 2));
    let q = Cyclo::from_scalar(Rational::new(2, 3));
    assert_eq!(q.conj(), q);
    assert_eq!((&int(1) + &z(8, 1)).conj(), &int(1) + &z(8, 7));
}

#[test]
fn serialization_is_at_minimal_conductor() {
    assert_eq!(z(3, 1).serialize(), "(3; 0, 1, 0)");
    // ζ_6^2 = ζ_3
    assert_eq!(z(6, 2).serialize(), "(3; 0, 1, 0)");
    assert_eq!(z(2, 1).serialize(), "(1; -1)");
    assert_eq!(Cyclo::from_scalar(Rational::new(1, 2)).serialize(), "(1; 1/2)");
    // ζ_12^3 = i
    assert_eq!(z(12, 3).serialize(), "(4; 0, 1, 0, 0)");
}

#[test]
fn cross_conductor_equality() {
    assert_eq!(z(12, 4), z(3, 1));
    assert_ne!(z(12, 1), z(3, 1));
}

#[test]
fn root_of_unity_witnesses() {
    assert_eq!(compare_up_to_root_of_unity(&z(3, 1), &int(1)), Some(z(3, 1)));
    assert_eq!(compare_up_to_root_of_unity(&int(2), &int(1)), None);
    let b = &int(1) + &z(4, 1);
    let a = &z(8, 1) * &b;
    let w = compare_up_to_root_of_unity(&a, &b).unwrap();
    assert_eq!(w, z(8, 1));
    // -1 is found even when both inputs are rational
    assert_eq!(compare_up_to_root_of_unity(&int(-3), &int(3)), Some(int(-1)));
}

#[test]
fn approx_rendering() {
    assert_eq!(approx_complex(&z(4, 1), 1), ("0.0".to_string(), "1.0".to_string()));
    let (re, im) = approx_complex(&z(3, 1), 4);
    assert_eq!((re.as_str(), im.as_str()), ("-0.5000", "0.8660"));
    assert_eq!(approx_complex(&int(-1), 1), ("-1.0".to_string(), "0.0".to_string()));
}

#[test]
fn algebraic_integrality() {
    assert!((&int(3) + &z(5, 2)).is_algebraic_integer());
    assert!(!Cyclo::from_scalar(Rational::new(1, 3)).is_algebraic_integer());
    // (1 + ζ_4) / 2 is not integral even though |.|^2 = 1/2 looks small
    let h = (&int(1) + &z(4, 1)).scale(&Rational::new(1, 2));
    assert!(!h.is_algebraic_integer());
}

#[test]
fn cyclotomic_polynomials_match_known_values() {
    assert_eq!(cyclo_data(1).poly, vec![-1, 1]);
    assert_eq!(cyclo_data(6).poly, vec![1, -1, 1]);
    assert_eq!(cyclo_data(12).poly, vec![1, 0, -1, 0, 1]);
    assert_eq!(cyclo_data(105).poly.iter().filter(|&&c| c == -2).count(), 2);
    for n in 1..60u32 {
        assert_eq!(cyclo_data(n).phi as u64, euler_phi(n as u64));
    }
}

#[test]
fn float_scalar_path_agrees_with_exact() {
    let a = z(5, 1) + z(5, 3).scale(&Rational::int(2));
    let af = crate::CycloF64::root_of_unity(5, 1) + crate::CycloF64::root_of_unity(5, 3).scale(&2.0);
    let (r1, i1) = a.approx();
    let (r2, i2) = af.approx();
    assert!((r1 - r2).abs() < 1e-12 && (i1 - i2).abs() < 1e-12);
}

fn arb_cyclo() -> impl Strategy<Value = Cyclo> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 8, 9, 12]), prop::collection::vec((-4i64..5, 1i64..4), 12))
        .prop_map(|(n, cs)| {
            let v = cs.iter().take(n as usize).map(|&(a, b)| Rational::new(a, b)).collect();
            Cyclo::from_cyclic(n, v)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conj_is_involutive_homomorphism(x in arb_cyclo(), y in arb_cyclo()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
    }

    #[test]
    fn roots_of_unity_have_unit_modulus(n in 1u32..40, k in 0i64..40) {
        let w = z(n, k);
        prop_assert_eq!(&w * &w.conj(), int(1));
    }

    #[test]
    fn ring_axioms(x in arb_cyclo(), y in arb_cyclo(), w in arb_cyclo()) {
        prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
    }

    #[test]
    fn product_matches_complex_oracle(x in arb_cyclo(), y in arb_cyclo()) {
        let (a, b) = x.approx();
        let (c, d) = y.approx();
        let (re, im) = (&x * &y).approx();
        prop_assert!((re - (a * c - b * d)).abs() < 1e-9);
        prop_assert!((im - (a * d + b * c)).abs() < 1e-9);
    }

    #[test]
    fn embedding_round_trip(x in arb_cyclo(), f in 1u32..4) {
        let m = x.conductor() * f;
        let up = x.lift(m);
        prop_assert_eq!(up.minimal_form(), x.minimal_form());
        prop_assert_eq!(up.serialize(), x.serialize());
    }

    #[test]
    fn inverse_is_inverse(x in arb_cyclo()) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(&x * &x.inv().unwrap(), int(1));
    }
}
