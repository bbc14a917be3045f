use num_bigint::BigInt;
use num_rational::BigRational;
use popswitch::qarith::{lp_eval, quantum_binom, quantum_int, verify_cor_q, verify_lemma_q, LaurentPoly, RatFunc};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -20i64..=20), 0..6).prop_map(LaurentPoly::from_terms)
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn point() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=7)
        .prop_filter("nonzero, off the unit circle", |(a, b)| *a != 0 && a.abs() != *b)
        .prop_map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
}

#[test]
fn binomials_are_palindromic() {
    for n in 0..=30 {
        for k in 0..=n {
            assert_eq!(quantum_binom(n, k).unwrap(), quantum_binom(n, n - k).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn quantum_ints_are_bar_invariant() {
    for n in 0..=30 {
        let x = quantum_int(n);
        assert_eq!(x.bar(), x, "n={n}");
    }
}

#[test]
fn identity_grid() {
    for k in 1..=30 {
        for l in 1..=30 {
            assert!(verify_lemma_q(k, l), "lemma k={k} l={l}");
            assert!(verify_cor_q(k, l), "cor k={k} l={l}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn ratfunc_canonical_form(a in poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let x = RatFunc::new(a.clone(), b.clone()).unwrap();
        let y = RatFunc::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(x.to_string(), y.to_string());
        prop_assert_eq!(x.to_string().parse::<RatFunc>().unwrap(), x);
    }

    #[test]
    fn ratfunc_field(a in nonzero_poly(), b in nonzero_poly(), c in poly()) {
        let x = RatFunc::new(a.clone(), b.clone()).unwrap();
        let z = RatFunc::from_poly(c);
        prop_assert!((&x * &x.inv().unwrap()).is_one());
        prop_assert_eq!(&(&x + &z) - &z, x.clone());
        prop_assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly(), b in poly(), q0 in point()) {
        let (ea, eb) = (lp_eval(&a, &q0).unwrap(), lp_eval(&b, &q0).unwrap());
        prop_assert_eq!(lp_eval(&(&a * &b), &q0).unwrap(), &ea * &eb);
        prop_assert_eq!(lp_eval(&(&a + &b), &q0).unwrap(), ea + eb);
    }

    #[test]
    fn laurent_text_round_trip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn lemma_beyond_grid(k in 1u32..60, l in 0u32..60) {
        prop_assert!(verify_lemma_q(k, l));
    }
}
