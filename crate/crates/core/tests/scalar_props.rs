use axial_core::rewrite::ThreeGenParams;
use axial_core::scalar::{rat, sym, Scalar, ScalarError, Var};
use num_rational::BigRational;
use proptest::prelude::*;

const VARS: [Var; 4] = [Var::Alpha, Var::Beta, Var::X, Var::Y];

fn term() -> impl Strategy<Value = (i64, usize, i32)> {
    (-6i64..=6, 0usize..VARS.len(), 0i32..=2)
}

fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(term(), 0..4).prop_map(|ts| {
        ts.into_iter().fold(Scalar::zero(), |acc, (c, v, e)| {
            &acc + &(&Scalar::from_int(c) * &Scalar::var(VARS[v]).pow(e))
        })
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_filter_map("nonzero denominator", |(n, d)| n.checked_div(&d).ok())
}

fn point() -> impl Strategy<Value = Vec<(Var, BigRational)>> {
    prop::collection::vec((-9i64..=9, 1i64..=5), VARS.len())
        .prop_map(|v| VARS.iter().zip(v).map(|(&x, (n, d))| (x, rat(n, d))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_and_multiplication_are_commutative(a in scalar(), b in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_distributes(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn inverses_cancel(a in scalar()) {
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn associativity(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn printed_form_round_trips(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn normalization_is_idempotent(a in scalar()) {
        let again = Scalar::new(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn specialization_commutes_with_arithmetic(a in poly(), b in poly(), pt in point()) {
        let sa = a.specialize(&pt).unwrap();
        let sb = b.specialize(&pt).unwrap();
        prop_assert_eq!((&a + &b).specialize(&pt).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).specialize(&pt).unwrap(), &sa * &sb);
        if !sb.is_zero() {
            let q = a.checked_div(&b).unwrap();
            prop_assert_eq!(q.specialize(&pt).unwrap(), &sa / &sb);
        }
    }
}

#[test]
fn epsilon_at_a_point() {
    let p = ThreeGenParams::generic();
    let e = p.epsilon_of(&sym::x());
    let pt = [(Var::Alpha, rat(2, 1)), (Var::Beta, rat(3, 1)), (Var::X, rat(1, 1))];
    assert_eq!(e.evaluate(&pt).unwrap(), rat(7, 1));
}

#[test]
fn inverse_of_alpha_minus_beta_at_coincident_values() {
    let s = (&sym::alpha() - &sym::beta()).recip().unwrap();
    let pt = [(Var::Alpha, rat(1, 2)), (Var::Beta, rat(1, 2))];
    assert!(matches!(s.specialize(&pt), Err(ScalarError::VanishingDenominator(_))));
}

#[test]
fn partial_specialization_keeps_remaining_symbols() {
    let s: Scalar = "(alpha*x + beta)/(alpha - beta)".parse().unwrap();
    let t = s.specialize(&[(Var::Alpha, rat(2, 1))]).unwrap();
    assert_eq!(t.vars(), vec![Var::Beta, Var::X]);
    assert_eq!(t.evaluate(&[(Var::Beta, rat(3, 1)), (Var::X, rat(1, 1))]).unwrap(), rat(-5, 1));
}

#[test]
fn parse_rejects_unknown_symbols() {
    assert!("alpha + q".parse::<Scalar>().is_err());
    assert!("1/(".parse::<Scalar>().is_err());
}
