use axial_core::algebra::fusion::{check_axis, FusionError};
use axial_core::algebra::{AlgebraPresentation, Element, FusionLaw};
use axial_core::axial2::{self, TwoGenParams, A, AB, B};
use axial_core::scalar::{sym, Scalar};
use proptest::prelude::*;

fn el(c: &[(i64, i64)]) -> Element {
    Element::new(c.iter().map(|&(n, d)| Scalar::from_ratio(n, d)).collect())
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-7i64..=7, 1i64..=4), 3)
}

#[test]
fn ad_matrix_of_an_axis() {
    let alg = axial2::two_dim_algebra(&sym::alpha(), &sym::alpha());
    let m = alg.ad_matrix(&alg.basis(A));
    assert!(m.get(0, 0).is_one());
    assert_eq!(*m.get(0, 1), sym::alpha());
    assert!(m.get(1, 0).is_zero());
    assert_eq!(*m.get(1, 1), sym::alpha());
}

#[test]
fn ad_of_zero_is_zero() {
    let alg = axial2::build_generic_2gen(&TwoGenParams::generic());
    assert!(alg.ad_matrix(&alg.zero()).is_zero());
}

#[test]
fn eigenspaces_of_the_generic_two_generated_algebra() {
    let p = TwoGenParams::generic();
    let alg = axial2::build_generic_2gen(&p);
    let a = alg.basis(A);
    for lambda in [p.law.alpha.clone(), p.law.beta.clone()] {
        let (vs, _) = alg.eigenspace(&a, &lambda);
        assert_eq!(vs.len(), 1);
        assert_eq!(alg.multiply(&a, &vs[0]), vs[0].scale(&lambda));
    }
    let (ones, _) = alg.eigenspace(&a, &Scalar::one());
    assert_eq!(ones.len(), 1);
}

#[test]
fn two_dimensional_families_satisfy_the_law() {
    let law = FusionLaw::symbolic();
    let alg = axial2::two_dim_algebra(&sym::alpha(), &sym::alpha());
    for g in [A, B] {
        let r = check_axis(&alg, &alg.basis(g), &law).unwrap();
        assert!(r.is_certified());
        assert_eq!(r.eigenspace_dims, [1, 1, 0]);
    }
    let beta = axial2::two_dim_algebra(&sym::beta(), &sym::beta());
    let r = check_axis(&beta, &beta.basis(A), &law).unwrap();
    assert!(!r.holds());
    assert!(!r.constraints.is_empty());
}

#[test]
fn check_axis_rejects_non_idempotents_and_coincident_eigenvalues() {
    let alg = axial2::two_dim_algebra(&sym::alpha(), &sym::alpha());
    let law = FusionLaw::symbolic();
    let u = &alg.basis(A) + &alg.basis(B);
    assert_eq!(check_axis(&alg, &u, &law).unwrap_err(), FusionError::NotIdempotent);
    let bad = FusionLaw::new(sym::alpha(), sym::alpha());
    assert_eq!(check_axis(&alg, &alg.basis(A), &bad).unwrap_err(), FusionError::CoincidentEigenvalues);
}

#[test]
fn json_round_trip() {
    let alg = axial2::build_generic_2gen(&TwoGenParams::star());
    let back = AlgebraPresentation::from_json(&alg.to_json()).unwrap();
    assert_eq!(back.labels(), alg.labels());
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(back.product(i, j), alg.product(i, j));
        }
    }
}

#[test]
fn generators_are_idempotent_and_ab_is_not() {
    let alg = axial2::build_generic_2gen(&TwoGenParams::star());
    assert!(alg.is_idempotent(&alg.basis(A)));
    assert!(alg.is_idempotent(&alg.basis(B)));
    assert!(!alg.is_idempotent(&alg.basis(AB)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_commutative(u in coeffs(), v in coeffs()) {
        let alg = axial2::build_generic_2gen(&TwoGenParams::star());
        let (u, v) = (el(&u), el(&v));
        prop_assert_eq!(alg.multiply(&u, &v), alg.multiply(&v, &u));
    }

    #[test]
    fn multiplication_is_bilinear(u in coeffs(), v in coeffs(), w in coeffs(), k in -5i64..=5) {
        let alg = axial2::build_generic_2gen(&TwoGenParams::star());
        let (u, v, w) = (el(&u), el(&v), el(&w));
        let k = Scalar::from_int(k);
        let lhs = alg.multiply(&u.add_scaled(&k, &v), &w);
        let rhs = alg.multiply(&u, &w).add_scaled(&k, &alg.multiply(&v, &w));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ad_matrix_applies_as_multiplication(u in coeffs(), v in coeffs()) {
        let alg = axial2::build_generic_2gen(&TwoGenParams::generic());
        let (u, v) = (el(&u), el(&v));
        let via = Element::new(alg.ad_matrix(&u).apply(v.coeffs()));
        prop_assert_eq!(via, alg.multiply(&u, &v));
    }
}
