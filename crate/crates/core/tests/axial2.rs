use axial_core::algebra::{Element, FusionLaw};
use axial_core::axial2::{self, AssociatorCoefficient, PreconditionError, ProductRule, TwoGenParams, A, AB, B};
use axial_core::rewrite::ThreeGenParams;
use axial_core::scalar::{rat, sym, Scalar, Var};

fn law(a: i64, b: i64) -> FusionLaw {
    FusionLaw::new(Scalar::from_int(a), Scalar::from_int(b))
}

fn el(c: [Scalar; 3]) -> Element {
    Element::new(c.to_vec())
}

#[test]
fn a_times_ab_at_a_point() {
    let p = TwoGenParams::generic().with_law(law(2, 3)).with_x(Scalar::one());
    let alg = axial2::build_generic_2gen(&p);
    let got = alg.multiply(&alg.basis(A), &alg.basis(AB));
    assert_eq!(got, el([sym::int(2), sym::int(-6), sym::int(5)]));
}

#[test]
fn miyamoto_negates_the_beta_eigenvector() {
    let p = TwoGenParams::star();
    let alg = axial2::build_generic_2gen(&p);
    let form = axial2::frobenius_candidate(&alg, &p);
    let a = alg.basis(A);
    let (va, vb) = axial2::eigenvectors_2gen(&p);
    assert_eq!(axial2::miyamoto(&alg, &p.law, &form, &a, &vb).unwrap(), vb.scale(&Scalar::from_int(-1)));
    assert_eq!(axial2::miyamoto(&alg, &p.law, &form, &a, &va).unwrap(), va);
    assert_eq!(axial2::miyamoto(&alg, &p.law, &form, &a, &a).unwrap(), a);
}

#[test]
fn miyamoto_formula_agrees_with_decomposition() {
    let p = TwoGenParams::star();
    let alg = axial2::build_generic_2gen(&p);
    let form = axial2::frobenius_candidate(&alg, &p);
    let (a, b) = (alg.basis(A), alg.basis(B));
    let closed = axial2::miyamoto(&alg, &p.law, &form, &a, &b).unwrap();
    assert_eq!(closed, axial2::miyamoto_by_decomposition(&alg, &p.law, &a, &b).unwrap());
    assert_eq!(closed, axial2::tau_a_of_b(&p));
}

#[test]
fn difference_of_conjugates_is_a_multiple_of_a_minus_b() {
    let p = TwoGenParams::star();
    let eps = ThreeGenParams::generic().epsilon_of(&sym::x());
    let diff = &axial2::tau_a_of_b(&p) - &axial2::tau_b_of_a(&p);
    assert_eq!(diff, el([-eps.clone(), eps, Scalar::zero()]));
}

#[test]
fn projection_of_b_onto_a_is_the_form_value() {
    let p = TwoGenParams::star();
    let alg = axial2::build_generic_2gen(&p);
    let x = axial2::projection_coefficient(&alg, &p.law, &alg.basis(A), &alg.basis(B)).unwrap();
    assert_eq!(x, sym::x());
}

#[test]
fn flat_algebra_at_beta_one_half_is_associative() {
    let half = FusionLaw::new(sym::alpha(), sym::q(1, 2));
    let p = TwoGenParams::star().with_law(half).with_x(Scalar::zero());
    let alg = axial2::build_generic_2gen(&p);
    assert!(axial2::frobenius_gram(&alg, &p).is_ok());
}

#[test]
fn generic_frobenius_form_reports_defects() {
    let p = TwoGenParams::star();
    let alg = axial2::build_generic_2gen(&p);
    match axial2::frobenius_gram(&alg, &p) {
        Err(axial2::FrobeniusError::Association { defects, .. }) => assert!(!defects.is_empty()),
        other => panic!("expected association defects, got {:?}", other.map(|_| ())),
    }
    let q = TwoGenParams::generic();
    assert!(matches!(
        axial2::frobenius_gram(&axial2::build_generic_2gen(&q), &q),
        Err(axial2::FrobeniusError::NotStar)
    ));
}

#[test]
fn projection_values_for_d_equal_f_equal_a() {
    let one = Scalar::one();
    let v = axial2::projection_form_values(&FusionLaw::symbolic(), &one, &one, &one, &one);
    assert!(v.alpha.is_zero());
    assert!(v.beta.is_zero());
}

#[test]
fn projection_values_for_d_equal_f_equal_b() {
    let law = FusionLaw::symbolic();
    let x = sym::x();
    let v = axial2::projection_form_values(&law, &x, &x, &Scalar::one(), &x);
    let total = &(&v.alpha + &v.beta) + &(&x * &x);
    assert!(total.is_one());
}

#[test]
fn associator_with_d_equal_f_equal_a() {
    let al = Scalar::from_int(-1);
    let law = FusionLaw::new(al.clone(), sym::beta());
    let alg = axial2::two_dim_algebra(&al, &al);
    let x = Scalar::from_ratio(-1, 2);
    let form = axial_core::algebra::FrobeniusForm::new(axial_core::algebra::linalg::Matrix::from_rows(vec![
        vec![Scalar::one(), x.clone()],
        vec![x, Scalar::one()],
    ]));
    let a = alg.basis(A);
    let r = axial2::associator_residual(&alg, &law, &form, &a, &a, &a, AssociatorCoefficient::Derived).unwrap();
    assert!(r.is_zero());
}

#[test]
fn seress_residual_needs_alpha_not_one() {
    assert!(matches!(axial2::seress_residual(&Scalar::one()), Err(PreconditionError::AlphaIsOne)));
    assert!(axial2::seress_residual(&Scalar::from_int(3)).unwrap().vars() == vec![Var::Lambda]);
}

#[test]
fn classification_families() {
    let fams = axial2::classify_2dim(&FusionLaw::symbolic()).unwrap();
    assert_eq!(fams.len(), 2);
    assert_eq!(fams[0].rule, ProductRule::AlphaSum);
    assert_eq!(fams[1].rule, ProductRule::BetaSum);
    assert!(fams[0].report_a.is_certified());
}

#[test]
fn star_exception_at_alpha_two() {
    let exceptional = FusionLaw::new(Scalar::from_int(2), Scalar::from_ratio(1, 5));
    let ex = axial2::star_exception(&exceptional).unwrap().expect("on the exceptional curve");
    assert_eq!(ex.x, Scalar::from_ratio(5, 2));
    assert_eq!(ex.y, Scalar::from_ratio(-1, 5));
    assert!(ex.certified());
    assert!(axial2::star_exception(&law(2, 3)).unwrap().is_none());
}

#[test]
fn baric_and_flat_conditions_are_nonempty() {
    assert_eq!(axial2::baric_conditions().len(), 3);
    assert_eq!(axial2::flat_conditions().len(), 3);
}

#[test]
fn routes_for_ab_squared_agree_at_beta_one_half() {
    let half = FusionLaw::new(sym::alpha(), sym::q(1, 2));
    let p = TwoGenParams::star().with_law(half);
    let d = &axial2::solve_ab_squared(&p, axial2::Route::ViaA) - &axial2::solve_ab_squared(&p, axial2::Route::ViaB);
    assert!(d.is_zero());
    let q = TwoGenParams::star();
    let generic = &axial2::solve_ab_squared(&q, axial2::Route::ViaA) - &axial2::solve_ab_squared(&q, axial2::Route::ViaB);
    assert!(!generic.is_zero());
    assert!(generic.specialize(&[(Var::Beta, rat(1, 2))]).unwrap().is_zero());
}
