use std::sync::OnceLock;

use axial_core::algebra::FusionLaw;
use axial_core::axial2;
use axial_core::axial3::{self, Axial3Error, ThreeGenModel};
use axial_core::par::Exec;
use axial_core::rewrite::{Canon, Gen, Word};
use axial_core::scalar::{rat, sym, Scalar, Var};
use num_rational::BigRational;

fn generic() -> &'static ThreeGenModel {
    static MODEL: OnceLock<ThreeGenModel> = OnceLock::new();
    MODEL.get_or_init(|| ThreeGenModel::generic(Exec::Parallel))
}

fn point(beta: (i64, i64)) -> Vec<(Var, BigRational)> {
    vec![
        (Var::Alpha, rat(1, 3)),
        (Var::Beta, rat(beta.0, beta.1)),
        (Var::X, rat(2, 7)),
        (Var::Y, rat(-1, 3)),
        (Var::Z, rat(3, 5)),
        (Var::P, rat(1, 4)),
    ]
}

#[test]
fn words_are_idempotent() {
    let m = generic();
    for c in Canon::ALL {
        assert_eq!(*m.product(c, c), m.basis(c));
    }
}

#[test]
fn listed_products_of_a() {
    let m = generic();
    for (f, e) in axial3::printed_products_of_a(m.params()) {
        assert_eq!(*m.product(Canon::A, f), e, "a*{f}");
    }
    assert_eq!(*m.product(Canon::AB, Canon::AC), axial3::derived_ab_ac(m.params()));
}

#[test]
fn product_of_words_matches_table() {
    let m = generic();
    let ba: Word = "[b]a".parse().unwrap();
    let u = m.word(&ba);
    assert_eq!(m.multiply(&u, &m.basis(Canon::C)), m.multiply(&m.basis(Canon::C), &u));
}

#[test]
fn epsilon_identity_holds_for_all_pairs() {
    let m = generic();
    for u in Canon::ALL {
        for v in Canon::ALL {
            assert!(m.epsilon_identity_residual(u, v).is_zero(), "({u}, {v})");
        }
    }
}

#[test]
fn eigenbases_exist_for_every_axis() {
    let m = generic();
    for g in Gen::ALL {
        let eb = axial3::eigenbasis_3gen(m, g).unwrap();
        assert!(eb.spans);
        assert!(eb.has_displayed_shape());
        assert_eq!(eb.axis, g);
    }
}

#[test]
fn solved_t_matches_closed_form_at_a_specialization() {
    let m = generic();
    let pt = [
        (Var::Alpha, rat(2, 1)),
        (Var::Beta, rat(3, 1)),
        (Var::Y, rat(1, 3)),
        (Var::Z, rat(1, 3)),
        (Var::P, rat(0, 1)),
    ];
    let at = m.at(&pt, Exec::Parallel).unwrap();
    let eb = axial3::eigenbasis_3gen(&at, Gen::A).unwrap();
    assert_eq!(eb.t, axial3::transcribed_t(at.params()));
    let law = at.law();
    let expected = &(&law.alpha - &law.beta) * &(&law.alpha + &law.beta);
    assert_eq!(eb.t, expected);
    assert_eq!(eb.t, Scalar::from_int(-5));
}

#[test]
fn fusion_holds_at_beta_one_half_and_fails_generically() {
    let m = generic();
    let half = axial3::fusion_residuals_3gen(m, &point((1, 2)), Exec::Parallel).unwrap();
    assert_eq!(half.gram_rank, 9);
    assert!(half.all_hold());
    let off = axial3::fusion_residuals_3gen(m, &point((1, 5)), Exec::Parallel).unwrap();
    assert!(!off.all_hold());
}

#[test]
fn association_holds_at_beta_one_half() {
    let at = generic().at(&point((1, 2)), Exec::Parallel).unwrap();
    assert!(at.association_defects(Exec::Parallel).is_empty());
    assert!(at.commutativity_defects(Exec::Parallel).is_empty());
}

#[test]
fn degeneration_agrees_with_two_generated_model() {
    for beta in [(1, 2), (1, 5)] {
        let law = FusionLaw::new(Scalar::from_ratio(1, 3), Scalar::from_ratio(beta.0, beta.1));
        let d = axial3::degenerate_to_two_gen(&law, &Scalar::from_ratio(2, 7), Exec::Parallel).unwrap();
        assert!(d.pattern_matches(), "beta = {}/{}", beta.0, beta.1);
    }
}

#[test]
fn product_basis_is_nonsingular() {
    let (det, _) = axial3::product_basis_determinant(generic());
    assert!(!det.is_zero());
}

#[test]
fn reduced_spanning_is_vacuous_in_dimension_two() {
    let al = Scalar::from_int(-1);
    let law = FusionLaw::new(al.clone(), sym::beta());
    let alg = axial2::two_dim_algebra(&al, &al);
    let (a, b) = (alg.basis(axial2::A), alg.basis(axial2::B));
    let c = (&a + &b).scale(&Scalar::from_int(-1));
    assert!(alg.is_idempotent(&c));
    let r = axial3::reduced_spanning_check(&alg, &law, &[a, b, c]).unwrap();
    assert!(r.vacuous);
    assert!(r.in_span);
}

#[test]
fn reduced_spanning_requires_the_alpha_hypothesis() {
    let al = Scalar::from_int(2);
    let law = FusionLaw::new(al.clone(), sym::beta());
    let alg = axial2::two_dim_algebra(&al, &al);
    let (a, b) = (alg.basis(axial2::A), alg.basis(axial2::B));
    let r = axial3::reduced_spanning_check(&alg, &law, &[a.clone(), b, a]);
    assert!(matches!(r, Err(Axial3Error::Hypothesis(_))));
}

#[test]
fn exporters_at_a_point() {
    let at = generic().at(&point((1, 2)), Exec::Parallel).unwrap();
    let v: serde_json::Value = serde_json::from_str(&at.to_json()).unwrap();
    assert_eq!(v["labels"].as_array().unwrap().len(), 9);
    assert_eq!(v["params"][1], "(1/2)");
    assert_eq!(v["gram"][0][0], "(1)");
    assert_eq!(v["gram"][0][1], "(2/7)");
    assert_eq!(v["products"].as_array().unwrap().len(), 45);
    let csv = at.gram_csv();
    assert_eq!(csv.lines().count(), 10);
    assert!(csv.lines().all(|l| l.matches("\",\"").count() == 9));
    assert!(at.products_csv().starts_with("left,right,word,coefficient\n"));
    let tex = at.gram_latex();
    assert!(tex.starts_with("\\begin{tabular}") && tex.trim_end().ends_with("\\end{tabular}"));
    assert_eq!(at.products_latex().matches("\\cdot").count(), 45);
}

#[test]
fn exports_are_deterministic() {
    let m = generic();
    let a = m.at(&point((1, 2)), Exec::Parallel).unwrap();
    let b = m.at(&point((1, 2)), Exec::Sequential).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn coincident_eigenvalues_are_rejected() {
    let pt = [(Var::Alpha, rat(1, 3)), (Var::Beta, rat(1, 3))];
    assert!(generic().at(&pt, Exec::Sequential).is_err());
}
