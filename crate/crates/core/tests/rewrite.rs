use axial_core::par::Exec;
use axial_core::rewrite::{Canon, Gen, NormalForm, Rewriter, ThreeGenParams, Word};
use axial_core::scalar::{rat, sym, Scalar, Var};

fn w(s: &str) -> Word {
    s.parse().expect("word")
}

fn half() -> Rewriter {
    let p = ThreeGenParams::generic().specialize(&[(Var::Beta, rat(1, 2))]).unwrap();
    Rewriter::new(p).unwrap()
}

#[test]
fn words_print_and_parse() {
    for s in ["a", "[b]c", "[a,b]c", "[c,a,b]a"] {
        assert_eq!(w(s).to_string(), s);
    }
    assert!("[a,]b".parse::<Word>().is_err());
    assert!("[a]d".parse::<Word>().is_err());
}

#[test]
fn repeated_letters_collapse() {
    assert_eq!(w("[a,a]b").collapsed(), w("b"));
    assert_eq!(w("[b,a,a,c]c").collapsed(), w("[b]c"));
}

#[test]
fn conjugating_a_generator_by_itself_is_trivial() {
    let rw = Rewriter::generic();
    assert_eq!(rw.normalize(&w("[a]a")), NormalForm::unit(Canon::A));
}

#[test]
fn swapped_conjugate_in_the_span() {
    let rw = Rewriter::generic();
    let ba = rw.normalize(&w("[b]a"));
    let eps = rw.params().epsilon_of(&sym::x());
    let expected = NormalForm::unit(Canon::AB)
        .add_scaled(&eps, &NormalForm::unit(Canon::A))
        .add_scaled(&-eps.clone(), &NormalForm::unit(Canon::B));
    assert_eq!(ba, expected);
}

#[test]
fn long_word_normalizes_to_canonical_word() {
    let rw = Rewriter::generic();
    assert_eq!(rw.normalize(&w("[a,b,a,a]c")), NormalForm::unit(Canon::ABC));
}

#[test]
fn gram_spot_values() {
    let rw = Rewriter::generic();
    let p = rw.params();
    let eab = p.epsilon_of(&p.x);
    assert_eq!(rw.gram_value(&w("a"), &w("b")), sym::x());
    assert_eq!(rw.gram_value(&w("a"), &w("[b]c")), sym::p());
    let want = &sym::p() - &(&eab * &(&sym::y() - &sym::z()));
    assert_eq!(rw.gram_value(&w("b"), &w("[a]c")), want);
    assert!(rw.gram_value(&w("[a,b]c"), &w("[a,b]c")).is_one());
}

#[test]
fn gram_matrix_is_symmetric_with_unit_diagonal() {
    let g = Rewriter::generic().gram_matrix(Exec::Parallel).unwrap();
    for i in 0..9 {
        assert!(g.get(i, i).is_one());
        for j in 0..i {
            assert_eq!(g.get(i, j), g.get(j, i));
        }
    }
}

#[test]
fn closure_dimensions() {
    let rw = Rewriter::generic();
    assert_eq!(rw.closure(&[Gen::A], 4).unwrap().dims, vec![1, 1]);
    let ab = rw.closure(&[Gen::A, Gen::B], 4).unwrap();
    assert_eq!(ab.dims, vec![2, 3, 3]);
    assert_eq!(ab.dim(), 3);
    let all = rw.closure(&Gen::ALL, 4).unwrap();
    assert_eq!(all.dim(), 9);
    assert_eq!(all.certified_at(), 2);
}

#[test]
fn involutions_square_to_identity() {
    assert!(Rewriter::generic().involution_defects(3, Exec::Parallel).is_empty());
}

#[test]
fn normalization_is_confluent_on_short_words() {
    assert!(Rewriter::generic().confluence_defects(3, Exec::Parallel).is_empty());
}

#[test]
fn transport_is_consistent_exactly_at_beta_one_half() {
    let generic = Rewriter::generic();
    assert!(!generic.transport_defects(Exec::Parallel).is_empty());
    assert!(!generic.gram_asymmetries(Exec::Parallel).is_empty());
    let h = half();
    assert!(h.transport_defects(Exec::Parallel).is_empty());
    assert!(h.gram_asymmetries(Exec::Parallel).is_empty());
}

#[test]
fn direction_dependence_carries_the_beta_factor() {
    let two_beta_minus_one = &(&Scalar::from_int(2) * &sym::beta()) - &Scalar::one();
    for (_, _, d) in Rewriter::generic().gram_asymmetries(Exec::Parallel) {
        assert!((&d / &two_beta_minus_one).specialize(&[(Var::Beta, rat(1, 2))]).is_ok());
    }
}

#[test]
fn specialized_rewriter_rejects_coincident_eigenvalues() {
    let p = ThreeGenParams::generic()
        .specialize(&[(Var::Alpha, rat(1, 3)), (Var::Beta, rat(1, 3))])
        .unwrap();
    assert!(Rewriter::new(p).is_err());
}
