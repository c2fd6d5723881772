//! The generic algebra generated by two primitive axes, on the basis `a, b, ab`,
//! and the classification results built on it.

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::linalg::{resultant, Matrix};
use crate::algebra::{
    check_axis, AlgebraPresentation, AssociationDefect, Element, FrobeniusForm,
    FusionError, FusionLaw, FusionReport,
};
use crate::par::Exec;
use crate::scalar::{content_factors, rational_roots, sym, Polynomial, Scalar, ScalarError, Var};

pub const A: usize = 0;
pub const B: usize = 1;
pub const AB: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct TwoGenParams {
    pub law: FusionLaw,
    /// `(a, b)`: the coefficient of `a` in the decomposition of `b` under `ad_a`.
    pub x: Scalar,
    /// The coefficient of `b` in the decomposition of `a` under `ad_b`.
    pub y: Scalar,
    /// Impose `y = x`.
    pub star: bool,
}

impl TwoGenParams {
    /// Symbolic `alpha, beta, x, y` with `x` and `y` independent.
    pub fn generic() -> Self {
        TwoGenParams {
            law: FusionLaw::symbolic(),
            x: sym::x(),
            y: sym::y(),
            star: false,
        }
    }

    /// Symbolic `alpha, beta, x` with `y = x`.
    pub fn star() -> Self {
        TwoGenParams {
            y: sym::x(),
            star: true,
            ..TwoGenParams::generic()
        }
    }

    pub fn with_law(mut self, law: FusionLaw) -> Self {
        self.law = law;
        self
    }

    pub fn with_x(mut self, x: Scalar) -> Self {
        if self.star {
            self.y = x.clone();
        }
        self.x = x;
        self
    }

    pub fn with_y(mut self, y: Scalar) -> Self {
        self.y = y;
        self.star = false;
        self
    }

    fn alpha(&self) -> &Scalar {
        &self.law.alpha
    }

    fn beta(&self) -> &Scalar {
        &self.law.beta
    }
}

/// Which idempotency identity determines `(ab)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// `tau_a(b)^2 = tau_a(b)`.
    ViaA,
    /// `tau_b(a)^2 = tau_b(a)`.
    ViaB,
}

fn el(c: [Scalar; 3]) -> Element {
    Element::new(c.to_vec())
}

/// The presentation with every product known except `(ab)^2`, which is left zero.
fn skeleton(p: &TwoGenParams) -> AlgebraPresentation {
    let (al, be) = (p.alpha(), p.beta());
    let one = Scalar::one();
    let k = &(al - &one) * &(be - &one);
    let mut alg = AlgebraPresentation::with_labels(&["a", "b", "ab"]);
    alg.set_product(A, A, alg.basis(A));
    alg.set_product(B, B, alg.basis(B));
    alg.set_product(A, B, alg.basis(AB));
    alg.set_product(A, AB, el([&k * &p.x, -(al * be), al + be]));
    alg.set_product(B, AB, el([-(al * be), &k * &p.y, al + be]));
    alg
}

/// `tau_a(b) = (2x(alpha-1)a - (alpha+beta)b + 2ab)/(alpha-beta)`.
pub fn tau_a_of_b(p: &TwoGenParams) -> Element {
    let (al, be) = (p.alpha(), p.beta());
    let d = al - be;
    el([
        &(&Scalar::from_int(2) * &p.x) * &(al - &Scalar::one()),
        -(al + be),
        Scalar::from_int(2),
    ])
    .scale(&Scalar::one().checked_div(&d).expect("alpha != beta"))
}

/// `tau_b(a)`, the mirror image of [`tau_a_of_b`].
pub fn tau_b_of_a(p: &TwoGenParams) -> Element {
    let (al, be) = (p.alpha(), p.beta());
    let d = al - be;
    el([
        -(al + be),
        &(&Scalar::from_int(2) * &p.y) * &(al - &Scalar::one()),
        Scalar::from_int(2),
    ])
    .scale(&Scalar::one().checked_div(&d).expect("alpha != beta"))
}

/// `(ab)^2` solved from the idempotency of `tau_a(b)` or `tau_b(a)`.
pub fn solve_ab_squared(p: &TwoGenParams, route: Route) -> Element {
    let s = skeleton(p);
    let t = match route {
        Route::ViaA => tau_a_of_b(p),
        Route::ViaB => tau_b_of_a(p),
    };
    let c = t.coeff(AB).clone();
    let t0 = s.square(&t);
    (&t - &t0).scale(&(&c * &c).recip().expect("nonzero ab coefficient"))
}

/// The generic presentation, with `(ab)^2` from `tau_a(b)^2 = tau_a(b)`.
pub fn build_generic_2gen(p: &TwoGenParams) -> AlgebraPresentation {
    build_with_route(p, Route::ViaA)
}

pub fn build_with_route(p: &TwoGenParams, route: Route) -> AlgebraPresentation {
    let mut alg = skeleton(p);
    alg.set_product(AB, AB, solve_ab_squared(p, route));
    alg
}

/// The printed expansion of `4(ab)^2`, read with balanced parentheses.
pub fn transcribed_four_ab_squared(p: &TwoGenParams) -> Element {
    let (al, be) = (p.alpha(), p.beta());
    let (x, y) = (&p.x, &p.y);
    let one = Scalar::one();
    let c = Scalar::from_int;
    let am1 = al - &one;
    let bm1 = be - &one;
    let s = al + be;
    let d = al - be;
    let a_coef = &(&(&(&c(2) * x) * &d) * &am1)
        - &(&(&(&c(4) * &am1.pow(2)) * &(&(&c(2) * be) - &one)) * &x.pow(2))
        - &(&(&(&c(4) * al) * be) * &s);
    let inner = &(&s.pow(2) - &(&(&(&c(8) * x) * &am1) * &(al * be)))
        - &(&(&(&(&c(4) * &s) * &am1) * &bm1) * y);
    let b_coef = &(-&(&s * &d)) - &inner;
    let ab_coef = &(&(&c(2) * &d) - &(&(&(&c(4) * x) * &am1) * &s)) + &(&c(4) * &s.pow(2));
    el([a_coef, b_coef, ab_coef])
}

/// `4 * derived - transcribed`; zero when the printed expansion is right.
pub fn ab_squared_discrepancy(p: &TwoGenParams) -> Element {
    &solve_ab_squared(p, Route::ViaA).scale(&Scalar::from_int(4)) - &transcribed_four_ab_squared(p)
}

/// `(v_alpha, v_beta)` for `ad_a`.
pub fn eigenvectors_2gen(p: &TwoGenParams) -> (Element, Element) {
    let (al, be) = (p.alpha(), p.beta());
    let one = Scalar::one();
    (
        el([&(be - &one) * &p.x, -be.clone(), one.clone()]),
        el([&(al - &one) * &p.x, -al.clone(), one]),
    )
}

/// `(v'_alpha, v'_beta)` for `ad_b`.
pub fn eigenvectors_2gen_b(p: &TwoGenParams) -> (Element, Element) {
    let (al, be) = (p.alpha(), p.beta());
    let one = Scalar::one();
    (
        el([-be.clone(), &(be - &one) * &p.y, one.clone()]),
        el([-al.clone(), &(al - &one) * &p.y, one]),
    )
}

/// Decomposition of an element under `ad_a` into its 1-, alpha- and beta-parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub one: Element,
    pub alpha: Element,
    pub beta: Element,
}

pub fn decompose(
    alg: &AlgebraPresentation,
    law: &FusionLaw,
    axis: &Element,
    u: &Element,
) -> Result<Decomposition, FusionError> {
    let report = check_axis(alg, axis, law)?;
    Ok(decompose_with(&report, u))
}

fn decompose_with(report: &FusionReport, u: &Element) -> Decomposition {
    let n = u.dim();
    let mut cols = Vec::new();
    let mut owner = Vec::new();
    for (e, vs) in &report.eigenbasis {
        for v in vs {
            cols.push(v.coeffs().to_vec());
            owner.push(*e);
        }
    }
    let coords = Matrix::from_columns(&cols)
        .solve(u.coeffs())
        .expect("eigenbasis spans the algebra");
    let mut parts = [Element::zero(n), Element::zero(n), Element::zero(n)];
    for (k, c) in coords.iter().enumerate() {
        let slot = owner[k] as usize;
        parts[slot] = parts[slot].add_scaled(c, &Element::new(cols[k].clone()));
    }
    let [one, alpha, beta] = parts;
    Decomposition { one, alpha, beta }
}

/// The scalar `s` with `u = s * v`, if there is one.
fn ratio(u: &Element, v: &Element) -> Option<Scalar> {
    let i = v.coeffs().iter().position(|c| !c.is_zero())?;
    let s = u.coeff(i) / v.coeff(i);
    (v.scale(&s) == *u).then_some(s)
}

/// The coefficient `x` in `u = x * axis + u_alpha + u_beta` for a primitive axis.
pub fn projection_coefficient(
    alg: &AlgebraPresentation,
    law: &FusionLaw,
    axis: &Element,
    u: &Element,
) -> Result<Scalar, FusionError> {
    let d = decompose(alg, law, axis, u)?;
    Ok(ratio(&d.one, axis).expect("primitive axis"))
}

/// `tau_a(u) = (2(a,u)(alpha-1)a - (alpha+beta)u + 2au)/(alpha-beta)`.
pub fn miyamoto(
    alg: &AlgebraPresentation,
    law: &FusionLaw,
    form: &FrobeniusForm,
    a: &Element,
    u: &Element,
) -> Result<Element, ScalarError> {
    let (al, be) = (&law.alpha, &law.beta);
    let two = Scalar::from_int(2);
    let au = form.pair(a, u);
    let num = a
        .scale(&(&(&two * &au) * &(al - &Scalar::one())))
        .add_scaled(&-(al + be), u)
        .add_scaled(&two, &alg.multiply(a, u));
    Ok(num.scale(&Scalar::one().checked_div(&(al - be))?))
}

/// `tau_a(u) = u_+ - u_-` from the eigenspace decomposition.
pub fn miyamoto_by_decomposition(
    alg: &AlgebraPresentation,
    law: &FusionLaw,
    a: &Element,
    u: &Element,
) -> Result<Element, FusionError> {
    let d = decompose(alg, law, a, u)?;
    Ok(u.add_scaled(&Scalar::from_int(-2), &d.beta))
}

#[derive(Debug, Error)]
pub enum FrobeniusError {
    #[error("the form is only defined under the star condition")]
    NotStar,
    #[error("associativity fails on {} basis triples, first {:?} with residual {}", .defects.len(), .defects[0].triple, .defects[0].residual)]
    Association {
        form: FrobeniusForm,
        defects: Vec<AssociationDefect>,
    },
}

/// The form with `(a,a) = (b,b) = 1` and `(a,b) = x`, extended by associativity,
/// without verifying it.
pub fn frobenius_candidate(alg: &AlgebraPresentation, p: &TwoGenParams) -> FrobeniusForm {
    let x = &p.x;
    let one = Scalar::one();
    // (a, v) for v in the span of a, b, ab, using (a, ab) = (aa, b) = x.
    let with_a = |v: &Element| -> Scalar { v.coeff(A) + &(x * &(v.coeff(B) + v.coeff(AB))) };
    let abab = with_a(alg.product(B, AB));
    FrobeniusForm::new(Matrix::from_rows(vec![
        vec![one.clone(), x.clone(), x.clone()],
        vec![x.clone(), one, x.clone()],
        vec![x.clone(), x.clone(), abab],
    ]))
}

/// The unique Frobenius form, verified on every basis triple.
pub fn frobenius_gram(alg: &AlgebraPresentation, p: &TwoGenParams) -> Result<FrobeniusForm, FrobeniusError> {
    if !p.star || p.x != p.y {
        return Err(FrobeniusError::NotStar);
    }
    let form = frobenius_candidate(alg, p);
    let defects = form.association_defects(alg, Exec::Parallel);
    if defects.is_empty() {
        Ok(form)
    } else {
        Err(FrobeniusError::Association { form, defects })
    }
}

/// Global assumptions: `alpha != beta`, `alpha != 1`, `beta != 1`.
fn is_assumption_factor(f: &Polynomial, law: &FusionLaw) -> bool {
    if f.is_constant() {
        return true;
    }
    let one = Scalar::one();
    [&law.alpha - &law.beta, &law.alpha - &one, &law.beta - &one]
        .iter()
        .any(|g| g.denom().is_one() && !g.is_constant() && g.numer().associated(f))
}

/// Distinct irreducible-looking factors of the numerators, minus the global assumptions.
pub fn constraint_factors(ps: &[Polynomial], law: &FusionLaw) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for p in ps {
        for f in content_factors(p).distinct() {
            if !is_assumption_factor(&f, law) && !out.contains(&f) {
                out.push(f);
            }
        }
    }
    out.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    out
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PreconditionError {
    #[error("the star condition is required")]
    NotStar,
    #[error("alpha = 1 contradicts the distinctness of the eigenvalues")]
    AlphaIsOne,
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

#[derive(Clone, Debug)]
pub struct FusionResiduals2 {
    /// `(ab)^2` via `tau_a(b)` minus `(ab)^2` via `tau_b(a)`.
    pub route_difference: Element,
    pub det_alpha: Scalar,
    pub det_beta: Scalar,
    pub axis_a: FusionReport,
    pub axis_b: FusionReport,
    /// Primitive numerators of every residual above.
    pub polynomials: Vec<Polynomial>,
}

impl FusionResiduals2 {
    /// The `a`-coefficient of the route difference.
    pub fn route_residual(&self) -> &Scalar {
        self.route_difference.coeff(A)
    }

    pub fn factors(&self, law: &FusionLaw) -> Vec<Polynomial> {
        constraint_factors(&self.polynomials, law)
    }

    pub fn all_vanish(&self) -> bool {
        self.polynomials.is_empty()
    }
}

fn det3(a: &Element, b: &Element, c: &Element) -> Scalar {
    Matrix::from_columns(&[a.coeffs().to_vec(), b.coeffs().to_vec(), c.coeffs().to_vec()])
        .determinant()
        .0
}

pub fn fusion_residuals_2gen(p: &TwoGenParams) -> Result<FusionResiduals2, PreconditionError> {
    if !p.star || p.x != p.y {
        return Err(PreconditionError::NotStar);
    }
    let alg = build_generic_2gen(p);
    let route_difference = &solve_ab_squared(p, Route::ViaA) - &solve_ab_squared(p, Route::ViaB);
    let (va, vb) = eigenvectors_2gen(p);
    let a = alg.basis(A);
    let det_alpha = det3(&a, &va, &alg.square(&va));
    let det_beta = det3(&a, &va, &alg.square(&vb));
    let axis_a = check_axis(&alg, &a, &p.law)?;
    let axis_b = check_axis(&alg, &alg.basis(B), &p.law)?;
    let mut polynomials: Vec<Polynomial> = Vec::new();
    let scalars = route_difference
        .coeffs()
        .iter()
        .chain([&det_alpha, &det_beta])
        .filter(|s| !s.is_zero())
        .map(|s| s.numer().primitive_part());
    for q in scalars.chain(axis_a.constraints.iter().cloned()).chain(axis_b.constraints.iter().cloned()) {
        if !polynomials.contains(&q) {
            polynomials.push(q);
        }
    }
    Ok(FusionResiduals2 {
        route_difference,
        det_alpha,
        det_beta,
        axis_a,
        axis_b,
        polynomials,
    })
}

/// The 2-dimensional algebra on `a, b` with `ab = ka*a + kb*b`.
pub fn two_dim_algebra(ka: &Scalar, kb: &Scalar) -> AlgebraPresentation {
    let mut alg = AlgebraPresentation::with_labels(&["a", "b"]);
    alg.set_product(A, A, alg.basis(A));
    alg.set_product(B, B, alg.basis(B));
    alg.set_product(A, B, Element::new(vec![ka.clone(), kb.clone()]));
    alg
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductRule {
    /// `ab = alpha(a + b)`.
    AlphaSum,
    /// `ab = beta(a + b)`.
    BetaSum,
}

impl fmt::Display for ProductRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductRule::AlphaSum => f.write_str("ab = alpha*(a + b)"),
            ProductRule::BetaSum => f.write_str("ab = beta*(a + b)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwoDimFamily {
    pub rule: ProductRule,
    pub algebra: AlgebraPresentation,
    /// `(a, b)`, read off the decomposition of `b` under `ad_a`.
    pub x: Scalar,
    pub constraints: Vec<Polynomial>,
    /// Rational roots of the univariate constraints.
    pub roots: Vec<(Var, BigRational)>,
    /// Constraints left without rational roots.
    pub irreducible: Vec<Polynomial>,
    pub report_a: FusionReport,
    pub report_b: FusionReport,
}

pub fn classify_2dim(law: &FusionLaw) -> Result<Vec<TwoDimFamily>, FusionError> {
    let mut out = Vec::new();
    for (rule, k) in [
        (ProductRule::AlphaSum, &law.alpha),
        (ProductRule::BetaSum, &law.beta),
    ] {
        let alg = two_dim_algebra(k, k);
        let a = alg.basis(A);
        let b = alg.basis(B);
        let report_a = check_axis(&alg, &a, law)?;
        let report_b = check_axis(&alg, &b, law)?;
        let mut constraints = Vec::new();
        for c in report_a.constraints.iter().chain(&report_b.constraints) {
            if !constraints.contains(c) {
                constraints.push(c.clone());
            }
        }
        let mut roots = Vec::new();
        let mut irreducible = Vec::new();
        for f in constraint_factors(&constraints, law) {
            match f.is_univariate() {
                Some(v) => {
                    let rs = rational_roots(&f);
                    if rs.is_empty() {
                        irreducible.push(f);
                    }
                    roots.extend(rs.into_iter().map(|r| (v, r)));
                }
                None => irreducible.push(f),
            }
        }
        roots.sort();
        roots.dedup();
        let x = ratio(&decompose_with(&report_a, &b).one, &a).expect("primitive axis");
        out.push(TwoDimFamily {
            rule,
            algebra: alg,
            x,
            constraints,
            roots,
            irreducible,
            report_a,
            report_b,
        });
    }
    Ok(out)
}

/// The 2-dimensional algebra with `ab = alpha a + beta b` that violates the star condition.
#[derive(Clone, Debug)]
pub struct StarException {
    pub algebra: AlgebraPresentation,
    pub x: Scalar,
    pub y: Scalar,
    pub x_formula: Scalar,
    pub y_formula: Scalar,
    pub report_a: FusionReport,
    pub report_b: FusionReport,
}

impl StarException {
    pub fn certified(&self) -> bool {
        self.report_a.is_certified() && self.report_b.is_certified()
    }

    pub fn formulas_agree(&self) -> bool {
        self.x == self.x_formula && self.y == self.y_formula
    }

    pub fn violates_star(&self) -> bool {
        self.x != self.y
    }
}

/// Returns the exceptional algebra when `2 alpha beta + beta - 1 = 0`.
pub fn star_exception(law: &FusionLaw) -> Result<Option<StarException>, FusionError> {
    let (al, be) = (&law.alpha, &law.beta);
    let one = Scalar::one();
    let two = Scalar::from_int(2);
    let cond = &(&(&(&two * al) * be) + be) - &one;
    if !cond.is_zero() {
        return Ok(None);
    }
    let alg = two_dim_algebra(al, be);
    let a = alg.basis(A);
    let b = alg.basis(B);
    let report_a = check_axis(&alg, &a, law)?;
    let report_b = check_axis(&alg, &b, law)?;
    let x = ratio(&decompose_with(&report_a, &b).one, &a).expect("primitive axis");
    let y = ratio(&decompose_with(&report_b, &a).one, &b).expect("primitive axis");
    let t = &(&two * al) + &one;
    Ok(Some(StarException {
        algebra: alg,
        x,
        y,
        x_formula: &t / &two,
        y_formula: -(&(al - &one) * &t).recip().map_err(|_| FusionError::CoincidentEigenvalues)?,
        report_a,
        report_b,
    }))
}

/// `Res_beta(alpha(alpha-1) - beta(beta-1), 2 alpha beta + beta - 1)`.
pub fn exclusivity_resultant() -> Polynomial {
    let (f1, f2) = exclusivity_system();
    resultant(&f1, &f2, Var::Beta)
}

fn exclusivity_system() -> (Polynomial, Polynomial) {
    let f1: Scalar = "alpha*(alpha - 1) - beta*(beta - 1)".parse().expect("literal");
    let f2: Scalar = "2*alpha*beta + beta - 1".parse().expect("literal");
    (f1.numer().clone(), f2.numer().clone())
}

/// Rational solutions `(alpha, beta)` of the exclusivity system, sorted.
pub fn exclusivity_solutions() -> Vec<(BigRational, BigRational)> {
    let (f1, f2) = exclusivity_system();
    let res = exclusivity_resultant();
    let mut out = Vec::new();
    for al in rational_roots(&res) {
        let g = f2.substitute(&[(Var::Alpha, al.clone())]);
        let c = g.coefficients_in(Var::Beta);
        if c.len() < 2 {
            continue;
        }
        let lead = c[1].constant_value().expect("constant");
        let tail = c[0].constant_value().expect("constant");
        let be = -tail / lead;
        let check = f1.evaluate(&[(Var::Alpha, al.clone()), (Var::Beta, be.clone())]);
        if check.map(|v| v == BigRational::from_integer(0.into())).unwrap_or(false) {
            out.push((al, be));
        }
    }
    out.sort();
    out
}

/// The beta-coordinate of `v_alpha^2` in the basis `a, v_alpha, v_beta` of the star model.
pub fn beta_part_of_valpha_squared(p: &TwoGenParams) -> Scalar {
    let alg = build_generic_2gen(p);
    let (va, vb) = eigenvectors_2gen(p);
    let basis = Matrix::from_columns(&[
        alg.basis(A).into_coeffs(),
        va.coeffs().to_vec(),
        vb.coeffs().to_vec(),
    ]);
    let c = basis.solve(alg.square(&va).coeffs()).expect("eigenbasis");
    c[2].clone()
}

fn conditions_at(xv: i64) -> Vec<Polynomial> {
    let law = FusionLaw::symbolic();
    let p = TwoGenParams::star().with_x(Scalar::from_int(xv));
    let main = beta_part_of_valpha_squared(&p);
    // The branch b_beta = 0 is the 2-dimensional family ab = alpha(a + b).
    let fam = classify_2dim(&law).expect("symbolic law");
    let x_alpha = &fam[0].x;
    let branch = x_alpha - &Scalar::from_int(xv);
    let mut ps = Vec::new();
    for s in [main, branch] {
        if !s.is_zero() {
            ps.push(s.numer().clone());
        }
    }
    constraint_factors(&ps, &law)
}

/// Conditions for a baric algebra, i.e. all `(a, b) = 1`.
pub fn baric_conditions() -> Vec<Polynomial> {
    conditions_at(1)
}

/// Conditions for a flat algebra, i.e. all `(a, b) = 0` for distinct axes.
pub fn flat_conditions() -> Vec<Polynomial> {
    conditions_at(0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionValues {
    /// `(d_alpha, f_alpha)`.
    pub alpha: Scalar,
    /// `(d_beta, f_beta)`.
    pub beta: Scalar,
}

/// Form values between the alpha- and beta-parts of `d = gamma a + ...` and
/// `f = epsilon a + ...`, given `(d, f)` and `(a, df)`.
pub fn projection_form_values(
    law: &FusionLaw,
    gamma: &Scalar,
    epsilon: &Scalar,
    df: &Scalar,
    a_df: &Scalar,
) -> ProjectionValues {
    ProjectionValues {
        alpha: psi(law, &law.beta, gamma, epsilon, df, a_df),
        beta: -psi(law, &law.alpha, gamma, epsilon, df, a_df),
    }
}

/// `(gamma epsilon (t-1) - t(d,f) + (a,df))/(alpha-beta)`.
fn psi(law: &FusionLaw, t: &Scalar, gamma: &Scalar, epsilon: &Scalar, df: &Scalar, a_df: &Scalar) -> Scalar {
    let ge = gamma * epsilon;
    let num = &(&(&ge * &(t - &Scalar::one())) - &(t * df)) + a_df;
    &num / &(&law.alpha - &law.beta)
}

/// Which coefficient of `a` to use in the associator relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssociatorCoefficient {
    /// `(1-3a-2b+4ab)ge + a(a-2b+1)Psi(b) - b(1-a)Psi(a)`, from expanding both sides.
    Derived,
    /// `(1-3a-2b-4ab)ge + (a-2b+1)Psi(b) - b(1-a)Psi(a)`, as printed.
    Printed,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssociatorError {
    #[error("d_alpha f_alpha has a component outside <a>: {0:?}")]
    HypothesisViolated(Element),
}

/// `a(df) + d(af) + f(da)` minus the right-hand side of the associator relation.
pub fn associator_residual(
    alg: &AlgebraPresentation,
    law: &FusionLaw,
    form: &FrobeniusForm,
    a: &Element,
    d: &Element,
    f: &Element,
    coefficient: AssociatorCoefficient,
) -> Result<Element, AssociatorError> {
    let (al, be) = (&law.alpha, &law.beta);
    let one = Scalar::one();
    let two = Scalar::from_int(2);
    let gamma = form.pair(a, d);
    let epsilon = form.pair(a, f);
    let m = |u: &Element, v: &Element| alg.multiply(u, v);

    let alpha_part = |u: &Element, c: &Scalar| -> Element {
        a.scale(&(c * &(be - &one)))
            .add_scaled(&-be.clone(), u)
            .add_scaled(&one, &m(a, u))
            .scale(&(al - be).recip().expect("alpha != beta"))
    };
    let da = alpha_part(d, &gamma);
    let fa = alpha_part(f, &epsilon);
    let w = m(&da, &fa);
    let outside = w.add_scaled(&-form.pair(a, &w), a);
    if !outside.is_zero() {
        return Err(AssociatorError::HypothesisViolated(outside));
    }

    let df = m(d, f);
    let af = m(a, f);
    let ad = m(a, d);
    let lhs = &(&m(a, &df) + &m(d, &af)) + &m(f, &ad);

    let dfv = form.pair(d, f);
    let adf = form.pair(a, &df);
    let p_beta = psi(law, be, &gamma, &epsilon, &dfv, &adf);
    let p_alpha = psi(law, al, &gamma, &epsilon, &dfv, &adf);
    let ab = al * be;
    let base = &(&(&one - &(&Scalar::from_int(3) * al)) - &(&two * be)) + &Scalar::zero();
    let (c0, c1) = match coefficient {
        AssociatorCoefficient::Derived => (&base + &(&Scalar::from_int(4) * &ab), al * &(&(al - &(&two * be)) + &one)),
        AssociatorCoefficient::Printed => (&base - &(&Scalar::from_int(4) * &ab), &(al - &(&two * be)) + &one),
    };
    let k = &(&(&c0 * &(&gamma * &epsilon)) + &(&c1 * &p_beta)) - &(&(be * &(&one - al)) * &p_alpha);
    let two_ab = &two * &ab;
    let one_plus = &one + al;
    let rhs = df
        .scale(&(al + &(&two * be)))
        .add_scaled(&gamma, &(&af.scale(&one_plus) - &f.scale(&two_ab)))
        .add_scaled(&epsilon, &(&ad.scale(&one_plus) - &d.scale(&two_ab)))
        .add_scaled(&k, a);
    Ok(&lhs - &rhs)
}

/// `a(xy) - (ax)y` for `y` spanning `A_alpha(a)` and `x = lambda a`, as a multiple of `y`.
pub fn seress_residual(alpha: &Scalar) -> Result<Scalar, PreconditionError> {
    if alpha.is_one() {
        return Err(PreconditionError::AlphaIsOne);
    }
    let alg = two_dim_algebra(alpha, alpha);
    let a = alg.basis(A);
    let (ys, _) = alg.eigenspace(&a, alpha);
    let y = ys.into_iter().next().expect("alpha-eigenvector");
    let xv = a.scale(&Scalar::var(Var::Lambda));
    let lhs = alg.multiply(&a, &alg.multiply(&xv, &y));
    let rhs = alg.multiply(&alg.multiply(&a, &xv), &y);
    Ok(ratio(&(&lhs - &rhs), &y).expect("residual is a multiple of y"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sym::*;

    #[test]
    fn a_times_ab_matches_formula_at_a_point() {
        let p = TwoGenParams::generic().with_law(FusionLaw::new(int(2), int(3))).with_x(int(1));
        let alg = build_generic_2gen(&p);
        assert_eq!(alg.product(A, AB), &el([int(2), int(-6), int(5)]));
    }

    #[test]
    fn transcribed_expansion_agrees_with_derivation() {
        assert!(ab_squared_discrepancy(&TwoGenParams::generic()).is_zero());
    }

    #[test]
    fn tau_is_an_involution_on_the_star_model() {
        let p = TwoGenParams::star();
        let alg = build_generic_2gen(&p);
        let form = frobenius_candidate(&alg, &p);
        let a = alg.basis(A);
        let b = alg.basis(B);
        let t = miyamoto(&alg, &p.law, &form, &a, &b).unwrap();
        assert_eq!(t, tau_a_of_b(&p));
        let back = miyamoto(&alg, &p.law, &form, &a, &t).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn seress_at_zero() {
        assert!(seress_residual(&int(0)).unwrap().is_zero());
        assert_eq!(seress_residual(&int(1)), Err(PreconditionError::AlphaIsOne));
    }

    #[test]
    fn exclusivity_resultant_factors() {
        let r = exclusivity_resultant();
        let expected: Scalar = "alpha*(alpha + 1)*(2*alpha - 1)^2".parse().unwrap();
        assert!(r.associated(expected.numer()), "got {}", r);
    }
}
