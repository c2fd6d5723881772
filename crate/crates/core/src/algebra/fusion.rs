//! Axis certification against the fusion law J(alpha, beta).

use std::fmt;

use thiserror::Error;

use super::linalg::{Genericity, Matrix};
use super::{AlgebraPresentation, Element};
use crate::scalar::{Polynomial, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Eigen {
    One,
    Alpha,
    Beta,
}

impl Eigen {
    pub const ALL: [Eigen; 3] = [Eigen::One, Eigen::Alpha, Eigen::Beta];

    pub fn name(self) -> &'static str {
        match self {
            Eigen::One => "1",
            Eigen::Alpha => "alpha",
            Eigen::Beta => "beta",
        }
    }
}

impl fmt::Display for Eigen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The law `1*l = l`, `alpha*alpha = {1, alpha}`, `alpha*beta = beta`,
/// `beta*beta = {1, alpha}`. The strict variant has `alpha*alpha = {1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionLaw {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub strict_alpha: bool,
}

impl FusionLaw {
    pub fn new(alpha: Scalar, beta: Scalar) -> Self {
        FusionLaw {
            alpha,
            beta,
            strict_alpha: false,
        }
    }

    pub fn symbolic() -> Self {
        FusionLaw::new(crate::scalar::sym::alpha(), crate::scalar::sym::beta())
    }

    pub fn strict(mut self) -> Self {
        self.strict_alpha = true;
        self
    }

    pub fn value(&self, e: Eigen) -> Scalar {
        match e {
            Eigen::One => Scalar::one(),
            Eigen::Alpha => self.alpha.clone(),
            Eigen::Beta => self.beta.clone(),
        }
    }

    pub fn allowed(&self, l: Eigen, m: Eigen) -> &'static [Eigen] {
        use Eigen::*;
        let (l, m) = if l <= m { (l, m) } else { (m, l) };
        match (l, m) {
            (One, One) => &[One],
            (One, Alpha) => &[Alpha],
            (One, Beta) => &[Beta],
            (Alpha, Alpha) if self.strict_alpha => &[One],
            (Alpha, Alpha) => &[One, Alpha],
            (Alpha, Beta) => &[Beta],
            (Beta, Beta) => &[One, Alpha],
            _ => unreachable!(),
        }
    }

    fn distinct(&self) -> bool {
        let one = Scalar::one();
        self.alpha != self.beta && self.alpha != one && self.beta != one
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub lhs: Eigen,
    pub rhs: Eigen,
    /// Component of the product lying outside `A_{lhs * rhs}`.
    pub component: Element,
}

#[derive(Clone, Debug)]
pub struct FusionReport {
    pub eigenvalues_found: Vec<Scalar>,
    /// Dimensions of `A_1`, `A_alpha`, `A_beta` in that order.
    pub eigenspace_dims: [usize; 3],
    pub eigenbasis: Vec<(Eigen, Vec<Element>)>,
    pub primitive: bool,
    pub violations: Vec<Violation>,
    /// Primitive numerators whose vanishing removes the violations.
    pub constraints: Vec<Polynomial>,
    pub genericity: Genericity,
}

impl FusionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_certified(&self) -> bool {
        self.holds() && self.primitive
    }

    pub fn eigenvectors(&self, e: Eigen) -> &[Element] {
        self.eigenbasis
            .iter()
            .find(|(k, _)| *k == e)
            .map(|(_, v)| v.as_slice())
            .unwrap_or(&[])
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FusionError {
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("eigenvalues 1, alpha, beta are not distinct")]
    CoincidentEigenvalues,
    #[error("eigenspaces have dimensions {dims:?} but the algebra has dimension {dim}")]
    EigenDefect { dims: [usize; 3], dim: usize },
}

/// Decomposes the algebra under `ad_a` and checks every containment of the law.
pub fn check_axis(
    alg: &AlgebraPresentation,
    a: &Element,
    law: &FusionLaw,
) -> Result<FusionReport, FusionError> {
    if !law.distinct() {
        return Err(FusionError::CoincidentEigenvalues);
    }
    if !alg.is_idempotent(a) {
        return Err(FusionError::NotIdempotent);
    }
    let n = alg.dim();
    let mut genericity = Genericity::default();
    let mut eigenbasis = Vec::new();
    let mut dims = [0usize; 3];
    let mut found = Vec::new();
    for (k, e) in Eigen::ALL.into_iter().enumerate() {
        let (vs, g) = alg.eigenspace(a, &law.value(e));
        genericity.extend(&g);
        dims[k] = vs.len();
        if !vs.is_empty() {
            found.push(law.value(e));
        }
        eigenbasis.push((e, vs));
    }
    if dims.iter().sum::<usize>() != n {
        return Err(FusionError::EigenDefect { dims, dim: n });
    }

    // Coordinates relative to the eigenbasis; column k of `p` is the k-th eigenvector.
    let mut cols = Vec::with_capacity(n);
    let mut owner = Vec::with_capacity(n);
    for (e, vs) in &eigenbasis {
        for v in vs {
            cols.push(v.coeffs().to_vec());
            owner.push(*e);
        }
    }
    let p = Matrix::from_columns(&cols);

    let mut violations = Vec::new();
    let mut constraints: Vec<Polynomial> = Vec::new();
    for (i, l) in Eigen::ALL.into_iter().enumerate() {
        for m in Eigen::ALL.into_iter().skip(i) {
            let allowed = law.allowed(l, m);
            for u in eigenbasis[l as usize].1.iter() {
                for v in eigenbasis[m as usize].1.iter() {
                    let w = alg.multiply(u, v);
                    if w.is_zero() {
                        continue;
                    }
                    let coords = p.solve(w.coeffs()).expect("eigenbasis spans the algebra");
                    let mut bad = Element::zero(n);
                    for (k, c) in coords.iter().enumerate() {
                        if c.is_zero() || allowed.contains(&owner[k]) {
                            continue;
                        }
                        bad = bad.add_scaled(c, &Element::new(cols[k].clone()));
                        let num = c.numer().primitive_part();
                        if !constraints.contains(&num) {
                            constraints.push(num);
                        }
                    }
                    if !bad.is_zero() {
                        violations.push(Violation {
                            lhs: l,
                            rhs: m,
                            component: bad,
                        });
                    }
                }
            }
        }
    }
    Ok(FusionReport {
        eigenvalues_found: found,
        eigenspace_dims: dims,
        eigenbasis,
        primitive: dims[0] == 1,
        violations,
        constraints,
        genericity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sym::*;

    fn two_dim(k: Scalar) -> AlgebraPresentation {
        let mut a = AlgebraPresentation::with_labels(&["a", "b"]);
        a.set_product(0, 0, a.basis(0));
        a.set_product(1, 1, a.basis(1));
        a.set_product(0, 1, Element::new(vec![k.clone(), k]));
        a
    }

    #[test]
    fn alpha_family_has_no_violations() {
        let a = two_dim(alpha());
        let r = check_axis(&a, &a.basis(0), &FusionLaw::symbolic()).unwrap();
        assert!(r.is_certified());
        assert_eq!(r.eigenspace_dims, [1, 1, 0]);
        assert!(r.constraints.is_empty());
    }

    #[test]
    fn beta_family_constraint() {
        let a = two_dim(beta());
        let r = check_axis(&a, &a.basis(0), &FusionLaw::symbolic()).unwrap();
        assert_eq!(r.constraints.len(), 1);
        let expected: Scalar = "2*beta^2 + beta - 1".parse().unwrap();
        assert!(r.constraints[0].associated(expected.numer()));
    }

    #[test]
    fn rejects_non_idempotent_and_coincident_law() {
        let a = two_dim(alpha());
        let u = Element::new(vec![int(2), int(0)]);
        assert_eq!(
            check_axis(&a, &u, &FusionLaw::symbolic()).unwrap_err(),
            FusionError::NotIdempotent
        );
        let law = FusionLaw::new(alpha(), alpha());
        assert_eq!(
            check_axis(&a, &a.basis(0), &law).unwrap_err(),
            FusionError::CoincidentEigenvalues
        );
    }

    #[test]
    fn eigen_defect_is_reported() {
        // ab = 2a has ad_a eigenvalues 1 and 0 only.
        let mut a = AlgebraPresentation::with_labels(&["a", "b"]);
        a.set_product(0, 0, a.basis(0));
        a.set_product(1, 1, a.basis(1));
        a.set_product(0, 1, a.basis(0).scale(&int(2)));
        let law = FusionLaw::new(q(1, 3), q(1, 5));
        assert!(matches!(
            check_axis(&a, &a.basis(0), &law),
            Err(FusionError::EigenDefect { .. })
        ));
    }
}
