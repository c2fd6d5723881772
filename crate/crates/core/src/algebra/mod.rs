//! Commutative non-associative algebras given by structure constants.

pub mod form;
pub mod fusion;
pub mod linalg;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Scalar, Var};
use crate::scalar::{ParseError, ScalarError};
use linalg::{Genericity, Matrix};

pub use form::{AssociationDefect, FrobeniusForm};
pub use fusion::{check_axis, Eigen, FusionError, FusionLaw, FusionReport, Violation};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("missing product for basis pair ({0}, {1})")]
    MissingProduct(usize, usize),
    #[error("malformed product key {0:?}")]
    BadKey(String),
    #[error("bad scalar in product {key}: {source}")]
    BadScalar { key: String, source: ParseError },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Coefficient vector over the basis of a presentation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element {
            coeffs: vec![Scalar::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Element::zero(dim);
        e.coeffs[i] = Scalar::one();
        e
    }

    pub fn new(coeffs: Vec<Scalar>) -> Self {
        Element { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn set(&mut self, i: usize, s: Scalar) {
        self.coeffs[i] = s;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero(self.dim());
        }
        Element {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| if c.is_zero() { Scalar::zero() } else { c * s })
                .collect(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: &Scalar, other: &Element) -> Element {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        if s.is_zero() {
            return self.clone();
        }
        Element {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| if b.is_zero() { a.clone() } else { a + &(s * b) })
                .collect(),
        }
    }

    pub fn linear_combination<'a>(dim: usize, terms: impl IntoIterator<Item = (&'a Scalar, &'a Element)>) -> Element {
        terms
            .into_iter()
            .fold(Element::zero(dim), |acc, (s, e)| acc.add_scaled(s, e))
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<Element, E> {
        Ok(Element {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, E>>()?,
        })
    }

    pub fn specialize(&self, bindings: &[(Var, num_rational::BigRational)]) -> Result<Element, ScalarError> {
        self.try_map(|c| c.specialize(bindings))
    }

    /// Renders the element with the given basis labels, e.g. `2*a - (x)*ab`.
    pub fn display<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        Labelled { e: self, labels }
    }
}

struct Labelled<'a> {
    e: &'a Element,
    labels: &'a [String],
}

impl fmt::Display for Labelled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, l) in self.e.coeffs.iter().zip(self.labels) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", l)?;
            } else {
                write!(f, "{}*{}", c, l)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.add_scaled(&Scalar::one(), rhs)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.add_scaled(&Scalar::from_int(-1), rhs)
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map(|c| -c)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// Basis labels plus structure constants, stored for `i <= j` only.
#[derive(Clone, PartialEq)]
pub struct AlgebraPresentation {
    labels: Vec<String>,
    products: Vec<Element>,
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl AlgebraPresentation {
    /// A presentation with every product zero.
    pub fn new(labels: Vec<String>) -> Self {
        let n = labels.len();
        AlgebraPresentation {
            products: vec![Element::zero(n); n * (n + 1) / 2],
            labels,
        }
    }

    pub fn with_labels<S: AsRef<str>>(labels: &[S]) -> Self {
        AlgebraPresentation::new(labels.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim(), i)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim())
    }

    pub fn product(&self, i: usize, j: usize) -> &Element {
        &self.products[tri_index(self.dim(), i, j)]
    }

    pub fn set_product(&mut self, i: usize, j: usize, e: Element) {
        assert_eq!(e.dim(), self.dim(), "dimension mismatch");
        let k = tri_index(self.dim(), i, j);
        self.products[k] = e;
    }

    fn check(&self, u: &Element) -> Result<(), AlgebraError> {
        if u.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                got: u.dim(),
            });
        }
        Ok(())
    }

    pub fn try_multiply(&self, u: &Element, v: &Element) -> Result<Element, AlgebraError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.multiply(u, v))
    }

    /// Bilinear product; panics on a dimension mismatch.
    pub fn multiply(&self, u: &Element, v: &Element) -> Element {
        assert_eq!(u.dim(), self.dim(), "dimension mismatch");
        assert_eq!(v.dim(), self.dim(), "dimension mismatch");
        let n = self.dim();
        let mut acc = Element::zero(n);
        for i in 0..n {
            for j in i..n {
                let ui = u.coeff(i);
                let uj = u.coeff(j);
                let vi = v.coeff(i);
                let vj = v.coeff(j);
                let c = if i == j {
                    if ui.is_zero() || vi.is_zero() {
                        continue;
                    }
                    ui * vi
                } else {
                    let mut c = Scalar::zero();
                    if !ui.is_zero() && !vj.is_zero() {
                        c = ui * vj;
                    }
                    if !uj.is_zero() && !vi.is_zero() {
                        c = &c + &(uj * vi);
                    }
                    c
                };
                if !c.is_zero() {
                    acc = acc.add_scaled(&c, self.product(i, j));
                }
            }
        }
        acc
    }

    pub fn square(&self, u: &Element) -> Element {
        self.multiply(u, u)
    }

    pub fn is_idempotent(&self, u: &Element) -> bool {
        self.square(u) == *u
    }

    /// Matrix of left multiplication by `u`; column `j` is `u * e_j`.
    pub fn ad_matrix(&self, u: &Element) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.multiply(u, &self.basis(j)).into_coeffs())
            .collect();
        Matrix::from_columns(&cols)
    }

    /// Basis of the `lambda`-eigenspace of `ad_u`, with the pivots assumed nonzero.
    pub fn eigenspace(&self, u: &Element, lambda: &Scalar) -> (Vec<Element>, Genericity) {
        let m = self.ad_matrix(u).shift(lambda);
        let (ns, g) = m.nullspace();
        let vs: Vec<Element> = ns.into_iter().map(Element::new).collect();
        for v in &vs {
            assert!(
                self.multiply(u, v) == v.scale(lambda),
                "eigenvector failed re-multiplication"
            );
        }
        (vs, g)
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> AlgebraPresentation {
        AlgebraPresentation {
            labels: self.labels.clone(),
            products: self.products.iter().map(|e| e.map(&f)).collect(),
        }
    }

    pub fn specialize(
        &self,
        bindings: &[(Var, num_rational::BigRational)],
    ) -> Result<AlgebraPresentation, ScalarError> {
        Ok(AlgebraPresentation {
            labels: self.labels.clone(),
            products: self
                .products
                .iter()
                .map(|e| e.specialize(bindings))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    fn to_doc(&self) -> PresentationDoc {
        let n = self.dim();
        let mut products = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                let e = self.product(i, j);
                products.insert(
                    format!("{},{}", i, j),
                    e.coeffs().iter().map(|c| c.to_string()).collect(),
                );
            }
        }
        PresentationDoc {
            basis: self.labels.clone(),
            products,
        }
    }

    /// Reads `{"basis": [...], "products": {"i,j": [...]}}`. A missing pair falls
    /// back to its symmetric partner.
    pub fn from_json(s: &str) -> Result<AlgebraPresentation, AlgebraError> {
        let doc: PresentationDoc = serde_json::from_str(s)?;
        let n = doc.basis.len();
        let mut parsed: BTreeMap<(usize, usize), Element> = BTreeMap::new();
        for (key, vals) in &doc.products {
            let (i, j) = parse_key(key, n)?;
            if vals.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    got: vals.len(),
                });
            }
            let coeffs = vals
                .iter()
                .map(|v| {
                    v.parse::<Scalar>().map_err(|e| AlgebraError::BadScalar {
                        key: key.clone(),
                        source: e,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            parsed.insert((i, j), Element::new(coeffs));
        }
        let mut a = AlgebraPresentation::new(doc.basis);
        for i in 0..n {
            for j in i..n {
                let e = parsed
                    .get(&(i, j))
                    .or_else(|| parsed.get(&(j, i)))
                    .ok_or(AlgebraError::MissingProduct(i, j))?;
                a.set_product(i, j, e.clone());
            }
        }
        Ok(a)
    }
}

fn parse_key(key: &str, n: usize) -> Result<(usize, usize), AlgebraError> {
    let bad = || AlgebraError::BadKey(key.to_string());
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    if i >= n || j >= n {
        return Err(bad());
    }
    Ok((i, j))
}

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    basis: Vec<String>,
    products: BTreeMap<String, Vec<String>>,
}

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                writeln!(
                    f,
                    "{} * {} = {}",
                    self.labels[i],
                    self.labels[j],
                    self.product(i, j).display(&self.labels)
                )?;
            }
        }
        Ok(())
    }
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
    fn triangular_index_is_a_bijection() {
        for n in 1..7 {
            let mut seen = vec![false; n * (n + 1) / 2];
            for i in 0..n {
                for j in i..n {
                    let k = tri_index(n, i, j);
                    assert!(!seen[k]);
                    seen[k] = true;
                    assert_eq!(k, tri_index(n, j, i));
                }
            }
        }
    }

    #[test]
    fn multiplication_is_bilinear_and_commutative() {
        let a = two_dim(alpha());
        let u = Element::new(vec![int(2), beta()]);
        let v = Element::new(vec![x(), int(-1)]);
        assert_eq!(a.multiply(&u, &v), a.multiply(&v, &u));
        assert!(a.multiply(&u, &a.zero()).is_zero());
        let w = a.multiply(&(&u + &v), &u);
        assert_eq!(w, &a.multiply(&u, &u) + &a.multiply(&v, &u));
    }

    #[test]
    fn ad_matrix_columns_are_products() {
        let a = two_dim(alpha());
        let m = a.ad_matrix(&a.basis(0));
        assert_eq!(m.column(1), vec![alpha(), alpha()]);
        assert!(a.ad_matrix(&a.zero()).is_zero());
    }

    #[test]
    fn eigenspaces_of_two_dimensional_algebra() {
        let a = two_dim(alpha());
        let (v, _) = a.eigenspace(&a.basis(0), &alpha());
        assert_eq!(v.len(), 1);
        let (w, _) = a.eigenspace(&a.basis(0), &beta());
        assert!(w.is_empty());
    }

    #[test]
    fn json_round_trip_and_symmetric_fallback() {
        let a = two_dim(&alpha() / &(&beta() - &int(1)));
        let back = AlgebraPresentation::from_json(&a.to_json()).unwrap();
        assert_eq!(a, back);

        let doc = r#"{"basis": ["a", "b"], "products": {"0,0": ["1", "0"], "1,0": ["alpha", "alpha"], "1,1": ["0", "1"]}}"#;
        let c = AlgebraPresentation::from_json(doc).unwrap();
        assert_eq!(c, two_dim(alpha()));

        let missing = r#"{"basis": ["a", "b"], "products": {"0,0": ["1", "0"]}}"#;
        assert!(matches!(
            AlgebraPresentation::from_json(missing),
            Err(AlgebraError::MissingProduct(0, 1))
        ));
    }
}
