//! Symmetric bilinear forms and the associativity check `(uv, w) = (u, vw)`.

use super::linalg::Matrix;
use super::{AlgebraPresentation, Element};
use crate::par::{self, Exec};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusForm {
    gram: Matrix,
}

/// A basis triple `(i, j, k)` with `(e_i e_j, e_k) - (e_i, e_j e_k) != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociationDefect {
    pub triple: (usize, usize, usize),
    pub residual: Scalar,
}

impl FrobeniusForm {
    pub fn new(gram: Matrix) -> Self {
        assert_eq!(gram.rows(), gram.cols(), "gram matrix must be square");
        for i in 0..gram.rows() {
            for j in 0..i {
                assert!(gram.get(i, j) == gram.get(j, i), "gram matrix must be symmetric");
            }
        }
        FrobeniusForm { gram }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn value(&self, i: usize, j: usize) -> &Scalar {
        self.gram.get(i, j)
    }

    pub fn pair(&self, u: &Element, v: &Element) -> Scalar {
        let gv = self.gram.apply(v.coeffs());
        u.coeffs()
            .iter()
            .zip(&gv)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> FrobeniusForm {
        FrobeniusForm {
            gram: self.gram.map(f),
        }
    }

    /// Every basis triple on which associativity fails.
    pub fn association_defects(&self, alg: &AlgebraPresentation, exec: Exec) -> Vec<AssociationDefect> {
        let n = alg.dim();
        assert_eq!(n, self.dim(), "dimension mismatch");
        // (e_i e_j, e_k) for all i, j, k, as rows of G * (e_i e_j).
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let paired: Vec<Vec<Scalar>> = par::map(exec, &pairs, |&(i, j)| {
            self.gram.apply(alg.product(i, j).coeffs())
        });
        let triples: Vec<(usize, usize, usize)> = pairs
            .iter()
            .flat_map(|&(i, j)| (0..n).map(move |k| (i, j, k)))
            .collect();
        let defects = par::map(exec, &triples, |&(i, j, k)| {
            let left = &paired[i * n + j][k];
            let right = &paired[j * n + k][i];
            if left == right {
                None
            } else {
                Some(AssociationDefect {
                    triple: (i, j, k),
                    residual: left - right,
                })
            }
        });
        defects.into_iter().flatten().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sym::*;

    #[test]
    fn two_dimensional_alpha_family_is_frobenius() {
        let mut a = AlgebraPresentation::with_labels(&["a", "b"]);
        a.set_product(0, 0, a.basis(0));
        a.set_product(1, 1, a.basis(1));
        a.set_product(0, 1, Element::new(vec![alpha(), alpha()]));
        let xv = -(&alpha() / &(&alpha() - &int(1)));
        let form = FrobeniusForm::new(Matrix::from_rows(vec![
            vec![int(1), xv.clone()],
            vec![xv, int(1)],
        ]));
        assert!(form.association_defects(&a, Exec::Sequential).is_empty());

        let wrong = FrobeniusForm::new(Matrix::from_rows(vec![vec![int(1), x()], vec![x(), int(1)]]));
        assert!(!wrong.association_defects(&a, Exec::Parallel).is_empty());
    }
}
