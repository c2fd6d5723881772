//! Fraction-free linear algebra over the scalar field.
//!
//! Rows are first cleared of denominators, then reduced by Bareiss elimination
//! with exact polynomial division. Every pivot that is a non-constant polynomial
//! is recorded: its vanishing at a special parameter value changes the rank.

use std::fmt;

use crate::par;
use crate::scalar::{lcm, Polynomial, Scalar, Var};

/// Non-constant pivots a computation had to assume nonzero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Genericity {
    pub pivots: Vec<Polynomial>,
}

impl Genericity {
    pub fn record(&mut self, p: &Polynomial) {
        if p.is_constant() {
            return;
        }
        let pp = p.primitive_part();
        if !self.pivots.contains(&pp) {
            log::debug!("genericity pivot assumed nonzero: {}", pp);
            self.pivots.push(pp);
        }
    }

    pub fn extend(&mut self, other: &Genericity) {
        for p in &other.pivots {
            self.record(p);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }
}

/// Dense row-major matrix of scalars.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        let c = cols.len();
        let r = cols.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let col = self.apply(&other.column(j));
            for (i, v) in col.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }

    /// `self - lambda * I`.
    pub fn shift(&self, lambda: &Scalar) -> Matrix {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = self.get(i, i) - lambda;
            m.set(i, i, v);
        }
        m
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Row echelon form by fraction-free elimination.
    pub fn echelon(&self) -> Echelon {
        let mut scale = Vec::with_capacity(self.rows);
        let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let (s, r) = clear_row(self.row(i));
            scale.push(s);
            rows.push(r);
        }
        bareiss(rows, self.cols, scale)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Determinant of a square matrix, with the genericity log of the elimination.
    pub fn determinant(&self) -> (Scalar, Genericity) {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let e = self.echelon();
        if e.pivots.len() < self.rows {
            return (Scalar::zero(), e.genericity);
        }
        // The last Bareiss pivot is the determinant of the scaled matrix.
        let last = Scalar::from_poly(e.rows[self.rows - 1][self.cols - 1].clone());
        let mut det = if e.sign_negative { -last } else { last };
        for s in &e.row_scale {
            det = &det / s;
        }
        (det, e.genericity)
    }

    /// Basis of `{ v : self * v = 0 }`, re-verified by multiplication.
    pub fn nullspace(&self) -> (Vec<Vec<Scalar>>, Genericity) {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|j| !e.pivots.contains(j)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (r, &pc) in e.pivots.iter().enumerate().rev() {
                let mut acc = Scalar::zero();
                for j in pc + 1..self.cols {
                    if v[j].is_zero() || e.rows[r][j].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&Scalar::from_poly(e.rows[r][j].clone()) * &v[j]);
                }
                let piv = Scalar::from_poly(e.rows[r][pc].clone());
                v[pc] = &(-&acc) / &piv;
            }
            debug_assert!(self.apply(&v).iter().all(|s| s.is_zero()));
            basis.push(v);
        }
        (basis, e.genericity)
    }

    /// A solution of `self * v = rhs`, if one exists.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows, "dimension mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let e = aug.echelon();
        if e.pivots.contains(&self.cols) {
            return None;
        }
        let mut v = vec![Scalar::zero(); self.cols];
        for (r, &pc) in e.pivots.iter().enumerate().rev() {
            let mut acc = Scalar::from_poly(e.rows[r][self.cols].clone());
            for j in pc + 1..self.cols {
                if v[j].is_zero() || e.rows[r][j].is_zero() {
                    continue;
                }
                acc = &acc - &(&Scalar::from_poly(e.rows[r][j].clone()) * &v[j]);
            }
            v[pc] = &acc / &Scalar::from_poly(e.rows[r][pc].clone());
        }
        Some(v)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Fraction-free row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced rows with polynomial entries; rows past `pivots.len()` are zero.
    pub rows: Vec<Vec<Polynomial>>,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
    pub genericity: Genericity,
    /// Factor each input row was multiplied by to clear denominators.
    pub row_scale: Vec<Scalar>,
    sign_negative: bool,
}

/// Multiplies a row by the lcm of its denominators.
fn clear_row(row: &[Scalar]) -> (Scalar, Vec<Polynomial>) {
    let mut l = Polynomial::one();
    for s in row {
        if !s.denom().is_one() {
            l = lcm(&l, s.denom());
        }
    }
    let ls = Scalar::from_poly(l.clone());
    let out = row
        .iter()
        .map(|s| {
            if s.is_zero() {
                Polynomial::zero()
            } else {
                let q = s * &ls;
                debug_assert!(q.denom().is_one());
                q.numer().clone()
            }
        })
        .collect();
    (ls, out)
}

/// Prefers constant pivots, then the sparsest, then the lowest degree.
fn pivot_cost(p: &Polynomial) -> (bool, usize, u32) {
    (!p.is_constant(), p.len(), p.total_degree())
}

fn bareiss(mut rows: Vec<Vec<Polynomial>>, cols: usize, row_scale: Vec<Scalar>) -> Echelon {
    let n = rows.len();
    let mut genericity = Genericity::default();
    let mut pivots = Vec::new();
    let mut prev = Polynomial::one();
    let mut r = 0;
    let mut sign_negative = false;
    for c in 0..cols {
        if r == n {
            break;
        }
        let best = (r..n)
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| pivot_cost(&rows[i][c]));
        let Some(p) = best else { continue };
        if p != r {
            rows.swap(p, r);
            sign_negative = !sign_negative;
        }
        let piv = rows[r][c].clone();
        genericity.record(&piv);
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        let prev_ref = &prev;
        par::for_each_mut(tail, |row| {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let t = &(&piv * &row[j]) - &(&lead * &prow[j]);
                row[j] = if prev_ref.is_one() {
                    t
                } else {
                    t.exact_div(prev_ref).expect("Bareiss division is exact")
                };
            }
            row[c] = Polynomial::zero();
        });
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows,
        pivots,
        genericity,
        row_scale,
        sign_negative,
    }
}

/// Resultant of `f` and `g` with respect to `v`, as the Sylvester determinant.
pub fn resultant(f: &Polynomial, g: &Polynomial, v: Var) -> Polynomial {
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let m = fc.len().saturating_sub(1);
    let n = gc.len().saturating_sub(1);
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero();
    }
    if m == 0 && n == 0 {
        return Polynomial::one();
    }
    let size = m + n;
    let mut s = Matrix::zeros(size, size);
    for r in 0..n {
        for (k, c) in fc.iter().rev().enumerate() {
            s.set(r, r + k, Scalar::from_poly(c.clone()));
        }
    }
    for r in 0..m {
        for (k, c) in gc.iter().rev().enumerate() {
            s.set(n + r, r + k, Scalar::from_poly(c.clone()));
        }
    }
    let (d, _) = s.determinant();
    debug_assert!(d.denom().is_one());
    d.numer().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sym::*;

    #[test]
    fn determinant_of_symbolic_matrix() {
        let m = Matrix::from_rows(vec![
            vec![alpha(), beta()],
            vec![int(1), &int(1) / &alpha()],
        ]);
        let (d, g) = m.determinant();
        assert_eq!(d, &int(1) - &beta());
        assert!(g.is_empty() || g.pivots.iter().all(|p| !p.is_constant()));
    }

    #[test]
    fn determinant_of_triangular_rational_matrix() {
        let m = Matrix::from_rows(vec![
            vec![q(1, 2), int(3), int(0)],
            vec![int(0), q(2, 3), int(5)],
            vec![int(0), int(0), int(-3)],
        ]);
        assert_eq!(m.determinant().0, int(-1));
    }

    #[test]
    fn nullspace_vectors_are_exact() {
        let m = Matrix::from_rows(vec![
            vec![alpha(), beta(), &alpha() + &beta()],
            vec![int(1), int(1), int(2)],
        ]);
        let (ns, g) = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).iter().all(|s| s.is_zero()));
        // Reducing the second row by the first needs alpha - beta != 0.
        assert!(!g.is_empty());
    }

    #[test]
    fn rank_drops_at_special_values() {
        let m = Matrix::from_rows(vec![vec![alpha(), int(1)], vec![int(1), alpha()]]);
        assert_eq!(m.rank(), 2);
        let m1 = m.map(|s| {
            s.specialize(&[(crate::scalar::Var::Alpha, crate::scalar::rat(1, 1))])
                .unwrap()
        });
        assert_eq!(m1.rank(), 1);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(2), int(2)]]);
        assert!(m.solve(&[int(1), int(3)]).is_none());
        let v = m.solve(&[int(1), int(2)]).unwrap();
        assert_eq!(&v[0] + &v[1], int(1));
    }

    #[test]
    fn resultant_detects_common_root() {
        let f: Scalar = "beta^2 - 1".parse().unwrap();
        let g: Scalar = "beta - alpha".parse().unwrap();
        let r = resultant(f.numer(), g.numer(), Var::Beta);
        let expected: Scalar = "alpha^2 - 1".parse().unwrap();
        assert!(r.associated(expected.numer()));
    }

    #[test]
    fn zero_matrix_nullspace_is_everything() {
        let m = Matrix::zeros(3, 3);
        assert_eq!(m.nullspace().0.len(), 3);
        assert_eq!(m.determinant().0, int(0));
    }
}
