//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of indeterminates in the registry.
pub const NVARS: usize = 9;

/// The fixed registry of indeterminates, in monomial-order priority.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Alpha = 0,
    Beta = 1,
    X = 2,
    Y = 3,
    Z = 4,
    P = 5,
    Gamma = 6,
    Epsilon = 7,
    Lambda = 8,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Alpha,
        Var::Beta,
        Var::X,
        Var::Y,
        Var::Z,
        Var::P,
        Var::Gamma,
        Var::Epsilon,
        Var::Lambda,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Alpha => "alpha",
            Var::Beta => "beta",
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::P => "p",
            Var::Gamma => "gamma",
            Var::Epsilon => "epsilon",
            Var::Lambda => "lambda",
        }
    }

    /// Accepts the ASCII names and the Greek letters.
    pub fn from_name(s: &str) -> Option<Var> {
        Some(match s {
            "alpha" | "α" => Var::Alpha,
            "beta" | "β" => Var::Beta,
            "x" => Var::X,
            "y" => Var::Y,
            "z" => Var::Z,
            "p" => Var::P,
            "gamma" | "γ" => Var::Gamma,
            "epsilon" | "ε" => Var::Epsilon,
            "lambda" | "λ" => Var::Lambda,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over the registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, exp: u16) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = exp;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = [0; NVARS];
        for (i, slot) in m.iter_mut().enumerate() {
            *slot = self.0[i] + other.0[i];
        }
        Monomial(m)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = [0; NVARS];
        for (i, slot) in m.iter_mut().enumerate() {
            if self.0[i] < other.0[i] {
                return None;
            }
            *slot = self.0[i] - other.0[i];
        }
        Some(Monomial(m))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = [0; NVARS];
        for (i, slot) in m.iter_mut().enumerate() {
            *slot = self.0[i].min(other.0[i]);
        }
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }
}

/// Graded lexicographic order, `alpha > beta > x > ...` within a degree.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in ℚ[alpha, beta, x, y, z, p, gamma, epsilon, lambda].
///
/// Terms are kept sorted in decreasing monomial order with no zero
/// coefficients; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, BigRational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(v, 1), BigRational::one())],
        }
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted terms, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, BigRational)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0)
    }

    /// Indeterminates that occur with positive degree.
    pub fn vars(&self) -> Vec<Var> {
        let mut seen = [false; NVARS];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        Var::ALL.iter().copied().filter(|v| seen[v.index()]).collect()
    }

    pub fn is_univariate(&self) -> Option<Var> {
        match self.vars().as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((m, _)) => it.fold(*m, |acc, (n, _)| acc.gcd(n)),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / other`, or `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &Polynomial) -> Option<Polynomial> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if let Some(c) = other.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        if other.terms.len() == 1 {
            let (om, oc) = &other.terms[0];
            let inv = oc.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(om)?, c * &inv));
            }
            return Some(Polynomial { terms });
        }
        let (lm, lc) = other.terms[0].clone();
        if self.total_degree() < other.total_degree() {
            return None;
        }
        for v in Var::ALL {
            if self.degree_in(v) < other.degree_in(v) {
                return None;
            }
        }
        let lc_inv = lc.recip();
        let mut rem: BTreeMap<Monomial, BigRational> =
            self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((&m, _)) = rem.iter().next_back() {
            let c = rem.remove(&m).expect("present");
            let qm = m.div(&lm)?;
            let qc = c * &lc_inv;
            for (om, oc) in other.terms.iter().skip(1) {
                let key = om.mul(&qm);
                let delta = oc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Polynomial { terms: quot })
    }

    /// Splits into coefficients of powers of `v`: `self = Σ coeffs[i] v^i`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Polynomial> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut mm = *m;
            mm.0[v.index()] = 0;
            buckets[e].push((mm, c.clone()));
        }
        // Removing a variable keeps relative grlex order only up to ties in degree,
        // so re-sort each bucket.
        buckets.into_iter().map(Polynomial::from_terms).collect()
    }

    /// Inverse of [`Polynomial::coefficients_in`].
    pub fn from_coefficients_in(v: Var, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                let mut mm = *m;
                mm.0[v.index()] += i as u16;
                terms.push((mm, k.clone()));
            }
        }
        Polynomial::from_terms(terms)
    }

    /// Substitutes rational values for some indeterminates.
    pub fn substitute(&self, bindings: &[(Var, BigRational)]) -> Polynomial {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut mm = *m;
            let mut k = c.clone();
            for (v, val) in bindings {
                let e = mm.0[v.index()];
                if e > 0 {
                    k *= num_traits::pow(val.clone(), e as usize);
                    mm.0[v.index()] = 0;
                }
            }
            if !k.is_zero() {
                terms.push((mm, k));
            }
        }
        Polynomial::from_terms(terms)
    }

    /// Substitutes a polynomial for one indeterminate.
    pub fn compose(&self, v: Var, value: &Polynomial) -> Polynomial {
        let coeffs = self.coefficients_in(v);
        // Horner
        let mut acc = Polynomial::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Numerical value when every indeterminate is bound.
    pub fn evaluate(&self, bindings: &[(Var, BigRational)]) -> Option<BigRational> {
        self.substitute(bindings).constant_value()
    }

    /// Least common multiple of the coefficient denominators over the gcd of
    /// the numerators; dividing by it yields integer coefficients with gcd 1.
    pub fn rational_content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// Primitive integer representative with positive leading coefficient, and the
    /// unit `u` with `self = u * result`.
    pub fn primitive(&self) -> (BigRational, Polynomial) {
        if self.is_zero() {
            return (BigRational::one(), Polynomial::zero());
        }
        let mut c = self.rational_content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        if c.is_one() {
            return (c, self.clone());
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    pub fn primitive_part(&self) -> Polynomial {
        self.primitive().1
    }

    /// Monic representative (leading coefficient one).
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let lc = self.terms[0].1.clone();
        if lc.is_one() {
            self.clone()
        } else {
            self.scale(&lc.recip())
        }
    }

    /// Equality up to a nonzero rational factor.
    pub fn associated(&self, other: &Polynomial) -> bool {
        self.primitive_part() == other.primitive_part()
    }

    pub fn partial_derivative(&self, v: Var) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut mm = *m;
                mm.0[v.index()] -= 1;
                terms.push((mm, c * BigRational::from_integer(BigInt::from(e))));
            }
        }
        Polynomial::from_terms(terms)
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial { terms: out }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            // multiplying by a monomial preserves the order
            return large.mul_monomial(m, c);
        }
        let mut terms = Vec::with_capacity(self.len() * rhs.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                terms.push((m1.mul(m2), c1 * c2));
            }
        }
        Polynomial::from_terms(terms)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for (_, c) in &mut self.terms {
            *c = -c.clone();
        }
        self
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::from_int(n)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", v)?;
        } else {
            write!(f, "{}^{}", v, e)?;
        }
    }
    Ok(())
}

/// Canonical textual form, e.g. `2*alpha^2*x - 1/2*beta + 3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}
