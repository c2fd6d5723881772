//! Exact arithmetic in the rational function field ℚ(alpha, beta, x, y, z, p, ...).

mod factor;
mod gcd;
mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use factor::{content_factors, rational_roots, Factorization};
pub use gcd::{content_in, gcd, lcm};
pub use parse::ParseError;
pub use poly::{Monomial, Polynomial, Var, NVARS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("specialization makes the denominator vanish (factor {0})")]
    VanishingDenominator(String),
}

/// An element of the rational function field, kept in canonical form.
///
/// The numerator and denominator are coprime, the denominator is a primitive
/// integer polynomial with positive leading coefficient, and zero is `0/1`.
/// Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Polynomial,
    den: Polynomial,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            num: Polynomial::from_int(n),
            den: Polynomial::one(),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(rat(n, d))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar {
            num: Polynomial::constant(r),
            den: Polynomial::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        Scalar {
            num: Polynomial::var(v),
            den: Polynomial::one(),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Scalar {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.constant_value() {
            return Scalar {
                num: num.scale(&c.recip()),
                den: Polynomial::one(),
            };
        }
        let g = gcd::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_unit(num, den)
    }

    /// Moves the rational unit of the denominator into the numerator.
    fn normalize_unit(num: Polynomial, den: Polynomial) -> Self {
        if let Some(c) = den.constant_value() {
            return Scalar {
                num: num.scale(&c.recip()),
                den: Polynomial::one(),
            };
        }
        let (u, den) = den.primitive();
        let num = if u.is_one() { num } else { num.scale(&u.recip()) };
        Scalar { num, den }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value is a rational number.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        for v in self.den.vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs.sort();
        vs
    }

    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize_unit(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: i32) -> Scalar {
        if e < 0 {
            return self
                .recip()
                .expect("negative power of zero")
                .pow(-e);
        }
        Scalar {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Substitutes rational values for indeterminates. Unbound indeterminates
    /// stay symbolic. Fails when the substitution kills the denominator.
    pub fn specialize(&self, bindings: &[(Var, BigRational)]) -> Result<Scalar, ScalarError> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let den = self.den.substitute(bindings);
        if den.is_zero() {
            let factors = content_factors(&self.den);
            let culprit = factors
                .factors
                .iter()
                .find(|(f, _)| f.substitute(bindings).is_zero())
                .map(|(f, _)| f.to_string())
                .unwrap_or_else(|| self.den.to_string());
            return Err(ScalarError::VanishingDenominator(culprit));
        }
        let num = self.num.substitute(bindings);
        Ok(Self::reduce(num, den))
    }

    /// Substitutes a rational function for one indeterminate.
    pub fn compose(&self, v: Var, value: &Scalar) -> Result<Scalar, ScalarError> {
        // Homogenize: p(v = n/d) = P(n, d) / d^deg.
        let dn = self.num.degree_in(v);
        let dd = self.den.degree_in(v);
        let top = dn.max(dd) as u32;
        let hom = |p: &Polynomial| -> Polynomial {
            let cs = p.coefficients_in(v);
            let mut acc = Polynomial::zero();
            for (i, c) in cs.iter().enumerate() {
                let term = &(c * &value.num.pow(i as u32)) * &value.den.pow(top - i as u32);
                acc = &acc + &term;
            }
            acc
        };
        let n = hom(&self.num);
        let d = hom(&self.den);
        if d.is_zero() {
            return Err(ScalarError::VanishingDenominator(self.den.to_string()));
        }
        Ok(Self::reduce(n, d))
    }

    pub fn evaluate(&self, bindings: &[(Var, BigRational)]) -> Result<BigRational, ScalarError> {
        let s = self.specialize(bindings)?;
        s.constant_value()
            .ok_or_else(|| ScalarError::VanishingDenominator("unbound indeterminate".into()))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Var> for Scalar {
    fn from(v: Var) -> Self {
        Scalar::var(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<Polynomial> for Scalar {
    fn from(p: Polynomial) -> Self {
        Scalar::from_poly(p)
    }
}

fn add_impl(a: &Scalar, b: &Scalar, negate: bool) -> Scalar {
    let sub = |x: &Polynomial, y: &Polynomial| if negate { x - y } else { x + y };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    if a.den == b.den {
        let num = sub(&a.num, &b.num);
        if a.den.is_one() {
            return Scalar {
                num,
                den: Polynomial::one(),
            };
        }
        return Scalar::reduce(num, a.den.clone());
    }
    if a.den.is_one() {
        let num = sub(&(&a.num * &b.den), &b.num);
        return Scalar {
            num,
            den: b.den.clone(),
        };
    }
    if b.den.is_one() {
        let num = sub(&a.num, &(&b.num * &a.den));
        return Scalar {
            num,
            den: a.den.clone(),
        };
    }
    // gcd(num, den) can only share factors with g = gcd(den_a, den_b).
    let g = gcd::gcd(&a.den, &b.den);
    if g.is_constant() {
        let num = sub(&(&a.num * &b.den), &(&b.num * &a.den));
        let den = &a.den * &b.den;
        return Scalar::normalize_unit(num, den);
    }
    let ad = a.den.exact_div(&g).expect("gcd divides");
    let bd = b.den.exact_div(&g).expect("gcd divides");
    let num = sub(&(&a.num * &bd), &(&b.num * &ad));
    if num.is_zero() {
        return Scalar::zero();
    }
    let den = &(&ad * &bd) * &g;
    let h = gcd::gcd(&num, &g);
    if h.is_constant() {
        return Scalar::normalize_unit(num, den);
    }
    Scalar::normalize_unit(
        num.exact_div(&h).expect("gcd divides"),
        den.exact_div(&h).expect("gcd divides"),
    )
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    if let Some(c) = a.constant_value() {
        return b.scale(&c);
    }
    if let Some(c) = b.constant_value() {
        return a.scale(&c);
    }
    // Cross-cancel: a.num with b.den, b.num with a.den.
    let (an, bd) = cancel(&a.num, &b.den);
    let (bn, ad) = cancel(&b.num, &a.den);
    Scalar::normalize_unit(&an * &bn, &ad * &bd)
}

fn cancel(n: &Polynomial, d: &Polynomial) -> (Polynomial, Polynomial) {
    if d.is_constant() {
        return (n.clone(), d.clone());
    }
    let g = gcd::gcd(n, d);
    if g.is_constant() {
        (n.clone(), d.clone())
    } else {
        (
            n.exact_div(&g).expect("gcd divides"),
            d.exact_div(&g).expect("gcd divides"),
        )
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        mul_impl(self, rhs)
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, s| &acc + &s)
    }
}

/// Fully parenthesized canonical text: `(num)` or `(num)/(den)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "({})", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar{}", self)
    }
}

impl FromStr for Scalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_scalar(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthands used throughout the crate and its tests.
pub mod sym {
    use super::{Scalar, Var};

    pub fn alpha() -> Scalar {
        Scalar::var(Var::Alpha)
    }
    pub fn beta() -> Scalar {
        Scalar::var(Var::Beta)
    }
    pub fn x() -> Scalar {
        Scalar::var(Var::X)
    }
    pub fn y() -> Scalar {
        Scalar::var(Var::Y)
    }
    pub fn z() -> Scalar {
        Scalar::var(Var::Z)
    }
    pub fn p() -> Scalar {
        Scalar::var(Var::P)
    }
    pub fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
    pub fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }
}
