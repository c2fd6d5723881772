//! Partial factorization: monomial content, recursive content splitting in
//! each indeterminate, and rational-root extraction for univariate pieces.
//!
//! This is not a complete factorization algorithm. Irreducible-looking pieces
//! that resist these splits are reported as they are.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::content_in;
use super::poly::{Monomial, Polynomial, Var};

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: BigRational,
    /// Primitive factors with positive leading coefficient, with multiplicity.
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    /// Distinct factors, without multiplicities.
    pub fn distinct(&self) -> Vec<Polynomial> {
        self.factors.iter().map(|(f, _)| f.clone()).collect()
    }
}

pub fn content_factors(p: &Polynomial) -> Factorization {
    if p.is_zero() {
        return Factorization {
            unit: BigRational::zero(),
            factors: Vec::new(),
        };
    }
    let pp = p.primitive_part();
    let mut found: Vec<Polynomial> = Vec::new();

    let mono = pp.monomial_content();
    for v in Var::ALL {
        for _ in 0..mono.exp(v) {
            found.push(Polynomial::var(v));
        }
    }
    let rest = pp
        .exact_div(&Polynomial::monomial(mono, BigRational::one()))
        .expect("monomial content divides");

    let mut work = vec![rest];
    while let Some(q) = work.pop() {
        if q.is_constant() {
            continue;
        }
        let mut split = false;
        for v in q.vars() {
            if q.vars().len() == 1 {
                break;
            }
            let c = content_in(&q, v);
            if !c.is_constant() {
                let r = q.exact_div(&c).expect("content divides");
                work.push(c);
                work.push(r);
                split = true;
                break;
            }
        }
        if split {
            continue;
        }
        if let Some(v) = q.is_univariate() {
            let roots = rational_roots(&q);
            if let Some(r) = roots.first() {
                let lin = linear_factor(v, r);
                let rest = q.exact_div(&lin).expect("root gives a factor");
                found.push(lin);
                work.push(rest);
                continue;
            }
        }
        found.push(q.primitive_part());
    }

    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    for f in found {
        let f = f.primitive_part();
        match factors.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m += 1,
            None => factors.push((f, 1)),
        }
    }
    factors.sort_by(|a, b| {
        a.0.total_degree()
            .cmp(&b.0.total_degree())
            .then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
    let out = Factorization { unit: BigRational::one(), factors };
    // Fix the unit so that the product reproduces the input exactly.
    let e = out.expand();
    let unit = &p.leading_coeff() / &e.leading_coeff();
    debug_assert_eq!(e.scale(&unit), *p);
    Factorization { unit, ..out }
}

/// `d*v - n` for the root `n/d`.
fn linear_factor(v: Var, r: &BigRational) -> Polynomial {
    let d = BigRational::from_integer(r.denom().clone());
    let n = BigRational::from_integer(r.numer().clone());
    let t = Polynomial::monomial(Monomial::var(v, 1), d);
    &t - &Polynomial::constant(n)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    let mut out = Vec::new();
    match n.to_u64() {
        Some(m) => {
            let mut i = 1u64;
            while i * i <= m {
                if m % i == 0 {
                    out.push(BigInt::from(i));
                    if i * i != m {
                        out.push(BigInt::from(m / i));
                    }
                }
                i += 1;
            }
        }
        None => {
            // Large coefficients do not occur here; fall back to the trivial divisors.
            out.push(BigInt::one());
            out.push(n.clone());
        }
    }
    out
}

/// Distinct rational roots of a univariate polynomial, in increasing order.
pub fn rational_roots(p: &Polynomial) -> Vec<BigRational> {
    let v = match p.is_univariate() {
        Some(v) => v,
        None => return Vec::new(),
    };
    let pp = p.primitive_part();
    let mut coeffs = pp.coefficients_in(v);
    let mut roots = Vec::new();
    if coeffs[0].is_zero() {
        roots.push(BigRational::zero());
        let k = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        coeffs.drain(..k);
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.constant_value().expect("univariate").to_integer())
        .collect();
    if ints.len() >= 2 {
        let lead = ints.last().expect("nonempty");
        let tail = &ints[0];
        for num in divisors(tail) {
            for den in divisors(lead) {
                if num.gcd(&den) != BigInt::one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = BigRational::new(&num * BigInt::from(sign), den.clone());
                    let val = coeffs
                        .iter()
                        .rev()
                        .fold(BigRational::zero(), |acc, c| acc * &r + c.constant_value().expect("constant"));
                    if val.is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}
