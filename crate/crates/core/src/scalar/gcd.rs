//! Multivariate polynomial GCD by recursive subresultant remainder sequences.
//!
//! A polynomial is viewed as univariate in its lowest-index indeterminate with
//! coefficients in the remaining ones. Contents are split off recursively and the
//! primitive parts go through the subresultant PRS of Brown and Collins, whose
//! exact divisions keep coefficient growth polynomial.

use std::collections::HashMap;

use num_rational::BigRational;

use super::poly::{Monomial, Polynomial, Var};

/// Dense univariate polynomial over the coefficient ring ℚ[other indeterminates].
type Upoly = Vec<Polynomial>;

/// Greatest common divisor, normalized to a primitive integer polynomial with a
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    gcd_rec(f, g).primitive_part()
}

/// Least common multiple up to a rational unit.
pub fn lcm(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero();
    }
    let d = gcd(f, g);
    let q = f.exact_div(&d).expect("gcd divides its argument");
    (&q * g).primitive_part()
}

/// GCD up to a rational unit.
fn gcd_rec(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one();
    }
    if f.len() == 1 || g.len() == 1 {
        let m = f.monomial_content().gcd(&g.monomial_content());
        return Polynomial::monomial(m, num_rational::BigRational::from_integer(1.into()));
    }
    if f.associated(g) {
        return f.clone();
    }

    // Pull out common monomial factors first; it keeps the recursion shallow.
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    if !mf.is_one() || !mg.is_one() {
        let one = num_rational::BigRational::from_integer(1.into());
        let f1 = f.exact_div(&Polynomial::monomial(mf, one.clone())).expect("monomial content");
        let g1 = g.exact_div(&Polynomial::monomial(mg, one.clone())).expect("monomial content");
        let rest = gcd_rec(&f1, &g1);
        return rest.mul_monomial(&mf.gcd(&mg), &one);
    }

    let fv = f.vars();
    let gv = g.vars();
    // Variables present in only one argument contribute nothing but their content,
    // so fold the other argument through the coefficients with respect to them.
    if fv.iter().any(|v| !gv.contains(v)) {
        return fold_over_foreign(f, g, &gv);
    }
    if gv.iter().any(|v| !fv.contains(v)) {
        return fold_over_foreign(g, f, &fv);
    }

    // Cheap trial divisions catch the frequent case where one side divides the other.
    let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    if large.exact_div(small).is_some() {
        return small.clone();
    }

    let v = fv[0];
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let cf = content_of(&fc);
    let cg = content_of(&gc);
    let c = gcd_rec(&cf, &cg);
    let pf: Upoly = fc.iter().map(|k| div_exact(k, &cf)).collect();
    let pg: Upoly = gc.iter().map(|k| div_exact(k, &cg)).collect();
    let r = subresultant(pf, pg);
    let r = if r.len() <= 1 {
        Polynomial::one()
    } else {
        let rc = content_of(&r);
        let pr: Upoly = r.iter().map(|k| div_exact(k, &rc)).collect();
        Polynomial::from_coefficients_in(v, &pr)
    };
    &c * &r
}

/// `gcd(f, g)` where `g` involves only `keep`: the gcd of `g` with every
/// coefficient of `f` over the monomials in the remaining variables.
fn fold_over_foreign(f: &Polynomial, g: &Polynomial, keep: &[Var]) -> Polynomial {
    let mut groups: HashMap<Monomial, Vec<(Monomial, BigRational)>> = HashMap::new();
    for (m, c) in f.terms() {
        let mut outer = *m;
        let mut inner = Monomial::one();
        for v in keep {
            inner.0[v.index()] = m.0[v.index()];
            outer.0[v.index()] = 0;
        }
        groups.entry(outer).or_default().push((inner, c.clone()));
    }
    let mut coeffs: Vec<Polynomial> = groups.into_values().map(Polynomial::from_terms).collect();
    coeffs.sort_by_key(|c| c.len());
    let mut acc = g.clone();
    for c in &coeffs {
        acc = gcd_rec(&acc, c);
        if acc.is_constant() {
            return Polynomial::one();
        }
    }
    acc
}

/// Content of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Polynomial, v: Var) -> Polynomial {
    content_of(&p.coefficients_in(v))
}

fn content_of(coeffs: &[Polynomial]) -> Polynomial {
    let mut nonzero: Vec<&Polynomial> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Polynomial::zero();
    }
    nonzero.sort_by_key(|c| c.len());
    let mut acc = nonzero[0].clone();
    for c in &nonzero[1..] {
        if acc.is_constant() {
            return Polynomial::one();
        }
        acc = gcd_rec(&acc, c);
    }
    if acc.is_constant() {
        Polynomial::one()
    } else {
        acc.primitive_part()
    }
}

fn div_exact(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.exact_div(b).expect("exact division in gcd")
}

fn degree(p: &Upoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim(p: &mut Upoly) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &Upoly, b: &Upoly) -> Upoly {
    let db = degree(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r = a.clone();
    trim(&mut r);
    let da = match degree(&r) {
        Some(d) => d,
        None => return r,
    };
    if da < db {
        return r;
    }
    let mut steps = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            if bc.is_zero() {
                continue;
            }
            let t = &lr * bc;
            r[i + shift] = &r[i + shift] - &t;
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Last nonzero element of the subresultant PRS of two primitive polynomials.
fn subresultant(mut a: Upoly, mut b: Upoly) -> Upoly {
    trim(&mut a);
    trim(&mut b);
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    if degree(&b).is_none() {
        return a;
    }
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let da = degree(&a).expect("nonzero");
        let db = degree(&b).expect("nonzero");
        let delta = (da - db) as u32;
        let r = pseudo_rem(&a, &b);
        let dr = match degree(&r) {
            None => return b,
            Some(d) => d,
        };
        if dr == 0 {
            return vec![Polynomial::one()];
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.iter().map(|c| div_exact(c, &divisor)).collect();
        g = a[degree(&a).expect("nonzero")].clone();
        h = if delta == 0 {
            h
        } else if delta == 1 {
            g.clone()
        } else {
            div_exact(&g.pow(delta), &h.pow(delta - 1))
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::poly::Var::*;

    fn v(x: Var) -> Polynomial {
        Polynomial::var(x)
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let f1 = &(&v(Alpha) - &v(Beta)) * &(&v(X) + &c(2));
        let f2 = &(&v(Alpha) * &v(Y)) + &(&v(Beta) * &v(Beta));
        let common = &(&v(Alpha) * &v(Alpha)) - &(&v(Beta) * &v(X));
        let g = gcd(&(&f1 * &common), &(&f2 * &common));
        assert!(g.associated(&common), "got {}", g);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let f = &v(Alpha) + &v(Beta);
        let g = &v(Alpha) - &v(Beta);
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn gcd_handles_powers() {
        let d = &v(Alpha) - &v(Beta);
        let f = &d.pow(3) * &(&v(X) + &c(1));
        let g = &d.pow(2) * &(&v(X) - &c(1));
        assert!(gcd(&f, &g).associated(&d.pow(2)));
    }

    #[test]
    fn gcd_with_disjoint_variables() {
        let f = &(&v(Alpha) - &c(1)) * &(&v(X) + &v(Y));
        let g = &(&v(Alpha) - &c(1)) * &(&v(Z) + &c(3));
        assert!(gcd(&f, &g).associated(&(&v(Alpha) - &c(1))));
    }

    #[test]
    fn lcm_is_product_over_gcd() {
        let f = &(&v(Alpha) - &v(Beta)) * &v(X);
        let g = &(&v(Alpha) - &v(Beta)) * &v(Y);
        let l = lcm(&f, &g);
        assert!(l.associated(&(&(&v(Alpha) - &v(Beta)) * &(&v(X) * &v(Y)))));
    }
}
