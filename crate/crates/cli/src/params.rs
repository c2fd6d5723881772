use std::str::FromStr;

use axial_core::algebra::FusionLaw;
use axial_core::axial2::TwoGenParams;
use axial_core::rewrite::ThreeGenParams;
use axial_core::scalar::{rat, Scalar, Var};
use num_rational::BigRational;

/// Parses an exact `n/d` or integer literal; decimals and exponents are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("`{s}` is not exact; write rationals as n/d"));
    }
    let r = BigRational::from_str(s.trim()).map_err(|_| format!("`{s}` is not a rational n/d"))?;
    Ok(r)
}

/// Bindings of the model indeterminates given on the command line.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub alpha: Option<BigRational>,
    pub beta: Option<BigRational>,
    pub x: Option<BigRational>,
    pub y: Option<BigRational>,
    pub z: Option<BigRational>,
    pub p: Option<BigRational>,
    pub star: bool,
}

impl Bindings {
    /// Rejects bindings that contradict the global assumptions on the law.
    pub fn validate(&self) -> Result<(), String> {
        let one = rat(1, 1);
        if self.alpha.as_ref() == Some(&one) {
            return Err("alpha = 1 is excluded".into());
        }
        if self.beta.as_ref() == Some(&one) {
            return Err("beta = 1 is excluded".into());
        }
        if let (Some(a), Some(b)) = (&self.alpha, &self.beta) {
            if a == b {
                return Err("alpha = beta is excluded".into());
            }
        }
        if self.star && self.y.is_some() && self.y != self.x {
            return Err("--star sets y = x; drop --y or make it equal to --x".into());
        }
        Ok(())
    }

    /// Rejects form parameters that the command does not use.
    pub fn only_law(&self, command: &str) -> Result<(), String> {
        self.reject(command, &[("x", self.x.is_some()), ("y", self.y.is_some()), ("z", self.z.is_some()), ("p", self.p.is_some()), ("star", self.star)])
    }

    pub fn two_gen_only(&self, command: &str) -> Result<(), String> {
        self.reject(command, &[("z", self.z.is_some()), ("p", self.p.is_some())])
    }

    pub fn three_gen_only(&self, command: &str) -> Result<(), String> {
        self.reject(command, &[("star", self.star)])
    }

    fn reject(&self, command: &str, flags: &[(&str, bool)]) -> Result<(), String> {
        match flags.iter().find(|(_, set)| *set) {
            Some((name, _)) => Err(format!("--{name} does not apply to {command}")),
            None => Ok(()),
        }
    }

    /// `(indeterminate, value)` pairs in registry order.
    pub fn list(&self) -> Vec<(Var, BigRational)> {
        let y = if self.star { self.x.clone() } else { self.y.clone() };
        [
            (Var::Alpha, self.alpha.clone()),
            (Var::Beta, self.beta.clone()),
            (Var::X, self.x.clone()),
            (Var::Y, y),
            (Var::Z, self.z.clone()),
            (Var::P, self.p.clone()),
        ]
        .into_iter()
        .filter_map(|(v, r)| r.map(|r| (v, r)))
        .collect()
    }

    fn value(r: &Option<BigRational>, v: Var) -> Scalar {
        r.clone().map(Scalar::from_rational).unwrap_or_else(|| Scalar::var(v))
    }

    pub fn law(&self) -> FusionLaw {
        FusionLaw::new(Self::value(&self.alpha, Var::Alpha), Self::value(&self.beta, Var::Beta))
    }

    pub fn two_gen(&self) -> TwoGenParams {
        let base = if self.star { TwoGenParams::star() } else { TwoGenParams::generic() };
        let mut p = base.with_law(self.law()).with_x(Self::value(&self.x, Var::X));
        if !self.star {
            p = p.with_y(Self::value(&self.y, Var::Y));
        }
        p
    }

    pub fn three_gen(&self) -> ThreeGenParams {
        ThreeGenParams {
            law: self.law(),
            x: Self::value(&self.x, Var::X),
            y: Self::value(&self.y, Var::Y),
            z: Self::value(&self.z, Var::Z),
            p: Self::value(&self.p, Var::P),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse_and_decimals_do_not() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("4").unwrap(), rat(4, 1));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("half").is_err());
    }

    #[test]
    fn excluded_laws() {
        let b = Bindings { alpha: Some(rat(1, 1)), ..Bindings::default() };
        assert!(b.validate().is_err());
        let b = Bindings { alpha: Some(rat(1, 3)), beta: Some(rat(1, 3)), ..Bindings::default() };
        assert!(b.validate().is_err());
        let b = Bindings { alpha: Some(rat(1, 3)), beta: Some(rat(1, 2)), ..Bindings::default() };
        assert!(b.validate().is_ok());
    }

    #[test]
    fn star_binds_y_to_x() {
        let b = Bindings { x: Some(rat(1, 4)), star: true, ..Bindings::default() };
        assert_eq!(b.list(), vec![(Var::X, rat(1, 4)), (Var::Y, rat(1, 4))]);
        assert_eq!(b.two_gen().y, Scalar::from_ratio(1, 4));
    }
}
