//! Recursive-descent parser for scalar expressions.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := '-' unary | power`, `power := atom ('^' '-'? integer)?`,
//! `atom := integer | identifier | '(' expr ')'`.

use num_bigint::BigInt;
use thiserror::Error;

use super::{Scalar, ScalarError, Var};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character {0:?} at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unknown indeterminate {0:?}")]
    UnknownSymbol(String),
    #[error("trailing input at offset {0}")]
    Trailing(usize),
    #[error(transparent)]
    Arithmetic(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((Tok::Int(digits.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((Tok::Ident(name), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(ParseError::UnexpectedChar(c, pos));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(usize::MAX)
    }

    fn expr(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ParseError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Scalar, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.toks.get(self.pos) {
                Some((Tok::Int(n), _)) => {
                    let n: i32 = n.try_into().map_err(|_| ParseError::Trailing(self.offset()))?;
                    self.pos += 1;
                    n
                }
                Some((t, p)) => {
                    let c = match t {
                        Tok::Op(c) => *c,
                        Tok::Ident(s) => s.chars().next().unwrap_or('?'),
                        Tok::Int(_) => '0',
                    };
                    return Err(ParseError::UnexpectedChar(c, *p));
                }
                None => return Err(ParseError::UnexpectedEnd),
            };
            if neg {
                if base.is_zero() {
                    return Err(ScalarError::DivisionByZero.into());
                }
                return Ok(base.pow(-e));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ParseError> {
        let (tok, p) = match self.toks.get(self.pos) {
            Some(t) => t.clone(),
            None => return Err(ParseError::UnexpectedEnd),
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Scalar::from_rational(num_rational::BigRational::from_integer(n))),
            Tok::Ident(name) => Var::from_name(&name)
                .map(Scalar::var)
                .ok_or(ParseError::UnknownSymbol(name)),
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return match self.toks.get(self.pos) {
                        Some((_, p)) => Err(ParseError::Trailing(*p)),
                        None => Err(ParseError::UnexpectedEnd),
                    };
                }
                Ok(e)
            }
            Tok::Op(c) => Err(ParseError::UnexpectedChar(c, p)),
        }
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Trailing(p.offset()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sym::*;

    #[test]
    fn parses_precedence() {
        let s = parse_scalar("1 + 2*alpha^2 - beta/2").unwrap();
        let expected = &(&int(1) + &(&int(2) * &alpha().pow(2))) - &(&beta() / &int(2));
        assert_eq!(s, expected);
    }

    #[test]
    fn accepts_greek_and_negative_powers() {
        let s = parse_scalar("α*β^-1").unwrap();
        assert_eq!(s, &alpha() / &beta());
    }

    #[test]
    fn rejects_unknown_symbols_and_garbage() {
        assert_eq!(
            parse_scalar("alpha + w"),
            Err(ParseError::UnknownSymbol("w".into()))
        );
        assert!(matches!(parse_scalar("(alpha"), Err(ParseError::UnexpectedEnd)));
        assert!(matches!(parse_scalar("alpha)"), Err(ParseError::Trailing(_))));
        assert!(matches!(parse_scalar("1.5"), Err(ParseError::UnexpectedChar('.', 1))));
        assert!(matches!(
            parse_scalar("1/(alpha-alpha)"),
            Err(ParseError::Arithmetic(ScalarError::DivisionByZero))
        ));
    }

    #[test]
    fn printed_form_round_trips() {
        let s = parse_scalar("(2*x*(alpha-1) + alpha + beta)/(3*beta - alpha^2*y)").unwrap();
        let back = parse_scalar(&s.to_string()).unwrap();
        assert_eq!(s, back);
        assert_eq!(s.to_string(), back.to_string());
    }
}
