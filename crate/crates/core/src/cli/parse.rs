//! Polynomial expressions in `x` and `y` with rational coefficients.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := integer ['/' integer] | ('x'|'y') ['^' integer]
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::Rational;
use crate::polygon::{PolygonError, Support, SupportPoint};

/// Exponents above this are rejected so lattice arithmetic stays in `i64`.
pub const MAX_EXPONENT: u32 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("exponent at position {pos} exceeds {MAX_EXPONENT}")]
    ExponentTooLarge { pos: usize },
    #[error(transparent)]
    Support(#[from] PolygonError),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            idx: 0,
            src,
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.src.len(), |(p, _)| *p)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.idx += 1;
        c
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            return Err(self.err("expected a number"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        let pos = self.pos();
        if self.peek() == Some('-') {
            return Err(ParseError::NegativeExponent { pos });
        }
        let e = self.integer()?;
        u32::try_from(&e)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or(ParseError::ExponentTooLarge { pos })
    }

    fn term(&mut self) -> Result<(Rational, (u32, u32)), ParseError> {
        let mut coeff = Rational::one();
        let (mut ex, mut ey) = (0u32, 0u32);
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let den = if self.peek() == Some('/') {
                        self.bump();
                        let d = self.integer()?;
                        if d.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        d
                    } else {
                        BigInt::one()
                    };
                    coeff *= Rational::new(num, den);
                }
                Some(v @ ('x' | 'y')) => {
                    self.bump();
                    let pos = self.pos();
                    let e = self.exponent()?;
                    let slot = if v == 'x' { &mut ex } else { &mut ey };
                    *slot = slot
                        .checked_add(e)
                        .filter(|&s| s <= MAX_EXPONENT)
                        .ok_or(ParseError::ExponentTooLarge { pos })?;
                }
                _ => {
                    return Err(if factors == 0 {
                        self.err("expected a term")
                    } else {
                        self.err("expected a factor after '*'")
                    });
                }
            }
            factors += 1;
            match self.peek() {
                Some('*') => {
                    self.bump();
                }
                Some(c) if c.is_ascii_digit() || c == 'x' || c == 'y' => {}
                _ => return Ok((coeff, (ex, ey))),
            }
        }
    }
}

/// Support of `f` with like terms merged and cancelled terms dropped.
pub fn parse_polynomial(text: &str) -> Result<Support, ParseError> {
    let mut p = Parser::new(text);
    let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    let mut sign = match p.peek() {
        Some('-') => {
            p.bump();
            -Rational::one()
        }
        Some('+') => {
            p.bump();
            Rational::one()
        }
        None => return Err(p.err("empty input")),
        _ => Rational::one(),
    };
    loop {
        let (c, exps) = p.term()?;
        *terms.entry(exps).or_insert_with(Rational::zero) += sign * c;
        sign = match p.bump() {
            None => break,
            Some('+') => Rational::one(),
            Some('-') => -Rational::one(),
            Some(ch) => {
                p.idx -= 1;
                return Err(p.err(format!("unexpected '{ch}'")));
            }
        };
    }
    terms.retain(|_, c| !c.is_zero());
    if terms.get(&(0, 0)).is_some() {
        return Err(PolygonError::ConstantTerm.into());
    }
    Ok(Support::new(
        terms
            .into_iter()
            .map(|((x, y), coeff)| SupportPoint { x, y, coeff }),
    )?)
}

fn render_monomial(x: u32, y: u32) -> String {
    let var = |name: char, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    };
    [var('x', x), var('y', y)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text of a support: terms ordered by `(x, y)` exponent.
pub fn render_polynomial(support: &Support) -> String {
    let mut out = String::new();
    for (i, (&(x, y), c)) in support.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mono = render_monomial(x, y);
        if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn terms(s: &Support) -> Vec<((u32, u32), Rational)> {
        s.terms().iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    #[test]
    fn reads_sum() {
        let s = parse_polynomial("x^2 + y^3").unwrap();
        assert_eq!(terms(&s), vec![((0, 3), rat(1)), ((2, 0), rat(1))]);
    }

    #[test]
    fn merges_like_terms() {
        let s = parse_polynomial("-3/2*x*y^4 + x*y^4").unwrap();
        assert_eq!(terms(&s), vec![((1, 4), ratio(-1, 2))]);
    }

    #[test]
    fn rejects_constant_term() {
        assert_eq!(
            parse_polynomial("1 + x"),
            Err(ParseError::Support(PolygonError::ConstantTerm))
        );
        assert_eq!(
            parse_polynomial("1 + x").unwrap_err().to_string(),
            "f(0) ≠ 0 required"
        );
    }

    #[test]
    fn rejects_cancelled_polynomial() {
        assert_eq!(
            parse_polynomial("x*y - y*x"),
            Err(ParseError::Support(PolygonError::ZeroPolynomial))
        );
    }

    #[test]
    fn rejects_negative_exponent() {
        assert_eq!(
            parse_polynomial("x^-2 + y"),
            Err(ParseError::NegativeExponent { pos: 2 })
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_polynomial("x^2 + + y") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x^2 ) y") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("x*").is_err());
        assert!(parse_polynomial("3/0*x").is_err());
        assert!(parse_polynomial("z").is_err());
    }

    #[test]
    fn implicit_products_and_repeats() {
        let s = parse_polynomial("2x y x + 5 y^2 * 1/5").unwrap();
        assert_eq!(terms(&s), vec![((0, 2), rat(1)), ((2, 1), rat(2))]);
    }

    #[test]
    fn exponent_limit() {
        assert!(matches!(
            parse_polynomial("x^99999999999"),
            Err(ParseError::ExponentTooLarge { .. })
        ));
    }

    #[test]
    fn render_examples() {
        let s = parse_polynomial("x^2 + y^3 - 3/2*x*y^4").unwrap();
        assert_eq!(render_polynomial(&s), "y^3 - 3/2*x*y^4 + x^2");
    }
}
