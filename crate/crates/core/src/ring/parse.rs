//! Text grammar for polynomials:
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := 'x' INDEX ('^' NAT)?
//! coeff  := INT ('/' POSINT)?
//! ```
//!
//! Whitespace is insignificant. Variables are numbered from 1.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Coeff, ExponentVector, Polynomial};
use crate::error::{Error, Result};

struct RawTerm {
    coeff: Coeff,
    factors: Vec<(usize, u32)>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let mut term = self.term()?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(other) => return self.error(format!("unexpected character {:?}", other as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut term = RawTerm { coeff: Coeff::one(), factors: Vec::new() };
        match self.peek() {
            Some(b'x') => term.factors.push(self.factor()?),
            Some(c) if c.is_ascii_digit() => {
                let numer: BigInt = self.digits()?.parse().expect("digits parse");
                let denom = if self.eat(b'/') {
                    let d: BigInt = self.digits()?.parse().expect("digits parse");
                    if d.is_zero() {
                        return self.error("zero denominator");
                    }
                    d
                } else {
                    BigInt::one()
                };
                term.coeff = Coeff::new(numer, denom);
            }
            _ => return self.error("expected a coefficient or a variable"),
        }
        while self.eat(b'*') {
            term.factors.push(self.factor()?);
        }
        Ok(term)
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        if !self.eat(b'x') {
            return self.error("expected a variable x<index>");
        }
        let index: usize = match self.digits()?.parse() {
            Ok(i) if i >= 1 => i,
            _ => return self.error("variable indices start at 1"),
        };
        let power = if self.eat(b'^') {
            match self.digits()?.parse() {
                Ok(p) => p,
                Err(_) => return self.error("exponent too large"),
            }
        } else {
            1
        };
        Ok((index, power))
    }
}

fn parse_raw(src: &str) -> Result<Vec<RawTerm>> {
    let mut parser = Parser::new(src);
    if parser.peek().is_none() {
        return parser.error("empty polynomial");
    }
    parser.poly()
}

fn assemble(raw: Vec<RawTerm>, nvars: usize) -> Result<Polynomial> {
    let mut p = Polynomial::zero(nvars);
    for term in raw {
        let mut exps = vec![0u32; nvars];
        for (index, power) in term.factors {
            if index > nvars {
                return Err(Error::Parse {
                    position: 0,
                    message: format!("variable x{index} exceeds the {nvars} ambient variables"),
                });
            }
            exps[index - 1] = exps[index - 1].checked_add(power).ok_or_else(|| Error::Parse {
                position: 0,
                message: "exponent overflow".into(),
            })?;
        }
        p.add_term(ExponentVector(exps), term.coeff);
    }
    Ok(p)
}

/// Parses a polynomial in a ring with `nvars` variables.
pub fn parse_polynomial(src: &str, nvars: usize) -> Result<Polynomial> {
    if nvars == 0 {
        return Err(Error::dimension(1, 0));
    }
    assemble(parse_raw(src)?, nvars)
}

/// Highest variable index mentioned in `src` (0 if none).
pub fn variable_count(src: &str) -> Result<usize> {
    Ok(parse_raw(src)?
        .iter()
        .flat_map(|t| t.factors.iter().map(|(i, _)| *i))
        .max()
        .unwrap_or(0))
}

/// Parses several polynomials into one common ring. The ring has
/// `max(min_vars, highest index used, 1)` variables.
pub fn parse_polynomials<S: AsRef<str>>(sources: &[S], min_vars: usize) -> Result<Vec<Polynomial>> {
    let raws = sources
        .iter()
        .map(|s| parse_raw(s.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let nvars = raws
        .iter()
        .flatten()
        .flat_map(|t| t.factors.iter().map(|(i, _)| *i))
        .max()
        .unwrap_or(0)
        .max(min_vars)
        .max(1);
    raws.into_iter().map(|raw| assemble(raw, nvars)).collect()
}

impl std::str::FromStr for Polynomial {
    type Err = Error;

    /// Parses into the smallest ring containing every variable used.
    fn from_str(s: &str) -> Result<Self> {
        let raw = parse_raw(s)?;
        let nvars = raw
            .iter()
            .flat_map(|t| t.factors.iter().map(|(i, _)| *i))
            .max()
            .unwrap_or(1);
        assemble(raw, nvars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_example() {
        let p = parse_polynomial("x1^2*x2 - 1/2*x3 + 4", 3).unwrap();
        assert_eq!(p.len(), 3);
        let half = Coeff::new((-1).into(), 2.into());
        assert_eq!(p.coeff(&ExponentVector(vec![0, 0, 1])), Some(&half));
    }

    #[test]
    fn whitespace_and_repeated_factors() {
        let a = parse_polynomial("  3 * x1 * x1 ^ 2 +x2", 2).unwrap();
        let b = parse_polynomial("3*x1^3+x2", 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_polynomial("x1 - x1", 1).unwrap(), Polynomial::zero(1));
        assert_eq!(parse_polynomial("0", 2).unwrap(), Polynomial::zero(2));
        assert_eq!(parse_polynomial("x 1 ^ 2", 1).unwrap(), parse_polynomial("x1^2", 1).unwrap());
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "x0", "x", "1/0", "x1 +", "x1 ** x2", "2x1", "x2", "y1"] {
            assert!(parse_polynomial(bad, 1).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn common_ring_inference() {
        let ps = parse_polynomials(&["x1", "x3 + 1"], 0).unwrap();
        assert!(ps.iter().all(|p| p.nvars() == 3));
        let ps = parse_polynomials(&["7"], 2).unwrap();
        assert_eq!(ps[0].nvars(), 2);
        assert_eq!(variable_count("x1*x4 + 2").unwrap(), 4);
        assert_eq!("x2^2".parse::<Polynomial>().unwrap().nvars(), 2);
    }
}
