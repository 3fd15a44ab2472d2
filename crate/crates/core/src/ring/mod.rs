//! Exponent vectors, monomial orders and sparse polynomials over the
//! rationals.

mod parse;
mod polynomial;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::{parse_polynomial, parse_polynomials, variable_count};
pub use polynomial::{Coeff, Polynomial};

/// A point of `N^m`, doubling as the monomial `x1^a1 * ... * xm^am`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::dimension(1, 0));
        }
        Ok(ExponentVector(exps))
    }

    /// The neutral element `(0, ..., 0)`.
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "exponent vectors need at least one variable");
        ExponentVector(vec![0; nvars])
    }

    /// The exponent vector of the variable `x_{index+1}`.
    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.0[index] = 1;
        e
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `other - self`, provided `self` divides `other`.
    pub(crate) fn quotient_unchecked(&self, other: &Self) -> Self {
        ExponentVector(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub(crate) fn check_dims(&self, other: &Self) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::dimension(self.nvars(), other.nvars()));
        }
        Ok(())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for ExponentVector {
    type Err = Error;

    /// Parses `(a1,...,am)`; the parentheses are optional.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .unwrap_or(inner);
        let exps = inner
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<u32>().map_err(|_| Error::Parse {
                    position: 0,
                    message: format!("invalid exponent {part:?} in {s:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ExponentVector::new(exps)
    }
}

/// Admissible orders on `N^m` with precedence `x1 > x2 > ... > xm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[serde(rename = "deglex")]
    DegLex,
}

impl MonomialOrder {
    /// Whether `a < b` implies `|a| <= |b|`.
    pub fn is_graded(self) -> bool {
        matches!(self, MonomialOrder::DegLex)
    }

    pub fn compare(self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        a.check_dims(b)?;
        Ok(self.cmp_unchecked(a, b))
    }

    pub(crate) fn cmp_unchecked(self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match self {
            // Vec ordering compares the first differing coordinate.
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| a.0.cmp(&b.0)),
        }
    }

    pub fn require_graded(self) -> Result<()> {
        if self.is_graded() {
            Ok(())
        } else {
            Err(Error::OrderNotGraded(self))
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::DegLex => "deglex",
        })
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "deglex" => Ok(MonomialOrder::DegLex),
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown monomial order {other:?} (expected lex or deglex)"),
            }),
        }
    }
}
