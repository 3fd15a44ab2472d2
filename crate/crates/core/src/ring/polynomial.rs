use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExponentVector, MonomialOrder};
use crate::error::{Error, Result};

pub type Coeff = BigRational;

/// A sparse polynomial in `nvars` variables with exact rational
/// coefficients. No stored coefficient is zero, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Coeff>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "polynomials need at least one variable");
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Coeff::one())
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        Self::monomial(ExponentVector::zero(nvars), c)
    }

    pub fn monomial(exps: ExponentVector, c: Coeff) -> Self {
        let mut p = Polynomial::zero(exps.nvars());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `x_{index+1}`.
    pub fn variable(nvars: usize, index: usize) -> Self {
        Self::monomial(ExponentVector::variable(nvars, index), Coeff::one())
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, combining
    /// repeated exponents.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Coeff)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            if e.nvars() != nvars {
                return Err(Error::dimension(nvars, e.nvars()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Result<Self> {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(c, e)| Ok((ExponentVector::new(e.to_vec())?, Coeff::from_integer(BigInt::from(*c)))))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of their exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Coeff)> + '_ {
        self.terms.iter()
    }

    /// Terms from the greatest to the smallest monomial under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&ExponentVector, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp_unchecked(b.0, a.0));
        v
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Option<&Coeff> {
        self.terms.get(e)
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Result<(&ExponentVector, &Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp_unchecked(a.0, b.0))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Result<&ExponentVector> {
        self.leading_term(order).map(|(e, _)| e)
    }

    /// Maximal total degree of the support.
    pub fn degree(&self) -> Result<u64> {
        self.terms
            .keys()
            .map(ExponentVector::total_degree)
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = self.clone();
        out.add_scaled_shifted(other, &Coeff::one(), None);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = self.clone();
        out.add_scaled_shifted(other, &-Coeff::one(), None);
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// `c * x^shift * self`.
    pub fn monomial_mul(&self, shift: &ExponentVector, c: &Coeff) -> Result<Self> {
        if shift.nvars() != self.nvars {
            return Err(Error::dimension(self.nvars, shift.nvars()));
        }
        Ok(self.monomial_mul_unchecked(shift, c))
    }

    pub(crate) fn monomial_mul_unchecked(&self, shift: &ExponentVector, c: &Coeff) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.add_unchecked(shift), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &other.terms {
            out.add_scaled_shifted(self, c, Some(e));
        }
        out
    }

    /// `self += c * x^shift * other` in place.
    pub(crate) fn add_scaled_shifted(
        &mut self,
        other: &Polynomial,
        c: &Coeff,
        shift: Option<&ExponentVector>,
    ) {
        debug_assert_eq!(self.nvars, other.nvars);
        if c.is_zero() {
            return;
        }
        for (e, a) in &other.terms {
            let key = match shift {
                Some(s) => e.add_unchecked(s),
                None => e.clone(),
            };
            self.add_term(key, a * c);
        }
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub(crate) fn check_dims(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::dimension(self.nvars, other.nvars));
        }
        Ok(())
    }

    /// Formats the polynomial with terms sorted by `order`, greatest first.
    pub fn display(&self, order: MonomialOrder) -> impl fmt::Display + '_ {
        DisplayPoly { poly: self, order }
    }
}

struct DisplayPoly<'a> {
    poly: &'a Polynomial,
    order: MonomialOrder,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms(self.order);
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let mut wrote = false;
            if !magnitude.is_one() || e.is_zero() {
                write!(f, "{}", magnitude.numer())?;
                if !magnitude.denom().is_one() {
                    write!(f, "/{}", magnitude.denom())?;
                }
                wrote = true;
            }
            for (var, &a) in e.exps().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if wrote {
                    f.write_str("*")?;
                }
                write!(f, "x{}", var + 1)?;
                if a > 1 {
                    write!(f, "^{a}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

/// Displays with terms in degree-lexicographic order.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(MonomialOrder::DegLex).fmt(f)
    }
}
