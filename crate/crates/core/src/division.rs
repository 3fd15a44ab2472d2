//! Multivariable division with a fixed, reproducible strategy.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{Coeff, ExponentVector, MonomialOrder, Polynomial};

/// Output of [`reduce`]: `f = sum(quotients[i] * divisors[i]) + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Sort key that realises a monomial order as a derived `Ord`.
pub(crate) fn order_key(order: MonomialOrder, e: &ExponentVector) -> (u64, ExponentVector) {
    match order {
        MonomialOrder::Lex => (0, e.clone()),
        MonomialOrder::DegLex => (e.total_degree(), e.clone()),
    }
}

/// Divides `f` by `divisors`.
///
/// The greatest remaining monomial is processed first. It is cancelled with
/// the lowest-indexed divisor whose leading monomial divides it, or moved to
/// the remainder when no divisor applies. Terms moved to the remainder are
/// greater than everything still pending, so the remainder comes out fully
/// reduced.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial], order: MonomialOrder) -> Result<DivisionResult> {
    let mut leads = Vec::with_capacity(divisors.len());
    for (index, g) in divisors.iter().enumerate() {
        f.check_dims(g)?;
        let (lm, lc) = g.leading_term(order).map_err(|_| Error::InvalidDivisor { index })?;
        leads.push((lm.clone(), lc.clone()));
    }

    let nvars = f.nvars();
    let mut pending: BTreeMap<(u64, ExponentVector), Coeff> =
        f.terms().map(|(e, c)| (order_key(order, e), c.clone())).collect();
    let mut quotients = vec![Polynomial::zero(nvars); divisors.len()];
    let mut remainder = Polynomial::zero(nvars);

    while let Some(((_, e), c)) = pending.pop_last() {
        let Some(i) = leads.iter().position(|(lm, _)| lm.divides_unchecked(&e)) else {
            remainder.add_term(e, c);
            continue;
        };
        let (lm, lc) = &leads[i];
        let shift = lm.quotient_unchecked(&e);
        let factor = c / lc;
        quotients[i].add_term(shift.clone(), factor.clone());
        for (ge, gc) in divisors[i].terms() {
            if ge == lm {
                continue;
            }
            let key = order_key(order, &ge.add_unchecked(&shift));
            let delta = -(gc * &factor);
            match pending.entry(key) {
                Entry::Vacant(v) => {
                    v.insert(delta);
                }
                Entry::Occupied(mut o) => {
                    *o.get_mut() += delta;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }

    Ok(DivisionResult { quotients, remainder })
}

impl DivisionResult {
    /// Recomputes `sum(quotients[i] * divisors[i]) + remainder`.
    pub fn recombine(&self, divisors: &[Polynomial]) -> Polynomial {
        let mut acc = self.remainder.clone();
        for (q, g) in self.quotients.iter().zip(divisors) {
            acc = acc.add(&q.mul_unchecked(g)).expect("matching dimensions");
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, 2).unwrap()
    }

    #[test]
    fn self_division() {
        let f = p("x1^2 - 3*x1*x2 + 5");
        let res = reduce(&f, std::slice::from_ref(&f), MonomialOrder::DegLex).unwrap();
        assert_eq!(res.quotients, vec![p("1")]);
        assert!(res.remainder.is_zero());
    }

    #[test]
    fn textbook_lex_division() {
        let f = p("x1^2*x2 + x1*x2^2 + x2^2");
        let divisors = [p("x1*x2 - 1"), p("x2^2 - 1")];
        let res = reduce(&f, &divisors, MonomialOrder::Lex).unwrap();
        assert_eq!(res.quotients, vec![p("x1 + x2"), p("1")]);
        assert_eq!(res.remainder, p("x1 + x2 + 1"));
        assert_eq!(res.recombine(&divisors), f);
    }

    #[test]
    fn nothing_divisible() {
        let f = p("x1 + 1");
        let res = reduce(&f, &[p("x2^2")], MonomialOrder::DegLex).unwrap();
        assert_eq!(res.quotients, vec![Polynomial::zero(2)]);
        assert_eq!(res.remainder, f);
    }

    #[test]
    fn rejects_zero_divisor_and_mismatched_rings() {
        let f = p("x1");
        assert_eq!(
            reduce(&f, &[p("x2"), Polynomial::zero(2)], MonomialOrder::Lex),
            Err(Error::InvalidDivisor { index: 1 })
        );
        let other = parse_polynomial("x1", 3).unwrap();
        assert!(matches!(
            reduce(&f, &[other], MonomialOrder::Lex),
            Err(Error::Dimension { .. })
        ));
    }

    fn small_poly(m: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..4, m), -3i64..4), 0..max_terms).prop_map(
            move |terms| {
                Polynomial::from_terms(
                    m,
                    terms
                        .into_iter()
                        .map(|(e, c)| (ExponentVector::new(e).unwrap(), Coeff::from_integer(c.into()))),
                )
                .unwrap()
            },
        )
    }

    fn instance() -> impl Strategy<Value = (Polynomial, Vec<Polynomial>)> {
        (1usize..4).prop_flat_map(|m| {
            (
                small_poly(m, 7),
                prop::collection::vec(
                    small_poly(m, 4).prop_filter("nonzero divisor", |g| !g.is_zero()),
                    1..4,
                ),
            )
        })
    }

    proptest! {
        #[test]
        fn division_invariants((f, divisors) in instance()) {
            for order in [MonomialOrder::Lex, MonomialOrder::DegLex] {
                let res = reduce(&f, &divisors, order).unwrap();
                prop_assert_eq!(res.recombine(&divisors), f.clone());
                for e in res.remainder.support() {
                    for g in &divisors {
                        prop_assert!(!g.leading_monomial(order).unwrap().divides(e).unwrap());
                    }
                }
                // lm(f) is the maximum of the leading monomials of the summands.
                let mut summand_lms: Vec<ExponentVector> = res
                    .quotients
                    .iter()
                    .zip(&divisors)
                    .filter(|(q, _)| !q.is_zero())
                    .map(|(q, g)| q.mul(g).unwrap().leading_monomial(order).unwrap().clone())
                    .collect();
                if !res.remainder.is_zero() {
                    summand_lms.push(res.remainder.leading_monomial(order).unwrap().clone());
                }
                let max = summand_lms.iter().max_by(|a, b| order.compare(a, b).unwrap());
                prop_assert_eq!(max, f.leading_monomial(order).ok());
                if order.is_graded() {
                    for (q, g) in res.quotients.iter().zip(&divisors) {
                        if !q.is_zero() {
                            prop_assert!(q.degree().unwrap() + g.degree().unwrap() <= f.degree().unwrap());
                        }
                    }
                }
                prop_assert_eq!(reduce(&f, &divisors, order).unwrap(), res);
            }
        }
    }
}
