//! Ideal membership with degree-certified cofactors.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::binomial;
use serde::Serialize;

use crate::bounds::{gamma, BoundBudget};
use crate::division::reduce;
use crate::error::{BudgetExceeded, Error, Resource, Result};
use crate::groebner::buchberger_trace;
use crate::ring::{Coeff, ExponentVector, MonomialOrder, Polynomial};

/// Where the degree bound attached to a certificate came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// `(3^(B-1) - 1) d + deg g` with `B` the antichain bound.
    Gamma,
    /// `(3^r - 1) d + deg g` with `r` read off the Buchberger run.
    TraceDerived,
}

/// Answer to a membership query. When `member` is true,
/// `g = sum(cofactors[i] * generators[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub member: bool,
    pub cofactors: Vec<Polynomial>,
    /// Largest degree among nonzero cofactors (0 when there are none).
    pub max_cofactor_degree: u64,
    pub bound_used: BigUint,
    pub bound_source: BoundSource,
    /// Index of the final stage of the Buchberger run.
    pub trace_length: usize,
    /// The degree bound `d` used for the generators.
    pub d: u64,
}

impl MembershipCertificate {
    /// Recomputes `sum(cofactors[i] * generators[i])` and compares with `g`.
    pub fn verify(&self, g: &Polynomial, generators: &[Polynomial]) -> bool {
        if !self.member {
            return false;
        }
        let mut acc = Polynomial::zero(g.nvars());
        for (h, f) in self.cofactors.iter().zip(generators) {
            match h.mul(f).and_then(|p| acc.add(&p)) {
                Ok(sum) => acc = sum,
                Err(_) => return false,
            }
        }
        (self.cofactors.len() == generators.len() || self.cofactors.is_empty()) && &acc == g
    }
}

fn max_degree(polys: &[Polynomial]) -> u64 {
    polys.iter().filter_map(|p| p.degree().ok()).max().unwrap_or(0)
}

fn check_generators(g: &Polynomial, generators: &[Polynomial]) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::Precondition("the ideal needs at least one generator".into()));
    }
    for (index, f) in generators.iter().enumerate() {
        g.check_dims(f)?;
        if f.is_zero() {
            return Err(Error::InvalidInput { index });
        }
    }
    Ok(())
}

/// Membership of `g` in the ideal generated by `generators`, with `d` set to
/// the largest generator degree.
pub fn membership(g: &Polynomial, generators: &[Polynomial], order: MonomialOrder) -> Result<MembershipCertificate> {
    check_generators(g, generators)?;
    membership_with_degree(g, generators, order, max_degree(generators).max(1))
}

/// [`membership`] with an explicit degree bound `d >= deg(generators[i])`.
pub fn membership_with_degree(
    g: &Polynomial,
    generators: &[Polynomial],
    order: MonomialOrder,
    d: u64,
) -> Result<MembershipCertificate> {
    order.require_graded()?;
    check_generators(g, generators)?;
    if d == 0 || d < max_degree(generators) {
        return Err(Error::Precondition(format!(
            "d = {d} must be at least 1 and bound every generator degree"
        )));
    }
    let trace = buchberger_trace(generators, order)?;
    let r = trace.r();
    let deg_g = g.degree().unwrap_or(0);
    let bound_used = crate::bounds::chi(u32::try_from(r).expect("small trace"), d) + deg_g;

    if g.is_zero() {
        return Ok(MembershipCertificate {
            member: true,
            cofactors: Vec::new(),
            max_cofactor_degree: 0,
            bound_used,
            bound_source: BoundSource::TraceDerived,
            trace_length: r,
            d,
        });
    }

    let basis = trace.basis_polynomials();
    let division = reduce(g, &basis, order)?;
    if !division.remainder.is_zero() {
        return Ok(MembershipCertificate {
            member: false,
            cofactors: Vec::new(),
            max_cofactor_degree: 0,
            bound_used,
            bound_source: BoundSource::TraceDerived,
            trace_length: r,
            d,
        });
    }

    let nvars = g.nvars();
    let mut cofactors = vec![Polynomial::zero(nvars); generators.len()];
    for (q, element) in division.quotients.iter().zip(trace.basis()) {
        if q.is_zero() {
            continue;
        }
        for (slot, a) in cofactors.iter_mut().zip(&element.cofactors) {
            if !a.is_zero() {
                *slot = slot.add(&q.mul_unchecked(a))?;
            }
        }
    }
    Ok(MembershipCertificate {
        member: true,
        max_cofactor_degree: max_degree(&cofactors),
        cofactors,
        bound_used,
        bound_source: BoundSource::TraceDerived,
        trace_length: r,
        d,
    })
}

/// An ideal represented by a Gröbner basis, for repeated membership tests
/// under any admissible order.
#[derive(Clone, Debug)]
pub struct Ideal {
    nvars: usize,
    basis: Vec<Polynomial>,
    order: MonomialOrder,
}

impl Ideal {
    /// Generated by `generators` (zero generators are ignored).
    pub fn new(nvars: usize, generators: &[Polynomial], order: MonomialOrder) -> Result<Self> {
        let nonzero: Vec<Polynomial> = generators.iter().filter(|p| !p.is_zero()).cloned().collect();
        for p in generators {
            if p.nvars() != nvars {
                return Err(Error::dimension(nvars, p.nvars()));
            }
        }
        let basis = if nonzero.is_empty() {
            Vec::new()
        } else {
            buchberger_trace(&nonzero, order)?.basis_polynomials()
        };
        Ok(Ideal { nvars, basis, order })
    }

    pub fn contains(&self, g: &Polynomial) -> Result<bool> {
        if g.nvars() != self.nvars {
            return Err(Error::dimension(self.nvars, g.nvars()));
        }
        if self.basis.is_empty() {
            return Ok(g.is_zero());
        }
        Ok(reduce(g, &self.basis, self.order)?.remainder.is_zero())
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }
}

/// Membership of `g` in the ideal generated by `generators`, under any order.
pub fn ideal_contains(g: &Polynomial, generators: &[Polynomial], order: MonomialOrder) -> Result<bool> {
    Ideal::new(g.nvars(), generators, order)?.contains(g)
}

/// Outcome of [`verify_membership_bound`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipBoundReport {
    pub identity_verified: bool,
    pub observed_degree: u64,
    #[serde(with = "crate::decimal")]
    pub trace_bound: BigUint,
    pub trace_bound_holds: bool,
    /// `gamma(m, d, deg g)` when it evaluated within the budget.
    #[serde(serialize_with = "serialize_opt_decimal")]
    pub gamma: Option<BigUint>,
    pub gamma_holds: Option<bool>,
    /// Why gamma was not evaluated.
    pub gamma_notice: Option<BudgetExceeded>,
    pub checked_against: BoundSource,
    pub pass: bool,
}

fn serialize_opt_decimal<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// Checks a membership certificate against the effective degree bound
/// `gamma(m, d, deg g)`. When gamma is out of budget, the check falls back
/// to the trace-derived bound `(3^r - 1) d + deg g`, which gamma dominates,
/// and records why. The certificate identity is always recomputed.
pub fn verify_membership_bound(
    cert: &MembershipCertificate,
    g: &Polynomial,
    generators: &[Polynomial],
    m: usize,
    d: u64,
    budget: &BoundBudget,
) -> Result<MembershipBoundReport> {
    if !cert.member {
        return Err(Error::Precondition("certificate is for a non-member".into()));
    }
    check_generators(g, generators)?;
    if d == 0 || d < max_degree(generators) {
        return Err(Error::Precondition(format!("d = {d} must bound every generator degree")));
    }
    if m < g.nvars() {
        return Err(Error::Precondition(format!(
            "m = {m} is smaller than the {} variables in use",
            g.nvars()
        )));
    }
    let identity_verified = cert.verify(g, generators);
    let observed_degree = cert.max_cofactor_degree;
    let deg_g = g.degree().unwrap_or(0);
    let trace_bound = crate::bounds::chi(u32::try_from(cert.trace_length).expect("small trace"), d) + deg_g;
    let trace_bound_holds = BigUint::from(observed_degree) <= trace_bound;

    let (gamma_value, gamma_notice) = match gamma(m, d, deg_g, budget) {
        Ok(value) => (Some(value), None),
        Err(Error::Budget(report)) => (None, Some(report)),
        Err(other) => return Err(other),
    };
    let gamma_holds = gamma_value.as_ref().map(|gv| &BigUint::from(observed_degree) <= gv);
    let checked_against = if gamma_value.is_some() { BoundSource::Gamma } else { BoundSource::TraceDerived };
    let pass = identity_verified && gamma_holds.unwrap_or(trace_bound_holds);
    Ok(MembershipBoundReport {
        identity_verified,
        observed_degree,
        trace_bound,
        trace_bound_holds,
        gamma: gamma_value,
        gamma_holds,
        gamma_notice,
        checked_against,
        pass,
    })
}

/// Decides whether `g = sum(h_i * generators[i])` has a solution with every
/// `deg h_i <= degree_cap`, by exact linear algebra over the monomial basis.
///
/// The products `x^mu * generators[i]` with `|mu| <= degree_cap` are brought
/// into echelon form one at a time; `g` is in their span iff it reduces to
/// zero. Fails with a budget error when the number of unknowns exceeds
/// `max_unknowns`.
pub fn brute_force_membership(
    g: &Polynomial,
    generators: &[Polynomial],
    degree_cap: u64,
    max_unknowns: u64,
) -> Result<bool> {
    for f in generators {
        g.check_dims(f)?;
    }
    let nvars = g.nvars();
    let per_cofactor = binomial(BigUint::from(degree_cap) + nvars, BigUint::from(nvars as u64));
    let unknowns = per_cofactor * generators.len();
    let limit = BigUint::from(max_unknowns);
    if unknowns > limit {
        return Err(Error::Budget(BudgetExceeded {
            resource: Resource::SystemSize,
            limit: max_unknowns,
            requested: u64::try_from(&unknowns).unwrap_or(u64::MAX),
            steps_used: 0,
            progress: format!("{} generators with cofactors of degree <= {degree_cap}", generators.len()),
        }));
    }

    let multipliers = monomials_up_to(nvars, degree_cap);
    // pivot monomial -> row whose greatest monomial is the pivot, scaled to 1
    let mut rows: BTreeMap<ExponentVector, Polynomial> = BTreeMap::new();
    for f in generators {
        for mu in &multipliers {
            let v = f.monomial_mul_unchecked(mu, &Coeff::from_integer(1.into()));
            if let Some((pivot, row)) = eliminate(v, &rows) {
                rows.insert(pivot, row);
            }
        }
    }
    Ok(eliminate(g.clone(), &rows).is_none())
}

/// Reduces `v` against the echelon rows. Returns `None` when `v` is in their
/// span, otherwise the new pivot and the normalised row.
fn eliminate(mut v: Polynomial, rows: &BTreeMap<ExponentVector, Polynomial>) -> Option<(ExponentVector, Polynomial)> {
    loop {
        let (top, c) = match v.terms().next_back() {
            None => return None,
            Some((e, c)) => (e.clone(), c.clone()),
        };
        match rows.get(&top) {
            Some(row) => v.add_scaled_shifted(row, &-c, None),
            None => {
                let normalised = v.scale(&c.recip());
                return Some((top, normalised));
            }
        }
    }
}

/// All exponent vectors with total degree at most `cap`.
pub(crate) fn monomials_up_to(nvars: usize, cap: u64) -> Vec<ExponentVector> {
    fn fill(prefix: &mut Vec<u32>, remaining_vars: usize, budget: u64, out: &mut Vec<ExponentVector>) {
        if remaining_vars == 0 {
            out.push(ExponentVector::new(prefix.clone()).expect("non-empty"));
            return;
        }
        for a in 0..=budget {
            prefix.push(a as u32);
            fill(prefix, remaining_vars - 1, budget - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(nvars), nvars, cap, &mut out);
    out
}
