//! S-polynomials and the batch Buchberger algorithm.
//!
//! Each round replaces the current set `B` by `B ∪ S_B`, where `S_B` holds
//! the nonzero reductions modulo `B` of all S-polynomials of pairs from `B`.
//! Every element carries a certificate expressing it over the original
//! input, so the degree growth of the representation can be audited stage
//! by stage.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::chi;
use crate::division::reduce;
use crate::error::{Error, Result};
use crate::ring::{Coeff, ExponentVector, MonomialOrder, Polynomial};

/// The two monomial multipliers of an S-polynomial:
/// `S(f, g) = left.1 * x^left.0 * f - right.1 * x^right.0 * g`.
struct SPair {
    left: (ExponentVector, Coeff),
    right: (ExponentVector, Coeff),
}

fn s_pair(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Result<SPair> {
    f.check_dims(g)?;
    let (lm_f, lc_f) = f.leading_term(order)?;
    let (lm_g, lc_g) = g.leading_term(order)?;
    let lcm = lm_f.lcm_unchecked(lm_g);
    Ok(SPair {
        left: (lm_f.quotient_unchecked(&lcm), lc_f.recip()),
        right: (lm_g.quotient_unchecked(&lcm), lc_g.recip()),
    })
}

impl SPair {
    fn apply(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut s = f.monomial_mul_unchecked(&self.left.0, &self.left.1);
        s.add_scaled_shifted(g, &-&self.right.1, Some(&self.right.0));
        s
    }
}

/// `(x^a / lt(f)) f - (x^a / lt(g)) g` with `x^a = lcm(lm f, lm g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
    Ok(s_pair(f, g, order)?.apply(f, g))
}

fn check_nonzero(polys: &[Polynomial], err: impl Fn(usize) -> Error) -> Result<()> {
    if let Some(i) = polys.iter().position(Polynomial::is_zero) {
        return Err(err(i));
    }
    if let Some(first) = polys.first() {
        for p in &polys[1..] {
            first.check_dims(p)?;
        }
    }
    Ok(())
}

/// Nonzero reductions modulo `basis` of the S-polynomials of all unordered
/// pairs, in pair order `(0,1), (0,2), ..., (1,2), ...`, without duplicates.
pub fn s_reductions(basis: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    check_nonzero(basis, |index| Error::InvalidInput { index })?;
    let mut out: Vec<Polynomial> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], order)?;
            let r = reduce(&s, basis, order)?.remainder;
            if !r.is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Whether every pairwise S-polynomial reduces to zero modulo `basis`.
pub fn is_groebner(basis: &[Polynomial], order: MonomialOrder) -> Result<bool> {
    check_nonzero(basis, |index| Error::InvalidInput { index })?;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], order)?;
            if !reduce(&s, basis, order)?.remainder.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A polynomial together with cofactors over the input set:
/// `poly = sum(cofactors[i] * input[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedPolynomial {
    pub poly: Polynomial,
    pub cofactors: Vec<Polynomial>,
}

impl CertifiedPolynomial {
    /// Recomputes the combination and compares it with `poly`.
    pub fn verify(&self, input: &[Polynomial]) -> bool {
        if self.cofactors.len() != input.len() {
            return false;
        }
        let mut acc = Polynomial::zero(self.poly.nvars());
        for (a, f) in self.cofactors.iter().zip(input) {
            if a.nvars() != acc.nvars() || f.nvars() != acc.nvars() {
                return false;
            }
            acc = acc.add(&a.mul_unchecked(f)).expect("dimensions checked");
        }
        acc == self.poly
    }

    /// Largest degree among the nonzero cofactors.
    pub fn max_cofactor_degree(&self) -> Option<u64> {
        self.cofactors.iter().filter_map(|a| a.degree().ok()).max()
    }
}

/// Full record of a batch Buchberger run.
///
/// Stages are nested: stage `n` is the prefix `elements[..stage_ends[n]]`.
#[derive(Clone, Debug)]
pub struct BuchbergerTrace {
    input: Vec<Polynomial>,
    order: MonomialOrder,
    elements: Vec<CertifiedPolynomial>,
    stage_ends: Vec<usize>,
    lt_generators: Vec<Vec<ExponentVector>>,
}

/// Minimal generators of the monomial ideal spanned by `monomials`.
fn minimal_generators<'a>(monomials: impl IntoIterator<Item = &'a ExponentVector>) -> Vec<ExponentVector> {
    let mut all: Vec<&ExponentVector> = monomials.into_iter().collect();
    all.sort();
    all.dedup();
    let mut out: Vec<ExponentVector> = all
        .iter()
        .filter(|e| !all.iter().any(|other| other != *e && other.divides_unchecked(e)))
        .map(|e| (*e).clone())
        .collect();
    out.sort();
    out
}

/// Runs the batch Buchberger algorithm on `input`, recording every stage.
pub fn buchberger_trace(input: &[Polynomial], order: MonomialOrder) -> Result<BuchbergerTrace> {
    if input.is_empty() {
        return Err(Error::Precondition("at least one input polynomial is required".into()));
    }
    check_nonzero(input, |index| Error::InvalidInput { index })?;
    let nvars = input[0].nvars();
    let s = input.len();

    let mut elements: Vec<CertifiedPolynomial> = Vec::new();
    for (i, f) in input.iter().enumerate() {
        if elements.iter().any(|b| &b.poly == f) {
            continue;
        }
        let mut cofactors = vec![Polynomial::zero(nvars); s];
        cofactors[i] = Polynomial::one(nvars);
        elements.push(CertifiedPolynomial { poly: f.clone(), cofactors });
    }
    let mut stage_ends = vec![elements.len()];
    let mut lt_generators = vec![minimal_generators(
        elements.iter().map(|b| b.poly.leading_monomial(order).expect("nonzero")),
    )];

    // A pair whose S-polynomial reduces to zero modulo B_n reduces to zero
    // modulo every later stage too: later stages only append divisors, so
    // each division step picks the same lowest-indexed divisor as before.
    let mut settled: HashSet<(usize, usize)> = HashSet::new();
    loop {
        let n = elements.len();
        let current: Vec<Polynomial> = elements.iter().map(|b| b.poly.clone()).collect();
        let mut fresh: Vec<CertifiedPolynomial> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if settled.contains(&(i, j)) {
                    continue;
                }
                let pair = s_pair(&current[i], &current[j], order)?;
                let spoly = pair.apply(&current[i], &current[j]);
                let division = reduce(&spoly, &current, order)?;
                if division.remainder.is_zero() {
                    settled.insert((i, j));
                    continue;
                }
                if fresh.iter().any(|c| c.poly == division.remainder) {
                    continue;
                }
                let cofactors = (0..s)
                    .map(|k| {
                        let mut a = elements[i].cofactors[k].monomial_mul_unchecked(&pair.left.0, &pair.left.1);
                        a.add_scaled_shifted(&elements[j].cofactors[k], &-&pair.right.1, Some(&pair.right.0));
                        for (q, b) in division.quotients.iter().zip(&elements) {
                            if !q.is_zero() && !b.cofactors[k].is_zero() {
                                a = a.sub(&q.mul_unchecked(&b.cofactors[k])).expect("same ring");
                            }
                        }
                        a
                    })
                    .collect();
                fresh.push(CertifiedPolynomial { poly: division.remainder, cofactors });
            }
        }
        if fresh.is_empty() {
            break;
        }
        elements.extend(fresh);
        stage_ends.push(elements.len());
        lt_generators.push(minimal_generators(
            elements.iter().map(|b| b.poly.leading_monomial(order).expect("nonzero")),
        ));
    }

    Ok(BuchbergerTrace { input: input.to_vec(), order, elements, stage_ends, lt_generators })
}

impl BuchbergerTrace {
    pub fn input(&self) -> &[Polynomial] {
        &self.input
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Index of the final stage.
    pub fn r(&self) -> usize {
        self.stage_ends.len() - 1
    }

    pub fn stage_count(&self) -> usize {
        self.stage_ends.len()
    }

    /// The set `B_n`, in insertion order.
    pub fn stage(&self, n: usize) -> &[CertifiedPolynomial] {
        &self.elements[..self.stage_ends[n]]
    }

    /// Elements added in round `n` (for `n = 0`, the deduplicated input).
    pub fn added_in(&self, n: usize) -> &[CertifiedPolynomial] {
        let start = if n == 0 { 0 } else { self.stage_ends[n - 1] };
        &self.elements[start..self.stage_ends[n]]
    }

    /// The final stage, a Gröbner basis of the input ideal.
    pub fn basis(&self) -> &[CertifiedPolynomial] {
        self.stage(self.r())
    }

    pub fn basis_polynomials(&self) -> Vec<Polynomial> {
        self.basis().iter().map(|b| b.poly.clone()).collect()
    }

    /// Minimal generators of the leading-monomial ideal of each stage.
    pub fn lt_generators(&self, n: usize) -> &[ExponentVector] {
        &self.lt_generators[n]
    }

    /// Whether every round adds a leading monomial outside the previous
    /// stage's leading-monomial ideal.
    pub fn strictly_ascends(&self) -> bool {
        (0..self.r()).all(|n| {
            let gens = &self.lt_generators[n];
            self.added_in(n + 1).iter().any(|b| {
                let lm = b.poly.leading_monomial(self.order).expect("nonzero");
                !gens.iter().any(|g| g.divides_unchecked(lm))
            })
        })
    }

    /// Whether every certificate recomputes exactly.
    pub fn certificates_verify(&self) -> bool {
        self.elements.iter().all(|b| b.verify(&self.input))
    }

    /// Structured form for serialisation.
    pub fn to_document(&self) -> TraceDocument {
        let order = self.order;
        let show = |p: &Polynomial| p.display(order).to_string();
        TraceDocument {
            order,
            nvars: self.input[0].nvars(),
            input: self.input.iter().map(show).collect(),
            r: self.r(),
            stages: (0..self.stage_count())
                .map(|n| StageDocument {
                    stage: n,
                    size: self.stage_ends[n],
                    lt_generators: self.lt_generators[n].clone(),
                    added: self
                        .added_in(n)
                        .iter()
                        .map(|b| CertificateDocument {
                            poly: show(&b.poly),
                            leading_monomial: b.poly.leading_monomial(order).expect("nonzero").clone(),
                            cofactors: b.cofactors.iter().map(show).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceDocument {
    pub order: MonomialOrder,
    pub nvars: usize,
    pub input: Vec<String>,
    pub r: usize,
    pub stages: Vec<StageDocument>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageDocument {
    pub stage: usize,
    pub size: usize,
    pub lt_generators: Vec<ExponentVector>,
    pub added: Vec<CertificateDocument>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateDocument {
    pub poly: String,
    pub leading_monomial: ExponentVector,
    pub cofactors: Vec<String>,
}

/// Per-stage outcome of [`verify_stage_degree_bounds`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageBoundReport {
    pub stage: usize,
    pub max_cofactor_degree: Option<u64>,
    #[serde(with = "crate::decimal")]
    pub cofactor_bound: BigUint,
    pub max_leading_degree: u64,
    #[serde(with = "crate::decimal")]
    pub leading_bound: BigUint,
    pub certificates_verified: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBoundReport {
    pub d: u64,
    pub stages: Vec<StageBoundReport>,
    pub pass: bool,
}

/// Checks the stage-wise degree growth of a trace under a graded order:
/// every element of `B_n` has cofactors of degree at most `(3^n - 1) d`
/// and a leading monomial of degree at most `3^n d`, and every certificate
/// recomputes.
pub fn verify_stage_degree_bounds(trace: &BuchbergerTrace, d: u64) -> Result<DegreeBoundReport> {
    trace.order.require_graded()?;
    let max_input = trace.input.iter().map(|f| f.degree().expect("nonzero")).max().unwrap_or(0);
    if d == 0 || d < max_input {
        return Err(Error::Precondition(format!(
            "d = {d} must be at least 1 and at least the largest input degree {max_input}"
        )));
    }
    let stages: Vec<StageBoundReport> = (0..trace.stage_count())
        .map(|n| {
            let members = trace.stage(n);
            let n32 = u32::try_from(n).expect("stage count fits in u32");
            let cofactor_bound = chi(n32, d);
            let leading_bound = BigUint::from(3u32).pow(n32) * d;
            let max_cofactor_degree = members.iter().filter_map(CertifiedPolynomial::max_cofactor_degree).max();
            let max_leading_degree = members
                .iter()
                .map(|b| b.poly.leading_monomial(trace.order).expect("nonzero").total_degree())
                .max()
                .unwrap_or(0);
            let certificates_verified = members.iter().all(|b| b.verify(&trace.input));
            let pass = certificates_verified
                && max_cofactor_degree.is_none_or(|deg| BigUint::from(deg) <= cofactor_bound)
                && BigUint::from(max_leading_degree) <= leading_bound;
            StageBoundReport {
                stage: n,
                max_cofactor_degree,
                cofactor_bound,
                max_leading_degree,
                leading_bound,
                certificates_verified,
                pass,
            }
        })
        .collect();
    let pass = stages.iter().all(|s| s.pass);
    Ok(DegreeBoundReport { d, stages, pass })
}
