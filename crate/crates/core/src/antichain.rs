//! Antichains in `N^m` and their link to ascending ideal chains.
//!
//! Antichains here are one-sided: no earlier element divides a later one.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use serde::Serialize;

use crate::bounds::{BoundBudget, DegreeFunction};
use crate::division::reduce;
use crate::error::{Error, Result};
use crate::membership::{monomials_up_to, Ideal};
use crate::ring::{ExponentVector, MonomialOrder, Polynomial};

/// A sequence of exponent vectors in which no earlier element divides a
/// later one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct AntichainWitness(Vec<ExponentVector>);

impl AntichainWitness {
    /// Checks the antichain property.
    pub fn new(elements: Vec<ExponentVector>) -> Result<Self> {
        if !is_antichain(&elements)? {
            return Err(Error::Precondition("sequence is not an antichain".into()));
        }
        Ok(AntichainWitness(elements))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn elements(&self) -> &[ExponentVector] {
        &self.0
    }

    pub fn into_elements(self) -> Vec<ExponentVector> {
        self.0
    }
}

impl fmt::Display for AntichainWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

fn check_uniform(seq: &[ExponentVector]) -> Result<()> {
    if let Some(first) = seq.first() {
        for e in &seq[1..] {
            first.check_dims(e)?;
        }
    }
    Ok(())
}

/// True iff no element of `seq` divides any later element.
pub fn is_antichain(seq: &[ExponentVector]) -> Result<bool> {
    check_uniform(seq)?;
    Ok(seq
        .iter()
        .enumerate()
        .all(|(i, a)| seq[i + 1..].iter().all(|b| !a.divides_unchecked(b))))
}

/// True iff `|seq[i]| <= f(i + 1)` for every position.
pub fn is_f_bounded(seq: &[ExponentVector], f: &DegreeFunction) -> Result<bool> {
    check_uniform(seq)?;
    let budget = BoundBudget::default();
    for (i, e) in seq.iter().enumerate() {
        if BigUint::from(e.total_degree()) > f.value_at(i as u64 + 1, &budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`is_f_bounded`], and additionally the `j`-th coordinate of every element
/// is at most `beta[j]`.
pub fn is_f_beta_bounded(seq: &[ExponentVector], f: &DegreeFunction, beta: &[u64]) -> Result<bool> {
    check_uniform(seq)?;
    if let Some(first) = seq.first() {
        if beta.len() > first.nvars() {
            return Err(Error::dimension(first.nvars(), beta.len()));
        }
    }
    let within_beta = seq
        .iter()
        .all(|e| e.exps().iter().zip(beta).all(|(&a, &b)| u64::from(a) <= b));
    Ok(within_beta && is_f_bounded(seq, f)?)
}

/// A monomial ideal given by generating exponent vectors.
#[derive(Clone, Debug, Default)]
pub struct MonomialIdeal {
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: ExponentVector) {
        self.generators.push(e);
    }

    /// `x^e` lies in a monomial ideal iff some generator divides it.
    pub fn contains(&self, e: &ExponentVector) -> Result<bool> {
        for g in &self.generators {
            if g.divides(e)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// True iff `x^seq[i+1]` is outside `<x^seq[0], ..., x^seq[i]>` for every `i`.
pub fn escapes_earlier_ideals(seq: &[ExponentVector]) -> Result<bool> {
    let mut ideal = MonomialIdeal::new();
    for e in seq {
        if ideal.contains(e)? {
            return Ok(false);
        }
        ideal.insert(e.clone());
    }
    Ok(true)
}

/// Result of [`longest_f_bounded_antichain`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub length: usize,
    pub witness: AntichainWitness,
    pub nodes_visited: u64,
}

struct Search<'a> {
    nvars: usize,
    f: &'a DegreeFunction,
    budget: BoundBudget,
    max_nodes: u64,
    nodes: u64,
    /// Candidates for each degree cap, greatest in lex order first.
    by_cap: HashMap<u64, Vec<ExponentVector>>,
    caps: Vec<u64>,
    /// Every vector that can ever be a candidate, when `f` is bounded.
    universe: Option<Vec<ExponentVector>>,
    chosen: Vec<ExponentVector>,
    best: Vec<ExponentVector>,
}

impl Search<'_> {
    fn exhausted(&self) -> Error {
        Error::SearchExhausted { limit: self.max_nodes, best: self.best.clone() }
    }

    fn charge(&mut self, amount: u64) -> Result<()> {
        self.nodes = self.nodes.saturating_add(amount);
        if self.nodes > self.max_nodes {
            return Err(self.exhausted());
        }
        Ok(())
    }

    fn enumerate(&mut self, cap: u64) -> Result<Vec<ExponentVector>> {
        let count = binomial(BigUint::from(cap) + self.nvars, BigUint::from(self.nvars as u64));
        let count = u64::try_from(&count).unwrap_or(u64::MAX);
        self.charge(count)?;
        let mut all = monomials_up_to(self.nvars, cap);
        all.sort_unstable_by(|a, b| b.cmp(a));
        Ok(all)
    }

    fn cap_at(&mut self, position: usize) -> Result<u64> {
        while self.caps.len() < position {
            let value = self.f.value_at(self.caps.len() as u64 + 1, &self.budget)?;
            let cap = u64::try_from(&value).map_err(|_| self.exhausted())?;
            self.caps.push(cap);
        }
        Ok(self.caps[position - 1])
    }

    fn candidates(&mut self, position: usize) -> Result<Vec<ExponentVector>> {
        let cap = self.cap_at(position)?;
        if !self.by_cap.contains_key(&cap) {
            let list = self.enumerate(cap)?;
            self.by_cap.insert(cap, list);
        }
        Ok(self.by_cap[&cap].clone())
    }

    fn admissible(&self, e: &ExponentVector) -> bool {
        self.chosen.iter().all(|c| !c.divides_unchecked(e))
    }

    /// Number of vectors that could still extend the current prefix.
    fn room(&self) -> Option<usize> {
        self.universe
            .as_ref()
            .map(|u| u.iter().filter(|e| self.admissible(e)).count())
    }

    fn dfs(&mut self) -> Result<()> {
        self.charge(1)?;
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if let Some(room) = self.room() {
            if self.chosen.len() + room <= self.best.len() {
                return Ok(());
            }
        }
        let position = self.chosen.len() + 1;
        for e in self.candidates(position)? {
            if !self.admissible(&e) {
                continue;
            }
            self.chosen.push(e);
            self.dfs()?;
            self.chosen.pop();
        }
        Ok(())
    }
}

/// Exhaustive search for a longest `f`-bounded antichain in `N^m`.
///
/// Candidates at each position are tried greatest-first in lex order, so the
/// first longest sequence found is returned. When `f` grows without bound the
/// search cannot finish and ends with [`Error::SearchExhausted`] carrying the
/// best sequence seen. `max_nodes` counts visited nodes plus enumerated
/// candidates.
pub fn longest_f_bounded_antichain(m: usize, f: &DegreeFunction, max_nodes: u64) -> Result<SearchOutcome> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let mut search = Search {
        nvars: m,
        f,
        budget: BoundBudget::default(),
        max_nodes,
        nodes: 0,
        by_cap: HashMap::new(),
        caps: Vec::new(),
        universe: None,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    if let Some(sup) = f.eventual_max() {
        let sup = u64::try_from(&sup).map_err(|_| search.exhausted())?;
        search.universe = Some(search.enumerate(sup)?);
    }
    search.dfs()?;
    Ok(SearchOutcome {
        length: search.best.len(),
        witness: AntichainWitness(search.best),
        nodes_visited: search.nodes,
    })
}

/// A chain of ideals, each stage given by generators.
#[derive(Clone, Debug)]
pub struct IdealChainInput {
    pub stages: Vec<Vec<Polynomial>>,
    pub order: MonomialOrder,
}

/// Result of [`chain_to_antichain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAntichain {
    pub witness: AntichainWitness,
    /// The selected generator `h_j` of each stage.
    pub selected: Vec<Polynomial>,
    /// `h_j` reduced modulo the earlier reduced elements.
    pub reduced: Vec<Polynomial>,
    /// Largest generator degree of each stage.
    pub stage_degrees: Vec<u64>,
}

/// Turns a strictly ascending chain `I_1 < ... < I_t` into an antichain of
/// length `t`.
///
/// From stage `j` the first generator outside `<h_1, ..., h_(j-1)>` is
/// selected as `h_j` and reduced modulo the earlier reduced elements; the
/// leading monomials of the reduced elements form the antichain. Stage
/// numbers in errors are 1-based and name the lower stage of the faulty pair.
pub fn chain_to_antichain(input: &IdealChainInput) -> Result<ChainAntichain> {
    let order = input.order;
    order.require_graded()?;
    if input.stages.is_empty() {
        return Err(Error::Precondition("the chain needs at least one stage".into()));
    }
    let nvars = match input.stages.iter().flatten().next() {
        Some(p) => p.nvars(),
        None => return Err(Error::Precondition("stage 1 has no generators".into())),
    };
    let mut flat_index = 0;
    for (j, stage) in input.stages.iter().enumerate() {
        if stage.is_empty() {
            return Err(Error::Precondition(format!("stage {} has no generators", j + 1)));
        }
        for p in stage {
            if p.nvars() != nvars {
                return Err(Error::dimension(nvars, p.nvars()));
            }
            if p.is_zero() {
                return Err(Error::InvalidInput { index: flat_index });
            }
            flat_index += 1;
        }
    }

    let ideals = input
        .stages
        .iter()
        .map(|stage| Ideal::new(nvars, stage, order))
        .collect::<Result<Vec<_>>>()?;
    for (j, pair) in input.stages.windows(2).enumerate() {
        let (lower, upper) = (&ideals[j], &ideals[j + 1]);
        for p in &pair[0] {
            if !upper.contains(p)? {
                return Err(Error::ChainNotAscending { stage: j + 1 });
            }
        }
        let mut strict = false;
        for p in &pair[1] {
            if !lower.contains(p)? {
                strict = true;
                break;
            }
        }
        if !strict {
            return Err(Error::ChainNotStrict { stage: j + 1 });
        }
    }

    let mut selected: Vec<Polynomial> = Vec::with_capacity(input.stages.len());
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(input.stages.len());
    let mut witness = Vec::with_capacity(input.stages.len());
    for (j, stage) in input.stages.iter().enumerate() {
        let previous = Ideal::new(nvars, &selected, order)?;
        let mut pick = None;
        for p in stage {
            if !previous.contains(p)? {
                pick = Some(p.clone());
                break;
            }
        }
        // Unreachable for a strict chain, since <h_1..h_(j-1)> lies in I_(j-1).
        let h = pick.ok_or(Error::ChainNotStrict { stage: j })?;
        let r = if reduced.is_empty() { h.clone() } else { reduce(&h, &reduced, order)?.remainder };
        // r is nonzero: otherwise h would lie in <h_1..h_(j-1)>.
        witness.push(r.leading_monomial(order)?.clone());
        selected.push(h);
        reduced.push(r);
    }

    Ok(ChainAntichain {
        witness: AntichainWitness(witness),
        selected,
        reduced,
        stage_degrees: input
            .stages
            .iter()
            .map(|s| s.iter().filter_map(|p| p.degree().ok()).max().unwrap_or(0))
            .collect(),
    })
}
