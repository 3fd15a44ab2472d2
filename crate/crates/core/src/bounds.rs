//! Explicit bounds on the length of degree-bounded antichains in `N^m`.
//!
//! The bound for `m` variables is built from the bound for `m - 1` by a
//! backward induction on the number `k` of coordinates that are already
//! capped. Every value is an arbitrary-precision natural; since the numbers
//! grow as towers once `m >= 2` and `f` grows, all evaluation runs against a
//! [`BoundBudget`] and aborts with [`BudgetExceeded`] instead of hanging.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{BudgetExceeded, Error, Resource, Result};

/// Limits for a bound evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BoundBudget {
    pub max_recursion_steps: u64,
    pub max_value_bits: u64,
}

impl BoundBudget {
    pub fn new(max_recursion_steps: u64, max_value_bits: u64) -> Result<Self> {
        if max_recursion_steps == 0 || max_value_bits == 0 {
            return Err(Error::Precondition("budget limits must be positive".into()));
        }
        Ok(BoundBudget { max_recursion_steps, max_value_bits })
    }
}

impl Default for BoundBudget {
    fn default() -> Self {
        BoundBudget { max_recursion_steps: 1_000_000, max_value_bits: 1 << 16 }
    }
}

/// Tracks budget consumption across one evaluation.
#[derive(Debug)]
pub struct Evaluator {
    budget: BoundBudget,
    steps: u64,
    frames: Vec<String>,
}

impl Evaluator {
    pub fn new(budget: BoundBudget) -> Self {
        Evaluator { budget, steps: 0, frames: Vec::new() }
    }

    pub fn steps_used(&self) -> u64 {
        self.steps
    }

    fn exceeded(&self, resource: Resource, limit: u64, requested: u64) -> Error {
        let progress = if self.frames.is_empty() {
            "at top level".to_string()
        } else {
            self.frames.join(" > ")
        };
        Error::Budget(BudgetExceeded { resource, limit, requested, steps_used: self.steps, progress })
    }

    fn tick(&mut self, count: u64) -> Result<()> {
        let requested = self.steps.saturating_add(count);
        if requested > self.budget.max_recursion_steps {
            return Err(self.exceeded(Resource::Steps, self.budget.max_recursion_steps, requested));
        }
        self.steps = requested;
        Ok(())
    }

    fn check_bits(&self, bits: u64) -> Result<()> {
        if bits > self.budget.max_value_bits {
            return Err(self.exceeded(Resource::ValueBits, self.budget.max_value_bits, bits));
        }
        Ok(())
    }

    fn checked(&self, value: BigUint) -> Result<BigUint> {
        self.check_bits(value.bits())?;
        Ok(value)
    }

    fn to_index(&self, n: &BigUint) -> Result<u64> {
        match n.to_u64() {
            Some(i) => Ok(i),
            None => Err(self.exceeded(Resource::Steps, self.budget.max_recursion_steps, u64::MAX)),
        }
    }
}

/// A non-decreasing function `N1 -> N1`, evaluated lazily.
///
/// Cloning is cheap; clones share memo tables.
#[derive(Clone)]
pub struct DegreeFunction(Arc<Node>);

enum Node {
    Constant(BigUint),
    /// Values `f(1), ..., f(len)`, extended past the end by the last value.
    Table(Vec<BigUint>),
    /// `n -> 3^n * d`.
    Geometric(BigUint),
    /// `n -> f(offset + n)`.
    Shift { offset: BigUint, inner: DegreeFunction },
    /// `n -> outer(inner(n))`.
    Compose { outer: DegreeFunction, inner: DegreeFunction, memo: Mutex<HashMap<BigUint, BigUint>> },
    /// Prefix maxima of an arbitrary raw table (extended by its last value).
    RunningMax { raw: Vec<BigUint>, prefix_max: Vec<BigUint> },
    /// The auxiliary sequence `g` driving the induction step on `k`.
    Recursive(Recursion),
}

struct Recursion {
    m: usize,
    k: usize,
    f: DegreeFunction,
    beta: Vec<BigUint>,
    /// `values[n - 1] = g(n)` for every `n` computed so far.
    values: Mutex<Vec<BigUint>>,
}

fn positive(value: &BigUint, what: &str) -> Result<()> {
    if value.is_zero() {
        return Err(Error::Precondition(format!("{what} must be at least 1")));
    }
    Ok(())
}

/// `3^exp`, with the bit length checked before it is computed.
fn pow3(exp: &BigUint, ev: &Evaluator) -> Result<BigUint> {
    // log2(3) < 1.585
    let estimate = exp
        .to_u64()
        .and_then(|e| e.checked_mul(1585))
        .map(|b| b / 1000 + 1)
        .unwrap_or(u64::MAX);
    ev.check_bits(estimate)?;
    let exp = exp.to_u32().expect("bounded by the bit budget");
    ev.checked(BigUint::from(3u32).pow(exp))
}

impl DegreeFunction {
    fn from_node(node: Node) -> Self {
        DegreeFunction(Arc::new(node))
    }

    pub fn constant(c: impl Into<BigUint>) -> Result<Self> {
        let c = c.into();
        positive(&c, "constant value")?;
        Ok(Self::from_node(Node::Constant(c)))
    }

    /// A table-backed function; it must be non-decreasing with values >= 1.
    pub fn table<T: Into<BigUint>>(values: impl IntoIterator<Item = T>) -> Result<Self> {
        let values: Vec<BigUint> = values.into_iter().map(Into::into).collect();
        if values.is_empty() {
            return Err(Error::Precondition("table must have at least one value".into()));
        }
        for v in &values {
            positive(v, "table value")?;
        }
        if let Some(i) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::Precondition(format!(
                "table decreases between positions {} and {}; use the running-max adapter",
                i + 1,
                i + 2
            )));
        }
        Ok(Self::from_node(Node::Table(values)))
    }

    /// `n -> 3^n * d`.
    pub fn geometric(d: impl Into<BigUint>) -> Result<Self> {
        let d = d.into();
        positive(&d, "geometric factor")?;
        Ok(Self::from_node(Node::Geometric(d)))
    }

    /// `n -> max(raw(1), ..., raw(n))` for an arbitrary raw table.
    pub fn running_max<T: Into<BigUint>>(raw: impl IntoIterator<Item = T>) -> Result<Self> {
        let raw: Vec<BigUint> = raw.into_iter().map(Into::into).collect();
        if raw.is_empty() {
            return Err(Error::Precondition("table must have at least one value".into()));
        }
        for v in &raw {
            positive(v, "table value")?;
        }
        let mut prefix_max = Vec::with_capacity(raw.len());
        for v in &raw {
            let next = match prefix_max.last() {
                Some(prev) if prev > v => BigUint::clone(prev),
                _ => v.clone(),
            };
            prefix_max.push(next);
        }
        Ok(Self::from_node(Node::RunningMax { raw, prefix_max }))
    }

    /// `n -> self(offset + n)`.
    pub fn shift(&self, offset: impl Into<BigUint>) -> Self {
        Self::from_node(Node::Shift { offset: offset.into(), inner: self.clone() })
    }

    /// `n -> self(inner(n))`.
    pub fn compose(&self, inner: &DegreeFunction) -> Self {
        Self::from_node(Node::Compose {
            outer: self.clone(),
            inner: inner.clone(),
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// Evaluates at `n >= 1` under the given budget.
    pub fn eval(&self, n: &BigUint, ev: &mut Evaluator) -> Result<BigUint> {
        if n.is_zero() {
            return Err(Error::Precondition("degree functions are defined on n >= 1".into()));
        }
        match &*self.0 {
            Node::Constant(c) => Ok(c.clone()),
            Node::Table(values) | Node::RunningMax { prefix_max: values, .. } => {
                let idx = n.to_usize().map_or(usize::MAX, |i| i - 1);
                Ok(values.get(idx).unwrap_or_else(|| values.last().expect("non-empty")).clone())
            }
            Node::Geometric(d) => {
                let p = pow3(n, ev)?;
                ev.checked(p * d)
            }
            Node::Shift { offset, inner } => {
                let arg = ev.checked(offset + n)?;
                inner.eval(&arg, ev)
            }
            Node::Compose { outer, inner, memo } => {
                if let Some(v) = memo.lock().expect("memo lock").get(n) {
                    return Ok(v.clone());
                }
                let mid = inner.eval(n, ev)?;
                let value = outer.eval(&mid, ev)?;
                memo.lock().expect("memo lock").insert(n.clone(), value.clone());
                Ok(value)
            }
            Node::Recursive(rec) => rec.eval(n, ev),
        }
    }

    /// Evaluates at a small argument with a fresh budget.
    pub fn value_at(&self, n: u64, budget: &BoundBudget) -> Result<BigUint> {
        self.eval(&BigUint::from(n), &mut Evaluator::new(*budget))
    }

    /// `sup f` when it is finite and known without evaluation.
    pub fn eventual_max(&self) -> Option<BigUint> {
        match &*self.0 {
            Node::Constant(c) => Some(c.clone()),
            Node::Table(values) | Node::RunningMax { prefix_max: values, .. } => values.last().cloned(),
            Node::Geometric(_) | Node::Recursive(_) => None,
            Node::Shift { inner, .. } => inner.eventual_max(),
            Node::Compose { outer, .. } => outer.eventual_max(),
        }
    }

    /// The values computed so far by a recursive function, `g(1), g(2), ...`.
    /// Empty for every other kind.
    pub fn memoized_prefix(&self) -> Vec<BigUint> {
        match &*self.0 {
            Node::Recursive(rec) => rec.values.lock().expect("memo lock").clone(),
            _ => Vec::new(),
        }
    }
}

impl Recursion {
    fn eval(&self, n: &BigUint, ev: &mut Evaluator) -> Result<BigUint> {
        let target = ev.to_index(n)?;
        let (mut len, mut last) = {
            let values = self.values.lock().expect("memo lock");
            if let Some(v) = values.get(target as usize - 1) {
                return Ok(v.clone());
            }
            (values.len() as u64, values.last().cloned())
        };
        ev.tick(0)?;
        if target - len > ev.budget.max_recursion_steps - ev.steps {
            return Err(ev.exceeded(
                Resource::Steps,
                ev.budget.max_recursion_steps,
                ev.steps.saturating_add(target - len),
            ));
        }
        ev.frames.push(format!("g[m={},k={}] at n={}", self.m, self.k, len + 1));
        let result = (|| {
            while len < target {
                ev.tick(1)?;
                let next = match &last {
                    None => BigUint::one(),
                    Some(prev) => {
                        let mut beta = self.beta.clone();
                        beta.push(self.f.eval(prev, ev)?);
                        let step = bmk_in(self.m, self.k + 1, &self.f.shift(prev.clone()), &beta, ev)?;
                        ev.checked(BigUint::one() + prev + step)?
                    }
                };
                self.values.lock().expect("memo lock").push(next.clone());
                len += 1;
                last = Some(next);
                if let Some(frame) = ev.frames.last_mut() {
                    *frame = format!("g[m={},k={}] at n={}", self.m, self.k, len + 1);
                }
            }
            Ok(last.clone().expect("target >= 1"))
        })();
        ev.frames.pop();
        result
    }
}

impl fmt::Display for DegreeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(values: &[BigUint]) -> String {
            values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        }
        match &*self.0 {
            Node::Constant(c) => write!(f, "const:{c}"),
            Node::Table(values) => write!(f, "table:{}", list(values)),
            Node::Geometric(d) => write!(f, "geom:{d}"),
            Node::Shift { offset, inner } => write!(f, "shift({offset}, {inner})"),
            Node::Compose { outer, inner, .. } => write!(f, "compose({outer}, {inner})"),
            Node::RunningMax { raw, .. } => write!(f, "running_max(table:{})", list(raw)),
            Node::Recursive(rec) => {
                write!(f, "cf(m={}, k={}, {}, beta=[{}])", rec.m, rec.k, rec.f, list(&rec.beta))
            }
        }
    }
}

impl fmt::Debug for DegreeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DegreeFunction({self})")
    }
}

impl FromStr for DegreeFunction {
    type Err = Error;

    /// Parses `const:C`, `table:a1,...,ak` or `geom:D`.
    fn from_str(s: &str) -> Result<Self> {
        parse_degree_function(s, false)
    }
}

/// Parses a degree function; with `running_max` a table may be arbitrary
/// and is wrapped in the running-max adapter.
pub fn parse_degree_function(s: &str, running_max: bool) -> Result<DegreeFunction> {
    let bad = |message: String| Error::Parse { position: 0, message };
    let number = |text: &str| {
        text.trim()
            .parse::<BigUint>()
            .map_err(|_| bad(format!("invalid natural number {text:?}")))
    };
    let (kind, rest) = s
        .split_once(':')
        .ok_or_else(|| bad(format!("expected const:C, table:a1,... or geom:D, got {s:?}")))?;
    match kind.trim() {
        "const" => DegreeFunction::constant(number(rest)?),
        "geom" => DegreeFunction::geometric(number(rest)?),
        "table" => {
            let values = rest.split(',').map(number).collect::<Result<Vec<_>>>()?;
            if running_max {
                DegreeFunction::running_max(values)
            } else {
                DegreeFunction::table(values)
            }
        }
        other => Err(bad(format!("unknown function kind {other:?}"))),
    }
}

/// Bound for one variable: `f(1) + 1`.
pub fn b1(f: &DegreeFunction) -> Result<BigUint> {
    b1_in(f, &mut Evaluator::new(BoundBudget::default()))
}

fn b1_in(f: &DegreeFunction, ev: &mut Evaluator) -> Result<BigUint> {
    let first = f.eval(&BigUint::one(), ev)?;
    ev.checked(first + 1u32)
}

/// Bound when every coordinate is capped: `prod(beta_i + 1)`.
pub fn bmm(m: usize, beta: &[BigUint]) -> Result<BigUint> {
    if m == 0 || beta.len() != m {
        return Err(Error::dimension(m.max(1), beta.len()));
    }
    Ok(beta.iter().map(|b| b + 1u32).product())
}

fn bmm_in(beta: &[BigUint], ev: &mut Evaluator) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for b in beta {
        acc *= b + 1u32;
        ev.check_bits(acc.bits())?;
    }
    Ok(acc)
}

fn check_levels(m: usize, k: usize, beta: &[BigUint]) -> Result<()> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    if k > m {
        return Err(Error::Precondition(format!("k = {k} exceeds m = {m}")));
    }
    if beta.len() != k {
        return Err(Error::dimension(k, beta.len()));
    }
    Ok(())
}

/// The auxiliary function `g` of the induction step from `k + 1` to `k`:
/// `g(1) = 1`, `g(n+1) = 1 + g(n) + B_m^{k+1}(shift(g(n), f), beta ++ f(g(n)))`.
pub fn cf(m: usize, k: usize, f: &DegreeFunction, beta: &[BigUint]) -> Result<DegreeFunction> {
    check_levels(m, k, beta)?;
    if m < 2 || k + 1 > m {
        return Err(Error::Precondition(format!("cf needs m >= 2 and k <= m - 1 (m = {m}, k = {k})")));
    }
    Ok(cf_unchecked(m, k, f, beta))
}

fn cf_unchecked(m: usize, k: usize, f: &DegreeFunction, beta: &[BigUint]) -> DegreeFunction {
    DegreeFunction::from_node(Node::Recursive(Recursion {
        m,
        k,
        f: f.clone(),
        beta: beta.to_vec(),
        values: Mutex::new(Vec::new()),
    }))
}

/// Bound on `(f, beta)`-bounded antichains in `N^m`, where `beta` caps the
/// first `k` coordinates.
///
/// `k = m` is the box count; `m = 1, k = 0` is [`b1`]; otherwise
/// `g(B_{m-1}(f o g) + 1)` with `g = cf(m, k, f, beta)`.
pub fn bmk(m: usize, k: usize, f: &DegreeFunction, beta: &[BigUint], budget: &BoundBudget) -> Result<BigUint> {
    check_levels(m, k, beta)?;
    bmk_in(m, k, f, beta, &mut Evaluator::new(*budget))
}

fn bmk_in(m: usize, k: usize, f: &DegreeFunction, beta: &[BigUint], ev: &mut Evaluator) -> Result<BigUint> {
    ev.tick(1)?;
    if k == m {
        return bmm_in(beta, ev);
    }
    if m == 1 {
        return b1_in(f, ev);
    }
    ev.frames.push(format!("B[m={m},k={k}]"));
    let result = (|| {
        let g = cf_unchecked(m, k, f, beta);
        let inner = bound_in(m - 1, &f.compose(&g), ev)?;
        g.eval(&(inner + 1u32), ev)
    })();
    ev.frames.pop();
    result
}

/// Length bound for `f`-bounded antichains in `N^m`.
pub fn bound(m: usize, f: &DegreeFunction, budget: &BoundBudget) -> Result<BigUint> {
    bound_with(m, f, &mut Evaluator::new(*budget))
}

/// [`bound`] against an existing evaluator, so several evaluations can share
/// one budget.
pub fn bound_with(m: usize, f: &DegreeFunction, ev: &mut Evaluator) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    bound_in(m, f, ev)
}

fn bound_in(m: usize, f: &DegreeFunction, ev: &mut Evaluator) -> Result<BigUint> {
    if m == 1 {
        b1_in(f, ev)
    } else {
        bmk_in(m, 0, f, &[], ev)
    }
}

/// Cofactor degree bound after `n` Buchberger stages: `(3^n - 1) * d`.
pub fn chi(n: u32, d: u64) -> BigUint {
    (BigUint::from(3u32).pow(n) - 1u32) * d
}

/// Membership degree bound `(3^(B - 1) - 1) * d + i` with
/// `B = bound(m, n -> 3^n d)`.
pub fn gamma(m: usize, d: u64, i: u64, budget: &BoundBudget) -> Result<BigUint> {
    if m == 0 || d == 0 {
        return Err(Error::Precondition("gamma needs m >= 1 and d >= 1".into()));
    }
    let mut ev = Evaluator::new(*budget);
    let b = bound_with(m, &DegreeFunction::geometric(d)?, &mut ev)?;
    let exp = b - 1u32;
    let p = pow3(&exp, &ev)?;
    Ok((p - 1u32) * d + i)
}
