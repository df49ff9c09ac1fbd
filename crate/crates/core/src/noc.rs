//! Non-overlapping convexity: laminar families of `(variable, value)` sets,
//! each charged by a convex function of how many of its pairs are used.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::{assemble, min_cost_flow, read_assignment, BundleTree};
use crate::instance::{Assignment, VcspInstance};
use crate::jwp::CliqueHierarchy;

/// Why a sequence `f(0..=s)` is not a valid convex step function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FnViolation {
    Empty,
    /// `f(m) < f(m - 1)`.
    Decreasing { m: usize },
    /// `f(m + 1) - f(m) < f(m) - f(m - 1)`.
    Concave { m: usize },
}

impl fmt::Display for FnViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnViolation::Empty => f.write_str("function has no values"),
            FnViolation::Decreasing { m } => write!(f, "f({m}) < f({})", m - 1),
            FnViolation::Concave { m } => write!(f, "increment drops after m = {m}"),
        }
    }
}

fn increment(hi: &Cost, lo: &Cost) -> Option<Cost> {
    hi.checked_sub(lo)
}

/// A non-negative, non-decreasing function on `0..=s` with non-decreasing
/// increments, stored as `f - f(0)` plus the constant `f(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexStepFn {
    values: Vec<Cost>,
    offset: Cost,
}

impl ConvexStepFn {
    pub fn check(values: &[Cost]) -> Option<FnViolation> {
        if values.is_empty() {
            return Some(FnViolation::Empty);
        }
        let mut deltas = Vec::with_capacity(values.len());
        for m in 1..values.len() {
            match increment(&values[m], &values[m - 1]) {
                Some(d) => deltas.push(d),
                None => return Some(FnViolation::Decreasing { m }),
            }
        }
        (1..deltas.len()).find(|&k| deltas[k] < deltas[k - 1]).map(|k| FnViolation::Concave { m: k })
    }

    pub fn new(values: Vec<Cost>) -> Result<Self> {
        if let Some(v) = Self::check(&values) {
            return Err(Error::InvalidNoc(v.to_string()));
        }
        let offset = values[0].clone();
        let values = if offset.is_infinite() {
            vec![Cost::zero(); values.len()]
        } else {
            values.iter().map(|v| v.checked_sub(&offset).expect("non-decreasing")).collect()
        };
        let f = ConvexStepFn { values, offset };
        debug_assert!((2..=f.max_arg()).all(|m| f.delta(m) >= f.delta(m - 1)));
        Ok(f)
    }

    /// Largest argument `s`.
    pub fn max_arg(&self) -> usize {
        self.values.len() - 1
    }

    pub fn offset(&self) -> &Cost {
        &self.offset
    }

    /// `f(m)` including the constant.
    pub fn eval(&self, m: usize) -> Cost {
        &self.values[m] + &self.offset
    }

    /// `f(m) - f(m - 1)` for `m >= 1`.
    pub fn delta(&self, m: usize) -> Cost {
        increment(&self.values[m], &self.values[m - 1]).expect("validated")
    }
}

/// Sets of `(variable, value)` pairs, each with a function `f(0..=s)` where
/// `s` is the number of distinct variables in the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NocInstance {
    domains: Vec<usize>,
    names: Vec<String>,
    sets: Vec<Vec<(usize, usize)>>,
    fns: Vec<Vec<Cost>>,
}

impl NocInstance {
    pub fn new(domains: Vec<usize>) -> Result<Self> {
        if let Some(var) = domains.iter().position(|&d| d == 0) {
            return Err(Error::EmptyDomain { var });
        }
        Ok(NocInstance { domains, names: Vec::new(), sets: Vec::new(), fns: Vec::new() })
    }

    /// Adds a set with its function. Pairs are deduplicated; `f` must have
    /// one entry more than the number of distinct variables in the set.
    pub fn add_set(&mut self, name: impl Into<String>, mut pairs: Vec<(usize, usize)>, f: Vec<Cost>) -> Result<usize> {
        let name = name.into();
        for &(var, value) in &pairs {
            if var >= self.domains.len() || value >= self.domains[var] {
                return Err(Error::OutOfRange(format!("pair ({var}, {value}) in set {name}")));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let s = distinct_vars(&pairs);
        if f.len() != s + 1 {
            return Err(Error::InvalidNoc(format!("set {name} spans {s} variables but its function has {} values", f.len())));
        }
        if self.names.contains(&name) {
            return Err(Error::InvalidNoc(format!("duplicate set id {name}")));
        }
        self.names.push(name);
        self.sets.push(pairs);
        self.fns.push(f);
        Ok(self.sets.len() - 1)
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[usize] {
        &self.domains
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn name(&self, set: usize) -> &str {
        &self.names[set]
    }

    pub fn set(&self, set: usize) -> &[(usize, usize)] {
        &self.sets[set]
    }

    pub fn function(&self, set: usize) -> &[Cost] {
        &self.fns[set]
    }

    /// Pairs of `set` used by `x`.
    pub fn count(&self, set: usize, x: &[usize]) -> usize {
        self.sets[set].iter().filter(|&&(var, value)| x[var] == value).count()
    }

    /// `sum_i f_i(N(x, C_i))`.
    pub fn evaluate(&self, x: &Assignment) -> Result<Cost> {
        if x.len() != self.num_vars() || x.iter().zip(&self.domains).any(|(&a, &d)| a >= d) {
            return Err(Error::InvalidAssignment(format!("{x} does not fit domains {:?}", self.domains)));
        }
        Ok((0..self.sets.len()).map(|s| self.fns[s][self.count(s, x)].clone()).sum())
    }
}

fn distinct_vars(sorted_pairs: &[(usize, usize)]) -> usize {
    let mut vars: Vec<usize> = sorted_pairs.iter().map(|p| p.0).collect();
    vars.dedup();
    vars.len()
}

fn relation(a: &[(usize, usize)], b: &[(usize, usize)]) -> (bool, bool, bool) {
    // (intersect, a subset of b, b subset of a) for sorted inputs.
    let inter = a.iter().filter(|p| b.binary_search(p).is_ok()).count();
    (inter > 0, inter == a.len(), inter == b.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NocViolation {
    Overlap { first: usize, second: usize },
    Function { set: usize, violation: FnViolation },
}

impl fmt::Display for NocViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NocViolation::Overlap { first, second } => write!(f, "sets #{first} and #{second} overlap"),
            NocViolation::Function { set, violation } => write!(f, "function of set #{set}: {violation}"),
        }
    }
}

/// First laminarity or convexity violation, if any.
pub fn validate_noc(inst: &NocInstance) -> Option<NocViolation> {
    for (set, f) in inst.fns.iter().enumerate() {
        if let Some(violation) = ConvexStepFn::check(f) {
            return Some(NocViolation::Function { set, violation });
        }
    }
    for a in 0..inst.sets.len() {
        for b in a + 1..inst.sets.len() {
            let (meet, a_in_b, b_in_a) = relation(&inst.sets[a], &inst.sets[b]);
            if meet && !a_in_b && !b_in_a {
                return Some(NocViolation::Overlap { first: a, second: b });
            }
        }
    }
    None
}

/// Minimises the NOC objective through a min-cost flow over the laminar tree.
///
/// Returns cost `inf` with the all-zero assignment when every assignment is
/// infinite.
pub fn solve_noc(inst: &NocInstance) -> Result<(Assignment, Cost)> {
    if let Some(v) = validate_noc(inst) {
        return Err(Error::InvalidNoc(v.to_string()));
    }
    let fns: Vec<ConvexStepFn> = inst.fns.iter().map(|f| ConvexStepFn::new(f.clone())).collect::<Result<_>>()?;
    let constant: Cost = fns.iter().map(|f| f.offset().clone()).sum();
    let infeasible = || Ok((Assignment(vec![0; inst.num_vars()]), Cost::Infinite));
    if constant.is_infinite() {
        return infeasible();
    }

    // Insert sets largest first; laminarity makes the current deepest set of
    // any member the parent.
    let offsets: Vec<usize> = std::iter::once(0)
        .chain(inst.domains.iter().scan(0, |acc, &d| {
            *acc += d;
            Some(*acc)
        }))
        .collect();
    let vid = |(var, value): (usize, usize)| offsets[var] + value;
    let mut order: Vec<usize> = (0..inst.sets.len()).filter(|&s| !inst.sets[s].is_empty()).collect();
    order.sort_by_key(|&s| (std::cmp::Reverse(inst.sets[s].len()), s));
    let mut deepest = vec![0usize; offsets[inst.num_vars()]];
    let mut parent = vec![None];
    let mut bundles = vec![Vec::new()];
    for &s in &order {
        let node = parent.len();
        parent.push(Some(deepest[vid(inst.sets[s][0])]));
        let f = &fns[s];
        let weights: Vec<BigRational> =
            (1..=f.max_arg()).map_while(|m| f.delta(m).as_rational().cloned()).collect();
        bundles.push(weights);
        for &p in &inst.sets[s] {
            deepest[vid(p)] = node;
        }
    }
    let feed = (0..inst.num_vars()).map(|i| (0..inst.domains[i]).map(|a| deepest[offsets[i] + a]).collect()).collect();
    let unary: Vec<Vec<Option<BigRational>>> =
        inst.domains.iter().map(|&d| vec![Some(BigRational::zero()); d]).collect();
    let net = assemble(&unary, &BundleTree { parent, bundles, feed })?;
    let Some(flow) = min_cost_flow(&net)? else {
        return infeasible();
    };
    let x = read_assignment(&net, &flow)?;
    let cost = inst.evaluate(&x)?;
    let expected = &Cost::Finite(flow.cost(&net)) + &constant;
    if cost != expected {
        return Err(Error::InternalConsistency(format!("objective {cost} differs from flow cost {expected}")));
    }
    Ok((x, cost))
}

fn choose2(m: usize) -> u64 {
    (m * m.saturating_sub(1) / 2) as u64
}

/// Translates a Z-free JWP instance with its clique hierarchy into NOC form.
///
/// Every non-root clique with threshold `alpha` and parent threshold `beta`
/// becomes a set with `f(m) = C(m, 2)(alpha - beta)`; each non-zero unary
/// cost becomes a singleton with `f = (0, c)`. The NOC objective then agrees
/// with the instance's cost on every assignment.
pub fn jwp_to_noc(instance: &VcspInstance, h: &CliqueHierarchy) -> Result<NocInstance> {
    let mut out = NocInstance::new(instance.domains().to_vec())?;
    for (id, node) in h.nodes().iter().enumerate() {
        let Some(p) = node.parent else { continue };
        let step = node.threshold.checked_sub(&h.node(p).threshold).ok_or_else(|| {
            Error::StructureViolated(format!("clique {id} has a threshold below its parent's"))
        })?;
        let s = h.distinct_vars(id);
        let f = (0..=s).map(|m| step.scale(choose2(m))).collect();
        out.add_set(format!("C{id}"), h.member_pairs(id), f)?;
    }
    for i in 0..instance.num_vars() {
        for a in 0..instance.domain_size(i) {
            let c = instance.unary(i, a);
            if !c.is_zero() {
                out.add_set(format!("u{}_{a}", i + 1), vec![(i, a)], vec![Cost::zero(), c.clone()])?;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NogoodMode {
    /// A fully matched nogood costs `inf`.
    Hard,
    /// A fully matched nogood costs 1.
    MaxCsp,
}

/// Encodes a laminar family of nogoods: `f(m) = 0` below the nogood's size
/// and `inf` (or 1) at it.
pub fn nogoods_to_noc(domains: Vec<usize>, nogoods: &[Vec<(usize, usize)>], mode: NogoodMode) -> Result<NocInstance> {
    let mut sorted: Vec<Vec<(usize, usize)>> = Vec::with_capacity(nogoods.len());
    for (idx, ng) in nogoods.iter().enumerate() {
        let mut ng = ng.clone();
        ng.sort_unstable();
        ng.dedup();
        if ng.is_empty() {
            return Err(Error::InvalidInput(format!("nogood {idx} is empty")));
        }
        if distinct_vars(&ng) != ng.len() {
            return Err(Error::InvalidInput(format!("nogood {idx} assigns a variable twice")));
        }
        sorted.push(ng);
    }
    for a in 0..sorted.len() {
        for b in a + 1..sorted.len() {
            let (meet, a_in_b, b_in_a) = relation(&sorted[a], &sorted[b]);
            if meet && !a_in_b && !b_in_a {
                return Err(Error::InvalidFamily(format!("nogoods {a} and {b} overlap")));
            }
        }
    }
    let top = match mode {
        NogoodMode::Hard => Cost::Infinite,
        NogoodMode::MaxCsp => Cost::from_int(1),
    };
    let mut out = NocInstance::new(domains)?;
    for (idx, ng) in sorted.into_iter().enumerate() {
        let mut f = vec![Cost::zero(); ng.len()];
        f.push(top.clone());
        out.add_set(format!("N{}", idx + 1), ng, f)?;
    }
    Ok(out)
}
