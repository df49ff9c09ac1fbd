//! Reduction of unary-soft, binary-crisp instances to maximum-weight
//! independent set, and an exact branch-and-bound MWIS solver.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::instance::{Assignment, VcspInstance};

pub const DEFAULT_MWIS_LIMIT: usize = 40;

/// Undirected graph with non-negative vertex weights and, optionally, the
/// `(variable, value)` each vertex stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: SimpleGraph,
    weights: Vec<BigRational>,
    provenance: Vec<(usize, usize)>,
}

impl WeightedGraph {
    pub fn new(graph: SimpleGraph, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != graph.num_vertices() {
            return Err(Error::InvalidArgument(format!(
                "{} weights for {} vertices",
                weights.len(),
                graph.num_vertices()
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::NegativeCost(w.to_string()));
        }
        Ok(WeightedGraph { graph, weights, provenance: Vec::new() })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn num_vertices(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, v: usize) -> &BigRational {
        &self.weights[v]
    }

    /// `(variable, value)` of a vertex built by [`mwis_reduction`].
    pub fn provenance(&self, v: usize) -> Option<(usize, usize)> {
        self.provenance.get(v).copied()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(k, &u)| set[k + 1..].iter().all(|&w| u != w && !self.graph.has_edge(u, w)))
    }

    pub fn set_weight(&self, set: &[usize]) -> BigRational {
        set.iter().map(|&v| &self.weights[v]).sum()
    }
}

#[derive(Clone, Debug)]
pub struct MwisReduction {
    pub graph: WeightedGraph,
    /// `M`, one more than the largest finite unary cost.
    pub scale: BigRational,
    /// `M n (n - 1)`; independent sets heavier than this are exactly the
    /// finite-cost assignments.
    pub threshold: BigRational,
}

impl MwisReduction {
    /// The assignment encoded by an independent set of weight above the
    /// threshold.
    pub fn decode(&self, set: &[usize], num_vars: usize) -> Option<Assignment> {
        if self.graph.set_weight(set) <= self.threshold {
            return None;
        }
        let mut x = vec![usize::MAX; num_vars];
        for &v in set {
            let (var, value) = self.graph.provenance(v)?;
            x[var] = value;
        }
        x.iter().all(|&a| a != usize::MAX).then_some(Assignment(x))
    }
}

/// Builds the weighted micro-structure complement of an instance whose binary
/// costs are all `0` or `inf`.
///
/// Vertices with infinite unary cost are dropped; the rest weigh `M n - c_i(a)`.
pub fn mwis_reduction(instance: &VcspInstance) -> Result<MwisReduction> {
    if let Some((i, j)) = instance.first_soft_binary() {
        return Err(Error::NotCrisp { i, j });
    }
    let n = instance.num_vars();
    let max_unary = (0..n)
        .flat_map(|i| (0..instance.domain_size(i)).filter_map(move |a| instance.unary(i, a).as_rational().cloned()))
        .max()
        .unwrap_or_else(BigRational::zero);
    let scale = max_unary + BigRational::one();
    let mn = &scale * BigRational::from_integer(BigInt::from(n));
    let mut provenance = Vec::new();
    let mut weights = Vec::new();
    for i in 0..n {
        for a in 0..instance.domain_size(i) {
            if let Some(c) = instance.unary(i, a).as_rational() {
                provenance.push((i, a));
                weights.push(&mn - c);
            }
        }
    }
    let mut graph = SimpleGraph::new(provenance.len());
    for u in 0..provenance.len() {
        for w in u + 1..provenance.len() {
            let ((i, a), (j, b)) = (provenance[u], provenance[w]);
            if i == j || instance.binary(i, j, a, b).is_infinite() {
                graph.add_edge(u, w);
            }
        }
    }
    let threshold = &mn * BigRational::from_integer(BigInt::from(n.saturating_sub(1)));
    Ok(MwisReduction { graph: WeightedGraph { graph, weights, provenance }, scale, threshold })
}

/// Exact maximum-weight independent set by branch and bound.
///
/// Ties go to the lexicographically smallest sorted vertex list. Graphs with
/// more than `limit` vertices are rejected.
pub fn solve_mwis(g: &WeightedGraph, limit: usize) -> Result<(Vec<usize>, BigRational)> {
    let n = g.num_vertices();
    if n > limit {
        return Err(Error::TooLarge(format!("{n} vertices exceed the MWIS limit {limit}")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.weights[b].cmp(&g.weights[a]).then(a.cmp(&b)));
    let mut greedy = Vec::new();
    for v in order {
        if greedy.iter().all(|&u| !g.graph.has_edge(u, v)) {
            greedy.push(v);
        }
    }
    greedy.sort_unstable();
    let mut search = Search {
        g,
        best_weight: g.set_weight(&greedy),
        best: greedy,
        chosen: Vec::new(),
        blocked: vec![0; n],
    };
    search.branch(0, BigRational::zero());
    Ok((search.best, search.best_weight))
}

struct Search<'a> {
    g: &'a WeightedGraph,
    best: Vec<usize>,
    best_weight: BigRational,
    chosen: Vec<usize>,
    blocked: Vec<u32>,
}

impl Search<'_> {
    fn branch(&mut self, v: usize, weight: BigRational) {
        let n = self.g.num_vertices();
        let remaining: BigRational = (v..n).filter(|&u| self.blocked[u] == 0).map(|u| &self.g.weights[u]).sum();
        let bound = &weight + remaining;
        if bound < self.best_weight || (bound == self.best_weight && !self.can_beat_lex(v)) {
            return;
        }
        if v == n {
            if weight > self.best_weight || self.chosen < self.best {
                self.best = self.chosen.clone();
                self.best_weight = weight;
            }
            return;
        }
        if self.blocked[v] == 0 {
            self.chosen.push(v);
            for u in v + 1..n {
                if self.g.graph.has_edge(v, u) {
                    self.blocked[u] += 1;
                }
            }
            self.branch(v + 1, &weight + &self.g.weights[v]);
            for u in v + 1..n {
                if self.g.graph.has_edge(v, u) {
                    self.blocked[u] -= 1;
                }
            }
            self.chosen.pop();
        }
        self.branch(v + 1, weight);
    }

    // Whether some completion of `chosen` (vertices >= v still open) could
    // precede `best` lexicographically.
    fn can_beat_lex(&self, v: usize) -> bool {
        let prefix: Vec<usize> = self.best.iter().copied().take_while(|&u| u < v).collect();
        for (&p, &b) in self.chosen.iter().zip(&prefix) {
            if p != b {
                return p < b;
            }
        }
        self.chosen.len() <= prefix.len() || self.best.len() > prefix.len()
    }
}
