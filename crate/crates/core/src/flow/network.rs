use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::VcspInstance;
use crate::jwp::CliqueHierarchy;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Source,
    Variable(usize),
    Assignment { var: usize, value: usize },
    /// A node of the laminar tree; the tree root is the sink.
    Clique(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcKind {
    /// `s -> v_i`
    Source { var: usize },
    /// `v_i -> (i, a)`, weighted by the unary cost.
    Value { var: usize, value: usize },
    /// `(i, a) -> ` deepest tree node containing it.
    Feed { var: usize, value: usize },
    /// The `rank`-th arc (0-based, weight ascending) from a tree node to its parent.
    Bundle { node: usize, rank: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub demand: u32,
    pub capacity: u32,
    pub weight: BigRational,
    pub kind: ArcKind,
}

/// Directed network with unit-style demands and capacities and exact weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: Vec<NodeKind>,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    /// An empty network holding only the source and sink nodes.
    pub fn new() -> Self {
        FlowNetwork { nodes: vec![NodeKind::Source, NodeKind::Clique(0)], arcs: Vec::new(), source: 0, sink: 1 }
    }

    pub fn add_node(&mut self, kind: NodeKind) -> usize {
        self.nodes.push(kind);
        self.nodes.len() - 1
    }

    pub fn add_arc(&mut self, arc: Arc) -> usize {
        self.arcs.push(arc);
        self.arcs.len() - 1
    }

    pub fn nodes(&self) -> &[NodeKind] {
        &self.nodes
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Weights of the bundle leaving the tree node `node`, in arc order.
    pub fn bundle_weights(&self, node: usize) -> Vec<BigRational> {
        self.bundle_arcs(node).map(|a| self.arcs[a].weight.clone()).collect()
    }

    pub(crate) fn bundle_arcs(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arcs.len()).filter(move |&a| matches!(self.arcs[a].kind, ArcKind::Bundle { node: m, .. } if m == node))
    }

    /// Graphviz rendering; arcs are labelled `[demand,capacity] weight`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph network {\n  rankdir=LR;\n");
        for (id, kind) in self.nodes.iter().enumerate() {
            let label = match *kind {
                NodeKind::Source => "s".to_string(),
                NodeKind::Variable(i) => format!("v{}", i + 1),
                NodeKind::Assignment { var, value } => format!("v{}={value}", var + 1),
                NodeKind::Clique(_) if id == self.sink => "t".to_string(),
                NodeKind::Clique(c) => format!("C{c}"),
            };
            let _ = writeln!(out, "  n{id} [label=\"{label}\"];");
        }
        for arc in &self.arcs {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"[{},{}] {}\"];",
                arc.tail, arc.head, arc.demand, arc.capacity, arc.weight
            );
        }
        out.push_str("}\n");
        out
    }
}

impl Default for FlowNetwork {
    fn default() -> Self {
        Self::new()
    }
}

/// A rooted tree whose nodes collect flow from assignment nodes.
pub(crate) struct BundleTree {
    /// Parent of every node; `None` only for node 0, the root.
    pub parent: Vec<Option<usize>>,
    /// Finite bundle weights towards the parent, ascending.
    pub bundles: Vec<Vec<BigRational>>,
    /// Tree node fed by each `(variable, value)`.
    pub feed: Vec<Vec<usize>>,
}

/// Lays out `s`, variable nodes, assignment nodes and tree nodes. Pairs
/// whose unary weight is `None` get no assignment node.
pub(crate) fn assemble(unary: &[Vec<Option<BigRational>>], tree: &BundleTree) -> Result<FlowNetwork> {
    let mut net = FlowNetwork::new();
    let mut tree_node = vec![0; tree.parent.len()];
    tree_node[0] = net.sink;
    let var_nodes: Vec<usize> = (0..unary.len()).map(|i| net.add_node(NodeKind::Variable(i))).collect();
    let mut assignment_nodes = Vec::new();
    for (var, row) in unary.iter().enumerate() {
        if row.iter().all(Option::is_none) {
            return Err(Error::Infeasible);
        }
        for (value, w) in row.iter().enumerate() {
            if w.is_some() {
                assignment_nodes.push((var, value, net.add_node(NodeKind::Assignment { var, value })));
            }
        }
    }
    for (t, slot) in tree_node.iter_mut().enumerate().skip(1) {
        *slot = net.add_node(NodeKind::Clique(t));
    }
    let unit = |tail, head, demand, weight, kind| Arc { tail, head, demand, capacity: 1, weight, kind };
    for (var, &v) in var_nodes.iter().enumerate() {
        net.add_arc(unit(net.source, v, 1, BigRational::zero(), ArcKind::Source { var }));
    }
    for &(var, value, a) in &assignment_nodes {
        let w = unary[var][value].clone().expect("kept pair");
        net.add_arc(unit(var_nodes[var], a, 0, w, ArcKind::Value { var, value }));
        net.add_arc(unit(a, tree_node[tree.feed[var][value]], 0, BigRational::zero(), ArcKind::Feed { var, value }));
    }
    for t in 1..tree.parent.len() {
        let parent = tree.parent[t].expect("non-root node has a parent");
        for (rank, w) in tree.bundles[t].iter().enumerate() {
            net.add_arc(unit(tree_node[t], tree_node[parent], 0, w.clone(), ArcKind::Bundle { node: t, rank }));
        }
    }
    Ok(net)
}

/// Bundle weights `(i - 1)(alpha - beta)` for `i = 1..=r`, or a single zero
/// arc when `alpha` is infinite.
pub(crate) fn clique_bundle(r: usize, alpha: &Cost, beta: &Cost) -> Vec<BigRational> {
    match (alpha, beta) {
        (Cost::Infinite, _) => vec![BigRational::zero()],
        (Cost::Finite(a), Cost::Finite(b)) => {
            let step = a - b;
            (0..r).map(|i| &step * BigRational::from_integer(BigInt::from(i))).collect()
        }
        (Cost::Finite(_), Cost::Infinite) => unreachable!("a parent threshold never exceeds its child's"),
    }
}

/// Builds the flow network of a Z-free JWP instance from its clique hierarchy.
///
/// Pairs with infinite unary cost are left out; a variable left with no
/// value makes the instance infeasible.
pub fn build_network(instance: &VcspInstance, h: &CliqueHierarchy) -> Result<FlowNetwork> {
    if h.num_vertices() != instance.num_vertices() {
        return Err(Error::InvalidArgument("hierarchy does not match the instance".into()));
    }
    let unary: Vec<Vec<Option<BigRational>>> = (0..instance.num_vars())
        .map(|i| (0..instance.domain_size(i)).map(|a| instance.unary(i, a).as_rational().cloned()).collect())
        .collect();
    let parent = h.nodes().iter().map(|n| n.parent).collect();
    let bundles = h
        .nodes()
        .iter()
        .map(|n| match n.parent {
            None => Vec::new(),
            Some(p) => clique_bundle(n.members.len(), &n.threshold, &h.node(p).threshold),
        })
        .collect();
    let feed = (0..instance.num_vars())
        .map(|i| (0..instance.domain_size(i)).map(|a| h.deepest(i, a)).collect())
        .collect();
    assemble(&unary, &BundleTree { parent, bundles, feed })
}
