//! Root sets of functional constraint networks.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::instance::VcspInstance;

/// Whether every value of `i` has at most one finite-cost partner in `j`.
pub fn is_functional(instance: &VcspInstance, i: usize, j: usize) -> bool {
    (0..instance.domain_size(i))
        .all(|a| (0..instance.domain_size(j)).filter(|&b| instance.binary(i, j, a, b).is_finite()).count() <= 1)
}

/// Every ordered pair `(i, j)`, `i != j`, whose constraint is functional from `i` to `j`.
pub fn functional_arcs(instance: &VcspInstance) -> Vec<(usize, usize)> {
    let n = instance.num_vars();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && is_functional(instance, i, j))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    /// Number of source components of the condensed functional graph.
    pub size: usize,
    /// The smallest variable of each source component, ascending.
    pub roots: Vec<usize>,
}

/// Minimum root set of the functional graph given by `arcs`.
///
/// Each arc is checked to be functional first.
pub fn root_set_size(instance: &VcspInstance, arcs: &[(usize, usize)]) -> Result<RootSet> {
    let n = instance.num_vars();
    for &(from, to) in arcs {
        if from >= n || to >= n || from == to {
            return Err(Error::InvalidArgument(format!("arc ({from}, {to})")));
        }
        if !is_functional(instance, from, to) {
            return Err(Error::NotFunctional { from, to });
        }
    }
    let mut g = DiGraph::<(), ()>::with_capacity(n, arcs.len());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for &(from, to) in arcs {
        g.add_edge(nodes[from], nodes[to], ());
    }
    let mut component = vec![0; n];
    let sccs = tarjan_scc(&g);
    for (c, members) in sccs.iter().enumerate() {
        for v in members {
            component[v.index()] = c;
        }
    }
    let mut has_incoming = vec![false; sccs.len()];
    for &(from, to) in arcs {
        if component[from] != component[to] {
            has_incoming[component[to]] = true;
        }
    }
    let mut roots: Vec<usize> = sccs
        .iter()
        .enumerate()
        .filter(|&(c, _)| !has_incoming[c])
        .map(|(_, members)| members.iter().map(|v| v.index()).min().expect("non-empty component"))
        .collect();
    roots.sort_unstable();
    Ok(RootSet { size: roots.len(), roots })
}
