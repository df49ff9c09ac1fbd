//! Coloured micro-structures and forbidden-pattern detection.
//!
//! The micro-structure has one vertex per (variable, value) pair, coloured by
//! its variable. In crisp mode a cross-colour pair is an edge of the
//! micro-structure iff its binary cost is finite, and an edge of the
//! complement iff it is infinite; the complement also joins every pair of
//! values of the same variable.

use std::fmt::Write as _;
use std::ops::ControlFlow;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::VcspInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Microstructure,
    Complement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub var: usize,
    pub value: usize,
}

#[derive(Clone, Debug)]
pub struct ColouredMicrostructure {
    mode: Mode,
    vertices: Vec<Vertex>,
    adj: Vec<bool>,
    // Cross-colour costs, present unless built in crisp-only mode.
    costs: Option<Vec<Cost>>,
}

/// Builds the coloured micro-structure (or its complement) of `instance`.
///
/// With `crisp_only` the graph records edges only. Otherwise every
/// cross-colour pair also carries its binary cost, and in micro-structure mode
/// every cross-colour pair is an edge (the weighted micro-structure).
pub fn build_microstructure(instance: &VcspInstance, complement: bool, crisp_only: bool) -> ColouredMicrostructure {
    let mode = if complement { Mode::Complement } else { Mode::Microstructure };
    let vertices: Vec<Vertex> = (0..instance.num_vars())
        .flat_map(|var| (0..instance.domain_size(var)).map(move |value| Vertex { var, value }))
        .collect();
    let n = vertices.len();
    let mut adj = vec![false; n * n];
    let mut costs = (!crisp_only).then(|| vec![Cost::zero(); n * n]);
    for (u, vu) in vertices.iter().enumerate() {
        for (w, vw) in vertices.iter().enumerate().skip(u + 1) {
            let edge = if vu.var == vw.var {
                mode == Mode::Complement
            } else {
                let c = instance.binary(vu.var, vw.var, vu.value, vw.value);
                if let Some(costs) = costs.as_mut() {
                    costs[u * n + w] = c.clone();
                    costs[w * n + u] = c.clone();
                }
                match mode {
                    Mode::Microstructure => !crisp_only || c.is_finite(),
                    Mode::Complement => c.is_infinite(),
                }
            };
            adj[u * n + w] = edge;
            adj[w * n + u] = edge;
        }
    }
    ColouredMicrostructure { mode, vertices, adj, costs }
}

impl ColouredMicrostructure {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn colour(&self, v: usize) -> usize {
        self.vertices[v].var
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.vertices.len() + v]
    }

    /// Cost of a cross-colour pair; `None` for same-colour pairs or crisp-only graphs.
    pub fn edge_cost(&self, u: usize, v: usize) -> Option<&Cost> {
        let costs = self.costs.as_ref()?;
        (self.colour(u) != self.colour(v)).then(|| &costs[u * self.vertices.len() + v])
    }

    pub fn edge_count(&self) -> usize {
        let n = self.vertices.len();
        (0..n).map(|u| (u + 1..n).filter(|&w| self.has_edge(u, w)).count()).sum()
    }

    /// Graphviz rendering: one cluster per variable, vertices labelled `v<i>=<a>`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let title = match self.mode {
            Mode::Microstructure => "microstructure",
            Mode::Complement => "microstructure_complement",
        };
        let _ = writeln!(out, "graph {title} {{");
        let mut var = usize::MAX;
        for (idx, v) in self.vertices.iter().enumerate() {
            if v.var != var {
                if var != usize::MAX {
                    out.push_str("  }\n");
                }
                var = v.var;
                let _ = writeln!(out, "  subgraph cluster_v{} {{", var + 1);
                let _ = writeln!(out, "    label=\"v{}\";", var + 1);
            }
            let _ = writeln!(out, "    n{idx} [label=\"v{}={}\"];", v.var + 1, v.value);
        }
        if var != usize::MAX {
            out.push_str("  }\n");
        }
        let n = self.vertices.len();
        for u in 0..n {
            for w in u + 1..n {
                if !self.has_edge(u, w) {
                    continue;
                }
                match self.edge_cost(u, w) {
                    Some(c) => {
                        let _ = writeln!(out, "  n{u} -- n{w} [label=\"{c}\"];");
                    }
                    None => {
                        let _ = writeln!(out, "  n{u} -- n{w};");
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Largest pattern the exhaustive matcher accepts.
pub const MAX_PATTERN_VERTICES: usize = 8;

/// A coloured pattern with induced semantics.
///
/// Every cross-colour pair of pattern vertices is listed either as a required
/// edge or a required non-edge. Same-colour pairs are left to the host: they
/// are never edges of a micro-structure and always edges of a complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    host: Mode,
    colours: Vec<usize>,
    adj: Vec<bool>,
}

impl Pattern {
    pub fn new(
        name: impl Into<String>,
        host: Mode,
        colours: Vec<usize>,
        edges: &[(usize, usize)],
        non_edges: &[(usize, usize)],
    ) -> Result<Self> {
        let n = colours.len();
        let mut adj = vec![false; n * n];
        let mut listed = vec![false; n * n];
        for (&(u, v), is_edge) in edges.iter().map(|e| (e, true)).chain(non_edges.iter().map(|e| (e, false))) {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidArgument(format!("pattern pair ({u}, {v})")));
            }
            if colours[u] == colours[v] {
                return Err(Error::InvalidArgument(format!("pattern pair ({u}, {v}) shares a colour")));
            }
            if listed[u * n + v] {
                return Err(Error::InvalidArgument(format!("pattern pair ({u}, {v}) listed twice")));
            }
            listed[u * n + v] = true;
            listed[v * n + u] = true;
            adj[u * n + v] = is_edge;
            adj[v * n + u] = is_edge;
        }
        for u in 0..n {
            for v in u + 1..n {
                if colours[u] != colours[v] && !listed[u * n + v] {
                    return Err(Error::InvalidArgument(format!("pattern pair ({u}, {v}) unspecified")));
                }
            }
        }
        Ok(Pattern { name: name.into(), host, colours, adj })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Which graph the pattern is meant to be searched in.
    pub fn host(&self) -> Mode {
        self.host
    }

    pub fn num_vertices(&self) -> usize {
        self.colours.len()
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.colours.len() + v]
    }
}

/// Assignments to `k-1` variables forming a clique, all joined to two values
/// of a `k`-th variable. Forbidding it in the crisp micro-structure bounds the
/// number of extensions of any `(k-1)`-variable partial solution to one.
pub fn extension_pattern(k: usize) -> Result<Pattern> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("extension pattern needs k >= 3, got {k}")));
    }
    let clique = k - 1;
    let mut colours: Vec<usize> = (0..clique).collect();
    colours.extend([clique, clique]);
    let mut edges = Vec::new();
    for u in 0..clique {
        for v in u + 1..clique {
            edges.push((u, v));
        }
        edges.push((u, clique));
        edges.push((u, clique + 1));
    }
    Pattern::new(format!("extension-k{k}"), Mode::Microstructure, colours, &edges, &[])
}

/// Two values of one variable sharing two neighbours on other variables that
/// are not joined to each other.
pub fn twin_support_pattern() -> Pattern {
    Pattern::new(
        "twin-support",
        Mode::Microstructure,
        vec![0, 0, 1, 2],
        &[(0, 2), (1, 2), (0, 3), (1, 3)],
        &[(2, 3)],
    )
    .expect("valid pattern")
}

/// Broken triangle `a - u - v - b` with `a, b` on the same (last) variable.
///
/// Vertex order: `u`, `v`, `a`, `b`. The ordering condition (the variable of
/// `a, b` comes last) is not part of the pattern; see [`check_btp`].
pub fn broken_triangle_pattern() -> Pattern {
    Pattern::new(
        "broken-triangle",
        Mode::Microstructure,
        vec![0, 1, 2, 2],
        &[(0, 1), (0, 2), (1, 3)],
        &[(0, 3), (1, 2)],
    )
    .expect("valid pattern")
}

/// Two forbidden pairs sharing an assignment whose third side is allowed,
/// searched in the micro-structure complement (the crisp joint-winner violation).
pub fn crisp_jwp_pattern() -> Pattern {
    Pattern::new("crisp-jwp", Mode::Complement, vec![0, 1, 2], &[(0, 2), (1, 2)], &[(0, 1)]).expect("valid pattern")
}

/// Looks up the shipped patterns by name.
pub fn named_pattern(name: &str) -> Option<Pattern> {
    match name {
        "extension-k3" => extension_pattern(3).ok(),
        "extension-k4" => extension_pattern(4).ok(),
        "twin-support" => Some(twin_support_pattern()),
        "broken-triangle" => Some(broken_triangle_pattern()),
        "crisp-jwp" => Some(crisp_jwp_pattern()),
        _ => None,
    }
}

/// Calls `visit` with every embedding of `p` as an induced substructure of `g`.
///
/// An embedding maps pattern vertex `i` to host vertex `map[i]`; it is
/// injective, sends equal pattern colours to equal host colours and distinct
/// ones to distinct host colours, and reproduces every listed edge and
/// non-edge.
pub fn for_each_embedding<F>(g: &ColouredMicrostructure, p: &Pattern, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if p.num_vertices() > MAX_PATTERN_VERTICES {
        return Err(Error::UnsupportedPattern(format!(
            "{} has {} vertices (max {MAX_PATTERN_VERTICES})",
            p.name,
            p.num_vertices()
        )));
    }
    let num_colours = g.vertices.iter().map(|v| v.var + 1).max().unwrap_or(0);
    let mut by_colour: Vec<Vec<usize>> = vec![Vec::new(); num_colours];
    for (idx, v) in g.vertices.iter().enumerate() {
        by_colour[v.var].push(idx);
    }
    let pattern_colours = p.colours.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut search = Embedder {
        g,
        p,
        by_colour: &by_colour,
        class_host: vec![None; pattern_colours],
        host_taken: vec![false; num_colours],
        used: vec![false; g.num_vertices()],
        map: Vec::with_capacity(p.num_vertices()),
    };
    let _ = search.extend(&mut visit);
    Ok(())
}

struct Embedder<'a> {
    g: &'a ColouredMicrostructure,
    p: &'a Pattern,
    by_colour: &'a [Vec<usize>],
    class_host: Vec<Option<usize>>,
    host_taken: Vec<bool>,
    used: Vec<bool>,
    map: Vec<usize>,
}

impl Embedder<'_> {
    fn extend<F: FnMut(&[usize]) -> ControlFlow<()>>(&mut self, visit: &mut F) -> ControlFlow<()> {
        let next = self.map.len();
        if next == self.p.num_vertices() {
            return visit(&self.map);
        }
        let class = self.p.colour(next);
        let hosts: Vec<usize> = match self.class_host[class] {
            Some(h) => vec![h],
            None => (0..self.by_colour.len()).filter(|&h| !self.host_taken[h]).collect(),
        };
        for h in hosts {
            let fresh = self.class_host[class].is_none();
            if fresh {
                self.class_host[class] = Some(h);
                self.host_taken[h] = true;
            }
            for &v in &self.by_colour[h] {
                if self.used[v] || !self.consistent(next, v) {
                    continue;
                }
                self.used[v] = true;
                self.map.push(v);
                let flow = self.extend(visit);
                self.map.pop();
                self.used[v] = false;
                flow?;
            }
            if fresh {
                self.class_host[class] = None;
                self.host_taken[h] = false;
            }
        }
        ControlFlow::Continue(())
    }

    fn consistent(&self, next: usize, v: usize) -> bool {
        self.map.iter().enumerate().all(|(q, &w)| {
            self.p.colour(q) == self.p.colour(next) || self.p.has_edge(next, q) == self.g.has_edge(v, w)
        })
    }
}

/// First embedding of `p` in `g`, if any.
pub fn find_induced_substructure(g: &ColouredMicrostructure, p: &Pattern) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    for_each_embedding(g, p, |map| {
        found = Some(map.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// A broken triangle: `u` of `i`, `v` of `j`, and `a`, `b` of `k`, where
/// `i`, `j` precede `k` in the ordering, `(u,v)`, `(u,a)`, `(v,b)` are
/// allowed and `(u,b)`, `(v,a)` are both forbidden.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BtpViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub u: usize,
    pub v: usize,
    pub a: usize,
    pub b: usize,
}

/// Checks the broken-triangle property for `ordering` (position -> variable).
///
/// Only binary entries matter; an entry is allowed iff it is finite.
pub fn check_btp(instance: &VcspInstance, ordering: &[usize]) -> Result<Option<BtpViolation>> {
    let n = instance.num_vars();
    let mut seen = vec![false; n];
    if ordering.len() != n || ordering.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::InvalidOrdering(format!("{ordering:?} is not a permutation of 0..{n}")));
    }
    let ok = |x: usize, y: usize, a: usize, b: usize| instance.binary(x, y, a, b).is_finite();
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                let (i, j, k) = (ordering[p], ordering[q], ordering[r]);
                for u in 0..instance.domain_size(i) {
                    for v in 0..instance.domain_size(j) {
                        if !ok(i, j, u, v) {
                            continue;
                        }
                        for a in 0..instance.domain_size(k) {
                            if !ok(i, k, u, a) || ok(j, k, v, a) {
                                continue;
                            }
                            for b in 0..instance.domain_size(k) {
                                if ok(j, k, v, b) && !ok(i, k, u, b) {
                                    return Ok(Some(BtpViolation { i, j, k, u, v, a, b }));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_var_example() -> VcspInstance {
        let mut p = VcspInstance::new(vec![2, 2, 1]).unwrap();
        p.set_binary(0, 1, 0, 0, Cost::from_int(2)).unwrap();
        p.set_binary(0, 2, 0, 0, Cost::from_int(1)).unwrap();
        p.set_binary(1, 2, 0, 0, Cost::from_int(1)).unwrap();
        p.set_binary(0, 1, 1, 1, Cost::from_int(1)).unwrap();
        p
    }

    fn all_different(n: usize, d: usize) -> VcspInstance {
        let mut p = VcspInstance::uniform(n, d).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                for a in 0..d {
                    p.set_binary(i, j, a, a, Cost::Infinite).unwrap();
                }
            }
        }
        p
    }

    #[test]
    fn all_finite_is_complete_bipartite() {
        let p = VcspInstance::uniform(2, 2).unwrap();
        let g = build_microstructure(&p, false, true);
        assert_eq!(g.edge_count(), 4);
        let h = build_microstructure(&p, true, true);
        assert_eq!(h.edge_count(), 2);
        assert!(h.has_edge(0, 1) && h.has_edge(2, 3));
    }

    #[test]
    fn three_var_example_costs() {
        let g = build_microstructure(&three_var_example(), false, false);
        assert_eq!(g.num_vertices(), 5);
        // vertices: (1,a)=0 (1,b)=1 (2,a)=2 (2,b)=3 (3,a)=4
        assert_eq!(g.edge_cost(0, 2), Some(&Cost::from_int(2)));
        assert_eq!(g.edge_cost(0, 4), Some(&Cost::from_int(1)));
        assert_eq!(g.edge_cost(2, 4), Some(&Cost::from_int(1)));
        assert_eq!(g.edge_cost(1, 3), Some(&Cost::from_int(1)));
        assert_eq!(g.edge_cost(1, 2), Some(&Cost::zero()));
        assert_eq!(g.edge_cost(0, 1), None);
    }

    #[test]
    fn crisp_partition_of_cross_pairs() {
        let mut p = all_different(3, 2);
        p.set_binary(0, 1, 0, 1, Cost::Infinite).unwrap();
        let g = build_microstructure(&p, false, true);
        let h = build_microstructure(&p, true, true);
        for u in 0..g.num_vertices() {
            for w in u + 1..g.num_vertices() {
                if g.colour(u) != g.colour(w) {
                    assert_ne!(g.has_edge(u, w), h.has_edge(u, w));
                }
            }
        }
    }

    #[test]
    fn single_vertex_pattern_matches() {
        let p = Pattern::new("dot", Mode::Microstructure, vec![0], &[], &[]).unwrap();
        let g = build_microstructure(&VcspInstance::uniform(1, 1).unwrap(), false, true);
        assert_eq!(find_induced_substructure(&g, &p).unwrap(), Some(vec![0]));
    }

    #[test]
    fn extension_pattern_found_when_pair_extends_twice() {
        // (0=0, 1=0) extends to both values of variable 2.
        let mut p = VcspInstance::uniform(3, 2).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            for a in 0..2 {
                for b in 0..2 {
                    p.set_binary(i, j, a, b, Cost::Infinite).unwrap();
                }
            }
        }
        p.set_binary(0, 1, 0, 0, Cost::zero()).unwrap();
        p.set_binary(0, 2, 0, 0, Cost::zero()).unwrap();
        p.set_binary(0, 2, 0, 1, Cost::zero()).unwrap();
        p.set_binary(1, 2, 0, 0, Cost::zero()).unwrap();
        let g = build_microstructure(&p, false, true);
        let pat = extension_pattern(3).unwrap();
        assert!(find_induced_substructure(&g, &pat).unwrap().is_none());
        p.set_binary(1, 2, 0, 1, Cost::zero()).unwrap();
        let g = build_microstructure(&p, false, true);
        let w = find_induced_substructure(&g, &pat).unwrap().unwrap();
        let vs: Vec<Vertex> = w.iter().map(|&i| g.vertices()[i]).collect();
        assert_eq!(vs[0], Vertex { var: 0, value: 0 });
        assert_eq!(vs[1], Vertex { var: 1, value: 0 });
        assert_eq!(vs[2].var, 2);
        assert_eq!(vs[3].var, 2);
    }

    #[test]
    fn all_different_triangle_has_no_crisp_jwp_violation() {
        let g = build_microstructure(&all_different(3, 3), true, true);
        assert!(find_induced_substructure(&g, &crisp_jwp_pattern()).unwrap().is_none());
    }

    #[test]
    fn crisp_jwp_violation_found() {
        let mut p = VcspInstance::uniform(3, 1).unwrap();
        p.set_binary(0, 2, 0, 0, Cost::Infinite).unwrap();
        p.set_binary(1, 2, 0, 0, Cost::Infinite).unwrap();
        let g = build_microstructure(&p, true, true);
        assert!(find_induced_substructure(&g, &crisp_jwp_pattern()).unwrap().is_some());
    }

    #[test]
    fn oversized_pattern_rejected() {
        let p = Pattern::new("big", Mode::Microstructure, vec![0; 9], &[], &[]).unwrap();
        let g = build_microstructure(&VcspInstance::uniform(1, 9).unwrap(), false, true);
        assert!(matches!(find_induced_substructure(&g, &p), Err(Error::UnsupportedPattern(_))));
    }

    #[test]
    fn pattern_must_cover_cross_pairs() {
        assert!(Pattern::new("gap", Mode::Microstructure, vec![0, 1, 2], &[(0, 1)], &[(1, 2)]).is_err());
        assert!(Pattern::new("clash", Mode::Microstructure, vec![0, 1], &[(0, 1)], &[(1, 0)]).is_err());
    }

    #[test]
    fn btp_vacuous_below_three_variables() {
        let p = all_different(2, 3);
        assert_eq!(check_btp(&p, &[1, 0]).unwrap(), None);
    }

    #[test]
    fn btp_violation_reported() {
        // u=(0,0), v=(1,0), a=(2,0), b=(2,1): u-v, u-a, v-b allowed; u-b, v-a forbidden.
        let mut p = VcspInstance::new(vec![1, 1, 2]).unwrap();
        p.set_binary(0, 2, 0, 1, Cost::Infinite).unwrap();
        p.set_binary(1, 2, 0, 0, Cost::Infinite).unwrap();
        let w = check_btp(&p, &[0, 1, 2]).unwrap().unwrap();
        assert_eq!((w.i, w.j, w.k), (0, 1, 2));
        assert_eq!((w.u, w.v, w.a, w.b), (0, 0, 0, 1));
        // With variable 2 first there is nothing to break.
        assert_eq!(check_btp(&p, &[2, 0, 1]).unwrap(), None);
    }

    #[test]
    fn btp_rejects_bad_ordering() {
        let p = VcspInstance::uniform(3, 2).unwrap();
        assert!(matches!(check_btp(&p, &[0, 0, 1]), Err(Error::InvalidOrdering(_))));
        assert!(matches!(check_btp(&p, &[0, 1]), Err(Error::InvalidOrdering(_))));
    }

    #[test]
    fn dot_export_labels() {
        let dot = build_microstructure(&three_var_example(), false, false).to_dot();
        assert!(dot.contains("subgraph cluster_v1"));
        assert!(dot.contains("[label=\"v3=0\"]"));
        assert!(dot.contains("n0 -- n2 [label=\"2\"]"));
    }
}
