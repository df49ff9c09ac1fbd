//! Laminar hierarchy of maximal assignment-cliques.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::VcspInstance;
use crate::jwp::RankedCosts;

/// A maximal assignment-clique of the edges of cost at least `threshold`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueNode {
    pub threshold: Cost,
    /// Flat vertex ids (see [`VcspInstance::vertex_offsets`]), sorted.
    pub members: Vec<usize>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Tree of assignment-cliques. Node 0 is the root: threshold 0, all vertices.
///
/// Children of a node have pairwise disjoint member sets contained in the
/// parent's; thresholds strictly increase away from the root. A child of the
/// root may contain every vertex when all binary costs are positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueHierarchy {
    nodes: Vec<CliqueNode>,
    deepest: Vec<usize>,
    depth: Vec<usize>,
    offsets: Vec<usize>,
}

impl CliqueHierarchy {
    pub fn nodes(&self) -> &[CliqueNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &CliqueNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn num_vertices(&self) -> usize {
        self.deepest.len()
    }

    pub fn vertex_id(&self, var: usize, value: usize) -> usize {
        self.offsets[var] + value
    }

    /// `(variable, value)` of a flat vertex id.
    pub fn vertex(&self, id: usize) -> (usize, usize) {
        let var = self.offsets.partition_point(|&o| o <= id) - 1;
        (var, id - self.offsets[var])
    }

    /// Deepest node containing the vertex.
    pub fn deepest(&self, var: usize, value: usize) -> usize {
        self.deepest[self.vertex_id(var, value)]
    }

    pub fn depth(&self, node: usize) -> usize {
        self.depth[node]
    }

    /// Member vertices of a node as `(variable, value)` pairs.
    pub fn member_pairs(&self, node: usize) -> Vec<(usize, usize)> {
        self.nodes[node].members.iter().map(|&v| self.vertex(v)).collect()
    }

    /// Number of distinct variables among a node's members.
    pub fn distinct_vars(&self, node: usize) -> usize {
        let mut vars: Vec<usize> = self.nodes[node].members.iter().map(|&v| self.vertex(v).0).collect();
        vars.dedup();
        vars.len()
    }

    /// Deepest node containing both vertices.
    pub fn lca(&self, u: usize, w: usize) -> usize {
        let (mut x, mut y) = (self.deepest[u], self.deepest[w]);
        while self.depth[x] > self.depth[y] {
            x = self.nodes[x].parent.expect("non-root has parent");
        }
        while self.depth[y] > self.depth[x] {
            y = self.nodes[y].parent.expect("non-root has parent");
        }
        while x != y {
            x = self.nodes[x].parent.expect("non-root has parent");
            y = self.nodes[y].parent.expect("non-root has parent");
        }
        x
    }
}

#[derive(Clone, Copy)]
enum Part {
    Leaf(usize),
    Node(usize),
}

struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// Builds the clique hierarchy of a Z-free instance with the joint-winner property.
///
/// Cross-variable edges are merged by descending cost; every merge at level
/// `alpha > 0` creates the component at that level as a node. The result is
/// then checked against the instance: the cost of every cross-variable pair
/// must equal the threshold of the deepest node containing both. A failure
/// (`StructureViolated`) means the input was not Z-free or not JWP.
pub fn extract_clique_hierarchy(instance: &VcspInstance) -> Result<CliqueHierarchy> {
    let ranks = RankedCosts::new(instance);
    let offsets = instance.vertex_offsets();
    let nv = instance.num_vertices();
    let n = instance.num_vars();
    let zero_rank = ranks.levels().first().filter(|c| c.is_zero()).map(|_| 0u32);

    let mut edges: Vec<(u32, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..instance.domain_size(i) {
                for b in 0..instance.domain_size(j) {
                    let r = ranks.get(i, j, a, b);
                    if Some(r) != zero_rank {
                        edges.push((r, offsets[i] + a, offsets[j] + b));
                    }
                }
            }
        }
    }
    edges.sort_by(|x, y| y.0.cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));

    // Raw nodes in creation order: (rank, parts). Parents are filled in later.
    let mut raw: Vec<(Option<u32>, Vec<Part>)> = Vec::new();
    let mut dsu = Dsu::new(nv);
    let mut current: Vec<Part> = (0..nv).map(Part::Leaf).collect();
    let mut pending: Vec<Option<Vec<Part>>> = vec![None; nv];
    let mut start = 0;
    while start < edges.len() {
        let level = edges[start].0;
        let end = start + edges[start..].iter().take_while(|e| e.0 == level).count();
        let mut touched = Vec::new();
        for &(_, u, w) in &edges[start..end] {
            let (ru, rw) = (dsu.find(u), dsu.find(w));
            if ru == rw {
                continue;
            }
            let pu = pending[ru].take().unwrap_or_else(|| vec![current[ru]]);
            let pw = pending[rw].take().unwrap_or_else(|| vec![current[rw]]);
            let (big, small) = if dsu.size[ru] >= dsu.size[rw] { (ru, rw) } else { (rw, ru) };
            dsu.parent[small] = big;
            dsu.size[big] += dsu.size[small];
            let mut parts = pu;
            parts.extend(pw);
            pending[big] = Some(parts);
            touched.push(big);
        }
        for r in touched {
            if dsu.find(r) != r {
                continue;
            }
            if let Some(parts) = pending[r].take() {
                raw.push((Some(level), parts));
                current[r] = Part::Node(raw.len() - 1);
            }
        }
        start = end;
    }
    let mut top: Vec<Part> = Vec::new();
    for v in 0..nv {
        if dsu.find(v) == v {
            top.push(current[v]);
        }
    }
    raw.push((None, top));

    // Renumber breadth-first from the root, children ordered by smallest member.
    let mut members_raw: Vec<Vec<usize>> = Vec::with_capacity(raw.len());
    for (_, parts) in &raw {
        let mut m = Vec::new();
        for p in parts {
            match *p {
                Part::Leaf(v) => m.push(v),
                Part::Node(id) => m.extend_from_slice(&members_raw[id]),
            }
        }
        m.sort_unstable();
        members_raw.push(m);
    }
    let root_raw = raw.len() - 1;
    let mut nodes: Vec<CliqueNode> = Vec::with_capacity(raw.len());
    let mut depth = Vec::with_capacity(raw.len());
    let mut deepest = vec![0; nv];
    let mut order = vec![(root_raw, None::<usize>, 0usize)];
    let mut head = 0;
    while head < order.len() {
        let (rid, parent, dep) = order[head];
        let id = head;
        head += 1;
        let threshold = raw[rid].0.map_or_else(Cost::zero, |r| ranks.level(r).clone());
        nodes.push(CliqueNode { threshold, members: members_raw[rid].clone(), parent, children: Vec::new() });
        depth.push(dep);
        if let Some(p) = parent {
            nodes[p].children.push(id);
        }
        let mut kids: Vec<usize> = Vec::new();
        for part in &raw[rid].1 {
            match *part {
                Part::Leaf(v) => deepest[v] = id,
                Part::Node(c) => kids.push(c),
            }
        }
        kids.sort_by_key(|&c| members_raw[c][0]);
        for c in kids {
            order.push((c, Some(id), dep + 1));
        }
    }
    let h = CliqueHierarchy { nodes, deepest, depth, offsets };
    verify_reconstruction(instance, &h)?;
    Ok(h)
}

fn verify_reconstruction(instance: &VcspInstance, h: &CliqueHierarchy) -> Result<()> {
    let n = instance.num_vars();
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..instance.domain_size(i) {
                for b in 0..instance.domain_size(j) {
                    let node = h.lca(h.vertex_id(i, a), h.vertex_id(j, b));
                    let cost = instance.binary(i, j, a, b);
                    if h.nodes[node].threshold != *cost {
                        return Err(Error::StructureViolated(format!(
                            "pair ({i}={a}, {j}={b}) has cost {cost} but its smallest common clique has threshold {}",
                            h.nodes[node].threshold
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
