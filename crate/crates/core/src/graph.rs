//! Small undirected graphs and induced-subgraph detection.

/// Simple undirected graph on vertices `0..n` backed by an adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<bool>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { n, adj: vec![false; n * n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Panics on self-loops.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop on vertex {u}");
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    /// First injective map of `pattern` into `self` preserving both edges and non-edges.
    pub fn find_induced(&self, pattern: &SimpleGraph) -> Option<Vec<usize>> {
        let mut map = Vec::with_capacity(pattern.n);
        let mut used = vec![false; self.n];
        self.extend_induced(pattern, &mut map, &mut used).then_some(map)
    }

    fn extend_induced(&self, pattern: &SimpleGraph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let p = map.len();
        if p == pattern.n {
            return true;
        }
        for v in 0..self.n {
            if used[v] {
                continue;
            }
            if (0..p).all(|q| pattern.has_edge(p, q) == self.has_edge(v, map[q])) {
                used[v] = true;
                map.push(v);
                if self.extend_induced(pattern, map, used) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
}

/// The small graphs whose absence defines the classic MWIS-tractable classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallGraph {
    /// `K_{1,3}`.
    Claw,
    /// Chordless path on four vertices.
    P4,
    /// Claw with one edge subdivided (also called a chair).
    Fork,
}

impl SmallGraph {
    pub fn graph(self) -> SimpleGraph {
        match self {
            SmallGraph::Claw => SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]),
            SmallGraph::P4 => SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]),
            SmallGraph::Fork => SimpleGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]),
        }
    }
}

/// Witness vertices (in the order of [`SmallGraph::graph`]) of an induced copy.
pub fn detect_small_graph(g: &SimpleGraph, which: SmallGraph) -> Option<Vec<usize>> {
    g.find_induced(&which.graph())
}
