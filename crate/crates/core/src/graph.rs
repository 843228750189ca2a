//! Simple undirected graphs with at most 128 edges and 128 vertices.
//!
//! Edge sets are stored as `u128` bitmasks so that the solver can carry the
//! used-edge set of a position in a single word.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

/// One bit per edge index.
pub type EdgeMask = u128;

pub const MAX_EDGES: usize = 128;
pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("{0} edges exceeds the limit of {MAX_EDGES}")]
    TooManyEdges(usize),
    #[error("{0} vertices exceeds the limit of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph has {n} vertices, canonical form supports at most {max}")]
    TooLargeForCanonicalForm { n: usize, max: usize },
    #[error("invalid generator parameters: {0}")]
    BadParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, usize)>>,
    incident: Vec<EdgeMask>,
    nbr: Vec<u128>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Edge `i` is the `i`-th pair, stored with
    /// its smaller endpoint first.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        if edges.len() > MAX_EDGES {
            return Err(GraphError::TooManyEdges(edges.len()));
        }
        let mut adj = vec![Vec::new(); n];
        let mut incident = vec![0u128; n];
        let mut nbr = vec![0u128; n];
        let mut stored = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if nbr[u] >> v & 1 == 1 {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            nbr[u] |= 1 << v;
            nbr[v] |= 1 << u;
            incident[u] |= 1 << i;
            incident[v] |= 1 << i;
            adj[u].push((v, i));
            adj[v].push((u, i));
            stored.push((u.min(v), u.max(v)));
        }
        Ok(Graph {
            n,
            edges: stored,
            adj,
            incident,
            nbr,
        })
    }

    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        Graph::new(n, &[])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// Mask with a bit set for every edge of the graph.
    pub fn all_edges(&self) -> EdgeMask {
        if self.m() == 128 {
            u128::MAX
        } else {
            (1u128 << self.m()) - 1
        }
    }

    /// The endpoint of edge `e` that is not `v`.
    pub fn other_end(&self, e: usize, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `(neighbour, edge index)` pairs in edge-index order.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adj[v]
    }

    pub fn incident_mask(&self, v: Vertex) -> EdgeMask {
        self.incident[v]
    }

    /// Neighbourhood of `v` as a vertex bitmask.
    pub fn neighbor_mask(&self, v: Vertex) -> u128 {
        self.nbr[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.nbr[u] >> v & 1 == 1
    }

    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        if !self.has_edge(u, v) {
            return None;
        }
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() + 1 == self.n && self.is_connected()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    /// A proper 2-colouring, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Same vertex set, only the edges in `mask`. Edge indices are renumbered
    /// in increasing order of the old ones.
    pub fn edge_subgraph(&self, mask: EdgeMask) -> Graph {
        let edges: Vec<_> = (0..self.m())
            .filter(|&e| mask >> e & 1 == 1)
            .map(|e| self.edges[e])
            .collect();
        Graph::new(self.n, &edges).expect("subgraph of a valid graph")
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]))
            .collect();
        Graph::new(vertices.len(), &edges).expect("induced subgraph of a valid graph")
    }

    /// Image of the graph under `perm`: vertex `v` becomes `perm[v]`, edge
    /// order is kept.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        Graph::new(self.n, &edges).expect("relabelling is a bijection")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + self.n, b + self.n)));
        Graph::new(self.n + other.n, &edges)
    }

    /// Adds the given edges, keeping existing indices.
    pub fn with_edges(
        &self,
        extra_vertices: usize,
        extra: &[(Vertex, Vertex)],
    ) -> Result<Graph, GraphError> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra);
        Graph::new(self.n + extra_vertices, &edges)
    }
}

// Generators. Vertex numbering is documented on each function because the
// strategy code addresses vertices by these coordinates.

/// K_n on vertices `0..n`.
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

/// K_{p,q}: left side `0..p`, right side `p..p+q`.
pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for u in 0..p {
        for v in 0..q {
            edges.push((u, p + v));
        }
    }
    Graph::new(p + q, &edges)
}

/// P_n with `n` vertices `0-1-...-(n-1)`.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::BadParameters(
            "path needs at least one vertex".into(),
        ));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges)
}

/// C_n with edges `i-(i+1 mod n)`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadParameters(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// G □ H. Vertex `(a, b)` gets index `a * |V(H)| + b`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let nh = h.n();
    let mut edges = Vec::new();
    for a in 0..g.n() {
        for &(b, c) in h.edges() {
            edges.push((a * nh + b, a * nh + c));
        }
    }
    for &(a, c) in g.edges() {
        for b in 0..nh {
            edges.push((a * nh + b, c * nh + b));
        }
    }
    Graph::new(g.n() * nh, &edges)
}

/// P_m □ P_n. Vertex `(i, j)` with `i < m`, `j < n` is `i * n + j`.
///
/// For `m = 2` and odd `n = 2k + 1`, `u_x` is `x + k` and `v_x` is `n + x + k`
/// for `x` in `-k..=k`.
pub fn grid(m: usize, n: usize) -> Result<Graph, GraphError> {
    cartesian_product(&path(m)?, &path(n)?)
}

/// C_n □ K_2. Outer vertex `u_i` is `2i`, inner vertex `v_i` is `2i + 1`.
pub fn prism(n: usize) -> Result<Graph, GraphError> {
    cartesian_product(&cycle(n)?, &complete(2)?)
}

/// Tree on `parents.len() + 1` vertices where vertex `i + 1` hangs from
/// `parents[i]`. Each parent must precede its child.
pub fn tree_from_parents(parents: &[Vertex]) -> Result<Graph, GraphError> {
    let mut edges = Vec::with_capacity(parents.len());
    for (i, &p) in parents.iter().enumerate() {
        if p > i {
            return Err(GraphError::BadParameters(format!(
                "parent {p} of vertex {} does not precede it",
                i + 1
            )));
        }
        edges.push((p, i + 1));
    }
    Graph::new(parents.len() + 1, &edges)
}

pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
