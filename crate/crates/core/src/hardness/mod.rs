//! Constructions from the hardness reduction and their structural checks.
//!
//! Three graphs are built here: the host with one edge replaced by the edge
//! gadget, the pendant graph `Ĝ` (a new leaf on `w`), and the reduction
//! graph `G'` joining `Ĝ` to the centre of a path with `2n + 3` vertices.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::canon::canonical_form;
use crate::game::Player;
use crate::graph::{Graph, GraphError, Vertex};
use crate::solver::{SolveError, Solver, SolverConfig};
use crate::trail::{longest_trail_within, TrailBudgetExceeded, TrailSearch};

const GADGET: &str = include_str!("gadget.txt");

/// Vertices added by the edge gadget.
pub const GADGET_VERTICES: usize = 34;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HardnessError {
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: Vertex, degree: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is disconnected")]
    NotConnected,
    #[error("{0}-{1} is not an edge of the host")]
    MissingEdge(Vertex, Vertex),
    #[error("vertex {0} is not in the graph")]
    NoSuchVertex(Vertex),
    #[error("construction check failed: {0}")]
    Structure(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn validate_cubic(g: &Graph) -> Result<(), HardnessError> {
    match (0..g.n()).find(|&v| g.degree(v) != 3) {
        Some(v) => Err(HardnessError::NotCubic { vertex: v, degree: g.degree(v) }),
        None => Ok(()),
    }
}

pub fn validate_bipartite(g: &Graph) -> Result<(), HardnessError> {
    g.two_coloring().map(|_| ()).ok_or(HardnessError::NotBipartite)
}

pub fn validate_connected(g: &Graph) -> Result<(), HardnessError> {
    g.is_connected().then_some(()).ok_or(HardnessError::NotConnected)
}

fn structure(ok: bool, what: impl FnOnce() -> String) -> Result<(), HardnessError> {
    ok.then_some(()).ok_or_else(|| HardnessError::Structure(what()))
}

#[derive(Debug, Clone, Serialize)]
pub struct GadgetReplacement {
    #[serde(skip)]
    pub host: Graph,
    pub replaced_edge: (Vertex, Vertex),
    #[serde(skip)]
    pub result: Graph,
    /// `x`, `y`, `x'`, `y'`, `u`, `v` and the block vertices `A1`..`D8`.
    pub anchors: BTreeMap<String, Vertex>,
}

impl GadgetReplacement {
    pub fn anchor(&self, name: &str) -> Vertex {
        self.anchors[name]
    }
}

/// Named edges of the gadget, parsed from the shipped table.
fn gadget_edges() -> Vec<(String, String)> {
    let mut section = "";
    let mut block = Vec::new();
    let mut out = Vec::new();
    for line in GADGET.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') {
            section = line;
            continue;
        }
        let (a, b) = line.split_once(' ').expect("gadget table has two names per line");
        match section {
            "[block]" => block.push((a.to_string(), b.to_string())),
            _ => out.push((a.to_string(), b.to_string())),
        }
    }
    for p in ["A", "B", "C", "D"] {
        out.extend(block.iter().map(|(a, b)| (format!("{p}{a}"), format!("{p}{b}"))));
    }
    out
}

/// Replaces the host edge `uv` by the gadget. Host vertices keep their
/// numbers; `x`, `y` and then the blocks `A1..A8, ..., D1..D8` follow.
pub fn replace_edge_with_gadget(host: &Graph, uv: (Vertex, Vertex)) -> Result<GadgetReplacement, HardnessError> {
    validate_cubic(host)?;
    validate_bipartite(host)?;
    let (u, v) = uv;
    let e = host.edge_index(u, v).ok_or(HardnessError::MissingEdge(u, v))?;
    let n = host.n();
    let mut anchors = BTreeMap::new();
    anchors.insert("u".to_string(), u);
    anchors.insert("v".to_string(), v);
    anchors.insert("x".to_string(), n);
    anchors.insert("y".to_string(), n + 1);
    for (i, p) in ["A", "B", "C", "D"].iter().enumerate() {
        for j in 1..=8 {
            anchors.insert(format!("{p}{j}"), n + 2 + 8 * i + j - 1);
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = (0..host.m()).filter(|&f| f != e).map(|f| host.edge(f)).collect();
    edges.extend(gadget_edges().iter().map(|(a, b)| (anchors[a], anchors[b])));
    let result = Graph::new(n + GADGET_VERTICES, &edges)?;
    anchors.insert("x'".to_string(), anchors["B1"]);
    anchors.insert("y'".to_string(), anchors["C1"]);
    let rep = GadgetReplacement { host: host.clone(), replaced_edge: uv, result, anchors };
    validate_gadget(&rep)?;
    Ok(rep)
}

pub fn validate_gadget(rep: &GadgetReplacement) -> Result<(), HardnessError> {
    let g = &rep.result;
    validate_cubic(g)?;
    validate_bipartite(g)?;
    validate_connected(g)?;
    structure(g.n() == rep.host.n() + GADGET_VERTICES, || format!("{} vertices", g.n()))?;
    structure(g.m() == rep.host.m() - 1 + 52, || format!("{} edges", g.m()))
}

/// The trail that leaves `x` through `x'`, crosses blocks B, D and A,
/// follows `host_path` from `u` to `v`, and ends through block C at `y`.
pub fn gadget_trail(rep: &GadgetReplacement, host_path: &[Vertex]) -> Result<Vec<Vertex>, HardnessError> {
    let (u, v) = rep.replaced_edge;
    structure(host_path.first() == Some(&u) && host_path.last() == Some(&v), || {
        "host path must run from u to v".into()
    })?;
    let a = |s: &str| rep.anchor(s);
    let block = |p: &str, order: &[u8]| order.iter().map(move |i| a(&format!("{p}{i}"))).collect::<Vec<_>>();
    let mut t = vec![a("x")];
    t.extend(block("B", &[1, 2, 7, 6, 5, 8, 3, 4]));
    t.push(a("y"));
    t.extend(block("D", &[4, 5, 8, 3, 2, 7, 6, 1]));
    t.push(a("x"));
    t.extend(block("A", &[4, 3, 8, 5, 6, 7, 2, 1]));
    t.extend_from_slice(host_path);
    t.extend(block("C", &[4, 3, 8, 5, 6, 7, 2, 1]));
    t.push(a("y"));
    check_trail(&rep.result, &t)?;
    Ok(t)
}

/// Checks that consecutive vertices are joined by distinct edges.
pub fn check_trail(g: &Graph, t: &[Vertex]) -> Result<(), HardnessError> {
    let mut used = 0u128;
    for w in t.windows(2) {
        let e = g.edge_index(w[0], w[1]).ok_or(HardnessError::MissingEdge(w[0], w[1]))?;
        structure(used >> e & 1 == 0, || format!("edge {}-{} used twice", w[0], w[1]))?;
        used |= 1 << e;
    }
    Ok(())
}

/// A Hamiltonian path from `a` to `b`, by backtracking.
pub fn hamiltonian_path(g: &Graph, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    fn go(g: &Graph, path: &mut Vec<Vertex>, seen: u128, b: Vertex) -> bool {
        let v = *path.last().expect("nonempty");
        if path.len() == g.n() {
            return v == b;
        }
        for &(w, _) in g.neighbors(v) {
            if seen >> w & 1 == 1 || (w == b && path.len() + 1 < g.n()) {
                continue;
            }
            path.push(w);
            if go(g, path, seen | 1 << w, b) {
                return true;
            }
            path.pop();
        }
        false
    }
    if a >= g.n() || b >= g.n() || (a == b && g.n() > 1) {
        return None;
    }
    let mut path = vec![a];
    go(g, &mut path, 1 << a, b).then_some(path)
}

/// Whether the host has a Hamiltonian cycle through `uv`.
pub fn hamiltonian_cycle_through(g: &Graph, u: Vertex, v: Vertex) -> bool {
    let Some(e) = g.edge_index(u, v) else {
        return false;
    };
    let rest: Vec<_> = (0..g.m()).filter(|&f| f != e).map(|f| g.edge(f)).collect();
    hamiltonian_path(&Graph::new(g.n(), &rest).expect("subgraph"), u, v).is_some()
}

#[derive(Debug, Clone)]
pub struct PendantGraph {
    pub graph: Graph,
    /// The new leaf.
    pub u: Vertex,
    pub w: Vertex,
}

/// `Ĝ`: `g` plus a new leaf `u = n` on `w`.
pub fn build_pendant_graph(g: &Graph, w: Vertex) -> Result<PendantGraph, HardnessError> {
    if w >= g.n() {
        return Err(HardnessError::NoSuchVertex(w));
    }
    validate_connected(g)?;
    validate_cubic(g)?;
    let u = g.n();
    let mut edges = g.edges().to_vec();
    edges.push((w, u));
    let graph = Graph::new(g.n() + 1, &edges)?;
    Ok(PendantGraph { graph, u, w })
}

#[derive(Debug, Clone)]
pub struct ReductionGraph {
    pub graph: Graph,
    /// Vertex count of the cubic graph.
    pub n: usize,
    pub w: Vertex,
    pub u: Vertex,
    /// Centre of the path.
    pub c: Vertex,
    /// Path vertices in order.
    pub path: Vec<Vertex>,
}

impl ReductionGraph {
    /// Edges of the path alone.
    pub fn path_edges(&self) -> u128 {
        self.path
            .windows(2)
            .map(|p| 1u128 << self.graph.edge_index(p[0], p[1]).expect("path edge"))
            .sum()
    }

    /// Length of the trail P1 gets by opening `u -> c` and running down one
    /// half of the path.
    pub fn opening_trail(&self) -> usize {
        1 + longest_trail_within(&self.graph, self.path_edges(), self.c)
    }
}

/// `G'`: `Ĝ`, a path on `2n + 3` new vertices, and an edge from the leaf `u`
/// to the centre of the path.
pub fn build_reduction_graph(g: &Graph, w: Vertex) -> Result<ReductionGraph, HardnessError> {
    validate_bipartite(g)?;
    let r = assemble_reduction(g, w)?;
    validate_reduction(&r, g)?;
    Ok(r)
}

fn assemble_reduction(g: &Graph, w: Vertex) -> Result<ReductionGraph, HardnessError> {
    let hat = build_pendant_graph(g, w)?;
    let n = g.n();
    let base = n + 1;
    let path: Vec<Vertex> = (base..base + 2 * n + 3).collect();
    let c = path[n + 1];
    let mut edges = hat.graph.edges().to_vec();
    edges.extend(path.windows(2).map(|p| (p[0], p[1])));
    edges.push((hat.u, c));
    let graph = Graph::new(base + path.len(), &edges)?;
    Ok(ReductionGraph { graph, n, w, u: hat.u, c, path })
}

pub fn validate_reduction(r: &ReductionGraph, g: &Graph) -> Result<(), HardnessError> {
    let h = &r.graph;
    validate_connected(h)?;
    validate_bipartite(h)?;
    structure(h.max_degree() == 4, || format!("maximum degree {}", h.max_degree()))?;
    structure(h.n() == r.n + 1 + 2 * r.n + 3, || format!("{} vertices", h.n()))?;
    structure(h.m() == g.m() + 1 + 2 * r.n + 2 + 1, || format!("{} edges", h.m()))?;
    structure(h.degree(r.c) == 3 && h.degree(r.u) == 2, || "centre or leaf degree".into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub n: usize,
    /// ℓ(Ĝ) if the trail search finished. The search stops at `n + 2`.
    pub pendant_trail: Option<usize>,
    /// Whether `Ĝ` has a trail of length `n + 2`.
    pub long_trail: Option<bool>,
    pub winner: Option<Player>,
    /// P2 wins exactly when the long trail exists, if both sides finished.
    pub agree: Option<bool>,
    pub budget_exceeded: bool,
    pub opening_trail: usize,
    pub solver_nodes: u64,
}

/// Decides both sides of the reduction on `g` and `w` independently and in
/// parallel: the trail side by backtracking on `Ĝ`, the game side by solving
/// `G'`. `budget` bounds each side's node count. Any connected cubic `g` is
/// accepted; `G'` is then bipartite only when `g` is.
pub fn check_reduction_equivalence(g: &Graph, w: Vertex, budget: u64) -> Result<ReductionReport, HardnessError> {
    let r = assemble_reduction(g, w)?;
    let hat = build_pendant_graph(g, w)?;
    let n = g.n();
    let (trail, game) = rayon::join(
        || -> Result<usize, TrailBudgetExceeded> {
            TrailSearch::new(&hat.graph, hat.graph.all_edges()).with_budget(budget).longest_overall(n + 2)
        },
        || {
            let solver = Solver::new(SolverConfig { node_budget: Some(budget), ..SolverConfig::default() });
            solver.solve(&r.graph)
        },
    );
    let pendant_trail = trail.ok();
    let (winner, solver_nodes, game_over_budget) = match game {
        Ok(sol) => (Some(sol.outcome.winner), sol.stats.nodes, false),
        Err(SolveError::BudgetExceeded { .. }) => (None, budget, true),
        Err(e) => return Err(HardnessError::Structure(e.to_string())),
    };
    let long_trail = pendant_trail.map(|l| l >= n + 2);
    let agree = match (long_trail, winner) {
        (Some(t), Some(p)) => Some(t == (p == Player::P2)),
        _ => None,
    };
    Ok(ReductionReport {
        n,
        pendant_trail,
        long_trail,
        winner,
        agree,
        budget_exceeded: pendant_trail.is_none() || game_over_budget,
        opening_trail: r.opening_trail(),
        solver_nodes,
    })
}

/// Connected cubic graphs on `n` vertices, one per isomorphism class, for
/// even `n` from 4 to 10.
pub fn cubic_graphs(n: usize) -> Result<Vec<Graph>, HardnessError> {
    if !(4..=10).contains(&n) || n % 2 == 1 {
        return Err(GraphError::BadParameters(format!("cubic graphs need even 4 <= n <= 10, got {n}")).into());
    }
    let mut gen = CubicGen { n, adj: vec![0; n], seen: HashSet::new(), out: Vec::new() };
    gen.grow(1);
    Ok(gen.out)
}

/// Builds graphs in breadth-first labelling: the lowest vertex still short
/// of degree 3 takes neighbours in increasing order, and a new vertex always
/// gets the next free label.
struct CubicGen {
    n: usize,
    adj: Vec<u128>,
    seen: HashSet<Vec<u8>>,
    out: Vec<Graph>,
}

impl CubicGen {
    fn grow(&mut self, next: usize) {
        let Some(v) = (0..self.n).find(|&v| self.adj[v].count_ones() < 3) else {
            let adj = &self.adj;
            let edges: Vec<_> = (0..self.n)
                .flat_map(|a| (a + 1..adj.len()).filter(move |&b| adj[a] >> b & 1 == 1).map(move |b| (a, b)))
                .collect();
            let g = Graph::new(self.n, &edges).expect("simple graph");
            if self.seen.insert(canonical_form(&g).expect("small graph")) {
                self.out.push(g);
            }
            return;
        };
        if v >= next {
            return;
        }
        let low = (128 - self.adj[v].leading_zeros() as usize).max(v + 1);
        for w in low..next.min(self.n) {
            if self.adj[w].count_ones() < 3 && self.adj[v] >> w & 1 == 0 {
                self.link(v, w);
                self.grow(next);
                self.link(v, w);
            }
        }
        if next < self.n && low <= next {
            self.link(v, next);
            self.grow(next + 1);
            self.link(v, next);
        }
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a] ^= 1 << b;
        self.adj[b] ^= 1 << a;
    }
}

/// A cubic graph on at most `max_n` vertices with a vertex `w` from which no
/// trail has length `n + 1`, bipartite ones first.
pub fn find_negative_control(max_n: usize) -> Result<Option<(Graph, Vertex)>, HardnessError> {
    let mut fallback = None;
    for n in (4..=max_n.min(10)).step_by(2) {
        for g in cubic_graphs(n)? {
            let bip = g.is_bipartite();
            if !bip && fallback.is_some() {
                continue;
            }
            if let Some(w) = (0..n).find(|&w| crate::trail::longest_trail_from(&g, w) < n + 1) {
                if bip {
                    return Ok(Some((g, w)));
                }
                fallback = Some((g, w));
            }
        }
    }
    Ok(fallback)
}
