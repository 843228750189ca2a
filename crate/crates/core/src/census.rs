//! Connected graphs on a few vertices and their winners.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_form, canonical_labelling};
use crate::game::Player;
use crate::graph::{Graph, GraphError};
use crate::io::{parse_graph6_lines, to_graph6};
use crate::solver::{SolveError, Solver, SolverConfig};

pub const MAX_CENSUS_VERTICES: usize = 7;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("census supports 1..={MAX_CENSUS_VERTICES} vertices, got {0}")]
    OutOfRange(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph6 input: {0}")]
    BadInput(String),
    #[error("solving {graph6}: {source}")]
    Solve { graph6: String, source: SolveError },
}

/// One connected graph per isomorphism class on `n` vertices.
///
/// Up to six vertices every edge subset of K_n is tried. Seven vertices are
/// reached by adding a vertex, with every possible neighbourhood, to each
/// graph on six vertices; every graph arises this way by deleting a vertex.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, CensusError> {
    match n {
        1..=6 => Ok(by_edge_subsets(n)),
        7 => Ok(extend_all(&all_graphs(6))
            .into_iter()
            .filter(Graph::is_connected)
            .collect()),
        _ => Err(CensusError::OutOfRange(n)),
    }
}

fn by_edge_subsets(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for subset in 0u32..1 << pairs.len() {
        if (subset.count_ones() as usize) + 1 < n {
            continue;
        }
        let edges: Vec<_> = (0..pairs.len())
            .filter(|&i| subset >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let g = Graph::new(n, &edges).expect("simple graph");
        if g.is_connected() && seen.insert(canonical_form(&g).expect("small graph")) {
            out.push(g);
        }
    }
    out
}

/// All graphs on `n` vertices up to isomorphism, connected or not.
fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1).expect("one vertex")];
    for _ in 1..n {
        level = extend_all(&level);
    }
    level
}

fn extend_all(graphs: &[Graph]) -> Vec<Graph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in graphs {
        let k = g.n();
        for s in 0u32..1 << k {
            let extra: Vec<_> = (0..k)
                .filter(|&v| s >> v & 1 == 1)
                .map(|v| (v, k))
                .collect();
            let h = g.with_edges(1, &extra).expect("simple graph");
            if seen.insert(canonical_form(&h).expect("small graph")) {
                out.push(h);
            }
        }
    }
    out
}

/// Reads a graph6 file meant to list every connected graph on `n` vertices
/// once, checking exactly that.
pub fn read_census_graph6(text: &str, n: usize) -> Result<Vec<Graph>, CensusError> {
    let graphs = parse_graph6_lines(text)?;
    let mut seen = HashSet::new();
    for (i, g) in graphs.iter().enumerate() {
        if g.n() != n {
            return Err(CensusError::BadInput(format!(
                "entry {} has {} vertices, expected {n}",
                i + 1,
                g.n()
            )));
        }
        if !g.is_connected() {
            return Err(CensusError::BadInput(format!(
                "entry {} is disconnected",
                i + 1
            )));
        }
        if !seen.insert(canonical_form(g)?) {
            return Err(CensusError::BadInput(format!(
                "entry {} repeats an earlier graph",
                i + 1
            )));
        }
    }
    Ok(graphs)
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphRecord {
    pub graph6: String,
    pub edges: usize,
    pub winner: Player,
    pub nodes: u64,
    pub micros: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub total_connected: usize,
    pub p2_win: usize,
    /// Canonically labelled graph6 strings of the P1-win graphs, sorted.
    pub p1_win_list: Vec<String>,
    pub graphs: Vec<GraphRecord>,
    pub total_nodes: u64,
    pub millis: u128,
}

impl CensusReport {
    pub fn p1_win(&self) -> usize {
        self.total_connected - self.p2_win
    }
}

/// Solves every graph; `jobs > 1` spreads graphs over worker threads, each
/// graph being searched on a single thread.
pub fn run_census(
    graphs: &[Graph],
    jobs: usize,
    config: SolverConfig,
) -> Result<CensusReport, CensusError> {
    let start = Instant::now();
    let n = graphs.first().map_or(0, Graph::n);
    let solver = Solver::new(SolverConfig { jobs: 1, ..config });
    let solve_one = |g: &Graph| -> Result<GraphRecord, CensusError> {
        let t = Instant::now();
        let sol = solver.solve(g).map_err(|source| CensusError::Solve {
            graph6: to_graph6(g),
            source,
        })?;
        Ok(GraphRecord {
            graph6: to_graph6(g),
            edges: g.m(),
            winner: sol.outcome.winner,
            nodes: sol.stats.nodes,
            micros: t.elapsed().as_micros(),
        })
    };
    let records: Vec<GraphRecord> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| graphs.par_iter().map(solve_one).collect::<Result<_, _>>())?
    } else {
        graphs.iter().map(solve_one).collect::<Result<_, _>>()?
    };
    let mut p1_win_list: Vec<String> = graphs
        .iter()
        .zip(&records)
        .filter(|(_, r)| r.winner == Player::P1)
        .map(|(g, _)| canonical_graph6(g))
        .collect();
    p1_win_list.sort();
    Ok(CensusReport {
        n,
        total_connected: records.len(),
        p2_win: records.iter().filter(|r| r.winner == Player::P2).count(),
        p1_win_list,
        total_nodes: records.iter().map(|r| r.nodes).sum(),
        graphs: records,
        millis: start.elapsed().as_millis(),
    })
}

/// graph6 of the canonically relabelled graph.
pub fn canonical_graph6(g: &Graph) -> String {
    let order = canonical_labelling(g).expect("small graph");
    let mut perm = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    to_graph6(&g.relabel(&perm))
}

/// Table rows: vertices, connected graphs, P2-win graphs and the exact
/// P2-win fraction.
pub struct CensusTable<'a>(pub &'a [CensusReport]);

impl fmt::Display for CensusTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>3} {:>10} {:>7} {:>10} {:>9}",
            "n", "connected", "P2-win", "fraction", "percent"
        )?;
        for r in self.0 {
            let pct = 100.0 * r.p2_win as f64 / r.total_connected.max(1) as f64;
            let frac = format!("{}/{}", r.p2_win, r.total_connected);
            writeln!(
                f,
                "{:>3} {:>10} {:>7} {:>10} {:>8.2}%",
                r.n, r.total_connected, r.p2_win, frac, pct
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_connected(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
        assert!(enumerate_connected(8).is_err());
        assert!(enumerate_connected(0).is_err());
    }

    #[test]
    fn all_graphs_counts() {
        // Graphs on 1..=5 vertices, connected or not.
        let counts: Vec<usize> = (1..=5).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn graph6_input_checks() {
        assert!(read_census_graph6("Bw\nBW\n", 3).is_ok());
        assert!(read_census_graph6("Bw\nBw\n", 3).is_err());
        assert!(read_census_graph6("BO\n", 3).is_err());
        assert!(read_census_graph6("C~\n", 3).is_err());
    }
}
