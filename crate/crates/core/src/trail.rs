//! Longest trails by depth-first backtracking.
//!
//! The bound used for pruning is the number of unused edges reachable from the
//! current vertex, reduced by a parity argument: every odd-degree vertex other
//! than the two ends of the trail keeps at least one edge unused.

use thiserror::Error;

use crate::graph::{bits, EdgeMask, Graph, Vertex};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("trail search exceeded its budget of {0} nodes")]
pub struct TrailBudgetExceeded(pub u64);

/// ℓ(G): the maximum number of edges in a trail of `g`.
pub fn longest_trail(g: &Graph) -> usize {
    let mut search = TrailSearch::new(g, g.all_edges());
    search
        .longest_overall(usize::MAX)
        .expect("unbounded search")
}

/// ℓ(G, v): the maximum number of edges in a trail starting at `v`.
pub fn longest_trail_from(g: &Graph, v: Vertex) -> usize {
    longest_trail_within(g, g.all_edges(), v)
}

/// Longest trail from `v` using only the edges in `mask`.
pub fn longest_trail_within(g: &Graph, mask: EdgeMask, v: Vertex) -> usize {
    let mut search = TrailSearch::new(g, mask);
    search
        .longest_from(v, usize::MAX)
        .expect("unbounded search")
}

/// Reusable backtracking search over the edges of `mask`.
pub struct TrailSearch<'g> {
    g: &'g Graph,
    mask: EdgeMask,
    budget: Option<u64>,
    nodes: u64,
    stack: Vec<Vertex>,
    best_trail: Vec<Vertex>,
    best: usize,
    target: usize,
}

impl<'g> TrailSearch<'g> {
    pub fn new(g: &'g Graph, mask: EdgeMask) -> Self {
        TrailSearch {
            g,
            mask: mask & g.all_edges(),
            budget: None,
            nodes: 0,
            stack: Vec::new(),
            best_trail: Vec::new(),
            best: 0,
            target: usize::MAX,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Vertex sequence of the best trail found by the last search.
    pub fn best_trail(&self) -> &[Vertex] {
        &self.best_trail
    }

    /// Longest trail from `v`, stopping early once a trail of length
    /// `target` is found.
    pub fn longest_from(&mut self, v: Vertex, target: usize) -> Result<usize, TrailBudgetExceeded> {
        self.best = 0;
        self.best_trail = vec![v];
        self.target = target;
        self.stack.clear();
        self.stack.push(v);
        self.dfs(v, self.mask, 0)?;
        Ok(self.best)
    }

    /// Longest trail anywhere, with the same early stop.
    pub fn longest_overall(&mut self, target: usize) -> Result<usize, TrailBudgetExceeded> {
        let mut best = 0;
        let mut best_trail = Vec::new();
        for v in 0..self.g.n() {
            if self.g.incident_mask(v) & self.mask == 0 {
                continue;
            }
            if upper_bound(self.g, v, self.mask) <= best {
                continue;
            }
            self.best = best;
            self.best_trail = vec![v];
            self.target = target;
            self.stack.clear();
            self.stack.push(v);
            self.dfs(v, self.mask, 0)?;
            if self.best > best || best_trail.is_empty() {
                best = self.best;
                best_trail = self.best_trail.clone();
            }
            if best >= target {
                break;
            }
        }
        self.best = best;
        self.best_trail = best_trail;
        Ok(best)
    }

    fn dfs(&mut self, v: Vertex, avail: EdgeMask, depth: usize) -> Result<(), TrailBudgetExceeded> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(TrailBudgetExceeded(b));
            }
        }
        if depth > self.best {
            self.best = depth;
            self.best_trail.clone_from(&self.stack);
        }
        if self.best >= self.target {
            return Ok(());
        }
        let out = self.g.incident_mask(v) & avail;
        if out == 0 || depth + upper_bound(self.g, v, avail) <= self.best {
            return Ok(());
        }
        // Visit heads with few remaining edges first; this finds long trails
        // in sparse graphs quickly.
        let mut moves: Vec<(u32, usize, Vertex)> = bits(out)
            .map(|e| {
                let w = self.g.other_end(e, v);
                let rest = (self.g.incident_mask(w) & avail & !(1u128 << e)).count_ones();
                (if rest == 0 { u32::MAX } else { rest }, e, w)
            })
            .collect();
        moves.sort_unstable();
        for (_, e, w) in moves {
            self.stack.push(w);
            self.dfs(w, avail & !(1u128 << e), depth + 1)?;
            self.stack.pop();
            if self.best >= self.target {
                break;
            }
        }
        Ok(())
    }
}

/// Upper bound on the length of a trail from `v` inside `avail`.
pub(crate) fn upper_bound(g: &Graph, v: Vertex, avail: EdgeMask) -> usize {
    let (verts, edges) = reach(g, v, avail);
    let odd = bits(verts)
        .filter(|&x| x != v && (g.incident_mask(x) & avail).count_ones() % 2 == 1)
        .count();
    let spare = odd.saturating_sub(1).div_ceil(2);
    edges.count_ones() as usize - spare
}

/// Vertices and edges reachable from `v` through `avail`.
pub(crate) fn reach(g: &Graph, v: Vertex, avail: EdgeMask) -> (u128, EdgeMask) {
    let mut verts = 1u128 << v;
    let mut edges: EdgeMask = 0;
    let mut frontier = verts;
    while frontier != 0 {
        let mut next = 0u128;
        for x in bits(frontier) {
            let new = g.incident_mask(x) & avail & !edges;
            edges |= new;
            for e in bits(new) {
                let y = g.other_end(e, x);
                if verts >> y & 1 == 0 {
                    verts |= 1 << y;
                    next |= 1 << y;
                }
            }
        }
        frontier = next;
    }
    (verts, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    #[test]
    fn simple_values() {
        let c5 = cycle(5).unwrap();
        for v in 0..5 {
            assert_eq!(longest_trail_from(&c5, v), 5);
        }
        assert_eq!(longest_trail(&path(6).unwrap()), 5);
        assert_eq!(longest_trail_from(&path(6).unwrap(), 2), 3);
        // K4 has four odd vertices, so one edge stays unused.
        assert_eq!(longest_trail(&complete(4).unwrap()), 5);
        assert_eq!(longest_trail(&complete(5).unwrap()), 10);
        assert_eq!(longest_trail(&Graph::empty(3).unwrap()), 0);
    }

    #[test]
    fn witness_is_a_trail() {
        let g = complete(6).unwrap();
        let mut s = TrailSearch::new(&g, g.all_edges());
        let len = s.longest_from(0, usize::MAX).unwrap();
        // K6: six odd vertices, at most 15 - 2 edges.
        assert_eq!(len, 13);
        let t = s.best_trail().to_vec();
        assert_eq!(t.len(), len + 1);
        let mut used = std::collections::HashSet::new();
        for w in t.windows(2) {
            let e = g.edge_index(w[0], w[1]).unwrap();
            assert!(used.insert(e));
        }
    }

    #[test]
    fn budget_is_reported() {
        let g = complete(8).unwrap();
        let mut s = TrailSearch::new(&g, g.all_edges()).with_budget(10);
        assert_eq!(s.longest_from(0, usize::MAX), Err(TrailBudgetExceeded(10)));
    }
}
