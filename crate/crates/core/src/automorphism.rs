//! Automorphism search, in particular involutions without fixed edges.
//!
//! An edge `{a, b}` is fixed by `phi` when `phi` maps it to itself, that is
//! when `phi` fixes both ends or swaps them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::refine;
use crate::graph::{bits, EdgeMask, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvolutionError {
    #[error("map has length {got}, graph has {n} vertices")]
    WrongLength { got: usize, n: usize },
    #[error("map is not an involution at vertex {0}")]
    NotInvolutive(Vertex),
    #[error("map sends edge {0}-{1} to a non-edge")]
    NotEdgePreserving(Vertex, Vertex),
    #[error("edge {0}-{1} is fixed")]
    FixedEdge(Vertex, Vertex),
    #[error("map sends {from} to {got}, expected {expected}")]
    WrongImage {
        from: Vertex,
        got: Vertex,
        expected: Vertex,
    },
}

/// A self-inverse vertex permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Involution {
    perm: Vec<Vertex>,
}

impl Involution {
    /// Checks that `perm` is an involutive automorphism of `g` without fixed
    /// edges.
    pub fn new(g: &Graph, perm: Vec<Vertex>) -> Result<Involution, InvolutionError> {
        let phi = Involution { perm };
        phi.check(g, g.all_edges())?;
        Ok(phi)
    }

    /// Checks the involution conditions on the subgraph formed by `mask`.
    pub fn check(&self, g: &Graph, mask: EdgeMask) -> Result<(), InvolutionError> {
        let n = g.n();
        if self.perm.len() != n {
            return Err(InvolutionError::WrongLength {
                got: self.perm.len(),
                n,
            });
        }
        for v in 0..n {
            if self.perm[v] >= n || self.perm[self.perm[v]] != v {
                return Err(InvolutionError::NotInvolutive(v));
            }
        }
        for e in bits(mask & g.all_edges()) {
            let (a, b) = g.edge(e);
            let (pa, pb) = (self.perm[a], self.perm[b]);
            match g.edge_index(pa, pb) {
                Some(f) if mask >> f & 1 == 1 => {
                    if f == e {
                        return Err(InvolutionError::FixedEdge(a, b));
                    }
                }
                _ => return Err(InvolutionError::NotEdgePreserving(a, b)),
            }
        }
        Ok(())
    }

    pub fn from_perm_unchecked(perm: Vec<Vertex>) -> Involution {
        Involution { perm }
    }

    pub fn perm(&self) -> &[Vertex] {
        &self.perm
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.perm[v]
    }

    /// Index of the image of edge `e`, if it is an edge.
    pub fn map_edge(&self, g: &Graph, e: usize) -> Option<usize> {
        let (a, b) = g.edge(e);
        g.edge_index(self.perm[a], self.perm[b])
    }
}

/// Searches for an involutive automorphism of `g` with no fixed edges.
pub fn find_involution_no_fixed_edges(g: &Graph) -> Option<Involution> {
    find_involution_with(g, g.all_edges(), &[])
}

/// Involution of the subgraph `(V, mask)` with no fixed edge of that subgraph,
/// subject to `phi(a) = b` for every `(a, b)` in `pairs`.
pub fn find_involution_with(
    g: &Graph,
    mask: EdgeMask,
    pairs: &[(Vertex, Vertex)],
) -> Option<Involution> {
    let mut m = Matcher::new(g, mask, true);
    for &(a, b) in pairs {
        if !m.assign_checked(a, b) {
            return None;
        }
    }
    if m.dfs(0) {
        Some(Involution { perm: m.perm })
    } else {
        None
    }
}

/// Some automorphism of `g` with `phi(a) = b` for every `(a, b)` in
/// `constraints`.
pub fn find_automorphism(g: &Graph, constraints: &[(Vertex, Vertex)]) -> Option<Vec<Vertex>> {
    let mut m = Matcher::new(g, g.all_edges(), false);
    for &(a, b) in constraints {
        if !m.assign_checked(a, b) {
            return None;
        }
    }
    if m.dfs(0) {
        Some(m.perm)
    } else {
        None
    }
}

const UNSET: Vertex = usize::MAX;

struct Matcher {
    n: usize,
    nbr: Vec<u128>,
    colors: Vec<usize>,
    order: Vec<Vertex>,
    involution: bool,
    perm: Vec<Vertex>,
    assigned: u128,
    images: u128,
}

impl Matcher {
    fn new(g: &Graph, mask: EdgeMask, involution: bool) -> Matcher {
        let n = g.n();
        let mut nbr = vec![0u128; n];
        for e in bits(mask & g.all_edges()) {
            let (a, b) = g.edge(e);
            nbr[a] |= 1 << b;
            nbr[b] |= 1 << a;
        }
        let mut colors: Vec<usize> = nbr.iter().map(|m| m.count_ones() as usize).collect();
        refine(&nbr, &mut colors);
        // Breadth-first order, so most vertices have an assigned neighbour when
        // their turn comes.
        let mut order = Vec::with_capacity(n);
        let mut seen = 0u128;
        for s in 0..n {
            if seen >> s & 1 == 1 {
                continue;
            }
            seen |= 1 << s;
            let mut head = order.len();
            order.push(s);
            while head < order.len() {
                let v = order[head];
                head += 1;
                for w in bits(nbr[v] & !seen) {
                    seen |= 1 << w;
                    order.push(w);
                }
            }
        }
        Matcher {
            n,
            nbr,
            colors,
            order,
            involution,
            perm: vec![UNSET; n],
            assigned: 0,
            images: 0,
        }
    }

    fn adj(&self, a: Vertex, b: Vertex) -> bool {
        self.nbr[a] >> b & 1 == 1
    }

    fn consistent(&self, x: Vertex, y: Vertex) -> bool {
        if self.colors[x] != self.colors[y] {
            return false;
        }
        for z in bits(self.assigned) {
            if self.adj(x, z) != self.adj(y, self.perm[z]) {
                return false;
            }
        }
        if self.involution {
            if x != y && self.adj(x, y) {
                return false;
            }
            if x == y && bits(self.assigned & self.nbr[x]).any(|z| self.perm[z] == z) {
                return false;
            }
        }
        true
    }

    fn set(&mut self, x: Vertex, y: Vertex) {
        self.perm[x] = y;
        self.assigned |= 1 << x;
        self.images |= 1 << y;
        if self.involution && x != y {
            self.perm[y] = x;
            self.assigned |= 1 << y;
            self.images |= 1 << x;
        }
    }

    fn unset(&mut self, x: Vertex, y: Vertex) {
        self.perm[x] = UNSET;
        self.assigned &= !(1 << x);
        self.images &= !(1 << y);
        if self.involution && x != y {
            self.perm[y] = UNSET;
            self.assigned &= !(1 << y);
            self.images &= !(1 << x);
        }
    }

    fn assign_checked(&mut self, x: Vertex, y: Vertex) -> bool {
        if x >= self.n || y >= self.n {
            return false;
        }
        if self.perm[x] != UNSET {
            return self.perm[x] == y;
        }
        if self.images >> y & 1 == 1 {
            return false;
        }
        if self.involution && self.perm[y] != UNSET {
            return false;
        }
        // In involution mode the image of an already assigned z is checked
        // against x here; the swapped pair needs no separate check.
        if !self.consistent(x, y) {
            return false;
        }
        self.set(x, y);
        true
    }

    fn dfs(&mut self, idx: usize) -> bool {
        let mut idx = idx;
        while idx < self.n && self.perm[self.order[idx]] != UNSET {
            idx += 1;
        }
        if idx == self.n {
            return true;
        }
        let x = self.order[idx];
        let mut cand = !self.images & full(self.n);
        if self.involution {
            cand &= !self.assigned | (1 << x);
        }
        if let Some(z) = bits(self.assigned & self.nbr[x]).next() {
            cand &= self.nbr[self.perm[z]];
        }
        for y in bits(cand) {
            if self.involution && y != x && self.perm[y] != UNSET {
                continue;
            }
            if !self.consistent(x, y) {
                continue;
            }
            self.set(x, y);
            if self.dfs(idx + 1) {
                return true;
            }
            self.unset(x, y);
        }
        false
    }
}

fn full(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, grid, prism};

    #[test]
    fn known_verdicts() {
        let k23 = complete_bipartite(2, 3).unwrap();
        let phi = find_involution_no_fixed_edges(&k23).expect("K2,3 has one");
        phi.check(&k23, k23.all_edges()).unwrap();
        assert!(find_involution_no_fixed_edges(&complete_bipartite(3, 3).unwrap()).is_none());
        assert!(find_involution_no_fixed_edges(&complete(2).unwrap()).is_none());
        assert!(find_involution_no_fixed_edges(&complete(4).unwrap()).is_none());
        for g in [
            grid(3, 3).unwrap(),
            grid(2, 4).unwrap(),
            prism(4).unwrap(),
            cycle(4).unwrap(),
        ] {
            let phi = find_involution_no_fixed_edges(&g).unwrap();
            phi.check(&g, g.all_edges()).unwrap();
        }
    }

    #[test]
    fn reversal_map_on_k23() {
        // u_i -> u_{p+1-i}, v_j -> v_{q+1-j}.
        let g = complete_bipartite(2, 3).unwrap();
        assert!(Involution::new(&g, vec![1, 0, 4, 3, 2]).is_ok());
        assert_eq!(
            Involution::new(&complete_bipartite(3, 3).unwrap(), vec![2, 1, 0, 5, 4, 3]),
            Err(InvolutionError::FixedEdge(1, 4))
        );
    }

    #[test]
    fn constrained_search() {
        let g = cycle(6).unwrap();
        let p = find_automorphism(&g, &[(0, 3), (1, 2)]).unwrap();
        assert_eq!(p, vec![3, 2, 1, 0, 5, 4]);
        assert!(find_automorphism(&g, &[(0, 0), (1, 3)]).is_none());
    }
}
