//! Trail Trap on trees.
//!
//! On a tree every trail is a path, so once the two tokens are separated by a
//! used edge each player simply runs their longest remaining path and the
//! comparison of those lengths settles the game. While the tokens are still
//! joined, a move away from the opponent separates them at once and only the
//! move towards the opponent keeps the game entangled, so the search below is
//! a single chain of depth at most the distance between the tokens.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::game::{Move, PartialGame, Player};
use crate::graph::{bits, EdgeMask, Graph, GraphError, Vertex};
use crate::solver::Outcome;
use crate::trail::{longest_trail_within, reach};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("illegal opening pair {0}, {1}")]
    IllegalOpening(Move, Move),
}

/// A necessary condition for a P1 win that the tree fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TreeCondition {
    /// Fewer than one edge: P1 cannot move.
    NoEdges,
    /// Single center not of degree 3, or two centers whose degrees are not
    /// 3 and 2.
    CenterDegree,
    /// Single center `c`: no neighbour `x` whose side of `T - cx` has
    /// diameter at most the radius.
    ShallowBranch,
    /// Single center `c`: for every such `x`, the side of `T - cx` holding
    /// `c` does not have `c` as its only center.
    CenterStaysUnique,
    /// Two centers: the side of `T - c1c2` holding `c2` has diameter above
    /// `r - 1`.
    ShallowSide,
    /// Two centers: the side holding `c1` does not have `c1` as its only
    /// center.
    SideCenterUnique,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeAnalysis {
    pub centers: Vec<Vertex>,
    pub radius: usize,
    pub diameter: usize,
    /// Openings that can possibly win: into a degree-3 single center, or
    /// from the degree-2 center into the degree-3 one.
    pub candidate_first_moves: Vec<Move>,
    pub necessary_conditions_met: bool,
    pub failed: Option<TreeCondition>,
}

/// Centers by repeatedly stripping leaves.
pub fn tree_centers(t: &Graph) -> Result<Vec<Vertex>, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    let n = t.n();
    if n <= 2 {
        return Ok((0..n).collect());
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        for &v in &layer {
            removed[v] = true;
        }
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &(w, _) in t.neighbors(v) {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let mut c: Vec<Vertex> = (0..n).filter(|&v| !removed[v]).collect();
    c.sort_unstable();
    Ok(c)
}

/// Farthest distance from `v` inside the edges of `mask`, which must form a
/// forest.
pub(crate) fn height(t: &Graph, mask: EdgeMask, v: Vertex) -> usize {
    let mut best = 0;
    let mut stack = vec![(v, usize::MAX, 0usize)];
    while let Some((x, from, d)) = stack.pop() {
        best = best.max(d);
        for e in bits(t.incident_mask(x) & mask) {
            if e != from {
                stack.push((t.other_end(e, x), e, d + 1));
            }
        }
    }
    best
}

/// Diameter of the component of `mask` containing `v` (a forest).
fn side_diameter(t: &Graph, mask: EdgeMask, v: Vertex) -> usize {
    let far = farthest(t, mask, v);
    height(t, mask, far)
}

fn farthest(t: &Graph, mask: EdgeMask, v: Vertex) -> Vertex {
    let mut best = (0, v);
    let mut stack = vec![(v, usize::MAX, 0usize)];
    while let Some((x, from, d)) = stack.pop() {
        if d > best.0 {
            best = (d, x);
        }
        for e in bits(t.incident_mask(x) & mask) {
            if e != from {
                stack.push((t.other_end(e, x), e, d + 1));
            }
        }
    }
    best.1
}

/// Whether `c` is the unique center of its component in `mask`.
fn sole_center(t: &Graph, mask: EdgeMask, c: Vertex) -> bool {
    let (verts, _) = reach(t, c, mask);
    let ecc_c = height(t, mask, c);
    bits(verts).all(|x| x == c || height(t, mask, x) > ecc_c)
}

/// Openings allowed by the center lemmas. Trees with fewer than two edges
/// keep all their openings.
pub fn opening_candidates(t: &Graph) -> Vec<Move> {
    if t.m() < 2 {
        return PartialGame::new(t).legal_moves();
    }
    let Ok(centers) = tree_centers(t) else {
        return Vec::new();
    };
    match centers[..] {
        [c] if t.degree(c) == 3 => t
            .neighbors(c)
            .iter()
            .map(|&(x, e)| Move {
                edge: e,
                tail: x,
                head: c,
            })
            .collect(),
        [a, b] => match (t.degree(a), t.degree(b)) {
            (3, 2) => vec![Move::between(t, b, a).expect("adjacent centers")],
            (2, 3) => vec![Move::between(t, a, b).expect("adjacent centers")],
            _ => Vec::new(),
        },
        _ => Vec::new(),
    }
}

pub fn analyze_tree(t: &Graph) -> Result<TreeAnalysis, TreeError> {
    let centers = tree_centers(t)?;
    let diameter = side_diameter(t, t.all_edges(), 0);
    let radius = diameter.div_ceil(2);
    let candidate_first_moves = opening_candidates(t);
    let failed = if t.m() == 0 {
        Some(TreeCondition::NoEdges)
    } else {
        screen(t, &centers, radius).1
    };
    Ok(TreeAnalysis {
        centers,
        radius,
        diameter,
        candidate_first_moves,
        necessary_conditions_met: failed.is_none(),
        failed,
    })
}

/// Openings that pass the per-opening necessary conditions, and the first
/// condition that fails for all openings if none does.
fn screen(t: &Graph, centers: &[Vertex], r: usize) -> (Vec<Move>, Option<TreeCondition>) {
    if t.m() < 2 {
        return (opening_candidates(t), None);
    }
    let all = t.all_edges();
    match *centers {
        [c] => {
            if t.degree(c) != 3 {
                return (Vec::new(), Some(TreeCondition::CenterDegree));
            }
            let shallow: Vec<(Vertex, usize)> = t
                .neighbors(c)
                .iter()
                .copied()
                .filter(|&(x, e)| side_diameter(t, all & !(1u128 << e), x) <= r)
                .collect();
            if shallow.is_empty() {
                return (Vec::new(), Some(TreeCondition::ShallowBranch));
            }
            let ok: Vec<Move> = shallow
                .into_iter()
                .filter(|&(_, e)| sole_center(t, all & !(1u128 << e), c))
                .map(|(x, e)| Move {
                    edge: e,
                    tail: x,
                    head: c,
                })
                .collect();
            if ok.is_empty() {
                (ok, Some(TreeCondition::CenterStaysUnique))
            } else {
                (ok, None)
            }
        }
        [a, b] => {
            let (c1, c2) = match (t.degree(a), t.degree(b)) {
                (3, 2) => (a, b),
                (2, 3) => (b, a),
                _ => return (Vec::new(), Some(TreeCondition::CenterDegree)),
            };
            let m = Move::between(t, c2, c1).expect("adjacent centers");
            let rest = all & !(1u128 << m.edge);
            if side_diameter(t, rest, c2) > r - 1 {
                return (Vec::new(), Some(TreeCondition::ShallowSide));
            }
            if !sole_center(t, rest, c1) {
                return (Vec::new(), Some(TreeCondition::SideCenterUnique));
            }
            (vec![m], None)
        }
        _ => (Vec::new(), Some(TreeCondition::CenterDegree)),
    }
}

/// Whether P2 wins after P1 opens `uv` and P2 opens `xy`, by the cut-edge
/// comparison: in `G - {uv, xy}` the heads `v` and `y` are separated and
/// the longest trail from `y` is at least the longest trail from `v`.
pub fn cut_edge_criterion(g: &Graph, uv: Move, xy: Move) -> bool {
    if uv.edge == xy.edge {
        return false;
    }
    let mask = g.all_edges() & !(1u128 << uv.edge) & !(1u128 << xy.edge);
    let (verts, _) = reach(g, uv.head, mask);
    if verts >> xy.head & 1 == 1 {
        return false;
    }
    longest_trail_within(g, mask, xy.head) >= longest_trail_within(g, mask, uv.head)
}

/// Winner once both opening moves are fixed.
pub fn rpeg_tree(t: &Graph, m1: Move, m2: Move) -> Result<Player, TreeError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    if PartialGame::from_moves(t, &[m1, m2]).is_err() {
        return Err(TreeError::IllegalOpening(m1, m2));
    }
    let used = 1u128 << m1.edge | 1u128 << m2.edge;
    Ok(if mover_wins(t, t.all_edges() & !used, m1.head, m2.head) {
        Player::P1
    } else {
        Player::P2
    })
}

fn mover_wins(t: &Graph, free: EdgeMask, me: Vertex, opp: Vertex) -> bool {
    let mine = t.incident_mask(me) & free;
    if mine == 0 {
        return false;
    }
    let toward = step_towards(t, free, me, opp);
    let Some(toward) = toward else {
        return height(t, free, me) > height(t, free, opp);
    };
    for e in bits(mine) {
        let z = t.other_end(e, me);
        let after = free & !(1u128 << e);
        let wins = if Some(z) == toward {
            !mover_wins(t, after, opp, z)
        } else {
            // Now separated: the opponent moves next, so they need strictly
            // more room to win.
            height(t, after, z) >= height(t, after, opp)
        };
        if wins {
            return true;
        }
    }
    false
}

/// `None` when the tokens are separated; otherwise `Some(next)` where `next`
/// is the first vertex on the free path from `me` to `opp` (`None` inside
/// when they share a vertex).
fn step_towards(t: &Graph, free: EdgeMask, me: Vertex, opp: Vertex) -> Option<Option<Vertex>> {
    if me == opp {
        return Some(None);
    }
    // Walk back from `opp` to `me` along parent pointers.
    let mut parent = vec![usize::MAX; t.n()];
    parent[me] = me;
    let mut stack = vec![me];
    while let Some(x) = stack.pop() {
        for e in bits(t.incident_mask(x) & free) {
            let y = t.other_end(e, x);
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    if parent[opp] == usize::MAX {
        return None;
    }
    let mut y = opp;
    while parent[y] != me {
        y = parent[y];
    }
    Some(Some(y))
}

/// Winner of a tree using the center lemmas, the necessary-condition screen
/// and the rooted search for each remaining opening.
pub fn solve_tree(t: &Graph) -> Result<Outcome, TreeError> {
    let analysis = analyze_tree(t)?;
    Ok(solve_tree_explained(t, &analysis)?.outcome)
}

/// Which openings were tried and how P2 refuted them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeExplanation {
    pub outcome: Outcome,
    pub screened_openings: Vec<Move>,
    /// For each losing screened opening, a P2 reply that beats it.
    pub refutations: Vec<(Move, Move)>,
}

pub fn solve_tree_explained(
    t: &Graph,
    analysis: &TreeAnalysis,
) -> Result<TreeExplanation, TreeError> {
    let p2 = Outcome {
        winner: Player::P2,
        witness_first_move: None,
    };
    if t.m() == 0 {
        return Ok(TreeExplanation {
            outcome: p2,
            screened_openings: Vec::new(),
            refutations: Vec::new(),
        });
    }
    if t.m() == 1 {
        let (a, b) = t.edge(0);
        let m = Move {
            edge: 0,
            tail: a,
            head: b,
        };
        let outcome = Outcome {
            winner: Player::P1,
            witness_first_move: Some(m),
        };
        return Ok(TreeExplanation {
            outcome,
            screened_openings: vec![m],
            refutations: Vec::new(),
        });
    }
    let (mut openings, _) = screen(t, &analysis.centers, analysis.radius);
    openings.sort_by_key(|m| m.order_key());
    let mut refutations = Vec::new();
    for &m1 in &openings {
        let replies = PartialGame::from_moves(t, &[m1])
            .expect("legal opening")
            .legal_moves();
        let verdicts: Vec<Player> = replies
            .par_iter()
            .map(|&m2| rpeg_tree(t, m1, m2))
            .collect::<Result<_, _>>()?;
        let refuted = replies
            .iter()
            .zip(&verdicts)
            .find(|(_, &w)| w == Player::P2)
            .map(|(&m2, _)| m2);
        match refuted {
            None => {
                let outcome = Outcome {
                    winner: Player::P1,
                    witness_first_move: Some(m1),
                };
                return Ok(TreeExplanation {
                    outcome,
                    screened_openings: openings,
                    refutations,
                });
            }
            Some(m2) => refutations.push((m1, m2)),
        }
    }
    Ok(TreeExplanation {
        outcome: p2,
        screened_openings: openings,
        refutations,
    })
}
