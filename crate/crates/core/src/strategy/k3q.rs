//! P1 on `K_{3,q}` for odd `q >= 13`; left side `0..3`, right side `3..3+q`.
//!
//! P1 opens `u_1 -> v_1` (vertices 0 and 3) and answers P2's first move by
//! stepping to the left vertex neither token is on. If P2 started on some
//! other right vertex, P1's next move right goes to that vertex, leaving it
//! one unused edge. After that P1 moves right to a vertex nobody has
//! visited yet and left to the vertex it has been on least often.
//!
//! A move that leaves P2 stuck is always taken first, and moves that P2 can
//! answer by leaving P1 stuck are avoided.

use super::{Strategy, StrategyError};
use crate::game::{Move, PartialGame, Player};
use std::cmp::Reverse;

use crate::graph::{complete_bipartite, Graph, Vertex};

#[derive(Debug, Clone)]
pub struct K3qP1 {
    q: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl K3qP1 {
    pub fn new(q: usize) -> Result<K3qP1, StrategyError> {
        if q < 13 || q % 2 == 0 {
            return Err(StrategyError::Domain(format!("odd q >= 13 required, got {q}")));
        }
        let g = complete_bipartite(3, q).map_err(|e| StrategyError::Domain(e.to_string()))?;
        Ok(K3qP1 { q, edges: g.edges().to_vec() })
    }

    pub fn q(&self) -> usize {
        self.q
    }
}

fn stuck_after(s: &mut PartialGame, m: Move) -> bool {
    s.apply(m).expect("legal");
    let stuck = s.legal_moves().is_empty();
    s.undo().expect("just applied");
    stuck
}

/// Whether some reply to `m` leaves the mover without a move.
fn refutable(s: &mut PartialGame, m: Move) -> bool {
    s.apply(m).expect("legal");
    let mut bad = false;
    for r in s.legal_moves() {
        if stuck_after(s, r) {
            bad = true;
            break;
        }
    }
    s.undo().expect("just applied");
    bad
}

impl Strategy for K3qP1 {
    fn name(&self) -> String {
        format!("k3q-p1({})", self.q)
    }

    fn player(&self) -> Player {
        Player::P1
    }

    fn next_move(&self, s: &PartialGame) -> Option<Move> {
        let g = s.graph();
        if s.moves().is_empty() {
            return Move::between(g, 0, 3).ok();
        }
        let mut t = s.clone();
        let legal = s.legal_moves();
        if let Some(&m) = legal.iter().find(|&&m| stuck_after(&mut t, m)) {
            return Some(m);
        }
        let unused = s.unused();
        let free = |w: Vertex| (g.incident_mask(w) & unused).count_ones();
        let moves = s.moves();
        let p2_first = moves[1];
        let mut visited = 0u128;
        // P1 starts on vertex 0.
        let mut entered = [1usize, 0, 0];
        for (i, m) in s.moves().iter().enumerate() {
            visited |= 1 << m.tail | 1 << m.head;
            if i % 2 == 0 && m.head < 3 {
                entered[m.head] += 1;
            }
        }
        let going_right = s.position(Player::P1)? < 3;
        let revisit = (moves.len() == 4 && p2_first.tail > 3).then_some(p2_first.tail);
        legal.into_iter().min_by_key(|&m| {
            let safe = !refutable(&mut t, m);
            let h = m.head;
            let pref = if moves.len() == 2 {
                usize::from(h == p2_first.head || h == 0)
            } else if going_right {
                let fresh = visited >> h & 1 == 0 && free(h) == 3;
                usize::from(revisit.map_or(!fresh, |r| h != r))
            } else {
                entered[h]
            };
            (!safe, pref, Reverse(free(h)), h)
        })
    }

    fn applies(&self, g: &Graph, _: Option<Move>) -> bool {
        g.edges() == self.edges
    }
}

/// The left vertices P1 enters, in order, during `s`.
pub fn left_visits(s: &PartialGame) -> Vec<Vertex> {
    let mut out = vec![];
    for (i, m) in s.moves().iter().enumerate() {
        if i == 0 {
            out.push(m.tail);
        }
        if i % 2 == 0 && m.head < 3 {
            out.push(m.head);
        }
    }
    out
}
