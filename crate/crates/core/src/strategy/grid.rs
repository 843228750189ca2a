//! P1 on the ladder `P_2 x P_n` for odd `n >= 5`.
//!
//! Columns run from `-k` to `k` with `k = (n - 1) / 2`; `u_x` is the top
//! vertex of column `x` (vertex `x + k`) and `v_x` the bottom one (vertex
//! `n + x + k`). P1 opens `u_0 -> v_0`. P2's first move is reflected
//! `x -> -x` if needed so that its endpoints have nonnegative columns, and
//! P1's play is then chosen by the case of that move.

use serde::Serialize;

use super::{Strategy, StrategyError};
use crate::game::{Move, PartialGame, Player};
use crate::graph::{grid, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Cell {
    top: bool,
    x: i64,
}

const fn u(x: i64) -> Cell {
    Cell { top: true, x }
}

const fn v(x: i64) -> Cell {
    Cell { top: false, x }
}

/// How P1 answers P2's first move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GridCase {
    /// `v1 -> v0`: P1 takes the last edge at `v0`.
    Block,
    /// `u0 -> u1`: mirror through the half-turn `u_x <-> v_-x`.
    HalfTurn,
    /// `v0 -> v1`: mirror through the flip `u_x <-> u_-x`, `v_x <-> v_-x`.
    Flip,
    /// `u1 -> u0`: run left along the bottom row.
    Chase,
    /// `u1 -> v1`: the flip, ignoring `u-1 v-1` and `v0 v1`.
    FlipWithExclusions,
    /// Zigzag to the left end.
    Zigzag,
    /// `v2 -> u2`: zigzag or loop depending on P2's second move.
    ZigzagOrLoop,
    /// Take `v0 v1`, `v1 u1`, `u1 u0` first, then zigzag from `u0`.
    Blocking,
}

#[derive(Debug, Clone)]
pub struct GridP1 {
    n: usize,
    k: i64,
    edges: Vec<(Vertex, Vertex)>,
}

impl GridP1 {
    pub fn new(n: usize) -> Result<GridP1, StrategyError> {
        if n < 5 || n % 2 == 0 {
            return Err(StrategyError::Domain(format!("odd n >= 5 required, got {n}")));
        }
        let g = grid(2, n).map_err(|e| StrategyError::Domain(e.to_string()))?;
        Ok(GridP1 { n, k: (n as i64 - 1) / 2, edges: g.edges().to_vec() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn cell(&self, w: Vertex) -> Cell {
        let n = self.n as i64;
        let w = w as i64;
        if w < n {
            u(w - self.k)
        } else {
            v(w - n - self.k)
        }
    }

    fn vertex(&self, c: Cell) -> Option<Vertex> {
        if c.x.abs() > self.k {
            return None;
        }
        let base = if c.top { 0 } else { self.n as i64 };
        Some((base + c.x + self.k) as Vertex)
    }

    /// The case for P2's first move, already reflected.
    pub fn case_of(&self, tail: Vertex, head: Vertex) -> Option<GridCase> {
        let (a, b) = (self.cell(tail), self.cell(head));
        let flip = if a.x.abs() >= b.x.abs() { a.x < 0 } else { b.x < 0 };
        let r = |c: Cell| Cell { x: if flip { -c.x } else { c.x }, ..c };
        classify(r(a), r(b))
    }

    fn reflect_for(&self, s: &PartialGame) -> bool {
        let m = s.moves()[1];
        let (a, b) = (self.cell(m.tail), self.cell(m.head));
        if a.x.abs() >= b.x.abs() {
            a.x < 0
        } else {
            b.x < 0
        }
    }

    fn to_move(&self, s: &PartialGame, flip: bool, from: Cell, to: Cell) -> Option<Move> {
        let r = |c: Cell| Cell { x: if flip { -c.x } else { c.x }, ..c };
        let m = Move::between(s.graph(), self.vertex(r(from))?, self.vertex(r(to))?).ok()?;
        s.is_legal(m).then_some(m)
    }

    fn zigzag(&self, s: &PartialGame, flip: bool, at: Cell, bottom_left_on_even: bool) -> Option<Move> {
        let k = self.k;
        let rung = Cell { top: !at.top, ..at };
        if at.x == -k {
            return self
                .to_move(s, flip, at, rung)
                .or_else(|| self.to_move(s, flip, at, Cell { x: at.x + 1, ..at }));
        }
        let even = at.x % 2 == 0;
        // Zigzag from v0: left on even bottom and odd top columns. Blocking
        // from u0 swaps the rows.
        let left = (even == !at.top) == bottom_left_on_even;
        let to = if left { Cell { x: at.x - 1, ..at } } else { rung };
        self.to_move(s, flip, at, to)
    }
}

fn classify(a: Cell, b: Cell) -> Option<GridCase> {
    use GridCase::*;
    let m = (a, b);
    Some(if m == (v(1), v(0)) {
        Block
    } else if m == (u(0), u(1)) {
        HalfTurn
    } else if m == (v(0), v(1)) {
        Flip
    } else if m == (u(1), u(0)) {
        Chase
    } else if m == (u(1), v(1)) {
        FlipWithExclusions
    } else if [
        (v(1), u(1)),
        (v(1), v(2)),
        (u(2), u(1)),
        (u(2), v(2)),
        (v(2), v(1)),
        (u(3), u(2)),
        (v(3), v(2)),
        (v(3), u(3)),
        (u(4), u(3)),
    ]
    .contains(&m)
    {
        Zigzag
    } else if m == (v(2), u(2)) {
        ZigzagOrLoop
    } else if m == (u(1), u(2)) || m == (u(2), u(3)) || (b.top && b.x >= 4) || (!b.top && b.x >= 3) {
        Blocking
    } else {
        return None;
    })
}

fn half_turn(c: Cell) -> Cell {
    Cell { top: !c.top, x: -c.x }
}

fn flip(c: Cell) -> Cell {
    Cell { x: -c.x, ..c }
}

impl Strategy for GridP1 {
    fn name(&self) -> String {
        format!("grid-p1({})", self.n)
    }

    fn player(&self) -> Player {
        Player::P1
    }

    fn next_move(&self, s: &PartialGame) -> Option<Move> {
        let moves = s.moves();
        if moves.is_empty() {
            return self.to_move(s, false, u(0), v(0));
        }
        let fl = self.reflect_for(s);
        let cell = |w: Vertex| {
            let c = self.cell(w);
            if fl {
                flip(c)
            } else {
                c
            }
        };
        let first = moves[1];
        let case = classify(cell(first.tail), cell(first.head))?;
        let at = cell(s.position(Player::P1)?);
        let mine = moves.len() / 2;
        let last = *moves.last()?;
        let (lt, lh) = (cell(last.tail), cell(last.head));
        let go = |to: Cell| self.to_move(s, fl, at, to);
        let mirror = |f: fn(Cell) -> Cell| self.to_move(s, fl, f(lt), f(lh));
        use GridCase::*;
        if case == Blocking {
            return match mine {
                1 => go(v(1)),
                2 => go(u(1)),
                3 => go(u(0)),
                _ => self.zigzag(s, fl, at, false),
            };
        }
        if mine == 1 {
            return go(v(-1));
        }
        match case {
            Block => s.legal_moves().into_iter().min_by_key(|m| m.order_key()),
            HalfTurn => mirror(half_turn),
            Flip => mirror(flip),
            FlipWithExclusions => {
                mirror(flip).or_else(|| s.legal_moves().into_iter().min_by_key(|m| m.order_key()))
            }
            Chase => go(Cell { x: at.x - 1, ..at }).or_else(|| go(Cell { top: !at.top, ..at })),
            Zigzag => self.zigzag(s, fl, at, true),
            ZigzagOrLoop => {
                let second = moves[3];
                if cell(second.head) == u(1) {
                    self.zigzag(s, fl, at, true)
                } else {
                    self.loop_move(s, fl, at, lt, lh)
                }
            }
            Blocking => unreachable!(),
        }
    }

    fn applies(&self, g: &Graph, _: Option<Move>) -> bool {
        g.edges() == self.edges
    }
}

impl GridP1 {
    /// Run left along the bottom row; climb at the left end, or as soon as
    /// P2 turns back left along the bottom row; then run right along the
    /// top row.
    fn loop_move(&self, s: &PartialGame, flip: bool, at: Cell, lt: Cell, lh: Cell) -> Option<Move> {
        let right = Cell { x: at.x + 1, ..at };
        if at.top {
            return self.to_move(s, flip, at, right);
        }
        let turned = !lt.top && !lh.top && lh.x == lt.x - 1;
        if at.x == -self.k || turned {
            self.to_move(s, flip, at, u(at.x))
        } else {
            self.to_move(s, flip, at, Cell { x: at.x - 1, ..at })
        }
    }
}
