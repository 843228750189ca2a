//! Strategies that answer each move with its image under an involution.

use super::{Strategy, StrategyError};
use crate::automorphism::{Involution, InvolutionError};
use crate::game::{Move, PartialGame, Player};
use crate::graph::{prism, EdgeMask, Graph, Vertex};

fn image(s: &PartialGame, phi: &[Vertex]) -> Option<Move> {
    let last = *s.moves().last()?;
    let m = Move::between(s.graph(), phi[last.tail], phi[last.head]).ok()?;
    s.is_legal(m).then_some(m)
}

fn first_legal(s: &PartialGame) -> Option<Move> {
    s.legal_moves().into_iter().min_by_key(|m| m.order_key())
}

/// P2 plays `phi(x) -> phi(y)` after P1's `x -> y`.
#[derive(Debug, Clone)]
pub struct Copycat {
    phi: Involution,
    edges: Vec<(Vertex, Vertex)>,
}

impl Copycat {
    pub fn new(g: &Graph, phi: Involution) -> Result<Copycat, StrategyError> {
        phi.check(g, g.all_edges())?;
        Ok(Copycat { phi, edges: g.edges().to_vec() })
    }

    pub fn involution(&self) -> &Involution {
        &self.phi
    }
}

impl Strategy for Copycat {
    fn name(&self) -> String {
        "copycat".into()
    }

    fn player(&self) -> Player {
        Player::P2
    }

    fn next_move(&self, s: &PartialGame) -> Option<Move> {
        image(s, self.phi.perm())
    }

    fn applies(&self, g: &Graph, _: Option<Move>) -> bool {
        g.edges() == self.edges
    }
}

/// Mirroring from the middle of a game. The player who made the last move
/// of the start position answers every later move through `phi`, an
/// involution of the unused edges (minus `excluded`) without fixed edges
/// that swaps the two token positions.
#[derive(Debug, Clone)]
pub struct PartialCopycat {
    start: Vec<Move>,
    player: Player,
    phi: Involution,
    fallback: bool,
    edges: Vec<(Vertex, Vertex)>,
}

impl PartialCopycat {
    /// With `fallback`, a mirror move that is unavailable (for instance on
    /// an excluded edge) is replaced by the lowest legal move instead of
    /// resigning.
    pub fn new(
        start: &PartialGame,
        phi: Involution,
        excluded: EdgeMask,
        fallback: bool,
    ) -> Result<PartialCopycat, StrategyError> {
        let moves = start.moves();
        let r = moves.len();
        if r < 2 {
            return Err(StrategyError::Precondition("both tokens must be placed".into()));
        }
        let g = start.graph();
        phi.check(g, start.unused() & !excluded)?;
        let (a, b) = (moves[r - 2].head, moves[r - 1].head);
        if phi.apply(a) != b {
            return Err(InvolutionError::WrongImage { from: a, got: phi.apply(a), expected: b }.into());
        }
        let player = if r % 2 == 1 { Player::P1 } else { Player::P2 };
        Ok(PartialCopycat { start: moves.to_vec(), player, phi, fallback, edges: g.edges().to_vec() })
    }

    pub fn start(&self) -> &[Move] {
        &self.start
    }
}

impl Strategy for PartialCopycat {
    fn name(&self) -> String {
        "partial-copycat".into()
    }

    fn player(&self) -> Player {
        self.player
    }

    fn next_move(&self, s: &PartialGame) -> Option<Move> {
        if !s.moves().starts_with(&self.start) {
            return None;
        }
        match image(s, self.phi.perm()) {
            Some(m) => Some(m),
            None if self.fallback => first_legal(s),
            None => None,
        }
    }

    fn applies(&self, g: &Graph, _: Option<Move>) -> bool {
        g.edges() == self.edges
    }
}

/// P2 on the prism over an odd cycle, vertices `u_i = 2i`, `v_i = 2i + 1`.
///
/// After P1's opening, P2 picks the first column `s` that the opening does
/// not touch and mirrors through `u_i <-> v_{2s-i}`, whose only fixed edge
/// is the rung at `s`. When the mirror move is unavailable (P1 took that
/// rung) P2 plays the lowest legal move, which uses up the last edge at
/// its vertex.
#[derive(Debug, Clone)]
pub struct PrismMirror {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl PrismMirror {
    pub fn new(n: usize) -> Result<PrismMirror, StrategyError> {
        if n < 3 || n % 2 == 0 {
            return Err(StrategyError::Domain(format!("odd n >= 3 required, got {n}")));
        }
        let g = prism(n).map_err(|e| StrategyError::Domain(e.to_string()))?;
        Ok(PrismMirror { n, edges: g.edges().to_vec() })
    }

    /// The mirror for the reflection column `s`.
    pub fn involution(&self, s: usize) -> Vec<Vertex> {
        let n = self.n;
        (0..2 * n)
            .map(|v| {
                let i = v / 2;
                let j = (2 * s + n - i % n) % n;
                2 * j + (1 - v % 2)
            })
            .collect()
    }

    pub fn column(&self, opening: Move) -> usize {
        (0..self.n).find(|&c| c != opening.tail / 2 && c != opening.head / 2).expect("n >= 3")
    }
}

impl Strategy for PrismMirror {
    fn name(&self) -> String {
        "prism-mirror".into()
    }

    fn player(&self) -> Player {
        Player::P2
    }

    fn next_move(&self, s: &PartialGame) -> Option<Move> {
        let opening = *s.moves().first()?;
        let phi = self.involution(self.column(opening));
        image(s, &phi).or_else(|| first_legal(s))
    }

    fn applies(&self, g: &Graph, _: Option<Move>) -> bool {
        g.edges() == self.edges
    }
}
