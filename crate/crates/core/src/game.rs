//! Rules of Trail Trap: moves, partial games, legal moves, apply and undo.
//!
//! P1 moves on even move counts and P2 on odd ones. A player's first move may
//! start anywhere; later moves leave from the head of that player's previous
//! move along an unused edge. Tokens may share a vertex.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bits, EdgeMask, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::P1 => 0,
            Player::P2 => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::P1 => "P1",
            Player::P2 => "P2",
        })
    }
}

/// Traversal of edge `edge` from `tail` to `head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub edge: usize,
    pub tail: Vertex,
    pub head: Vertex,
}

impl Move {
    /// The move `tail -> head` along the edge joining them.
    pub fn between(g: &Graph, tail: Vertex, head: Vertex) -> Result<Move, GameError> {
        let edge = g
            .edge_index(tail, head)
            .ok_or(GameError::NotAnEdge(tail, head))?;
        Ok(Move { edge, tail, head })
    }

    pub fn inverse(self) -> Move {
        Move {
            edge: self.edge,
            tail: self.head,
            head: self.tail,
        }
    }

    /// Total order used for "lowest-indexed" move: by edge, then the
    /// orientation leaving the smaller endpoint first.
    pub fn order_key(self) -> usize {
        2 * self.edge + usize::from(self.tail > self.head)
    }

    fn fits(self, g: &Graph) -> bool {
        self.edge < g.m() && {
            let (a, b) = g.edge(self.edge);
            (a, b) == (self.tail, self.head) || (b, a) == (self.tail, self.head)
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("move {0} does not match the endpoints of its edge")]
    Malformed(Move),
    #[error("edge of move {0} is already used")]
    EdgeUsed(Move),
    #[error("move {mv} must leave {expected}, the mover's position")]
    WrongTail { mv: Move, expected: Vertex },
    #[error("no move to undo")]
    NothingToUndo,
    #[error("game is not over")]
    NotTerminal,
    #[error("bad transcript: {0}")]
    Transcript(String),
}

/// Every move of both players so far.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialGame<'g> {
    graph: &'g Graph,
    moves: Vec<Move>,
    used: EdgeMask,
    pos: [Option<Vertex>; 2],
}

impl fmt::Debug for PartialGame<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line: Vec<String> = self.moves.iter().map(|m| m.to_string()).collect();
        write!(f, "PartialGame[{}]", line.join(", "))
    }
}

impl<'g> PartialGame<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        PartialGame {
            graph,
            moves: Vec::new(),
            used: 0,
            pos: [None, None],
        }
    }

    pub fn from_moves(graph: &'g Graph, moves: &[Move]) -> Result<Self, GameError> {
        let mut game = PartialGame::new(graph);
        for &m in moves {
            game.apply(m)?;
        }
        Ok(game)
    }

    /// Replays `(tail, head)` pairs.
    pub fn from_pairs(graph: &'g Graph, pairs: &[(Vertex, Vertex)]) -> Result<Self, GameError> {
        let mut game = PartialGame::new(graph);
        for &(a, b) in pairs {
            game.apply(Move::between(graph, a, b)?)?;
        }
        Ok(game)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn used(&self) -> EdgeMask {
        self.used
    }

    pub fn unused(&self) -> EdgeMask {
        self.graph.all_edges() & !self.used
    }

    pub fn position(&self, p: Player) -> Option<Vertex> {
        self.pos[p.index()]
    }

    pub fn to_move(&self) -> Player {
        if self.moves.len() % 2 == 0 {
            Player::P1
        } else {
            Player::P2
        }
    }

    pub fn legal_moves(&self) -> Vec<Move> {
        let free = self.unused();
        match self.pos[self.to_move().index()] {
            None => bits(free)
                .flat_map(|e| {
                    let (a, b) = self.graph.edge(e);
                    [
                        Move {
                            edge: e,
                            tail: a,
                            head: b,
                        },
                        Move {
                            edge: e,
                            tail: b,
                            head: a,
                        },
                    ]
                })
                .collect(),
            Some(v) => bits(self.graph.incident_mask(v) & free)
                .map(|e| Move {
                    edge: e,
                    tail: v,
                    head: self.graph.other_end(e, v),
                })
                .collect(),
        }
    }

    pub fn check(&self, m: Move) -> Result<(), GameError> {
        if !m.fits(self.graph) {
            return Err(GameError::Malformed(m));
        }
        if self.used >> m.edge & 1 == 1 {
            return Err(GameError::EdgeUsed(m));
        }
        if let Some(v) = self.pos[self.to_move().index()] {
            if m.tail != v {
                return Err(GameError::WrongTail { mv: m, expected: v });
            }
        }
        Ok(())
    }

    pub fn is_legal(&self, m: Move) -> bool {
        self.check(m).is_ok()
    }

    pub fn apply(&mut self, m: Move) -> Result<(), GameError> {
        self.check(m)?;
        let p = self.to_move();
        self.used |= 1 << m.edge;
        self.pos[p.index()] = Some(m.head);
        self.moves.push(m);
        Ok(())
    }

    pub fn undo(&mut self) -> Result<Move, GameError> {
        let m = self.moves.pop().ok_or(GameError::NothingToUndo)?;
        self.used &= !(1 << m.edge);
        let p = self.to_move();
        let k = self.moves.len();
        self.pos[p.index()] = if k >= 2 {
            Some(self.moves[k - 2].head)
        } else {
            None
        };
        Ok(m)
    }

    pub fn is_terminal(&self) -> bool {
        match self.pos[self.to_move().index()] {
            None => self.unused() == 0,
            Some(v) => self.graph.incident_mask(v) & self.unused() == 0,
        }
    }

    pub fn loser(&self) -> Result<Player, GameError> {
        if self.is_terminal() {
            Ok(self.to_move())
        } else {
            Err(GameError::NotTerminal)
        }
    }

    /// The moves made by `p`, in order.
    pub fn trail(&self, p: Player) -> Vec<Move> {
        self.moves
            .iter()
            .skip(p.index())
            .step_by(2)
            .copied()
            .collect()
    }

    pub fn transcript_json(&self) -> String {
        serde_json::to_string(&self.moves).expect("moves serialise")
    }

    pub fn from_transcript_json(graph: &'g Graph, json: &str) -> Result<Self, GameError> {
        let moves: Vec<Move> =
            serde_json::from_str(json).map_err(|e| GameError::Transcript(e.to_string()))?;
        PartialGame::from_moves(graph, &moves)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    // a=0, b=1, c=2, d=3
    fn diamond() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn opening_moves() {
        let k4 = complete(4).unwrap();
        let g = PartialGame::new(&k4);
        assert_eq!(g.to_move(), Player::P1);
        assert_eq!(g.legal_moves().len(), 12);
        let e = Graph::empty(2).unwrap();
        let g = PartialGame::new(&e);
        assert!(g.legal_moves().is_empty());
        assert_eq!(g.loser(), Ok(Player::P1));
    }

    #[test]
    fn diamond_line() {
        let d = diamond();
        let mut g = PartialGame::from_pairs(&d, &[(1, 2)]).unwrap();
        assert_eq!(g.legal_moves().len(), 8);
        g.apply(Move::between(&d, 2, 3).unwrap()).unwrap();
        assert_eq!(g.legal_moves(), vec![Move::between(&d, 2, 0).unwrap()]);
        for (a, b) in [(2, 0), (3, 1), (0, 1)] {
            g.apply(Move::between(&d, a, b).unwrap()).unwrap();
        }
        assert!(g.is_terminal());
        assert!(g.legal_moves().is_empty());
        assert_eq!(g.loser(), Ok(Player::P2));
        assert_eq!(g.trail(Player::P1).len(), 3);
        assert_eq!(g.trail(Player::P2).len(), 2);
    }

    #[test]
    fn errors() {
        let d = diamond();
        let mut g = PartialGame::from_pairs(&d, &[(1, 2), (2, 3)]).unwrap();
        let cd = Move::between(&d, 2, 3).unwrap();
        assert_eq!(g.apply(cd), Err(GameError::EdgeUsed(cd)));
        let bd = Move::between(&d, 1, 3).unwrap();
        assert_eq!(
            g.apply(bd),
            Err(GameError::WrongTail {
                mv: bd,
                expected: 2
            })
        );
        let bogus = Move {
            edge: 0,
            tail: 2,
            head: 3,
        };
        assert_eq!(g.apply(bogus), Err(GameError::Malformed(bogus)));
        assert_eq!(g.loser(), Err(GameError::NotTerminal));
        let mut e = PartialGame::new(&d);
        assert_eq!(e.undo(), Err(GameError::NothingToUndo));
        assert_eq!(Move::between(&d, 0, 3), Err(GameError::NotAnEdge(0, 3)));
    }

    #[test]
    fn undo_restores_state() {
        let d = diamond();
        let mut g = PartialGame::from_pairs(&d, &[(1, 2), (2, 3), (2, 0)]).unwrap();
        let before = g.clone();
        g.apply(Move::between(&d, 3, 1).unwrap()).unwrap();
        g.undo().unwrap();
        assert_eq!(g, before);
        while g.undo().is_ok() {}
        assert_eq!(g, PartialGame::new(&d));
    }

    #[test]
    fn single_edge() {
        let k2 = complete(2).unwrap();
        let mut g = PartialGame::new(&k2);
        assert!(!g.is_terminal());
        g.apply(Move {
            edge: 0,
            tail: 0,
            head: 1,
        })
        .unwrap();
        assert_eq!(g.loser(), Ok(Player::P2));
    }

    #[test]
    fn transcript_roundtrip() {
        let d = diamond();
        let g = PartialGame::from_pairs(&d, &[(1, 2), (2, 3), (2, 0)]).unwrap();
        let json = g.transcript_json();
        assert_eq!(&json[..31], r#"[{"edge":2,"tail":1,"head":2},{"#);
        assert_eq!(PartialGame::from_transcript_json(&d, &json).unwrap(), g);
        assert!(PartialGame::from_transcript_json(&d, "[{}]").is_err());
    }
}
