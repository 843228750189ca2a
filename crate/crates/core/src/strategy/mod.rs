//! Executable strategies and an exhaustive verifier.
//!
//! A strategy picks the move for one player as a pure function of the game
//! so far. [`verify_from`] plays it against every legal adversary line.

mod grid;
mod k3q;
mod mirror;

use std::sync::atomic::{AtomicU64, Ordering};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::automorphism::InvolutionError;
use crate::game::{Move, PartialGame, Player};
use crate::graph::Graph;

pub use grid::GridP1;
pub use grid::GridCase;
pub use k3q::{left_visits, K3qP1};
pub use mirror::{Copycat, PartialCopycat, PrismMirror};

pub trait Strategy: Send + Sync {
    fn name(&self) -> String;

    fn player(&self) -> Player;

    /// The move to play in `s`, where it is [`Strategy::player`]'s turn.
    /// `None` resigns.
    fn next_move(&self, s: &PartialGame) -> Option<Move>;

    /// Whether the strategy claims a win on `g` once the opponent's first
    /// move is `opposing_first` (`None`: before the opponent has moved).
    fn applies(&self, g: &Graph, opposing_first: Option<Move>) -> bool;
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error("strategy does not apply to this graph")]
    NotApplicable,
    #[error("strategy played illegal move {mv} after {transcript}")]
    IllegalMove { mv: Move, transcript: String },
    #[error("inspection failed after {transcript}: {reason}")]
    Inspection { reason: String, transcript: String },
    #[error("trail lengths break the win condition after {0}")]
    TrailLengths(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct VerifyStats {
    /// Finished games, all won by the strategy.
    pub playouts: u64,
    /// Positions where the strategy moved.
    pub decisions: u64,
    /// Adversary first moves outside the strategy's domain.
    pub skipped: u64,
    pub longest_game: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub moves: Vec<Move>,
    /// JSON transcript that [`PartialGame::from_transcript_json`] replays.
    pub transcript: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Verified(VerifyStats),
    Counterexample(Counterexample),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified(_))
    }
}

pub fn verify_strategy(g: &Graph, strategy: &dyn Strategy) -> Result<Verdict, StrategyError> {
    verify_from(&PartialGame::new(g), strategy)
}

pub fn verify_from(start: &PartialGame, strategy: &dyn Strategy) -> Result<Verdict, StrategyError> {
    verify_with(start, strategy, &|_| Ok(()))
}

type Inspect<'a> = dyn Fn(&PartialGame) -> Result<(), String> + Sync + 'a;

/// [`verify_from`], calling `inspect` after every strategy move.
pub fn verify_with(start: &PartialGame, strategy: &dyn Strategy, inspect: &Inspect) -> Result<Verdict, StrategyError> {
    let g = start.graph();
    let opp = strategy.player().other();
    let opp_first = start.moves().get(opp.index()).copied();
    if !strategy.applies(g, opp_first) && opp_first.is_some() {
        return Err(StrategyError::NotApplicable);
    }
    if opp_first.is_none() && !strategy.applies(g, None) {
        return Err(StrategyError::NotApplicable);
    }
    let v = Verifier { strategy, inspect, counts: Default::default() };
    let mut s = start.clone();
    let line = v.explore(&mut s, true)?;
    Ok(match line {
        Some(moves) => Verdict::Counterexample(counterexample(g, moves)),
        None => Verdict::Verified(v.stats()),
    })
}

fn counterexample(g: &Graph, moves: Vec<Move>) -> Counterexample {
    let transcript = PartialGame::from_moves(g, &moves).expect("replayable").transcript_json();
    Counterexample { moves, transcript }
}

struct Verifier<'a> {
    strategy: &'a dyn Strategy,
    inspect: &'a Inspect<'a>,
    // playouts, decisions, skipped, longest
    counts: [AtomicU64; 4],
}

impl Verifier<'_> {
    fn stats(&self) -> VerifyStats {
        let c = |i: usize| self.counts[i].load(Ordering::Relaxed);
        VerifyStats { playouts: c(0), decisions: c(1), skipped: c(2), longest_game: c(3) }
    }

    /// A losing line for the strategy, if any. `split` runs the first
    /// adversary choice in parallel.
    fn explore(&self, s: &mut PartialGame, split: bool) -> Result<Option<Vec<Move>>, StrategyError> {
        let me = self.strategy.player();
        let legal = s.legal_moves();
        if s.to_move() == me {
            if legal.is_empty() {
                return Ok(Some(s.moves().to_vec()));
            }
            self.counts[1].fetch_add(1, Ordering::Relaxed);
            let Some(m) = self.strategy.next_move(s) else {
                return Ok(Some(s.moves().to_vec()));
            };
            if s.apply(m).is_err() {
                return Err(StrategyError::IllegalMove { mv: m, transcript: s.transcript_json() });
            }
            if let Err(reason) = (self.inspect)(s) {
                return Err(StrategyError::Inspection { reason, transcript: s.transcript_json() });
            }
            let r = self.explore(s, split);
            s.undo().expect("just applied");
            return r;
        }
        if legal.is_empty() {
            self.finish(s)?;
            return Ok(None);
        }
        let first = s.position(me.other()).is_none();
        let g = s.graph();
        let moves: Vec<Move> = legal
            .into_iter()
            .filter(|&m| {
                let keep = !first || self.strategy.applies(g, Some(m));
                if !keep {
                    self.counts[2].fetch_add(1, Ordering::Relaxed);
                }
                keep
            })
            .collect();
        if split {
            let results: Vec<_> = moves
                .par_iter()
                .map(|&m| {
                    let mut t = s.clone();
                    t.apply(m).expect("legal");
                    self.explore(&mut t, false)
                })
                .collect();
            for r in results {
                if let Some(line) = r? {
                    return Ok(Some(line));
                }
            }
            return Ok(None);
        }
        for m in moves {
            s.apply(m).expect("legal");
            let r = self.explore(s, false);
            s.undo().expect("just applied");
            if let Some(line) = r? {
                return Ok(Some(line));
            }
        }
        Ok(None)
    }

    fn finish(&self, s: &PartialGame) -> Result<(), StrategyError> {
        self.counts[0].fetch_add(1, Ordering::Relaxed);
        self.counts[3].fetch_max(s.moves().len() as u64, Ordering::Relaxed);
        trail_lengths_ok(s).then_some(()).ok_or_else(|| StrategyError::TrailLengths(s.transcript_json()))
    }
}

/// At the end of a game the winner's trail is one longer than the loser's
/// when P1 wins, and equally long when P2 wins.
pub fn trail_lengths_ok(s: &PartialGame) -> bool {
    let (a, b) = (s.trail(Player::P1).len(), s.trail(Player::P2).len());
    match s.loser() {
        Ok(Player::P2) => a == b + 1,
        Ok(Player::P1) => a == b,
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlayoutReport {
    pub games: u64,
    pub wins: u64,
    /// The first lost game, if any.
    pub first_loss: Option<Counterexample>,
}

/// Plays `games` games against an adversary choosing uniformly among its
/// legal moves (first moves restricted to the strategy's domain).
pub fn random_playouts(
    g: &Graph,
    strategy: &dyn Strategy,
    games: u64,
    seed: u64,
) -> Result<PlayoutReport, StrategyError> {
    if !strategy.applies(g, None) {
        return Err(StrategyError::NotApplicable);
    }
    let me = strategy.player();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PlayoutReport { games, wins: 0, first_loss: None };
    for _ in 0..games {
        let mut s = PartialGame::new(g);
        loop {
            let legal = s.legal_moves();
            if s.to_move() == me {
                let m = if legal.is_empty() { None } else { strategy.next_move(&s) };
                let Some(m) = m else {
                    report.first_loss.get_or_insert_with(|| counterexample(g, s.moves().to_vec()));
                    break;
                };
                if s.apply(m).is_err() {
                    return Err(StrategyError::IllegalMove { mv: m, transcript: s.transcript_json() });
                }
            } else {
                let first = s.position(me.other()).is_none();
                let choices: Vec<Move> =
                    legal.into_iter().filter(|&m| !first || strategy.applies(g, Some(m))).collect();
                let Some(&m) = choices.choose(&mut rng) else {
                    if !trail_lengths_ok(&s) {
                        return Err(StrategyError::TrailLengths(s.transcript_json()));
                    }
                    report.wins += 1;
                    break;
                };
                s.apply(m).expect("legal");
            }
        }
    }
    Ok(report)
}

/// P2 mirrors P1 through `phi`.
pub fn copycat_strategy(g: &Graph, phi: crate::automorphism::Involution) -> Result<Copycat, StrategyError> {
    Copycat::new(g, phi)
}

/// The player who made the last move of `start` mirrors from there on.
pub fn partial_copycat_strategy(
    start: &PartialGame,
    phi: crate::automorphism::Involution,
) -> Result<PartialCopycat, StrategyError> {
    PartialCopycat::new(start, phi, 0, false)
}

pub fn grid_p1_strategy(n: usize) -> Result<GridP1, StrategyError> {
    GridP1::new(n)
}

pub fn k3q_p1_strategy(q: usize) -> Result<K3qP1, StrategyError> {
    K3qP1::new(q)
}

/// P2 on the prism over `C_n`: plain copycat through the antipodal map for
/// even `n`, the column mirror with its override for odd `n`.
pub fn prism_p2_strategy(n: usize) -> Result<Box<dyn Strategy>, StrategyError> {
    if n < 3 {
        return Err(StrategyError::Domain(format!("prism needs n >= 3, got {n}")));
    }
    if n % 2 == 0 {
        let g = crate::graph::prism(n).map_err(|e| StrategyError::Domain(e.to_string()))?;
        let perm = (0..2 * n).map(|v| 2 * ((v / 2 + n / 2) % n) + (1 - v % 2)).collect();
        let phi = crate::automorphism::Involution::new(&g, perm)?;
        Ok(Box::new(Copycat::new(&g, phi)?))
    } else {
        Ok(Box::new(PrismMirror::new(n)?))
    }
}
