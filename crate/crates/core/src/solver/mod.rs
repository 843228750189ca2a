//! Exact outcomes by memoised AND/OR search.

mod search;
pub mod symmetry;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automorphism::{find_involution_no_fixed_edges, Involution};
use crate::game::{GameError, Move, PartialGame, Player};
use crate::graph::{Graph, Vertex};
use crate::trail::longest_trail;
use search::{Abort, Budget, Engine};
pub use symmetry::orbit_representatives;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub winner: Player,
    /// Lowest-indexed winning first move, present when P1 wins.
    pub witness_first_move: Option<Move>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub millis: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("node budget of {limit} exceeded")]
    BudgetExceeded { limit: u64 },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("graph is connected")]
    Connected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Stop with [`SolveError::BudgetExceeded`] after this many nodes.
    pub node_budget: Option<u64>,
    /// Worker threads; 1 searches on the calling thread.
    pub jobs: usize,
    /// log2 of the transposition table size (per worker).
    pub table_bits: u32,
    /// Reduce openings and replies to orbit representatives.
    pub symmetry: bool,
    /// Settle positions whose tokens are in different components by
    /// comparing longest trails.
    pub decompose: bool,
    /// On trees, only consider openings into a center of the right degree.
    pub tree_screen: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_budget: None,
            jobs: 1,
            table_bits: 22,
            symmetry: true,
            decompose: true,
            tree_screen: true,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Solver {
    config: SolverConfig,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Solver {
        Solver { config }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Winner of `g` under optimal play.
    pub fn solve(&self, g: &Graph) -> Result<Solution, SolveError> {
        let start = Instant::now();
        let budget = Budget::new(self.config.node_budget);
        let outcome = self.solve_inner(g, &budget)?;
        Ok(Solution {
            outcome,
            stats: stats(&budget, start),
        })
    }

    fn solve_inner(&self, g: &Graph, budget: &Budget) -> Result<Outcome, SolveError> {
        match g.m() {
            0 => {
                return Ok(Outcome {
                    winner: Player::P2,
                    witness_first_move: None,
                })
            }
            1 => {
                let (a, b) = g.edge(0);
                let m = Move {
                    edge: 0,
                    tail: a,
                    head: b,
                };
                return Ok(Outcome {
                    winner: Player::P1,
                    witness_first_move: Some(m),
                });
            }
            _ => {}
        }
        let candidates = self.prune_first_moves(g);
        let mut engine = (self.config.jobs <= 1).then(|| self.engine(g, budget));
        for first in candidates {
            let replies = self.replies(g, first);
            let survives = match engine.as_mut() {
                Some(e) => run(
                    budget,
                    e.opening_survives(first, &replies)
                        .and_then(|r| e.flush().map(|_| r)),
                ),
                None => self.parallel_survives(g, first, &replies, budget),
            }?;
            if survives {
                return Ok(Outcome {
                    winner: Player::P1,
                    witness_first_move: Some(first),
                });
            }
        }
        Ok(Outcome {
            winner: Player::P2,
            witness_first_move: None,
        })
    }

    fn engine<'g, 'b>(&self, g: &'g Graph, budget: &'b Budget) -> Engine<'g, 'b> {
        Engine::new(g, self.config.table_bits, self.config.decompose, budget)
    }

    fn parallel_survives(
        &self,
        g: &Graph,
        first: Move,
        replies: &[Move],
        budget: &Budget,
    ) -> Result<bool, SolveError> {
        budget.reset_cancel();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.config.jobs)
            .build()
            .expect("thread pool");
        let bits = self.config.table_bits.saturating_sub(2);
        let refuted = pool.install(|| {
            replies
                .par_iter()
                .map(|r| {
                    let mut e = Engine::new(g, bits, self.config.decompose, budget);
                    let res = e
                        .opening_survives(first, std::slice::from_ref(r))
                        .and_then(|x| e.flush().map(|_| x));
                    if res == Ok(false) {
                        budget.cancel();
                    }
                    res
                })
                .find_any(|res| *res != Ok(true) && *res != Err(Abort::Cancelled))
        });
        budget.reset_cancel();
        match refuted {
            None => Ok(true),
            Some(Ok(_)) => Ok(false),
            Some(Err(_)) => Err(SolveError::BudgetExceeded {
                limit: budget.limit().unwrap_or(u64::MAX),
            }),
        }
    }

    /// P2's first replies to `first`, reduced by the automorphisms fixing
    /// both ends of `first` when symmetry is on.
    fn replies(&self, g: &Graph, first: Move) -> Vec<Move> {
        let game = PartialGame::from_moves(g, &[first]).expect("legal opening");
        let mut all = game.legal_moves();
        if self.config.symmetry {
            all = orbit_representatives(g, &all, &[first.tail, first.head]);
        }
        // Replies that take an edge at P1's position first: they are the
        // likeliest refutations.
        all.sort_by_key(|r| {
            (
                r.tail != first.head && r.head != first.head,
                std::cmp::Reverse(g.degree(r.head)),
                r.order_key(),
            )
        });
        all
    }

    /// P1 openings that can contain a winning move, in increasing
    /// [`Move::order_key`] order.
    pub fn prune_first_moves(&self, g: &Graph) -> Vec<Move> {
        let mut moves = PartialGame::new(g).legal_moves();
        if g.m() >= 2 {
            moves.retain(|m| g.degree(m.head) >= 3);
            if self.config.tree_screen && g.is_tree() {
                let allowed = crate::tree::opening_candidates(g);
                moves.retain(|m| allowed.contains(m));
            }
        }
        if self.config.symmetry {
            moves = orbit_representatives(g, &moves, &[]);
        }
        moves.sort_by_key(|m| m.order_key());
        moves
    }

    /// Whether the player to move in `s` wins.
    pub fn solve_partial(&self, s: &PartialGame) -> Result<(bool, SearchStats), SolveError> {
        let start = Instant::now();
        let budget = Budget::new(self.config.node_budget);
        let g = s.graph();
        let wins = match s.moves().len() {
            0 => self.solve_inner(g, &budget)?.winner == Player::P1,
            1 => !self.opening_wins_with(g, s.moves()[0], &budget)?,
            _ => {
                let me = s.position(s.to_move()).expect("placed");
                let opp = s.position(s.to_move().other()).expect("placed");
                let mut e = self.engine(g, &budget);
                run(
                    &budget,
                    e.wins(s.used(), me, opp).and_then(|r| e.flush().map(|_| r)),
                )?
            }
        };
        Ok((wins, stats(&budget, start)))
    }

    /// Whether P1 wins after opening with `first`.
    pub fn opening_wins(&self, g: &Graph, first: Move) -> Result<bool, SolveError> {
        PartialGame::new(g).check(first)?;
        let budget = Budget::new(self.config.node_budget);
        self.opening_wins_with(g, first, &budget)
    }

    fn opening_wins_with(
        &self,
        g: &Graph,
        first: Move,
        budget: &Budget,
    ) -> Result<bool, SolveError> {
        let replies = self.replies(g, first);
        if self.config.jobs <= 1 {
            let mut e = self.engine(g, budget);
            run(
                budget,
                e.opening_survives(first, &replies)
                    .and_then(|r| e.flush().map(|_| r)),
            )
        } else {
            self.parallel_survives(g, first, &replies, budget)
        }
    }

    /// Every winning first move, found without any opening pruning.
    pub fn winning_first_moves(&self, g: &Graph) -> Result<Vec<Move>, SolveError> {
        let budget = Budget::new(self.config.node_budget);
        let mut e = self.engine(g, &budget);
        let mut out = Vec::new();
        for first in PartialGame::new(g).legal_moves() {
            let game = PartialGame::from_moves(g, &[first])?;
            let replies = game.legal_moves();
            if run(&budget, e.opening_survives(first, &replies))? {
                out.push(first);
            }
        }
        run(&budget, e.flush())?;
        Ok(out)
    }

    /// A move for the player to move in `s`: a winning one when it exists,
    /// otherwise the first legal move. The flag says whether it wins.
    pub fn best_move(&self, s: &PartialGame) -> Result<Option<(Move, bool)>, SolveError> {
        let legal = s.legal_moves();
        if legal.is_empty() {
            return Ok(None);
        }
        let g = s.graph();
        if s.moves().is_empty() {
            let out = self.solve(g)?.outcome;
            return Ok(Some(match out.witness_first_move {
                Some(m) => (m, true),
                None => (legal[0], false),
            }));
        }
        let budget = Budget::new(self.config.node_budget);
        let mut e = self.engine(g, &budget);
        let mut scratch = s.clone();
        for &m in &legal {
            scratch.apply(m)?;
            let me = scratch.position(scratch.to_move()).expect("placed");
            let opp = scratch.position(scratch.to_move().other()).expect("placed");
            let opp_wins = run(&budget, e.wins(scratch.used(), me, opp))?;
            scratch.undo()?;
            if !opp_wins {
                return Ok(Some((m, true)));
            }
        }
        Ok(Some((legal[0], false)))
    }
}

fn run<T>(budget: &Budget, r: Result<T, Abort>) -> Result<T, SolveError> {
    r.map_err(|_| SolveError::BudgetExceeded {
        limit: budget.limit().unwrap_or(u64::MAX),
    })
}

fn stats(budget: &Budget, start: Instant) -> SearchStats {
    SearchStats {
        nodes: budget.spent(),
        millis: start.elapsed().as_millis(),
    }
}

/// [`Solver::solve`] with default settings.
pub fn solve(g: &Graph) -> Result<Outcome, SolveError> {
    Ok(Solver::default().solve(g)?.outcome)
}

/// [`Solver::solve_partial`] with default settings.
pub fn solve_partial(s: &PartialGame) -> Result<bool, SolveError> {
    Ok(Solver::default().solve_partial(s)?.0)
}

/// [`Solver::prune_first_moves`] with default settings.
pub fn prune_first_moves(g: &Graph) -> Vec<Move> {
    Solver::default().prune_first_moves(g)
}

/// `Some(phi)` certifies a P2 win by mirroring through `phi`; `None` means
/// no verdict.
pub fn involution_verdict(g: &Graph) -> Option<Involution> {
    find_involution_no_fixed_edges(g)
}

/// Winner of a disconnected graph from per-component solves: P1 wins exactly
/// when some component has a winning opening `a -> b` whose longest
/// continuing trail is longer than every other component's longest trail.
pub fn analyze_disconnected(g: &Graph) -> Result<Outcome, SolveError> {
    analyze_disconnected_with(&Solver::default(), g)
}

pub fn analyze_disconnected_with(solver: &Solver, g: &Graph) -> Result<Outcome, SolveError> {
    let comps = g.components();
    if comps.len() < 2 {
        return Err(SolveError::Connected);
    }
    let parts: Vec<(Graph, &Vec<Vertex>)> = comps.iter().map(|c| (g.induced(c), c)).collect();
    let lengths: Vec<usize> = parts.iter().map(|(h, _)| longest_trail(h)).collect();
    let mut best: Option<Move> = None;
    for (i, (h, verts)) in parts.iter().enumerate() {
        if h.m() == 0 {
            continue;
        }
        let others = lengths
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &l)| l)
            .max()
            .unwrap_or(0);
        if lengths[i] <= others {
            continue;
        }
        for first in PartialGame::new(h).legal_moves() {
            let rest = h.all_edges() & !(1u128 << first.edge);
            let reach = 1 + crate::trail::longest_trail_within(h, rest, first.head);
            if reach <= others {
                continue;
            }
            let wins = h.m() == 1 || solver.opening_wins(h, first)?;
            if wins {
                let (a, b) = (verts[first.tail], verts[first.head]);
                let m = Move::between(g, a, b)?;
                if best.is_none_or(|x| m.order_key() < x.order_key()) {
                    best = Some(m);
                }
            }
        }
    }
    Ok(match best {
        Some(m) => Outcome {
            winner: Player::P1,
            witness_first_move: Some(m),
        },
        None => Outcome {
            winner: Player::P2,
            witness_first_move: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, path};

    fn diamond() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn small_verdicts() {
        assert_eq!(solve(&complete(4).unwrap()).unwrap().winner, Player::P1);
        assert_eq!(solve(&complete(5).unwrap()).unwrap().winner, Player::P2);
        assert_eq!(solve(&diamond()).unwrap().winner, Player::P2);
        assert_eq!(
            solve(&complete_bipartite(3, 3).unwrap()).unwrap().winner,
            Player::P2
        );
        assert_eq!(
            solve(&complete_bipartite(1, 3).unwrap()).unwrap().winner,
            Player::P1
        );
        assert_eq!(solve(&Graph::empty(3).unwrap()).unwrap().winner, Player::P2);
        assert_eq!(solve(&complete(2).unwrap()).unwrap().winner, Player::P1);
    }

    #[test]
    fn partial_positions() {
        let d = diamond();
        // b->c, c->d, c->a, d->b: P1 to move takes a->b and wins.
        let s = PartialGame::from_pairs(&d, &[(1, 2), (2, 3), (2, 0), (3, 1)]).unwrap();
        assert!(solve_partial(&s).unwrap());
        let s = PartialGame::from_pairs(&d, &[(1, 2), (2, 3), (2, 0), (3, 1), (0, 1)]).unwrap();
        assert!(!solve_partial(&s).unwrap());
        // K5 line from the text, vertices v1..v5 as 0..4.
        let k5 = complete(5).unwrap();
        let s = PartialGame::from_pairs(&k5, &[(0, 1), (1, 2), (1, 3), (2, 0), (3, 0)]).unwrap();
        assert!(solve_partial(&s).unwrap());
        let win = Solver::default().best_move(&s).unwrap().unwrap();
        assert!(win.1);
    }

    #[test]
    fn pruning() {
        assert!(prune_first_moves(&path(3).unwrap()).is_empty());
        assert_eq!(prune_first_moves(&complete(4).unwrap()).len(), 1);
        let star = complete_bipartite(1, 3).unwrap();
        let unreduced = Solver::new(SolverConfig {
            symmetry: false,
            ..Default::default()
        });
        let moves = unreduced.prune_first_moves(&star);
        assert_eq!(moves.len(), 3);
        assert!(moves.iter().all(|m| m.head == 0));
    }

    #[test]
    fn witness_is_lowest_winning_move() {
        let g = complete(4).unwrap();
        let all = Solver::default().winning_first_moves(&g).unwrap();
        assert_eq!(all.len(), 12);
        let w = solve(&g).unwrap().witness_first_move.unwrap();
        assert_eq!(
            w,
            Move {
                edge: 0,
                tail: 0,
                head: 1
            }
        );
    }

    #[test]
    fn budget_exceeded_is_distinct() {
        let s = Solver::new(SolverConfig {
            node_budget: Some(10),
            ..Default::default()
        });
        assert!(matches!(
            s.solve(&complete(6).unwrap()),
            Err(SolveError::BudgetExceeded { limit: 10 })
        ));
    }

    #[test]
    fn disconnected_small() {
        let k4k2 = complete(4)
            .unwrap()
            .disjoint_union(&complete(2).unwrap())
            .unwrap();
        assert_eq!(analyze_disconnected(&k4k2).unwrap().winner, Player::P1);
        assert_eq!(solve(&k4k2).unwrap().winner, Player::P1);
        let twice = diamond().disjoint_union(&diamond()).unwrap();
        assert_eq!(analyze_disconnected(&twice).unwrap().winner, Player::P2);
        assert_eq!(
            analyze_disconnected(&complete(3).unwrap()),
            Err(SolveError::Connected)
        );
    }
}
