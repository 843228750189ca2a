//! Trail Trap: two players extend edge-disjoint trails with their own tokens
//! and the first player unable to move loses.
//!
//! The crate provides the graph toolkit, the rules engine, an exact solver,
//! executable strategies with an exhaustive verifier, the tree algorithm,
//! reduction constructions and the small-graph census.

pub mod automorphism;
pub mod canon;
pub mod census;
pub mod game;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod metrics;
pub mod solver;
pub mod strategy;
pub mod trail;
pub mod tree;

pub use automorphism::{find_involution_no_fixed_edges, Involution};
pub use canon::canonical_form;
pub use game::{GameError, Move, PartialGame, Player};
pub use graph::{EdgeMask, Graph, GraphError, Vertex};
pub use solver::{solve, solve_partial, Outcome, SolveError, Solver, SolverConfig};
pub use strategy::{verify_strategy, Strategy, Verdict};
