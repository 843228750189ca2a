//! The solver against an unmemoised minimax on small graphs.

mod common;

use common::{minimax_winner, mover_wins};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use trailtrap::census::enumerate_connected;
use trailtrap::{Graph, PartialGame, Player, Solver, SolverConfig};

fn configs() -> Vec<SolverConfig> {
    let d = SolverConfig::default();
    vec![
        d,
        SolverConfig {
            symmetry: false,
            ..d
        },
        SolverConfig {
            decompose: false,
            ..d
        },
        SolverConfig {
            tree_screen: false,
            ..d
        },
        SolverConfig {
            symmetry: false,
            decompose: false,
            tree_screen: false,
            table_bits: 4,
            ..d
        },
        SolverConfig { jobs: 3, ..d },
    ]
}

#[test]
fn connected_graphs_up_to_five_vertices() {
    for n in 1..=5 {
        for g in enumerate_connected(n).unwrap() {
            let expected = minimax_winner(&g);
            for cfg in configs() {
                let got = Solver::new(cfg).solve(&g).unwrap().outcome;
                assert_eq!(got.winner, expected, "{:?} with {cfg:?}", g.edges());
            }
        }
    }
}

#[test]
fn six_vertex_graphs() {
    for g in enumerate_connected(6).unwrap() {
        let expected = minimax_winner(&g);
        assert_eq!(
            Solver::default().solve(&g).unwrap().outcome.winner,
            expected,
            "{:?}",
            g.edges()
        );
    }
}

#[test]
fn witness_wins_and_nothing_lower_does() {
    for n in 2..=5 {
        for g in enumerate_connected(n).unwrap() {
            let out = Solver::default().solve(&g).unwrap().outcome;
            let Some(w) = out.witness_first_move else {
                continue;
            };
            let mut s = PartialGame::new(&g);
            for m in s.legal_moves() {
                s.apply(m).unwrap();
                let wins = !mover_wins(&mut s);
                s.undo().unwrap();
                if m.order_key() < w.order_key() {
                    assert!(!wins, "{m} beats witness {w} on {:?}", g.edges());
                } else if m == w {
                    assert!(wins);
                }
            }
        }
    }
}

#[test]
fn partial_positions_and_best_move() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let graphs: Vec<Graph> = (4..=5)
        .flat_map(|n| enumerate_connected(n).unwrap())
        .collect();
    let solver = Solver::default();
    for _ in 0..600 {
        let g = graphs.choose(&mut rng).unwrap();
        let mut s = PartialGame::new(g);
        let depth = rng.gen_range(0..6);
        for _ in 0..depth {
            let legal = s.legal_moves();
            let Some(&m) = legal.choose(&mut rng) else {
                break;
            };
            s.apply(m).unwrap();
        }
        let expected = mover_wins(&mut s.clone());
        assert_eq!(
            solver.solve_partial(&s).unwrap().0,
            expected,
            "{}",
            s.transcript_json()
        );
        match solver.best_move(&s).unwrap() {
            None => assert!(!expected),
            Some((m, wins)) => {
                assert_eq!(wins, expected);
                s.apply(m).unwrap();
                assert_eq!(!mover_wins(&mut s), expected);
            }
        }
    }
}

#[test]
fn disconnected_graphs_match_minimax() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let small: Vec<Graph> = (1..=4)
        .flat_map(|n| enumerate_connected(n).unwrap())
        .collect();
    for _ in 0..80 {
        let a = small.choose(&mut rng).unwrap();
        let b = small.choose(&mut rng).unwrap();
        let g = a.disjoint_union(b).unwrap();
        let expected = minimax_winner(&g);
        assert_eq!(
            Solver::default().solve(&g).unwrap().outcome.winner,
            expected
        );
        assert_eq!(
            trailtrap::solver::analyze_disconnected(&g).unwrap().winner,
            expected,
            "{:?}",
            g.edges()
        );
    }
    assert_eq!(minimax_winner(&Graph::empty(2).unwrap()), Player::P2);
}
