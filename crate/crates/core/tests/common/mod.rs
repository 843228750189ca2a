//! Helpers shared by the integration tests.
#![allow(dead_code)]

use trailtrap::{Graph, PartialGame, Player};

/// Unmemoised minimax straight from the rules: does the player to move win?
pub fn mover_wins(s: &mut PartialGame) -> bool {
    for m in s.legal_moves() {
        s.apply(m).unwrap();
        let reply_wins = mover_wins(s);
        s.undo().unwrap();
        if !reply_wins {
            return true;
        }
    }
    false
}

pub fn minimax_winner(g: &Graph) -> Player {
    if mover_wins(&mut PartialGame::new(g)) {
        Player::P1
    } else {
        Player::P2
    }
}

/// Every tree on `n` vertices as a parent array, `parents[i] <= i` being the
/// parent of vertex `i + 1`. Labelled, so isomorphic trees repeat.
pub fn parent_arrays(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 0..n.saturating_sub(1) {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=i).map(move |q| {
                    let mut p = p.clone();
                    p.push(q);
                    p
                })
            })
            .collect();
    }
    out
}
