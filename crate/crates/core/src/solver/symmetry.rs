//! Orbits of directed edges under automorphisms.

use crate::automorphism::find_automorphism;
use crate::game::Move;
use crate::graph::{Graph, Vertex};

/// One move per orbit of `moves` under the automorphisms of `g` that fix every
/// vertex in `fixed`. Each representative is the smallest member of its orbit
/// by [`Move::order_key`], provided `moves` is closed under those
/// automorphisms.
pub fn orbit_representatives(g: &Graph, moves: &[Move], fixed: &[Vertex]) -> Vec<Move> {
    let mut sorted = moves.to_vec();
    sorted.sort_by_key(|m| m.order_key());
    let mut reps: Vec<Move> = Vec::new();
    for d in sorted {
        let covered = reps.iter().any(|r| {
            if g.degree(r.tail) != g.degree(d.tail) || g.degree(r.head) != g.degree(d.head) {
                return false;
            }
            if fixed
                .iter()
                .any(|&f| [r.tail, r.head, d.tail, d.head].contains(&f) && !same_role(f, r, &d))
            {
                return false;
            }
            let mut cons: Vec<(Vertex, Vertex)> = fixed.iter().map(|&f| (f, f)).collect();
            cons.push((r.tail, d.tail));
            cons.push((r.head, d.head));
            find_automorphism(g, &cons).is_some()
        });
        if !covered {
            reps.push(d);
        }
    }
    reps
}

// A fixed vertex must play the same role in both moves.
fn same_role(f: Vertex, r: &Move, d: &Move) -> bool {
    (r.tail == f) == (d.tail == f) && (r.head == f) == (d.head == f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::PartialGame;
    use crate::graph::{complete, complete_bipartite, path};

    #[test]
    fn complete_graph_has_one_orbit() {
        let k5 = complete(5).unwrap();
        let all = PartialGame::new(&k5).legal_moves();
        assert_eq!(orbit_representatives(&k5, &all, &[]).len(), 1);
        // Fixing both ends of 0->1 leaves five orbits of other directed edges.
        let rest: Vec<Move> = all.into_iter().filter(|m| m.edge != 0).collect();
        assert_eq!(orbit_representatives(&k5, &rest, &[0, 1]).len(), 5);
    }

    #[test]
    fn path_and_bipartite() {
        let p = path(4).unwrap();
        let all = PartialGame::new(&p).legal_moves();
        // Directed edges of P4 up to reversal of the path: end->inner, inner->end,
        // inner->inner.
        assert_eq!(orbit_representatives(&p, &all, &[]).len(), 3);
        let k = complete_bipartite(2, 3).unwrap();
        let all = PartialGame::new(&k).legal_moves();
        assert_eq!(orbit_representatives(&k, &all, &[]).len(), 2);
    }
}
