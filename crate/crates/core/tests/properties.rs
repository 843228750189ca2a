//! Randomised invariants of graphs, encodings and positions.

use proptest::prelude::*;
use trailtrap::automorphism::find_involution_no_fixed_edges;
use trailtrap::io::{format_edge_list, parse_edge_list, parse_graph6, to_graph6};
use trailtrap::trail::longest_trail;
use trailtrap::{canonical_form, Graph, PartialGame, Player};

/// Simple graphs on up to `max_n` vertices.
fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let k = pairs.len();
        proptest::collection::vec(any::<bool>(), k).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn relabelled(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graphs(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn same_edges(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && a.edges().iter().all(|&(u, v)| b.has_edge(u, v))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn graph6_roundtrip(g in graphs(12)) {
        let back = parse_graph6(&to_graph6(&g)).unwrap();
        prop_assert!(same_edges(&g, &back));
    }

    #[test]
    fn edge_list_roundtrip(g in graphs(12)) {
        let back = parse_edge_list(&format_edge_list(&g)).unwrap();
        prop_assert!(same_edges(&g, &back));
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in relabelled(7)) {
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&g.relabel(&perm)).unwrap());
    }

    #[test]
    fn longest_trail_ignores_labels((g, perm) in relabelled(7)) {
        prop_assert_eq!(longest_trail(&g), longest_trail(&g.relabel(&perm)));
    }

    #[test]
    fn found_involutions_fix_no_edge(g in graphs(7)) {
        if let Some(phi) = find_involution_no_fixed_edges(&g) {
            for e in 0..g.m() {
                let f = phi.map_edge(&g, e);
                prop_assert!(f.is_some() && f != Some(e));
                prop_assert_eq!(phi.map_edge(&g, f.unwrap()), Some(e));
            }
        }
    }

    #[test]
    fn legal_moves_chain_trails(g in graphs(7), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..20)) {
        let mut s = PartialGame::new(&g);
        for ix in picks {
            let legal = s.legal_moves();
            if legal.is_empty() {
                break;
            }
            let m = *ix.get(&legal);
            let mover = s.to_move();
            if let Some(at) = s.position(mover) {
                prop_assert_eq!(m.tail, at);
            }
            prop_assert_eq!(s.used() >> m.edge & 1, 0);
            s.apply(m).unwrap();
            prop_assert_eq!(s.position(mover), Some(m.head));
        }
        let used = s.used().count_ones() as usize;
        prop_assert_eq!(used, s.moves().len());
        prop_assert_eq!(s.trail(Player::P1).len() + s.trail(Player::P2).len(), used);
    }
}
