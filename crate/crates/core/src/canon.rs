//! Canonical labelling of small graphs by individualisation and refinement.

use crate::graph::{bits, Graph, GraphError, Vertex};

pub const CANONICAL_MAX_VERTICES: usize = 10;

/// Equitable refinement of a colouring. Colours are renumbered `0..k` by the
/// sorted order of their signatures, so the result depends only on the
/// isomorphism type of `(graph, colouring)`.
pub(crate) fn refine(nbr: &[u128], colors: &mut [usize]) {
    let n = colors.len();
    let mut classes = count_classes(colors);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, Vertex)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = bits(nbr[v]).map(|w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around, v)
            })
            .collect();
        sigs.sort();
        let mut next = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                next += 1;
            }
            colors[sigs[i].2] = next;
        }
        let now = if n == 0 { 0 } else { next + 1 };
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c: Vec<usize> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Byte string that is equal for two graphs exactly when they are isomorphic.
///
/// Layout: the vertex count followed by the upper triangle of the adjacency
/// matrix under the minimising labelling, packed most significant bit first.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, GraphError> {
    let (code, _) = best_labelling(g)?;
    let mut out = vec![g.n() as u8];
    out.extend(code);
    Ok(out)
}

/// The labelling behind [`canonical_form`]: `order[i]` is the vertex that
/// receives label `i`.
pub fn canonical_labelling(g: &Graph) -> Result<Vec<Vertex>, GraphError> {
    Ok(best_labelling(g)?.1)
}

type Best = Option<(Vec<u8>, Vec<Vertex>)>;

fn best_labelling(g: &Graph) -> Result<(Vec<u8>, Vec<Vertex>), GraphError> {
    let n = g.n();
    if n > CANONICAL_MAX_VERTICES {
        return Err(GraphError::TooLargeForCanonicalForm {
            n,
            max: CANONICAL_MAX_VERTICES,
        });
    }
    let nbr: Vec<u128> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut best: Best = None;
    search(&nbr, &mut colors, &mut best);
    Ok(best.unwrap_or_default())
}

fn search(nbr: &[u128], colors: &mut Vec<usize>, best: &mut Best) {
    refine(nbr, colors);
    let n = colors.len();
    let mut size = vec![0usize; n];
    for &c in colors.iter() {
        size[c] += 1;
    }
    let Some(cell) = (0..n).find(|&c| size[c] > 1) else {
        let mut order = vec![0; n];
        for v in 0..n {
            order[colors[v]] = v;
        }
        let code = adjacency_code(nbr, &order);
        if best.as_ref().is_none_or(|b| code < b.0) {
            *best = Some((code, order));
        }
        return;
    };
    let members: Vec<Vertex> = (0..n).filter(|&v| colors[v] == cell).collect();
    let mut tried: Vec<Vertex> = Vec::new();
    for &v in &members {
        // Swapping twins is an automorphism fixing everything individualised
        // so far, so their subtrees give the same leaves.
        if tried.iter().any(|&w| twins(nbr, v, w)) {
            continue;
        }
        tried.push(v);
        let mut next: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(x, &c)| 2 * c + usize::from(c == cell && x != v))
            .collect();
        search(nbr, &mut next, best);
    }
}

fn twins(nbr: &[u128], v: Vertex, w: Vertex) -> bool {
    nbr[v] & !(1u128 << w) == nbr[w] & !(1u128 << v)
}

fn adjacency_code(nbr: &[u128], order: &[Vertex]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(n * n / 16 + 1);
    let mut byte = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in i + 1..n {
            byte = (byte << 1) | (nbr[order[i]] >> order[j] & 1) as u8;
            filled += 1;
            if filled == 8 {
                out.push(byte);
                byte = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(byte << (8 - filled));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, path};

    #[test]
    fn relabelled_path_matches() {
        let p = path(4).unwrap();
        let q = p.relabel(&[2, 0, 3, 1]);
        assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
        let star = complete_bipartite(1, 3).unwrap();
        assert_ne!(canonical_form(&p).unwrap(), canonical_form(&star).unwrap());
    }

    #[test]
    fn regular_graphs_are_distinguished() {
        // Two 2-regular graphs on 6 vertices: C6 and two triangles.
        let c6 = cycle(6).unwrap();
        let tt = complete(3)
            .unwrap()
            .disjoint_union(&complete(3).unwrap())
            .unwrap();
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&tt).unwrap());
        // K_{3,3} and the triangular prism are both cubic on 6 vertices.
        let k33 = complete_bipartite(3, 3).unwrap();
        let pr = crate::graph::prism(3).unwrap();
        assert_ne!(canonical_form(&k33).unwrap(), canonical_form(&pr).unwrap());
    }

    #[test]
    fn labelling_reproduces_form() {
        let g = crate::graph::Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let order = canonical_labelling(&g).unwrap();
        let mut perm = vec![0; 5];
        for (i, &v) in order.iter().enumerate() {
            perm[v] = i;
        }
        let h = g.relabel(&perm);
        assert_eq!(canonical_labelling(&h).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(canonical_form(&h).unwrap(), canonical_form(&g).unwrap());
    }

    #[test]
    fn size_limit() {
        assert!(canonical_form(&path(11).unwrap()).is_err());
        assert!(canonical_form(&complete(10).unwrap()).is_ok());
    }
}
