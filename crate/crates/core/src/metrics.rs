//! Distances, eccentricity, radius, diameter and center.

use std::collections::VecDeque;

use crate::graph::{Graph, GraphError, Vertex};

/// BFS distances from `source`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &(w, _) in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest-path distance, `None` when `u` and `v` are disconnected.
pub fn distance(g: &Graph, u: Vertex, v: Vertex) -> Option<usize> {
    bfs_distances(g, u)[v]
}

pub fn eccentricities(g: &Graph) -> Result<Vec<usize>, GraphError> {
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    (0..g.n())
        .map(|v| {
            bfs_distances(g, v)
                .into_iter()
                .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
                .ok_or(GraphError::Disconnected)
        })
        .collect()
}

pub fn eccentricity(g: &Graph, v: Vertex) -> Result<usize, GraphError> {
    bfs_distances(g, v)
        .into_iter()
        .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
        .ok_or(GraphError::Disconnected)
}

pub fn radius(g: &Graph) -> Result<usize, GraphError> {
    Ok(eccentricities(g)?.into_iter().min().unwrap_or(0))
}

pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    Ok(eccentricities(g)?.into_iter().max().unwrap_or(0))
}

/// Vertices of minimum eccentricity, in increasing order.
pub fn center(g: &Graph) -> Result<Vec<Vertex>, GraphError> {
    let ecc = eccentricities(g)?;
    let r = ecc.iter().copied().min().unwrap_or(0);
    Ok((0..g.n()).filter(|&v| ecc[v] == r).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn path_metrics() {
        let p5 = path(5).unwrap();
        assert_eq!(distance(&p5, 0, 4), Some(4));
        assert_eq!(center(&p5).unwrap(), vec![2]);
        assert_eq!(radius(&p5).unwrap(), 2);
        assert_eq!(diameter(&p5).unwrap(), 4);
        let p4 = path(4).unwrap();
        assert_eq!(center(&p4).unwrap(), vec![1, 2]);
        assert_eq!(diameter(&p4).unwrap(), 2 * radius(&p4).unwrap() - 1);
    }

    #[test]
    fn complete_and_disconnected() {
        let k5 = complete(5).unwrap();
        assert_eq!(distance(&k5, 1, 3), Some(1));
        let k4 = complete(4).unwrap();
        assert_eq!(center(&k4).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!((radius(&k4).unwrap(), diameter(&k4).unwrap()), (1, 1));
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(distance(&g, 0, 3), None);
        assert_eq!(center(&g), Err(GraphError::Disconnected));
    }
}
