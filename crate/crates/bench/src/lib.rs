//! Fixtures shared by the benchmarks.

use trailtrap::graph::{complete, complete_bipartite, grid, prism};
use trailtrap::Graph;

/// Small named graphs the solver settles in well under a second.
pub fn quick_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("K5", complete(5).unwrap()),
        ("K6", complete(6).unwrap()),
        ("K3,5", complete_bipartite(3, 5).unwrap()),
        ("grid2x5", grid(2, 5).unwrap()),
        ("prism5", prism(5).unwrap()),
    ]
}
