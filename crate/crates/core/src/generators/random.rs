//! Seeded Erdős–Rényi graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `G(n, p)` drawn from `ChaCha8Rng::seed_from_u64(seed)`: pairs `i < j` are
/// visited row by row, one `f64` in `[0, 1)` is drawn per pair, and the edge
/// is present when the draw is below `edge_prob`. The same seed always gives
/// the same graph.
pub fn random_graph(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {edge_prob} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < edge_prob {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}
