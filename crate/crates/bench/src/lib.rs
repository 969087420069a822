//! Fixed instance corpora shared by the benchmarks.

use ndip::generate::random_instance;
use ndip::{Graph, TypeGraph};

/// `count` seeded blow-ups with at most `max_k` classes and `max_n` vertices.
/// Capacities (at most 3) are attached when `capacities` is set.
pub fn corpus(seed: u64, count: u64, max_k: usize, max_n: usize, capacities: bool) -> Vec<Graph> {
    (seed..seed + count)
        .map(|s| random_instance(s, max_k, max_n, capacities.then_some(3)).expect("valid template"))
        .collect()
}

/// The first generated type graph with exactly `k` classes.
pub fn type_graph_with(k: usize, max_n: usize) -> TypeGraph {
    (0..)
        .map(|s| TypeGraph::of(&random_instance(s, k, max_n, None).expect("valid template")))
        .find(|t| t.k() == k)
        .expect("some seed reaches k classes")
}
