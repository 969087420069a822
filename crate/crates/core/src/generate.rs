//! Seeded instance generators: blow-ups of template type graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, TypeKind};

/// A type graph given by hand: class weights, kinds and the edges between
/// distinct classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateSpec {
    pub weights: Vec<usize>,
    pub kinds: Vec<TypeKind>,
    pub edges: Vec<(usize, usize)>,
}

impl TemplateSpec {
    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn n(&self) -> usize {
        self.weights.iter().sum()
    }

    fn validate(&self) -> Result<()> {
        let k = self.k();
        if self.kinds.len() != k {
            return Err(Error::InvalidModel(format!(
                "{} kinds for {k} classes",
                self.kinds.len()
            )));
        }
        if let Some(i) = self.weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidModel(format!("class {i} has weight 0")));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j) in &self.edges {
            if i >= k || j >= k || i == j {
                return Err(Error::InvalidModel(format!("bad template edge ({i}, {j})")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidModel(format!(
                    "repeated template edge ({i}, {j})"
                )));
            }
        }
        Ok(())
    }
}

/// Replaces class `i` by `weights[i]` vertices (a clique or an independent
/// set) and every template edge by a complete bipartite join. Vertex labels
/// are shuffled by `seed`; the same seed always gives the same graph.
pub fn generate_blowup(template: &TemplateSpec, seed: u64) -> Result<Graph> {
    template.validate()?;
    let n = template.n();
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut start = Vec::with_capacity(template.k());
    let mut acc = 0;
    for &w in &template.weights {
        start.push(acc);
        acc += w;
    }
    let block = |i: usize| start[i]..start[i] + template.weights[i];
    let mut edges = Vec::new();
    for i in 0..template.k() {
        if template.kinds[i] == TypeKind::Clique {
            for a in block(i) {
                for b in a + 1..start[i] + template.weights[i] {
                    edges.push((label[a], label[b]));
                }
            }
        }
    }
    for &(i, j) in &template.edges {
        for a in block(i) {
            for b in block(j) {
                edges.push((label[a], label[b]));
            }
        }
    }
    Graph::new(n, edges)
}

/// Uniform random template with `1..=max_k` classes and at most `max_n`
/// vertices in total (`max_n >= max_k`).
pub fn random_template(rng: &mut impl Rng, max_k: usize, max_n: usize) -> TemplateSpec {
    assert!(max_k >= 1 && max_n >= max_k, "need 1 <= max_k <= max_n");
    let k = rng.random_range(1..=max_k);
    let mut weights = vec![1; k];
    let extra = rng.random_range(0..=max_n - k);
    for _ in 0..extra {
        weights[rng.random_range(0..k)] += 1;
    }
    let kinds = weights
        .iter()
        .map(|&w| {
            if w > 1 && rng.random_bool(0.5) {
                TypeKind::Clique
            } else {
                TypeKind::Independent
            }
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.random_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    TemplateSpec {
        weights,
        kinds,
        edges,
    }
}

/// Capacities drawn uniformly from `0..=max_cap`.
pub fn random_capacities(rng: &mut impl Rng, n: usize, max_cap: u32) -> Vec<u32> {
    (0..n).map(|_| rng.random_range(0..=max_cap)).collect()
}

/// Blow-up of a random template; the whole instance is a function of `seed`.
pub fn random_instance(
    seed: u64,
    max_k: usize,
    max_n: usize,
    max_cap: Option<u32>,
) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let template = random_template(&mut rng, max_k, max_n);
    let g = generate_blowup(&template, rng.random())?;
    match max_cap {
        Some(c) => {
            let caps = random_capacities(&mut rng, g.n(), c);
            g.with_capacities(caps)
        }
        None => Ok(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::twin_partition;
    use proptest::prelude::*;

    #[test]
    fn single_clique_is_complete() {
        let t = TemplateSpec {
            weights: vec![5],
            kinds: vec![TypeKind::Clique],
            edges: vec![],
        };
        assert_eq!(generate_blowup(&t, 7).unwrap(), Graph::complete(5));
    }

    #[test]
    fn joined_independent_sets_are_complete_bipartite() {
        let t = TemplateSpec {
            weights: vec![2, 3],
            kinds: vec![TypeKind::Independent; 2],
            edges: vec![(0, 1)],
        };
        let g = generate_blowup(&t, 1).unwrap();
        assert_eq!(g.edge_count(), 6);
        let p = twin_partition(&g);
        let mut sizes: Vec<usize> = p.classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
    }

    #[test]
    fn inconsistent_templates_are_rejected() {
        let bad = [
            TemplateSpec {
                weights: vec![0],
                kinds: vec![TypeKind::Clique],
                edges: vec![],
            },
            TemplateSpec {
                weights: vec![1],
                kinds: vec![],
                edges: vec![],
            },
            TemplateSpec {
                weights: vec![1, 1],
                kinds: vec![TypeKind::Independent; 2],
                edges: vec![(0, 0)],
            },
            TemplateSpec {
                weights: vec![1, 1],
                kinds: vec![TypeKind::Independent; 2],
                edges: vec![(0, 1), (1, 0)],
            },
        ];
        for t in bad {
            assert!(generate_blowup(&t, 0).is_err(), "{t:?}");
        }
    }

    #[test]
    fn seeds_are_deterministic() {
        let a = random_instance(42, 4, 8, Some(4)).unwrap();
        let b = random_instance(42, 4, 8, Some(4)).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn blowups_have_at_most_k_twin_classes(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_template(&mut rng, 4, 10);
            let g = generate_blowup(&t, seed).unwrap();
            prop_assert_eq!(g.n(), t.n());
            prop_assert!(twin_partition(&g).len() <= t.k());
        }
    }
}
