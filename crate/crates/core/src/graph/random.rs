//! Seeded Erdős-Rényi G(n,m) baseline for the small-world comparison.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::UndirectedView;
use crate::error::{Error, Result};
use crate::graph::stats::average_distance;

/// Mean, over `runs` seeded uniform random simple graphs G(n,m), of the
/// average distance of each graph's giant component.
pub fn er_baseline_distance(n: usize, m: usize, runs: usize, seed: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Validation(format!("n must be >= 2, got {n}")));
    }
    if m < 1 {
        return Err(Error::Validation(format!("m must be >= 1, got {m}")));
    }
    if runs < 1 {
        return Err(Error::Validation(format!("runs must be >= 1, got {runs}")));
    }
    let max_edges = n * (n - 1) / 2;
    if m > max_edges {
        return Err(Error::Validation(format!(
            "m = {m} exceeds the {max_edges} edges of a simple graph on {n} nodes"
        )));
    }

    let mut total = 0.0;
    for run in 0..runs {
        let mut rng = ChaCha20Rng::seed_from_u64(derive_seed(seed, run as u64));
        let g = sample_gnm(n, m, &mut rng);
        let comps = g.connected_components();
        let largest = comps
            .iter()
            .max_by_key(|c| c.len())
            .expect("n >= 2 implies at least one component");
        total += average_distance(&g.induced_subgraph(largest))?;
    }
    Ok(total / runs as f64)
}

/// Splitmix-style stream separation so each run gets an independent stream.
pub(crate) fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Uniform simple graph with exactly m edges, via Floyd's distinct sampling
/// over the enumerated pair space.
fn sample_gnm(n: usize, m: usize, rng: &mut ChaCha20Rng) -> UndirectedView {
    let total_pairs = n * (n - 1) / 2;
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    for j in (total_pairs - m)..total_pairs {
        let candidate = rng.random_range(0..=j);
        if !chosen.insert(candidate) {
            chosen.insert(j);
        }
    }
    let mut g = UndirectedView::default();
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    for label in &labels {
        g.add_node(label);
    }
    for &pair_index in &chosen {
        let (u, v) = pair_from_index(pair_index);
        g.add_edge(&labels[u], &labels[v]).expect("u != v");
    }
    g
}

/// Inverse of the enumeration (u,v), u < v -> index = v(v-1)/2 + u.
fn pair_from_index(index: usize) -> (usize, usize) {
    let mut v = ((((8 * index + 1) as f64).sqrt() - 1.0) / 2.0).floor() as usize + 1;
    // guard against floating point rounding at triangle boundaries
    while v * (v - 1) / 2 > index {
        v -= 1;
    }
    while (v + 1) * v / 2 <= index {
        v += 1;
    }
    let u = index - v * (v - 1) / 2;
    (u, v)
}
