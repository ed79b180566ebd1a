//! Asynchronous label propagation with seeded update order.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::{DetectParams, Partition};
use crate::error::{Error, Result};
use crate::graph::UndirectedView;

/// Each node adopts the majority label among its neighbors, nodes visited in a
/// fresh seeded shuffle every sweep. A node keeps its current label when it is
/// among the majority labels; otherwise ties are broken uniformly at random
/// from the seeded generator. Stops after a sweep with no change or after
/// `lp_max_sweeps`.
pub fn label_propagation(view: &UndirectedView, params: &DetectParams) -> Result<Partition> {
    params.validate()?;
    let n = view.node_count();
    if n == 0 {
        return Err(Error::EmptyInput(
            "label propagation on an empty graph".into(),
        ));
    }

    let mut rng = ChaCha20Rng::seed_from_u64(params.seed);
    let mut labels: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut counts: Vec<usize> = vec![0; n];

    for _sweep in 0..params.lp_max_sweeps {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &node in &order {
            let mut touched: Vec<usize> = Vec::new();
            for nbr in view.neighbors(node) {
                let l = labels[nbr];
                if counts[l] == 0 {
                    touched.push(l);
                }
                counts[l] += 1;
            }
            if touched.is_empty() {
                continue; // isolated node keeps its own label
            }
            let max_count = touched.iter().map(|&l| counts[l]).max().unwrap();
            let mut majority: Vec<usize> = touched
                .iter()
                .copied()
                .filter(|&l| counts[l] == max_count)
                .collect();
            majority.sort_unstable();
            if !majority.contains(&labels[node]) {
                let pick = majority[rng.random_range(0..majority.len())];
                labels[node] = pick;
                changed = true;
            }
            for &l in &touched {
                counts[l] = 0;
            }
        }
        if !changed {
            break;
        }
    }

    Partition::from_indexed(view, &labels)
}
