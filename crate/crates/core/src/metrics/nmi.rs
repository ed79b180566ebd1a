//! Normalized mutual information between two partitions of the same node set.

use std::collections::HashMap;

use crate::community::Partition;
use crate::error::{Error, Result};

/// Mutual information of the community-label joint distribution, normalized by
/// the arithmetic mean of the two label entropies. 1 for identical structures,
/// 0 for independent ones. When either entropy is zero: 1 if both partitions
/// are the trivial one-community partition, 0 otherwise.
pub fn nmi(p: &Partition, q: &Partition) -> Result<f64> {
    if !p.same_nodes(q) {
        return Err(Error::Validation(
            "partitions cover different node sets".into(),
        ));
    }
    let n = p.node_count() as f64;

    let mut joint: HashMap<(usize, usize), f64> = HashMap::new();
    for ((_, cp), (_, cq)) in p.iter().zip(q.iter()) {
        *joint.entry((cp, cq)).or_insert(0.0) += 1.0;
    }
    let p_sizes = p.sizes();
    let q_sizes = q.sizes();

    let entropy = |sizes: &[usize]| -> f64 {
        sizes
            .iter()
            .filter(|&&s| s > 0)
            .map(|&s| {
                let frac = s as f64 / n;
                -frac * frac.ln()
            })
            .sum()
    };
    let h_p = entropy(&p_sizes);
    let h_q = entropy(&q_sizes);

    if h_p == 0.0 || h_q == 0.0 {
        let both_trivial = p.community_count() == 1 && q.community_count() == 1;
        return Ok(if both_trivial { 1.0 } else { 0.0 });
    }

    let mut mutual = 0.0f64;
    for (&(cp, cq), &count) in &joint {
        let pxy = count / n;
        let px = p_sizes[cp] as f64 / n;
        let py = q_sizes[cq] as f64 / n;
        mutual += pxy * (pxy / (px * py)).ln();
    }
    // clamp tiny negative rounding away from the [0,1] contract
    let value = mutual / ((h_p + h_q) / 2.0);
    Ok(value.clamp(0.0, 1.0))
}
