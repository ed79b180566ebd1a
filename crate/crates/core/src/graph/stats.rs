//! Distance, transitivity and degree-correlation measurements on the
//! undirected view.

use super::UndirectedView;
use crate::error::{Error, Result};

/// Mean shortest-path length over all unordered node pairs, by BFS from every
/// node. Errors on disconnected input. A single-node graph has no pairs and
/// yields 0.
pub fn average_distance(u: &UndirectedView) -> Result<f64> {
    let n = u.node_count();
    if n == 0 {
        return Err(Error::EmptyInput("average distance of an empty graph".into()));
    }
    if n == 1 {
        return Ok(0.0);
    }
    let mut total: u64 = 0;
    for source in 0..n {
        let dist = u.bfs_distances(source);
        for (target, &d) in dist.iter().enumerate().skip(source + 1) {
            if d == usize::MAX {
                return Err(Error::UndefinedValue(format!(
                    "graph is disconnected: no path between '{}' and '{}'",
                    u.label(source),
                    u.label(target)
                )));
            }
            total += d as u64;
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(total as f64 / pairs)
}

/// Transitivity coefficient: 3 x triangles / paths of length 2.
/// Errors when the graph has no path of length 2.
pub fn transitivity(u: &UndirectedView) -> Result<f64> {
    let n = u.node_count();
    let mut triangles: u64 = 0;
    let mut triples: u64 = 0;
    for v in 0..n {
        let d = u.degree(v) as u64;
        triples += d * d.saturating_sub(1) / 2;
    }
    if triples == 0 {
        return Err(Error::UndefinedValue(
            "transitivity undefined: no path of length 2".into(),
        ));
    }
    // count each triangle once via ordered node triples a < b < c
    for a in 0..n {
        let nbrs: Vec<usize> = u.neighbors(a).filter(|&b| b > a).collect();
        for (i, &b) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                if u.has_edge(b, c) {
                    triangles += 1;
                }
            }
        }
    }
    Ok(3.0 * triangles as f64 / triples as f64)
}

/// Degree assortativity: Pearson correlation of endpoint degrees over all
/// edges counted in both orientations. Errors when endpoint degrees have zero
/// variance (e.g. regular graphs).
pub fn degree_assortativity(u: &UndirectedView) -> Result<f64> {
    if u.edge_count() == 0 {
        return Err(Error::UndefinedValue(
            "degree correlation undefined on an edgeless graph".into(),
        ));
    }
    let mut sum_x = 0.0;
    let mut sum_x2 = 0.0;
    let mut sum_xy = 0.0;
    let mut m2 = 0.0; // number of directed endpoint pairs
    for (a, b) in u.edges() {
        let (da, db) = (u.degree(a) as f64, u.degree(b) as f64);
        // both orientations (a,b) and (b,a)
        sum_x += da + db;
        sum_x2 += da * da + db * db;
        sum_xy += 2.0 * da * db;
        m2 += 2.0;
    }
    let mean = sum_x / m2;
    let variance = sum_x2 / m2 - mean * mean;
    if variance <= 1e-15 {
        return Err(Error::UndefinedValue(
            "degree correlation undefined: endpoint degrees have zero variance".into(),
        ));
    }
    let covariance = sum_xy / m2 - mean * mean;
    Ok(covariance / variance)
}
