//! Walktrap: agglomerative merging of adjacent communities by the smallest
//! increase of random-walk distance variance, cut at maximal modularity.

use std::collections::BTreeSet;

use super::{modularity_from_ids, DetectParams, Partition};
use crate::error::{Error, Result};
use crate::graph::UndirectedView;

/// Random-walk community detection. Walk length is `params.walktrap_t`.
/// Each merge joins the adjacent community pair with the smallest Ward-style
/// variance increase; the recorded merge level of maximal modularity is
/// returned. Deterministic: ties resolve to the smallest community-id pair.
pub fn walktrap(view: &UndirectedView, params: &DetectParams) -> Result<Partition> {
    params.validate()?;
    let n = view.node_count();
    if n == 0 {
        return Err(Error::EmptyInput("walktrap on an empty graph".into()));
    }
    if view.edge_count() == 0 {
        return Err(Error::UndefinedValue(
            "walktrap needs at least one edge".into(),
        ));
    }

    // t-step transition probabilities, one row per starting node
    let degrees: Vec<f64> = (0..n).map(|v| view.degree(v).max(1) as f64).collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|source| {
            let mut row = vec![0.0f64; n];
            row[source] = 1.0;
            let mut next = vec![0.0f64; n];
            for _ in 0..params.walktrap_t {
                next.iter_mut().for_each(|x| *x = 0.0);
                for (node, &mass) in row.iter().enumerate() {
                    if mass == 0.0 {
                        continue;
                    }
                    let share = mass / degrees[node];
                    for nbr in view.neighbors(node) {
                        next[nbr] += share;
                    }
                }
                std::mem::swap(&mut row, &mut next);
            }
            row
        })
        .collect();

    // community state: probability profile (average of member rows), size,
    // member list, adjacency between communities
    let mut profile: Vec<Vec<f64>> = rows;
    let mut size: Vec<usize> = vec![1; n];
    let mut alive: Vec<bool> = vec![true; n];
    let mut assignment: Vec<usize> = (0..n).collect();
    let mut neighbors: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| view.neighbors(v).collect::<BTreeSet<usize>>())
        .collect();

    let mut best_ids = densify(&assignment, n);
    let mut best_q = modularity_from_ids(view, &best_ids);

    let ward = |a: usize, b: usize, profile: &[Vec<f64>], size: &[usize]| -> f64 {
        let (sa, sb) = (size[a] as f64, size[b] as f64);
        let factor = sa * sb / (sa + sb) / n as f64;
        let dist2: f64 = profile[a]
            .iter()
            .zip(&profile[b])
            .zip(&degrees)
            .map(|((pa, pb), d)| (pa - pb) * (pa - pb) / d)
            .sum();
        factor * dist2
    };

    loop {
        // candidate = adjacent alive pair with minimal variance increase
        let mut best_pair: Option<(usize, usize, f64)> = None;
        for a in 0..profile.len() {
            if !alive[a] {
                continue;
            }
            for &b in neighbors[a].range((a + 1)..) {
                if !alive[b] {
                    continue;
                }
                let delta = ward(a, b, &profile, &size);
                let better = match best_pair {
                    None => true,
                    Some((pa, pb, pd)) => {
                        delta < pd - 1e-15 || ((delta - pd).abs() <= 1e-15 && (a, b) < (pa, pb))
                    }
                };
                if better {
                    best_pair = Some((a, b, delta));
                }
            }
        }
        let Some((a, b, _)) = best_pair else {
            break; // no adjacent pairs left (single community or disconnected)
        };

        // merge b into a new community appended at the end
        let merged_id = profile.len();
        let (sa, sb) = (size[a] as f64, size[b] as f64);
        let merged_profile: Vec<f64> = profile[a]
            .iter()
            .zip(&profile[b])
            .map(|(pa, pb)| (sa * pa + sb * pb) / (sa + sb))
            .collect();
        profile.push(merged_profile);
        size.push(size[a] + size[b]);
        alive[a] = false;
        alive[b] = false;
        alive.push(true);
        let merged_neighbors: BTreeSet<usize> = neighbors[a]
            .union(&neighbors[b])
            .copied()
            .filter(|&c| c != a && c != b && alive[c])
            .collect();
        for &c in &merged_neighbors {
            neighbors[c].insert(merged_id);
        }
        neighbors.push(merged_neighbors);

        for slot in assignment.iter_mut() {
            if *slot == a || *slot == b {
                *slot = merged_id;
            }
        }
        let ids = densify(&assignment, n);
        let q = modularity_from_ids(view, &ids);
        if q > best_q + 1e-12 {
            best_q = q;
            best_ids = ids;
        }
    }

    Partition::from_indexed(view, &best_ids)
}

fn densify(assignment: &[usize], n: usize) -> Vec<usize> {
    let mut rename = std::collections::HashMap::with_capacity(n);
    assignment
        .iter()
        .map(|&c| {
            let next = rename.len();
            *rename.entry(c).or_insert(next)
        })
        .collect()
}
