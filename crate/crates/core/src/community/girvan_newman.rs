//! Divisive detection by repeated removal of the highest-betweenness edge.

use super::{modularity_from_ids, DetectParams, Partition};
use crate::error::{Error, Result};
use crate::graph::betweenness::brandes_on_adjacency;
use crate::graph::UndirectedView;

/// Removes the max-betweenness edge (recomputing scores each step, ties broken
/// by the lexicographically smallest label pair), records the component
/// partition after every removal, and returns the recorded partition of
/// maximal modularity. The zero-removal partition is part of the record, so a
/// graph that never improves on one community returns one community.
pub fn girvan_newman(view: &UndirectedView, params: &DetectParams) -> Result<Partition> {
    params.validate()?;
    let n = view.node_count();
    if n == 0 {
        return Err(Error::EmptyInput("girvan-newman on an empty graph".into()));
    }

    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| view.neighbors(v).collect()).collect();
    let mut best_ids = components_of(&adj);
    let mut best_q = modularity_from_ids(view, &best_ids);

    let mut removals = 0usize;
    let max_removals = params.gn_max_removals.unwrap_or(usize::MAX);
    while removals < max_removals {
        let scores = brandes_on_adjacency(&adj);
        if scores.is_empty() {
            break;
        }
        // ties (within accumulation noise) resolve to the smallest label pair
        let max_score = scores.values().fold(f64::MIN, |a, &b| a.max(b));
        let edge = scores
            .iter()
            .filter(|(_, &s)| s >= max_score - 1e-9)
            .map(|(&e, _)| e)
            .min_by_key(|&e| edge_labels(view, e))
            .expect("non-empty score map");
        remove_edge(&mut adj, edge);
        removals += 1;

        let ids = components_of(&adj);
        let q = modularity_from_ids(view, &ids);
        if q > best_q + 1e-12 {
            best_q = q;
            best_ids = ids;
        }
    }

    Partition::from_indexed(view, &best_ids)
}

fn edge_labels(view: &UndirectedView, (u, v): (usize, usize)) -> (String, String) {
    let (a, b) = (view.label(u).to_string(), view.label(v).to_string());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn remove_edge(adj: &mut [Vec<usize>], (u, v): (usize, usize)) {
    adj[u].retain(|&w| w != v);
    adj[v].retain(|&w| w != u);
}

fn components_of(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut ids = vec![usize::MAX; n];
    let mut next = 0usize;
    for start in 0..n {
        if ids[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        ids[start] = next;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if ids[v] == usize::MAX {
                    ids[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    ids
}
