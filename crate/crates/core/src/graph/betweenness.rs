//! Edge betweenness via Brandes' accumulation.

use std::collections::{BTreeMap, VecDeque};

use super::UndirectedView;

/// For each undirected edge, the sum over unordered node pairs of the fraction
/// of shortest paths between the pair that pass through the edge. Keys are
/// label pairs ordered lexicographically.
pub fn edge_betweenness(u: &UndirectedView) -> BTreeMap<(String, String), f64> {
    let by_index = edge_betweenness_indexed(u);
    by_index
        .into_iter()
        .map(|((a, b), score)| {
            let (la, lb) = (u.label(a).to_string(), u.label(b).to_string());
            if la <= lb {
                ((la, lb), score)
            } else {
                ((lb, la), score)
            }
        })
        .collect()
}

/// Same scores keyed by (min, max) node index; used by Girvan-Newman, which
/// operates on an evolving edge set.
pub(crate) fn edge_betweenness_indexed(u: &UndirectedView) -> BTreeMap<(usize, usize), f64> {
    let adj: Vec<Vec<usize>> = (0..u.node_count())
        .map(|v| u.neighbors(v).collect())
        .collect();
    brandes_on_adjacency(&adj)
}

pub(crate) fn brandes_on_adjacency(adj: &[Vec<usize>]) -> BTreeMap<(usize, usize), f64> {
    let n = adj.len();
    let mut scores: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (v, nbrs) in adj.iter().enumerate() {
        for &w in nbrs {
            if w > v {
                scores.insert((v, w), 0.0);
            }
        }
    }

    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];

    for s in 0..n {
        for v in 0..n {
            sigma[v] = 0.0;
            dist[v] = usize::MAX;
            delta[v] = 0.0;
            preds[v].clear();
        }
        sigma[s] = 1.0;
        dist[s] = 0;
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        for &w in order.iter().rev() {
            for &v in &preds[w] {
                let contribution = sigma[v] / sigma[w] * (1.0 + delta[w]);
                let key = if v < w { (v, w) } else { (w, v) };
                *scores.get_mut(&key).expect("edge registered") += contribution;
                delta[v] += contribution;
            }
        }
    }

    // each unordered pair was counted from both endpoints
    for score in scores.values_mut() {
        *score /= 2.0;
    }
    scores
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::UndirectedView;

    fn key(a: &str, b: &str) -> (String, String) {
        if a <= b {
            (a.into(), b.into())
        } else {
            (b.into(), a.into())
        }
    }

    #[test]
    fn path_graph_scores() {
        let u = UndirectedView::from_edges([("a", "b"), ("b", "c")]).unwrap();
        let scores = edge_betweenness(&u);
        assert!((scores[&key("a", "b")] - 2.0).abs() < 1e-12);
        assert!((scores[&key("b", "c")] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bridge_between_triangles() {
        let u = UndirectedView::from_edges([
            ("a", "b"),
            ("b", "c"),
            ("a", "c"),
            ("c", "d"),
            ("d", "e"),
            ("e", "f"),
            ("d", "f"),
        ])
        .unwrap();
        let scores = edge_betweenness(&u);
        // 3x3 cross pairs, each with a unique shortest path over the bridge
        assert!((scores[&key("c", "d")] - 9.0).abs() < 1e-12);
    }

    // Brute-force oracle: enumerate every shortest path between every pair by
    // DFS over the BFS predecessor structure and count edge usage fractions.
    fn brute_force(u: &UndirectedView) -> BTreeMap<(usize, usize), f64> {
        let n = u.node_count();
        let mut scores: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (a, b) in u.edges() {
            scores.insert((a, b), 0.0);
        }
        for s in 0..n {
            let dist = u.bfs_distances(s);
            for t in (s + 1)..n {
                if dist[t] == usize::MAX {
                    continue;
                }
                let mut paths: Vec<Vec<usize>> = Vec::new();
                let mut stack = vec![vec![t]];
                while let Some(path) = stack.pop() {
                    let head = *path.last().unwrap();
                    if head == s {
                        paths.push(path);
                        continue;
                    }
                    for p in u.neighbors(head) {
                        if dist[p] + 1 == dist[head] {
                            let mut next = path.clone();
                            next.push(p);
                            stack.push(next);
                        }
                    }
                }
                let total = paths.len() as f64;
                for path in paths {
                    for pair in path.windows(2) {
                        let key = if pair[0] < pair[1] {
                            (pair[0], pair[1])
                        } else {
                            (pair[1], pair[0])
                        };
                        *scores.get_mut(&key).unwrap() += 1.0 / total;
                    }
                }
            }
        }
        scores
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        // deterministic pseudo-random graphs on <= 8 nodes
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..25 {
            let n = 4 + (next() % 5) as usize; // 4..=8
            let mut u = UndirectedView::default();
            let labels: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
            for l in &labels {
                u.add_node(l);
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    if next() % 100 < 45 {
                        u.add_edge(&labels[i], &labels[j]).unwrap();
                    }
                }
            }
            let fast = edge_betweenness_indexed(&u);
            let slow = brute_force(&u);
            assert_eq!(fast.len(), slow.len());
            for (edge, score) in &fast {
                assert!(
                    (score - slow[edge]).abs() < 1e-9,
                    "edge {edge:?}: {score} vs {}",
                    slow[edge]
                );
            }
        }
    }

    #[test]
    fn betweenness_sums_to_pairwise_distances() {
        // each connected pair contributes its distance, spread over edges
        let u = UndirectedView::from_edges([
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("a", "d"),
            ("b", "e"),
        ])
        .unwrap();
        let total: f64 = edge_betweenness(&u).values().sum();
        let n = u.node_count();
        let mut dist_sum = 0usize;
        for s in 0..n {
            let dist = u.bfs_distances(s);
            for t in (s + 1)..n {
                dist_sum += dist[t];
            }
        }
        assert!((total - dist_sum as f64).abs() < 1e-9);
    }
}
