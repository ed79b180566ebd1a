//! Louvain modularity optimization: greedy local moving plus graph
//! aggregation, repeated until no pass improves Q.

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::{modularity_from_ids, DetectParams, Partition};
use crate::error::{Error, Result};
use crate::graph::UndirectedView;

/// Weighted working graph for the aggregation phases. Self-loop weight stores
/// twice the folded intra-community weight so degrees stay consistent.
struct WorkGraph {
    // adjacency as (neighbor, weight), neighbor-sorted, no self entries
    adj: Vec<Vec<(usize, f64)>>,
    self_weight: Vec<f64>,
    degree: Vec<f64>,
    total_weight_2m: f64,
}

impl WorkGraph {
    fn from_view(view: &UndirectedView) -> Self {
        let n = view.node_count();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in view.edges() {
            adj[u].push((v, 1.0));
            adj[v].push((u, 1.0));
        }
        let degree: Vec<f64> = adj.iter().map(|nbrs| nbrs.len() as f64).collect();
        let total_weight_2m = degree.iter().sum();
        WorkGraph {
            adj,
            self_weight: vec![0.0; n],
            degree,
            total_weight_2m,
        }
    }

    fn node_count(&self) -> usize {
        self.adj.len()
    }
}

/// One pass of greedy local moves. Returns (community ids, moved count).
/// Visit order is a seeded shuffle; gain ties break toward the smallest
/// community id.
fn local_move(graph: &WorkGraph, rng: &mut ChaCha20Rng) -> (Vec<usize>, usize) {
    let n = graph.node_count();
    let two_m = graph.total_weight_2m;
    let mut community: Vec<usize> = (0..n).collect();
    // sum of degrees per community
    let mut sigma_tot: Vec<f64> = graph.degree.clone();

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut total_moves = 0usize;
    let mut weight_to: Vec<f64> = vec![0.0; n];
    loop {
        let mut moves = 0usize;
        for &node in &order {
            let current = community[node];
            let k_i = graph.degree[node];

            // edge weight from node to each adjacent community
            let mut touched: Vec<usize> = Vec::new();
            for &(nbr, w) in &graph.adj[node] {
                let c = community[nbr];
                if weight_to[c] == 0.0 {
                    touched.push(c);
                }
                weight_to[c] += w;
            }
            if !touched.contains(&current) {
                touched.push(current);
            }
            touched.sort_unstable();

            // with the node lifted out, compare the gain of re-inserting into
            // each adjacent community; ties break toward the smallest id and
            // staying put wins unless strictly improved upon
            sigma_tot[current] -= k_i;
            let mut best_community = current;
            let mut best_gain = weight_to[current] - sigma_tot[current] * k_i / two_m;
            for &c in &touched {
                if c == current {
                    continue;
                }
                let gain = weight_to[c] - sigma_tot[c] * k_i / two_m;
                if gain > best_gain + 1e-12
                    || ((gain - best_gain).abs() <= 1e-12 && c < best_community)
                {
                    best_gain = gain;
                    best_community = c;
                }
            }
            sigma_tot[best_community] += k_i;
            if best_community != current {
                community[node] = best_community;
                moves += 1;
            }
            for &c in &touched {
                weight_to[c] = 0.0;
            }
        }
        total_moves += moves;
        if moves == 0 {
            break;
        }
    }
    (community, total_moves)
}

/// Aggregates communities into nodes, summing edge weights; intra-community
/// weight folds into self-loops.
fn aggregate(graph: &WorkGraph, community: &[usize]) -> (WorkGraph, Vec<usize>) {
    // densify community ids preserving numeric order
    let mut ids: Vec<usize> = community.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let rename: std::collections::HashMap<usize, usize> =
        ids.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let k = ids.len();

    let mut self_weight = vec![0.0f64; k];
    let mut weights: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); k];
    for (node, nbrs) in graph.adj.iter().enumerate() {
        let cu = rename[&community[node]];
        self_weight[cu] += graph.self_weight[node];
        for &(nbr, w) in nbrs {
            let cv = rename[&community[nbr]];
            if cu == cv {
                // each undirected intra edge appears twice in adjacency
                self_weight[cu] += w / 2.0;
            } else {
                *weights[cu].entry(cv).or_insert(0.0) += w;
            }
        }
    }
    let adj: Vec<Vec<(usize, f64)>> = weights
        .into_iter()
        .map(|m| m.into_iter().collect())
        .collect();
    let degree: Vec<f64> = (0..k)
        .map(|c| adj[c].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self_weight[c])
        .collect();
    let total = graph.total_weight_2m;
    let mapping: Vec<usize> = community.iter().map(|c| rename[c]).collect();
    (
        WorkGraph {
            adj,
            self_weight,
            degree,
            total_weight_2m: total,
        },
        mapping,
    )
}

/// Louvain community detection; deterministic given the seed. The returned
/// partition's Q is at least that of the singleton partition.
pub fn louvain(view: &UndirectedView, params: &DetectParams) -> Result<Partition> {
    params.validate()?;
    if view.node_count() == 0 {
        return Err(Error::EmptyInput("louvain on an empty graph".into()));
    }
    if view.edge_count() == 0 {
        return Err(Error::UndefinedValue(
            "louvain needs at least one edge".into(),
        ));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(params.seed);
    let mut graph = WorkGraph::from_view(view);
    // node -> community of the original graph, refined across passes
    let mut assignment: Vec<usize> = (0..view.node_count()).collect();
    let mut last_q = modularity_from_ids(view, &densify(&assignment));

    loop {
        let (community, moves) = local_move(&graph, &mut rng);
        if moves == 0 {
            break;
        }
        let (aggregated, mapping) = aggregate(&graph, &community);
        for slot in assignment.iter_mut() {
            *slot = mapping[*slot];
        }
        let q = modularity_from_ids(view, &assignment);
        debug_assert!(
            q >= last_q - 1e-9,
            "modularity decreased across a pass: {last_q} -> {q}"
        );
        if q <= last_q + 1e-12 {
            break;
        }
        last_q = q;
        graph = aggregated;
        if graph.node_count() <= 1 {
            break;
        }
    }
    Partition::from_indexed(view, &assignment)
}

fn densify(ids: &[usize]) -> Vec<usize> {
    let mut seen: std::collections::BTreeMap<usize, usize> = Default::default();
    ids.iter()
        .map(|&c| {
            let next = seen.len();
            *seen.entry(c).or_insert(next)
        })
        .collect()
}
