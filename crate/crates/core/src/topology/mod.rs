//! Small-world and scale-free diagnostics of a network's giant component.

pub mod powerlaw;

pub use powerlaw::{fit_power_law, PowerLawFit};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    average_distance, degree_assortativity, er_baseline_distance, transitivity, DirectedGraph,
};
use crate::graph::random::derive_seed;

/// A power-law fit, or the reason one was not produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FitOutcome {
    Fitted(PowerLawFit),
    Unavailable { reason: String },
}

impl FitOutcome {
    pub fn as_fit(&self) -> Option<&PowerLawFit> {
        match self {
            FitOutcome::Fitted(f) => Some(f),
            FitOutcome::Unavailable { .. } => None,
        }
    }
}

/// Power-law fits of the in-, out- and total-degree sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeFits {
    pub in_degree: FitOutcome,
    pub out_degree: FitOutcome,
    pub total_degree: FitOutcome,
}

/// Topological measurements of a directed network's giant component.
///
/// Distance statistics are computed on the symmetrized view; the Erdős-Rényi
/// baseline is simulated with the giant component's node count and undirected
/// edge count. Undefined measurements are reported as `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub network_size: usize,
    pub directed_edges: usize,
    pub undirected_edges: usize,
    pub avg_distance: f64,
    pub er_distance: f64,
    pub er_runs: usize,
    pub transitivity: Option<f64>,
    pub assortativity: Option<f64>,
    pub fits: DegreeFits,
    /// Methodology flags recorded for reproducibility.
    pub method: MethodNotes,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodNotes {
    pub distances: String,
    pub er_baseline: String,
    pub seed: u64,
    pub bootstraps: usize,
}

/// Computes the full measurement battery on the giant component of `g`.
pub fn topology_report(
    g: &DirectedGraph,
    bootstraps: usize,
    runs: usize,
    seed: u64,
) -> Result<TopologyReport> {
    if g.is_empty() {
        return Err(Error::EmptyInput("topology report of an empty graph".into()));
    }
    let giant = g.giant_component()?;
    let view = giant.undirected();
    let avg_distance = average_distance(&view)?;
    let er_distance = er_baseline_distance(
        view.node_count(),
        view.edge_count(),
        runs,
        derive_seed(seed, 0x45520000),
    )?;

    let transitivity = optional(transitivity(&view))?;
    let assortativity = optional(degree_assortativity(&view))?;

    let n = giant.node_count();
    let in_seq: Vec<u64> = (0..n).map(|v| giant.in_degree(v) as u64).collect();
    let out_seq: Vec<u64> = (0..n).map(|v| giant.out_degree(v) as u64).collect();
    let total_seq: Vec<u64> = (0..n)
        .map(|v| (giant.in_degree(v) + giant.out_degree(v)) as u64)
        .collect();

    let fits = DegreeFits {
        in_degree: fit_sequence(&in_seq, bootstraps, derive_seed(seed, 1)),
        out_degree: fit_sequence(&out_seq, bootstraps, derive_seed(seed, 2)),
        total_degree: fit_sequence(&total_seq, bootstraps, derive_seed(seed, 3)),
    };

    Ok(TopologyReport {
        network_size: giant.node_count(),
        directed_edges: giant.edge_count(),
        undirected_edges: view.edge_count(),
        avg_distance,
        er_distance,
        er_runs: runs,
        transitivity,
        assortativity,
        fits,
        method: MethodNotes {
            distances: "undirected shortest paths on the symmetrized giant component".into(),
            er_baseline: "seeded G(n,m) simulation, undirected edge count, giant component".into(),
            seed,
            bootstraps,
        },
    })
}

/// Degrees of zero are outside the power-law support and are dropped before
/// fitting.
fn fit_sequence(seq: &[u64], bootstraps: usize, seed: u64) -> FitOutcome {
    let positive: Vec<u64> = seq.iter().copied().filter(|&d| d > 0).collect();
    match fit_power_law(&positive, bootstraps, seed) {
        Ok(fit) => FitOutcome::Fitted(fit),
        Err(e) => FitOutcome::Unavailable {
            reason: e.to_string(),
        },
    }
}

fn optional(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::UndefinedValue(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Histogram of a degree sequence as (degree, count), ascending.
pub fn degree_histogram(seq: &[u64]) -> BTreeMap<u64, usize> {
    let mut histogram = BTreeMap::new();
    for &d in seq {
        *histogram.entry(d).or_insert(0) += 1;
    }
    histogram
}

/// In-, out- and total-degree sequences of a directed graph, node order.
pub fn degree_sequences(g: &DirectedGraph) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let n = g.node_count();
    let ins: Vec<u64> = (0..n).map(|v| g.in_degree(v) as u64).collect();
    let outs: Vec<u64> = (0..n).map(|v| g.out_degree(v) as u64).collect();
    let totals: Vec<u64> = ins.iter().zip(&outs).map(|(i, o)| i + o).collect();
    (ins, outs, totals)
}
