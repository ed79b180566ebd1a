//! Aggregate community report: per-algorithm counts, modularity, top sizes,
//! the pairwise NMI matrix and count statistics.

use serde::{Deserialize, Serialize};

use super::nmi::nmi;
use super::profiles::{community_profiles, CommunityProfile};
use crate::community::{modularity, Partition};
use crate::error::{Error, Result};
use crate::graph::UndirectedView;

/// Symmetric matrix of pairwise NMI values with unit diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonMatrix {
    pub algorithms: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl ComparisonMatrix {
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.values[a][b]
    }
}

/// Per-algorithm summary row (community count, modularity, largest sizes).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: String,
    pub communities: usize,
    pub modularity: f64,
    /// Community sizes, largest first, truncated to ten entries.
    pub top_sizes: Vec<usize>,
}

/// The aggregate record over a set of named partitions of one network.
/// Standard deviations use the population convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityReport {
    pub summaries: Vec<AlgorithmSummary>,
    pub nmi: ComparisonMatrix,
    pub count_mean: f64,
    pub count_stddev_population: f64,
    pub modularity_mean: f64,
    pub modularity_stddev_population: f64,
    pub profiles: Vec<(String, Vec<CommunityProfile>)>,
}

/// Builds the aggregate report; every partition must cover the view's nodes.
pub fn community_report(
    view: &UndirectedView,
    partitions: &[(String, Partition)],
) -> Result<CommunityReport> {
    if partitions.is_empty() {
        return Err(Error::EmptyInput("community report without partitions".into()));
    }
    let mut summaries = Vec::with_capacity(partitions.len());
    let mut profiles = Vec::with_capacity(partitions.len());
    for (name, partition) in partitions {
        partition.validate_on(view)?;
        let mut sizes = partition.sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes.truncate(10);
        summaries.push(AlgorithmSummary {
            algorithm: name.clone(),
            communities: partition.community_count(),
            modularity: modularity(view, partition)?,
            top_sizes: sizes,
        });
        profiles.push((name.clone(), community_profiles(view, partition)?));
    }

    let k = partitions.len();
    let mut values = vec![vec![0.0f64; k]; k];
    for a in 0..k {
        values[a][a] = 1.0;
        for b in (a + 1)..k {
            let value = nmi(&partitions[a].1, &partitions[b].1)?;
            values[a][b] = value;
            values[b][a] = value;
        }
    }

    let counts: Vec<f64> = summaries.iter().map(|s| s.communities as f64).collect();
    let mods: Vec<f64> = summaries.iter().map(|s| s.modularity).collect();
    let (count_mean, count_stddev) = mean_stddev_population(&counts);
    let (modularity_mean, modularity_stddev) = mean_stddev_population(&mods);

    Ok(CommunityReport {
        summaries,
        nmi: ComparisonMatrix {
            algorithms: partitions.iter().map(|(n, _)| n.clone()).collect(),
            values,
        },
        count_mean,
        count_stddev_population: count_stddev,
        modularity_mean,
        modularity_stddev_population: modularity_stddev,
        profiles,
    })
}

fn mean_stddev_population(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, variance.sqrt())
}
