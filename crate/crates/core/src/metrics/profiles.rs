//! Per-community topological profiles, community size distributions and
//! cross-network property correlation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::{average_distance, UndirectedView};
use crate::topology::powerlaw::fit_power_law;
use crate::topology::FitOutcome;

/// Topological profile of one community.
///
/// `scaled_density` is 2 m_c/(n_c - 1): 2 for trees, n_c for cliques; it and
/// `hub_dominance` are undefined (None) for singleton communities.
/// `avg_distance` is measured on the largest connected piece of the induced
/// subgraph; `disconnected` records whether pieces were discarded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityProfile {
    pub community: usize,
    pub size: usize,
    pub internal_edges: usize,
    pub scaled_density: Option<f64>,
    pub avg_distance: Option<f64>,
    pub hub_dominance: Option<f64>,
    pub disconnected: bool,
}

/// Profiles for every community of the partition, ordered by community id.
pub fn community_profiles(
    view: &UndirectedView,
    partition: &Partition,
) -> Result<Vec<CommunityProfile>> {
    let ids = partition.indices_for(view)?;
    let k = partition.community_count();
    let mut members: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for (node, &c) in ids.iter().enumerate() {
        members[c].insert(node);
    }

    let mut profiles = Vec::with_capacity(k);
    for (community, nodes) in members.iter().enumerate() {
        let size = nodes.len();
        let induced = view.induced_subgraph(nodes);
        let internal_edges = induced.edge_count();

        let (scaled_density, hub_dominance) = if size >= 2 {
            let max_degree = (0..induced.node_count())
                .map(|v| induced.degree(v))
                .max()
                .unwrap_or(0);
            (
                Some(2.0 * internal_edges as f64 / (size as f64 - 1.0)),
                Some(max_degree as f64 / (size as f64 - 1.0)),
            )
        } else {
            (None, None)
        };

        let pieces = induced.connected_components();
        let disconnected = pieces.len() > 1;
        let avg_distance = if size >= 2 {
            let largest = pieces
                .iter()
                .max_by_key(|p| p.len())
                .expect("non-empty community");
            if largest.len() >= 2 {
                Some(average_distance(&induced.induced_subgraph(largest))?)
            } else {
                None // all pieces are isolated nodes
            }
        } else {
            None
        };

        profiles.push(CommunityProfile {
            community,
            size,
            internal_edges,
            scaled_density,
            avg_distance,
            hub_dominance,
            disconnected,
        });
    }
    Ok(profiles)
}

/// Community sizes sorted descending plus a power-law fit of the size
/// distribution when at least 10 communities exist.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeDistribution {
    pub sizes: Vec<usize>,
    pub fit: FitOutcome,
}

pub fn size_distribution(partition: &Partition, bootstraps: usize, seed: u64) -> SizeDistribution {
    let mut sizes = partition.sizes();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let fit = if sizes.len() < 10 {
        FitOutcome::Unavailable {
            reason: format!(
                "size distribution fit needs at least 10 communities, got {}",
                sizes.len()
            ),
        }
    } else {
        let samples: Vec<u64> = sizes.iter().map(|&s| s as u64).collect();
        match fit_power_law(&samples, bootstraps, seed) {
            Ok(fit) => FitOutcome::Fitted(fit),
            Err(e) => FitOutcome::Unavailable {
                reason: e.to_string(),
            },
        }
    };
    SizeDistribution { sizes, fit }
}

/// Community property whose distribution is compared across networks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommunityProperty {
    Size,
    Distance,
    ScaledDensity,
    HubDominance,
}

impl CommunityProperty {
    pub const ALL: [CommunityProperty; 4] = [
        CommunityProperty::Size,
        CommunityProperty::Distance,
        CommunityProperty::ScaledDensity,
        CommunityProperty::HubDominance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CommunityProperty::Size => "size",
            CommunityProperty::Distance => "distance",
            CommunityProperty::ScaledDensity => "scaled_density",
            CommunityProperty::HubDominance => "hub_dominance",
        }
    }

    fn extract(self, profile: &CommunityProfile) -> Option<f64> {
        match self {
            CommunityProperty::Size => Some(profile.size as f64),
            CommunityProperty::Distance => profile.avg_distance,
            CommunityProperty::ScaledDensity => profile.scaled_density,
            CommunityProperty::HubDominance => profile.hub_dominance,
        }
    }
}

/// Pearson correlation between a property measured on the top-k communities of
/// two partitions, communities aligned by decreasing size rank (ties by
/// community id).
pub fn cross_network_correlation(
    view_a: &UndirectedView,
    partition_a: &Partition,
    view_b: &UndirectedView,
    partition_b: &Partition,
    property: CommunityProperty,
    top_k: usize,
) -> Result<f64> {
    let series_a = top_k_values(view_a, partition_a, property, top_k)?;
    let series_b = top_k_values(view_b, partition_b, property, top_k)?;
    pearson(&series_a, &series_b)
}

fn top_k_values(
    view: &UndirectedView,
    partition: &Partition,
    property: CommunityProperty,
    top_k: usize,
) -> Result<Vec<f64>> {
    if partition.community_count() < top_k {
        return Err(Error::Validation(format!(
            "need at least {top_k} communities, partition has {}",
            partition.community_count()
        )));
    }
    let profiles = community_profiles(view, partition)?;
    let mut order: Vec<&CommunityProfile> = profiles.iter().collect();
    order.sort_by(|a, b| b.size.cmp(&a.size).then(a.community.cmp(&b.community)));
    order
        .into_iter()
        .take(top_k)
        .map(|profile| {
            property.extract(profile).ok_or_else(|| {
                Error::UndefinedValue(format!(
                    "community {} (size {}) has no defined {}",
                    profile.community,
                    profile.size,
                    property.name()
                ))
            })
        })
        .collect()
}

fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let vx = xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
    let vy = ys.iter().map(|y| (y - my) * (y - my)).sum::<f64>();
    if vx <= 1e-300 || vy <= 1e-300 {
        return Err(Error::UndefinedValue(
            "correlation undefined: property values have zero variance".into(),
        ));
    }
    let cov = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>();
    Ok(cov / (vx.sqrt() * vy.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn partition(pairs: &[(&str, usize)]) -> Partition {
        let map: BTreeMap<String, usize> =
            pairs.iter().map(|(l, c)| (l.to_string(), *c)).collect();
        Partition::from_map(map).unwrap()
    }

    #[test]
    fn tree_community_has_scaled_density_two() {
        // community 0 is a 4-node path (a tree), community 1 a 3-clique
        let view = UndirectedView::from_edges([
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("x", "y"),
            ("y", "z"),
            ("x", "z"),
        ])
        .unwrap();
        let p = partition(&[
            ("a", 0),
            ("b", 0),
            ("c", 0),
            ("d", 0),
            ("x", 1),
            ("y", 1),
            ("z", 1),
        ]);
        let profiles = community_profiles(&view, &p).unwrap();
        assert_eq!(profiles[0].scaled_density, Some(2.0));
        assert_eq!(profiles[1].scaled_density, Some(3.0));
        assert_eq!(profiles[1].hub_dominance, Some(1.0));
    }

    #[test]
    fn clique_scaled_density_equals_size() {
        for n in 2..=8usize {
            let mut view = UndirectedView::default();
            for i in 0..n {
                for j in (i + 1)..n {
                    view.add_edge(&format!("n{i}"), &format!("n{j}")).unwrap();
                }
            }
            let p = Partition::from_map(
                (0..n)
                    .map(|i| (format!("n{i}"), 0usize))
                    .collect::<BTreeMap<_, _>>(),
            )
            .unwrap();
            let profiles = community_profiles(&view, &p).unwrap();
            assert_eq!(profiles[0].scaled_density, Some(n as f64));
        }
    }

    #[test]
    fn path_of_four_profile() {
        let view = UndirectedView::from_edges([("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let p = partition(&[("a", 0), ("b", 0), ("c", 0), ("d", 0)]);
        let profiles = community_profiles(&view, &p).unwrap();
        let profile = &profiles[0];
        assert_eq!(profile.hub_dominance, Some(2.0 / 3.0));
        assert!((profile.avg_distance.unwrap() - 10.0 / 6.0).abs() < 1e-12);
        assert!(!profile.disconnected);
    }

    #[test]
    fn singleton_community_flagged_not_fatal() {
        let mut view = UndirectedView::from_edges([("a", "b")]).unwrap();
        view.add_node("c");
        let p = partition(&[("a", 0), ("b", 0), ("c", 1)]);
        let profiles = community_profiles(&view, &p).unwrap();
        assert_eq!(profiles[1].size, 1);
        assert_eq!(profiles[1].scaled_density, None);
        assert_eq!(profiles[1].hub_dominance, None);
        assert_eq!(profiles[1].avg_distance, None);
    }

    #[test]
    fn disconnected_community_measured_on_largest_piece() {
        let view =
            UndirectedView::from_edges([("a", "b"), ("b", "c"), ("x", "y"), ("p", "q")]).unwrap();
        // community 0 contains disconnected pieces {a,b,c} and {x,y}
        let p = partition(&[("a", 0), ("b", 0), ("c", 0), ("x", 0), ("y", 0), ("p", 1), ("q", 1)]);
        let profiles = community_profiles(&view, &p).unwrap();
        assert!(profiles[0].disconnected);
        assert!((profiles[0].avg_distance.unwrap() - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn size_distribution_sorts_and_marks_small_inputs() {
        let p = partition(&[("a", 0), ("b", 1), ("c", 1), ("d", 2)]);
        let dist = size_distribution(&p, 10, 1);
        assert_eq!(dist.sizes, vec![2, 1, 1]);
        assert!(matches!(dist.fit, FitOutcome::Unavailable { .. }));
    }

    #[test]
    fn identical_sides_correlate_perfectly() {
        let mut view = UndirectedView::default();
        let mut pairs: Vec<(String, usize)> = Vec::new();
        // 8 communities of distinct sizes 2..=9, each a path
        for c in 0..8usize {
            let size = c + 2;
            for i in 0..size {
                let name = format!("c{c}n{i}");
                if i > 0 {
                    view.add_edge(&format!("c{c}n{}", i - 1), &name).unwrap();
                }
                pairs.push((name, c));
            }
        }
        let p = Partition::from_map(pairs.into_iter().collect::<BTreeMap<_, _>>()).unwrap();
        let r = cross_network_correlation(&view, &p, &view, &p, CommunityProperty::Size, 8)
            .unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_property_errors() {
        let mut view = UndirectedView::default();
        let mut pairs: Vec<(String, usize)> = Vec::new();
        // 8 equal-size pair communities: size has zero variance
        for c in 0..8usize {
            view.add_edge(&format!("c{c}a"), &format!("c{c}b")).unwrap();
            pairs.push((format!("c{c}a"), c));
            pairs.push((format!("c{c}b"), c));
        }
        let p = Partition::from_map(pairs.into_iter().collect::<BTreeMap<_, _>>()).unwrap();
        assert!(matches!(
            cross_network_correlation(&view, &p, &view, &p, CommunityProperty::Size, 8),
            Err(Error::UndefinedValue(_))
        ));
    }

    #[test]
    fn too_few_communities_rejected() {
        let view = UndirectedView::from_edges([("a", "b")]).unwrap();
        let p = partition(&[("a", 0), ("b", 1)]);
        assert!(matches!(
            cross_network_correlation(&view, &p, &view, &p, CommunityProperty::Size, 8),
            Err(Error::Validation(_))
        ));
    }
}
