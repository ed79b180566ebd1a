//! Community detection on the symmetrized giant component: partitions,
//! modularity, five detection algorithms and partition import.

mod girvan_newman;
mod label_propagation;
mod leading_eigenvector;
mod louvain;
mod walktrap;

pub use girvan_newman::girvan_newman;
pub use label_propagation::label_propagation;
pub use leading_eigenvector::leading_eigenvector;
pub use louvain::louvain;
pub use walktrap::walktrap;

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, UndirectedView};

/// A total assignment of node labels to disjoint communities with dense ids
/// 0..k-1, every id used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    assignment: BTreeMap<String, usize>,
    communities: usize,
}

impl Partition {
    /// Builds a partition from an arbitrary label->group map; group ids are
    /// densified by order of first appearance over label-sorted nodes, so two
    /// structurally identical partitions densify identically.
    pub fn from_map<G: Ord + Eq>(raw: BTreeMap<String, G>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput("partition over zero nodes".into()));
        }
        let mut dense: BTreeMap<&G, usize> = BTreeMap::new();
        let mut assignment = BTreeMap::new();
        for (node, group) in &raw {
            let next = dense.len();
            let id = *dense.entry(group).or_insert(next);
            assignment.insert(node.clone(), id);
        }
        let communities = dense.len();
        Ok(Partition {
            assignment,
            communities,
        })
    }

    /// Builds a partition over a view's nodes from per-index community ids.
    pub fn from_indexed(view: &UndirectedView, ids: &[usize]) -> Result<Self> {
        if ids.len() != view.node_count() {
            return Err(Error::Validation(format!(
                "assignment covers {} nodes but the graph has {}",
                ids.len(),
                view.node_count()
            )));
        }
        let raw: BTreeMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, &c)| (view.label(i).to_string(), c))
            .collect();
        Partition::from_map(raw)
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_count(&self) -> usize {
        self.communities
    }

    pub fn community_of(&self, label: &str) -> Option<usize> {
        self.assignment.get(label).copied()
    }

    /// Iterates (label, community) in label order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.assignment.iter().map(|(l, &c)| (l.as_str(), c))
    }

    /// Community sizes indexed by community id.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.communities];
        for &c in self.assignment.values() {
            sizes[c] += 1;
        }
        sizes
    }

    /// Member labels per community id.
    pub fn members(&self) -> Vec<Vec<&str>> {
        let mut members: Vec<Vec<&str>> = vec![Vec::new(); self.communities];
        for (label, &c) in &self.assignment {
            members[c].push(label.as_str());
        }
        members
    }

    /// Checks that this partition covers exactly the nodes of `view`.
    pub fn validate_on(&self, view: &UndirectedView) -> Result<()> {
        if self.assignment.len() != view.node_count() {
            return Err(Error::Validation(format!(
                "partition covers {} nodes, graph has {}",
                self.assignment.len(),
                view.node_count()
            )));
        }
        for label in view.labels() {
            if !self.assignment.contains_key(label) {
                return Err(Error::Validation(format!(
                    "partition does not assign node '{label}'"
                )));
            }
        }
        Ok(())
    }

    /// Community ids aligned to the view's node indexing.
    pub fn indices_for(&self, view: &UndirectedView) -> Result<Vec<usize>> {
        self.validate_on(view)?;
        Ok((0..view.node_count())
            .map(|i| self.assignment[view.label(i)])
            .collect())
    }

    /// Same node set as another partition?
    pub fn same_nodes(&self, other: &Partition) -> bool {
        self.assignment.len() == other.assignment.len()
            && self
                .assignment
                .keys()
                .zip(other.assignment.keys())
                .all(|(a, b)| a == b)
    }
}

/// Algorithm parameters; the defaults match the values recorded in run
/// manifests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectParams {
    pub seed: u64,
    /// Random-walk length for walktrap.
    pub walktrap_t: usize,
    /// Optional cap on Girvan-Newman edge removals.
    pub gn_max_removals: Option<usize>,
    /// Sweep limit for label propagation.
    pub lp_max_sweeps: usize,
}

impl Default for DetectParams {
    fn default() -> Self {
        DetectParams {
            seed: 0,
            walktrap_t: 4,
            gn_max_removals: None,
            lp_max_sweeps: 100,
        }
    }
}

impl DetectParams {
    pub fn with_seed(seed: u64) -> Self {
        DetectParams {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.walktrap_t == 0 {
            return Err(Error::Validation("walktrap_t must be positive".into()));
        }
        if self.lp_max_sweeps == 0 {
            return Err(Error::Validation("lp_max_sweeps must be positive".into()));
        }
        if self.gn_max_removals == Some(0) {
            return Err(Error::Validation(
                "gn_max_removals must be positive when set".into(),
            ));
        }
        Ok(())
    }
}

/// Newman-Girvan modularity Q = sum_c [e_c/m - (d_c/2m)^2].
pub fn modularity(view: &UndirectedView, partition: &Partition) -> Result<f64> {
    let m = view.edge_count();
    if m == 0 {
        return Err(Error::UndefinedValue(
            "modularity undefined on an edgeless graph".into(),
        ));
    }
    let ids = partition.indices_for(view)?;
    Ok(modularity_from_ids(view, &ids))
}

/// Modularity from per-index community ids; shared by the detectors, which
/// evaluate many intermediate assignments.
pub(crate) fn modularity_from_ids(view: &UndirectedView, ids: &[usize]) -> f64 {
    let m = view.edge_count() as f64;
    let k = ids.iter().copied().max().map_or(0, |v| v + 1);
    let mut intra = vec![0.0f64; k];
    let mut degree = vec![0.0f64; k];
    for (u, v) in view.edges() {
        if ids[u] == ids[v] {
            intra[ids[u]] += 1.0;
        }
    }
    for node in 0..view.node_count() {
        degree[ids[node]] += view.degree(node) as f64;
    }
    (0..k)
        .map(|c| intra[c] / m - (degree[c] / (2.0 * m)).powi(2))
        .sum()
}

/// Reads a partition from CSV `node,community` (optional header). The file
/// must assign every node of `g` exactly once; community tokens are densified
/// by first appearance.
pub fn import_partition<R: Read>(reader: R, g: &DirectedGraph) -> Result<Partition> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .from_reader(reader);
    let mut raw: Vec<(String, String)> = Vec::new();
    for (i, record) in csv_reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: i + 1,
            column: 1,
            message: e.to_string(),
        })?;
        if record.len() != 2 {
            return Err(Error::Parse {
                line: i + 1,
                column: 1,
                message: format!("expected 2 fields, got {}", record.len()),
            });
        }
        let node = record[0].to_string();
        let community = record[1].to_string();
        if i == 0 && node.eq_ignore_ascii_case("node") && community.eq_ignore_ascii_case("community")
        {
            continue; // header
        }
        raw.push((node, community));
    }

    let mut dense: BTreeMap<String, usize> = BTreeMap::new();
    let mut assignment: BTreeMap<String, usize> = BTreeMap::new();
    let mut unknown = Vec::new();
    let mut duplicate = Vec::new();
    for (node, community) in raw {
        if g.node_index(&node).is_none() {
            unknown.push(node);
            continue;
        }
        let next = dense.len();
        let id = *dense.entry(community).or_insert(next);
        if assignment.insert(node.clone(), id).is_some() {
            duplicate.push(node);
        }
    }
    if !unknown.is_empty() {
        return Err(Error::Validation(format!(
            "partition file names unknown nodes: {}",
            unknown.join(", ")
        )));
    }
    if !duplicate.is_empty() {
        return Err(Error::Validation(format!(
            "partition file assigns nodes more than once: {}",
            duplicate.join(", ")
        )));
    }
    let missing: Vec<&str> = g
        .labels()
        .iter()
        .filter(|l| !assignment.contains_key(*l))
        .map(|l| l.as_str())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Validation(format!(
            "partition file omits nodes: {}",
            missing.join(", ")
        )));
    }
    Partition::from_map(assignment)
}

/// Writes a partition as CSV `node,community` with a header line.
pub fn export_partition(partition: &Partition) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["node", "community"])
        .map_err(|e| Error::Validation(e.to_string()))?;
    for (label, community) in partition.iter() {
        writer
            .write_record([label, &community.to_string()])
            .map_err(|e| Error::Validation(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Validation(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Validation(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> UndirectedView {
        UndirectedView::from_edges([
            ("a", "b"),
            ("b", "c"),
            ("a", "c"),
            ("d", "e"),
            ("e", "f"),
            ("d", "f"),
        ])
        .unwrap()
    }

    fn partition_of(view: &UndirectedView, groups: &[&[&str]]) -> Partition {
        let mut map = BTreeMap::new();
        for (i, group) in groups.iter().enumerate() {
            for &node in *group {
                map.insert(node.to_string(), i);
            }
        }
        let p = Partition::from_map(map).unwrap();
        p.validate_on(view).unwrap();
        p
    }

    #[test]
    fn single_community_has_zero_modularity() {
        let view = two_triangles();
        let p = partition_of(&view, &[&["a", "b", "c", "d", "e", "f"]]);
        assert_eq!(modularity(&view, &p).unwrap(), 0.0);
    }

    #[test]
    fn disjoint_triangles_split_scores_half() {
        let view = two_triangles();
        let p = partition_of(&view, &[&["a", "b", "c"], &["d", "e", "f"]]);
        assert!((modularity(&view, &p).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn triangle_singletons_score_minus_third() {
        let view = UndirectedView::from_edges([("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let p = partition_of(&view, &[&["a"], &["b"], &["c"]]);
        assert!((modularity(&view, &p).unwrap() + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn modularity_requires_edges() {
        let mut view = UndirectedView::default();
        view.add_node("a");
        let p = partition_of(&view, &[&["a"]]);
        assert!(matches!(
            modularity(&view, &p),
            Err(Error::UndefinedValue(_))
        ));
    }

    #[test]
    fn densification_from_sparse_ids() {
        let raw: BTreeMap<String, usize> =
            [("a".to_string(), 5), ("b".to_string(), 9), ("c".to_string(), 5)]
                .into_iter()
                .collect();
        let p = Partition::from_map(raw).unwrap();
        assert_eq!(p.community_count(), 2);
        assert_eq!(p.community_of("a"), Some(0));
        assert_eq!(p.community_of("b"), Some(1));
        assert_eq!(p.community_of("c"), Some(0));
    }

    #[test]
    fn import_round_trip() {
        let g = DirectedGraph::from_edges([("a", "b"), ("b", "c")]).unwrap();
        let csv_text = "node,community\na,5\nb,9\nc,5\n";
        let p = import_partition(csv_text.as_bytes(), &g).unwrap();
        assert_eq!(p.community_count(), 2);
        assert_eq!(p.community_of("c"), Some(0));
        let exported = export_partition(&p).unwrap();
        let p2 = import_partition(exported.as_bytes(), &g).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn import_rejects_missing_node() {
        let g = DirectedGraph::from_edges([("a", "b"), ("b", "c")]).unwrap();
        let err = import_partition("a,0\nb,1\n".as_bytes(), &g).unwrap_err();
        match err {
            Error::Validation(msg) => assert!(msg.contains('c'), "{msg}"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn import_rejects_unknown_node() {
        let g = DirectedGraph::from_edges([("a", "b")]).unwrap();
        let err = import_partition("a,0\nb,0\nzz,1\n".as_bytes(), &g).unwrap_err();
        match err {
            Error::Validation(msg) => assert!(msg.contains("zz"), "{msg}"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }
}
