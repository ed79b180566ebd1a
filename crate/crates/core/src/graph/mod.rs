//! Simple directed graph with stable string node labels, its symmetrized
//! undirected view, and the classical measurements used downstream.

pub(crate) mod betweenness;
mod io;
pub(crate) mod random;
mod stats;

pub use betweenness::edge_betweenness;
pub use io::{from_edge_list, from_graphml, to_edge_list, to_graphml};
pub use random::er_baseline_distance;
pub use stats::{average_distance, degree_assortativity, transitivity};

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Simple directed graph: no self-loops, no parallel edges, labels stable in
/// first-insertion order.
#[derive(Debug, Clone, Default)]
pub struct DirectedGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    out: Vec<BTreeSet<usize>>,
    incoming: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl DirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a node, returning its index; idempotent.
    pub fn add_node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        self.out.push(BTreeSet::new());
        self.incoming.push(BTreeSet::new());
        i
    }

    /// Adds the edge u->v, registering endpoints as needed. Returns true if the
    /// edge is new, false if it already existed. Self-loops are rejected.
    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<bool> {
        if u == v {
            return Err(Error::Validation(format!(
                "self-loop on node '{u}' is not allowed"
            )));
        }
        let ui = self.add_node(u);
        let vi = self.add_node(v);
        if self.out[ui].insert(vi) {
            self.incoming[vi].insert(ui);
            self.edge_count += 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    /// Convenience constructor from (source, target) label pairs.
    pub fn from_edges<'a>(edges: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut g = DirectedGraph::new();
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn node_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(&v)
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[u].iter().copied()
    }

    pub fn in_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.incoming[u].iter().copied()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.incoming[u].len()
    }

    /// Directed edges in deterministic (source, target) index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// Node sets of the weakly connected components, each sorted by index;
    /// components ordered by their smallest member index.
    pub fn weakly_connected_components(&self) -> Vec<BTreeSet<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for v in self.out[u].iter().chain(self.incoming[u].iter()) {
                    if !seen[*v] {
                        seen[*v] = true;
                        queue.push_back(*v);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    /// Induced subgraph on the largest weakly connected component. Ties are
    /// broken by the lexicographically smallest node label in the component.
    pub fn giant_component(&self) -> Result<DirectedGraph> {
        if self.is_empty() {
            return Err(Error::EmptyInput("giant component of an empty graph".into()));
        }
        let components = self.weakly_connected_components();
        let best = components
            .iter()
            .min_by(|a, b| {
                b.len()
                    .cmp(&a.len())
                    .then_with(|| self.min_label(a).cmp(self.min_label(b)))
            })
            .expect("non-empty graph has at least one component");
        Ok(self.induced_subgraph(best))
    }

    fn min_label(&self, comp: &BTreeSet<usize>) -> &str {
        comp.iter()
            .map(|&i| self.label(i))
            .min()
            .expect("components are non-empty")
    }

    /// Induced subgraph on the given node set, preserving relative node order.
    pub fn induced_subgraph(&self, nodes: &BTreeSet<usize>) -> DirectedGraph {
        let mut g = DirectedGraph::new();
        for &i in nodes {
            g.add_node(&self.labels[i]);
        }
        for &u in nodes {
            for &v in &self.out[u] {
                if nodes.contains(&v) {
                    g.add_edge(&self.labels[u], &self.labels[v])
                        .expect("induced edges are valid");
                }
            }
        }
        g
    }

    /// The symmetrized simple undirected view of this graph.
    pub fn undirected(&self) -> UndirectedView {
        let n = self.node_count();
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut edge_count = 0;
        for (u, v) in self.edges() {
            if adj[u].insert(v) {
                adj[v].insert(u);
                edge_count += 1;
            }
        }
        UndirectedView {
            labels: self.labels.clone(),
            index: self.index.clone(),
            adj,
            edge_count,
        }
    }
}

/// Simple undirected graph, usually obtained by symmetrizing a [`DirectedGraph`].
#[derive(Debug, Clone, Default)]
pub struct UndirectedView {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl UndirectedView {
    /// Builds an undirected graph directly from label pairs (test and
    /// community-detection convenience; self-loops rejected).
    pub fn from_edges<'a>(edges: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut g = UndirectedView::default();
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        self.adj.push(BTreeSet::new());
        i
    }

    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<bool> {
        if u == v {
            return Err(Error::Validation(format!(
                "self-loop on node '{u}' is not allowed"
            )));
        }
        let ui = self.add_node(u);
        let vi = self.add_node(v);
        if self.adj[ui].insert(vi) {
            self.adj[vi].insert(ui);
            self.edge_count += 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn node_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Undirected edges as (u, v) with u < v, in deterministic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted; ordered by smallest member index.
    pub fn connected_components(&self) -> Vec<BTreeSet<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() <= 1 || self.connected_components().len() == 1
    }

    /// Induced subgraph on the given node set, preserving relative order.
    pub fn induced_subgraph(&self, nodes: &BTreeSet<usize>) -> UndirectedView {
        let mut g = UndirectedView::default();
        for &i in nodes {
            g.add_node(&self.labels[i]);
        }
        for &u in nodes {
            for &v in &self.adj[u] {
                if v > u && nodes.contains(&v) {
                    g.add_edge(&self.labels[u], &self.labels[v])
                        .expect("induced edges are valid");
                }
            }
        }
        g
    }

    /// BFS distances from `source`; unreachable nodes get `usize::MAX`.
    pub(crate) fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}
