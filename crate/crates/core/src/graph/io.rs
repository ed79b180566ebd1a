//! Graph serialization: tab-separated edge list and GraphML.
//!
//! Edge list: header line `# directed`, one `u<TAB>v` line per edge. Isolated
//! nodes are preserved as `# node<TAB>label` comment lines so a round trip is
//! lossless. Labels must not contain tabs or newlines.

use std::fmt::Write as _;

use super::DirectedGraph;
use crate::error::{Error, Result};

pub fn to_edge_list(g: &DirectedGraph) -> Result<String> {
    let mut out = String::from("# directed\n");
    for label in g.labels() {
        check_label(label)?;
        if g.node_index(label)
            .map(|i| g.out_degree(i) == 0 && g.in_degree(i) == 0)
            .unwrap_or(false)
        {
            writeln!(out, "# node\t{label}").expect("string write");
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "{}\t{}", g.label(u), g.label(v)).expect("string write");
    }
    Ok(out)
}

pub fn from_edge_list(text: &str) -> Result<DirectedGraph> {
    let mut g = DirectedGraph::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim_start();
            if let Some(label) = rest.strip_prefix("node\t") {
                g.add_node(label);
            }
            continue;
        }
        let mut parts = line.split('\t');
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) if !u.is_empty() && !v.is_empty() => (u, v),
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    column: 1,
                    message: format!("expected 'u<TAB>v', got '{line}'"),
                })
            }
        };
        g.add_edge(u, v).map_err(|e| Error::Parse {
            line: lineno + 1,
            column: 1,
            message: e.to_string(),
        })?;
    }
    Ok(g)
}

pub fn to_graphml(g: &DirectedGraph) -> Result<String> {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    out.push_str("  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n");
    out.push_str("  <graph id=\"G\" edgedefault=\"directed\">\n");
    for (i, label) in g.labels().iter().enumerate() {
        check_label(label)?;
        writeln!(
            out,
            "    <node id=\"n{i}\"><data key=\"label\">{}</data></node>",
            escape_xml(label)
        )
        .expect("string write");
    }
    for (u, v) in g.edges() {
        writeln!(out, "    <edge source=\"n{u}\" target=\"n{v}\"/>").expect("string write");
    }
    out.push_str("  </graph>\n</graphml>\n");
    Ok(out)
}

pub fn from_graphml(text: &str) -> Result<DirectedGraph> {
    let doc = roxmltree::Document::parse(text).map_err(|e| {
        let pos = e.pos();
        Error::Parse {
            line: pos.row as usize,
            column: pos.col as usize,
            message: e.to_string(),
        }
    })?;
    let graph = doc
        .descendants()
        .find(|n| n.has_tag_name("graph"))
        .ok_or_else(|| Error::Validation("GraphML document has no <graph> element".into()))?;

    let mut g = DirectedGraph::new();
    let mut labels = std::collections::HashMap::new();
    for node in graph.children().filter(|n| n.has_tag_name("node")) {
        let id = node
            .attribute("id")
            .ok_or_else(|| Error::Validation("<node> without id".into()))?;
        let label = node
            .children()
            .find(|c| c.has_tag_name("data") && c.attribute("key") == Some("label"))
            .and_then(|c| c.text())
            .unwrap_or(id);
        labels.insert(id.to_string(), label.to_string());
        g.add_node(label);
    }
    for edge in graph.children().filter(|n| n.has_tag_name("edge")) {
        let source = edge
            .attribute("source")
            .ok_or_else(|| Error::Validation("<edge> without source".into()))?;
        let target = edge
            .attribute("target")
            .ok_or_else(|| Error::Validation("<edge> without target".into()))?;
        let u = labels
            .get(source)
            .ok_or_else(|| Error::Validation(format!("edge references unknown node '{source}'")))?;
        let v = labels
            .get(target)
            .ok_or_else(|| Error::Validation(format!("edge references unknown node '{target}'")))?;
        g.add_edge(u, v)?;
    }
    Ok(g)
}

fn check_label(label: &str) -> Result<()> {
    if label.contains('\t') || label.contains('\n') || label.contains('\r') {
        return Err(Error::Validation(format!(
            "node label {label:?} contains tab or newline and cannot be serialized"
        )));
    }
    Ok(())
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DirectedGraph {
        let mut g = DirectedGraph::from_edges([("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        g.add_node("lonely");
        g
    }

    #[test]
    fn edge_list_round_trip_preserves_structure() {
        let g = sample();
        let text = to_edge_list(&g).unwrap();
        assert!(text.starts_with("# directed\n"));
        let back = from_edge_list(&text).unwrap();
        assert_eq!(back.node_count(), g.node_count());
        assert_eq!(back.edge_count(), g.edge_count());
        let edges: Vec<_> = g
            .edges()
            .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
            .collect();
        let back_edges: Vec<_> = back
            .edges()
            .map(|(u, v)| (back.label(u).to_string(), back.label(v).to_string()))
            .collect();
        assert_eq!(edges, back_edges);
        assert!(back.node_index("lonely").is_some());
    }

    #[test]
    fn graphml_round_trip() {
        let g = sample();
        let xml = to_graphml(&g).unwrap();
        let back = from_graphml(&xml).unwrap();
        assert_eq!(back.node_count(), 4);
        assert_eq!(back.edge_count(), 3);
        assert_eq!(back.labels(), g.labels());
    }

    #[test]
    fn graphml_escapes_special_characters() {
        let g = DirectedGraph::from_edges([("a&b", "c<d>")]).unwrap();
        let xml = to_graphml(&g).unwrap();
        assert!(xml.contains("a&amp;b"));
        let back = from_graphml(&xml).unwrap();
        assert_eq!(back.labels(), ["a&b", "c<d>"]);
    }

    #[test]
    fn malformed_edge_line_reports_position() {
        let err = from_edge_list("# directed\na\tb\nbroken line\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn tab_in_label_rejected_on_export() {
        let g = DirectedGraph::from_edges([("a\tb", "c")]).unwrap();
        assert!(to_edge_list(&g).is_err());
    }
}
