//! Construction of the two interaction networks from a service collection.
//!
//! Parameter network: nodes are parameter equivalence classes under the active
//! matcher; every operation links each of its inputs to each of its outputs.
//! Operation network: nodes are operations; an edge i->j means i's outputs
//! cover all (full rule) or at least one (partial rule) of j's inputs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::model::{Collection, MatcherSpec, Operation, Parameter};

/// How much of a target operation's input set the source must cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperationRule {
    /// Every input parameter of the target must be matched by an output of the source.
    Full,
    /// At least one input parameter of the target is matched by an output of the source.
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    pub matcher: MatcherSpec,
    pub operation_rule: OperationRule,
}

impl BuildOptions {
    pub fn new(matcher: MatcherSpec, operation_rule: OperationRule) -> Self {
        BuildOptions {
            matcher,
            operation_rule,
        }
    }
}

/// Canonical keys of an operation's matchable parameters on one side.
/// In semantic mode, parameters without concepts are skipped with a warning.
fn side_keys(op: &Operation, params: &BTreeSet<Parameter>, matcher: MatcherSpec) -> Vec<String> {
    let mut keys = Vec::new();
    for p in params {
        match matcher.canonical_key(p) {
            Ok(k) => keys.push(k.to_string()),
            Err(_) => {
                log::warn!(
                    "operation '{}': parameter '{}' has no concept annotation; excluded from the semantic network",
                    op.id,
                    p.name
                );
            }
        }
    }
    keys.sort();
    keys.dedup();
    keys
}

fn ensure_buildable(collection: &Collection, matcher: MatcherSpec) -> Result<()> {
    if collection.operation_count() == 0 {
        return Err(Error::EmptyInput(
            "cannot build a network from a collection with zero operations".into(),
        ));
    }
    if matcher == MatcherSpec::SemanticExact
        && !collection
            .operations()
            .flat_map(|op| op.inputs.iter().chain(op.outputs.iter()))
            .any(|p| p.concept.is_some())
    {
        return Err(Error::EmptyInput(
            "semantic network requested but no parameter carries a concept annotation".into(),
        ));
    }
    Ok(())
}

/// Directed graph over parameter equivalence classes. Every matchable
/// parameter becomes (part of) a node even when it induces no edge; self-loops
/// are dropped and parallel edges collapse.
pub fn build_parameter_network(
    collection: &Collection,
    options: &BuildOptions,
) -> Result<DirectedGraph> {
    ensure_buildable(collection, options.matcher)?;
    let mut g = DirectedGraph::new();
    for op in collection.operations() {
        let inputs = side_keys(op, &op.inputs, options.matcher);
        let outputs = side_keys(op, &op.outputs, options.matcher);
        for key in inputs.iter().chain(outputs.iter()) {
            g.add_node(key);
        }
        for input in &inputs {
            for output in &outputs {
                if input != output {
                    g.add_edge(input, output)?;
                }
            }
        }
    }
    Ok(g)
}

/// Directed graph over operation ids under the chosen composability rule.
/// Operations with empty (or fully unmatchable) input sets receive no incoming
/// edges; an operation never links to itself.
pub fn build_operation_network(
    collection: &Collection,
    options: &BuildOptions,
) -> Result<DirectedGraph> {
    ensure_buildable(collection, options.matcher)?;
    let ops: Vec<&Operation> = collection.operations().collect();
    let inputs: Vec<Vec<String>> = ops
        .iter()
        .map(|op| side_keys(op, &op.inputs, options.matcher))
        .collect();
    let outputs: Vec<BTreeSet<String>> = ops
        .iter()
        .map(|op| {
            side_keys(op, &op.outputs, options.matcher)
                .into_iter()
                .collect()
        })
        .collect();

    let mut g = DirectedGraph::new();
    for op in &ops {
        g.add_node(&op.id);
    }
    for (source, source_outputs) in outputs.iter().enumerate() {
        for (target, target_inputs) in inputs.iter().enumerate() {
            if source == target || target_inputs.is_empty() {
                continue;
            }
            let linked = match options.operation_rule {
                OperationRule::Full => target_inputs.iter().all(|k| source_outputs.contains(k)),
                OperationRule::Partial => target_inputs.iter().any(|k| source_outputs.contains(k)),
            };
            if linked {
                g.add_edge(&ops[source].id, &ops[target].id)?;
            }
        }
    }
    Ok(g)
}
