//! Domain model for Web-service descriptions and parameter matching.
//!
//! A service exposes operations; an operation consumes a set of input
//! parameters and produces a set of output parameters. Parameters carry a
//! syntactic name and, optionally, an ontological concept IRI. The two
//! matchers below decide when two parameters denote the same datum.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named, optionally concept-annotated datum consumed or produced by an operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Parameter {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concept: Option<String>,
}

impl Parameter {
    pub fn syntactic(name: impl Into<String>) -> Self {
        Parameter {
            name: name.into(),
            concept: None,
        }
    }

    pub fn annotated(name: impl Into<String>, concept: impl Into<String>) -> Self {
        Parameter {
            name: name.into(),
            concept: Some(concept.into()),
        }
    }

    /// Checks the non-empty invariants.
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::Validation("parameter name is empty".into()));
        }
        if let Some(c) = &self.concept {
            if c.is_empty() {
                return Err(Error::Validation(format!(
                    "parameter '{}' has an empty concept annotation",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// A callable unit of a service: input parameter set and output parameter set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Operation {
    pub id: String,
    pub name: String,
    pub inputs: BTreeSet<Parameter>,
    pub outputs: BTreeSet<Parameter>,
}

/// One service description: a non-empty list of operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServiceDescription {
    pub name: String,
    pub operations: Vec<Operation>,
}

/// Which annotations the collection's parameters carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollectionMode {
    /// No parameter carries a concept; only syntactic matching is usable.
    Syntactic,
    /// Some but not all parameters carry concepts.
    Semantic,
    /// Every parameter carries a concept; both matchers are fully usable.
    Both,
}

/// A set of service descriptions with unique operation ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collection {
    pub services: Vec<ServiceDescription>,
    pub mode: CollectionMode,
}

impl Collection {
    /// Builds a collection, computing the annotation mode and checking invariants:
    /// non-empty names, non-empty per-service operation lists, and operation ids
    /// unique across the whole collection.
    pub fn new(services: Vec<ServiceDescription>) -> Result<Self> {
        let mut seen_ids = BTreeSet::new();
        let mut total = 0usize;
        let mut annotated = 0usize;
        for service in &services {
            if service.operations.is_empty() {
                return Err(Error::Validation(format!(
                    "service '{}' has no operations",
                    service.name
                )));
            }
            for op in &service.operations {
                if op.id.is_empty() {
                    return Err(Error::Validation(format!(
                        "operation in service '{}' has an empty id",
                        service.name
                    )));
                }
                if !seen_ids.insert(op.id.clone()) {
                    return Err(Error::Validation(format!(
                        "duplicate operation id '{}'",
                        op.id
                    )));
                }
                for p in op.inputs.iter().chain(op.outputs.iter()) {
                    p.validate()?;
                    total += 1;
                    if p.concept.is_some() {
                        annotated += 1;
                    }
                }
            }
        }
        let mode = if annotated == 0 {
            CollectionMode::Syntactic
        } else if annotated == total {
            CollectionMode::Both
        } else {
            CollectionMode::Semantic
        };
        Ok(Collection { services, mode })
    }

    pub fn operations(&self) -> impl Iterator<Item = &Operation> {
        self.services.iter().flat_map(|s| s.operations.iter())
    }

    pub fn operation_count(&self) -> usize {
        self.services.iter().map(|s| s.operations.len()).sum()
    }

    /// Distinct parameters across the collection, under name+concept identity.
    pub fn distinct_parameters(&self) -> BTreeSet<&Parameter> {
        self.operations()
            .flat_map(|op| op.inputs.iter().chain(op.outputs.iter()))
            .collect()
    }
}

/// The parameter-equivalence rule used to build networks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatcherSpec {
    /// Strict byte equality of parameter names.
    SyntacticExact,
    /// Identity of concept IRIs; parameters without concepts cannot match.
    SemanticExact,
}

impl MatcherSpec {
    /// Decides whether two parameters denote the same datum under this matcher.
    pub fn matches(self, p: &Parameter, q: &Parameter) -> Result<bool> {
        match self {
            MatcherSpec::SyntacticExact => Ok(p.name == q.name),
            MatcherSpec::SemanticExact => {
                let cp = concept_of(p)?;
                let cq = concept_of(q)?;
                Ok(cp == cq)
            }
        }
    }

    /// The canonical key realizing this matcher's equivalence classes:
    /// two parameters match iff their keys are equal.
    pub fn canonical_key<'a>(self, p: &'a Parameter) -> Result<&'a str> {
        match self {
            MatcherSpec::SyntacticExact => Ok(&p.name),
            MatcherSpec::SemanticExact => concept_of(p),
        }
    }
}

fn concept_of(p: &Parameter) -> Result<&str> {
    p.concept.as_deref().ok_or_else(|| Error::AnnotationMissing {
        parameter: p.name.clone(),
    })
}
