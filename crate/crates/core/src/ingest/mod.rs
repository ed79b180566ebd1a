//! Loading collections: the canonical JSON document format and a best-effort
//! SAWSDL/WSDL subset. Parsing never invents parameters; anything skipped is
//! reported in the ingest report's warnings.

pub mod sawsdl;

pub use sawsdl::{parse_sawsdl, SawsdlDocument};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Collection, Operation, Parameter, ServiceDescription};

/// What a load did: counts mirror the returned collection.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub services_loaded: usize,
    pub operations_loaded: usize,
    /// Distinct parameters under name+concept identity.
    pub parameters_total: usize,
    pub warnings: Vec<String>,
}

impl IngestReport {
    fn for_collection(collection: &Collection, warnings: Vec<String>) -> Self {
        IngestReport {
            services_loaded: collection.services.len(),
            operations_loaded: collection.operation_count(),
            parameters_total: collection.distinct_parameters().len(),
            warnings,
        }
    }
}

// document mirror of the canonical schema
#[derive(Debug, Serialize, Deserialize)]
struct CollectionDoc {
    services: Vec<ServiceDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ServiceDoc {
    name: String,
    operations: Vec<OperationDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct OperationDoc {
    id: String,
    name: String,
    inputs: Vec<ParameterDoc>,
    outputs: Vec<ParameterDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ParameterDoc {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    concept: Option<String>,
}

/// Parses the canonical UTF-8 document format. Malformed documents yield a
/// parse error with line/column; invariant violations (duplicate operation
/// ids, empty names) yield validation errors. Parameters listed twice within
/// a side collapse with a warning.
pub fn parse_collection(text: &str) -> Result<(Collection, IngestReport)> {
    let doc: CollectionDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let mut warnings = Vec::new();
    let mut services = Vec::with_capacity(doc.services.len());
    for service in doc.services {
        let mut operations = Vec::with_capacity(service.operations.len());
        for op in service.operations {
            let inputs = fold_side(&op.id, "input", op.inputs, &mut warnings);
            let outputs = fold_side(&op.id, "output", op.outputs, &mut warnings);
            operations.push(Operation {
                id: op.id,
                name: op.name,
                inputs,
                outputs,
            });
        }
        services.push(ServiceDescription {
            name: service.name,
            operations,
        });
    }
    let collection = Collection::new(services)?;
    let report = IngestReport::for_collection(&collection, warnings);
    Ok((collection, report))
}

fn fold_side(
    op_id: &str,
    side: &str,
    params: Vec<ParameterDoc>,
    warnings: &mut Vec<String>,
) -> std::collections::BTreeSet<Parameter> {
    let mut set = std::collections::BTreeSet::new();
    for p in params {
        let parameter = Parameter {
            name: p.name,
            concept: p.concept,
        };
        if !set.insert(parameter.clone()) {
            warnings.push(format!(
                "operation '{op_id}': duplicate {side} parameter '{}' collapsed",
                parameter.name
            ));
        }
    }
    set
}

/// Serializes a collection to the canonical document format (pretty JSON,
/// deterministic ordering: services and operations in collection order,
/// parameters in set order).
pub fn to_canonical_json(collection: &Collection) -> String {
    let doc = CollectionDoc {
        services: collection
            .services
            .iter()
            .map(|s| ServiceDoc {
                name: s.name.clone(),
                operations: s
                    .operations
                    .iter()
                    .map(|op| OperationDoc {
                        id: op.id.clone(),
                        name: op.name.clone(),
                        inputs: doc_params(&op.inputs),
                        outputs: doc_params(&op.outputs),
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("canonical document serializes");
    text.push('\n');
    text
}

fn doc_params(params: &std::collections::BTreeSet<Parameter>) -> Vec<ParameterDoc> {
    params
        .iter()
        .map(|p| ParameterDoc {
            name: p.name.clone(),
            concept: p.concept.clone(),
        })
        .collect()
}
