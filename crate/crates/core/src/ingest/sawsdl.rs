//! Best-effort SAWSDL/WSDL ingestion.
//!
//! Recognized subset: operations under portType (WSDL 1.1) or interface
//! (WSDL 2.0), their input/output message or element references, message
//! part/element names, and `modelReference` annotations (whitespace-separated
//! IRI list, first IRI taken). Nested XSD structure is not flattened.

use std::collections::{BTreeSet, HashMap};

use super::IngestReport;
use crate::error::{Error, Result};
use crate::model::{Collection, Operation, Parameter, ServiceDescription};

/// One XML document plus the label (usually the file stem) used for fallback
/// service naming and warning messages.
#[derive(Debug, Clone)]
pub struct SawsdlDocument {
    pub source: String,
    pub content: String,
}

impl SawsdlDocument {
    pub fn new(source: impl Into<String>, content: impl Into<String>) -> Self {
        SawsdlDocument {
            source: source.into(),
            content: content.into(),
        }
    }
}

/// Parses a batch of documents into one collection: one service per document,
/// in input order. Documents with zero recognizable operations are skipped
/// with a warning; identifier collisions across documents are disambiguated
/// with a warning.
pub fn parse_sawsdl(documents: &[SawsdlDocument]) -> Result<(Collection, IngestReport)> {
    let mut warnings = Vec::new();
    let mut services = Vec::new();
    let mut used_ids: BTreeSet<String> = BTreeSet::new();

    for document in documents {
        match parse_document(document, &mut warnings, &mut used_ids) {
            Ok(Some(service)) => services.push(service),
            Ok(None) => {
                warnings.push(format!(
                    "{}: no operations recognized; document skipped",
                    document.source
                ));
            }
            Err(e) => return Err(e),
        }
    }

    let collection = Collection::new(services)?;
    let report = IngestReport::for_collection(&collection, warnings);
    Ok((collection, report))
}

fn parse_document(
    document: &SawsdlDocument,
    warnings: &mut Vec<String>,
    used_ids: &mut BTreeSet<String>,
) -> Result<Option<ServiceDescription>> {
    let doc = roxmltree::Document::parse(&document.content).map_err(|e| {
        let pos = e.pos();
        Error::Parse {
            line: pos.row as usize,
            column: pos.col as usize,
            message: format!("{}: {e}", document.source),
        }
    })?;
    let root = doc.root_element();

    // schema element declarations: name -> first modelReference IRI
    let mut element_concepts: HashMap<String, String> = HashMap::new();
    for node in doc.descendants() {
        if node.tag_name().name() == "element" {
            if let (Some(name), Some(concept)) =
                (node.attribute("name"), model_reference(&node, document, warnings))
            {
                element_concepts.entry(name.to_string()).or_insert(concept);
            }
        }
    }

    // messages: name -> parts (part name, element ref, own modelReference)
    let mut messages: HashMap<String, Vec<Part>> = HashMap::new();
    for node in doc.descendants() {
        if node.tag_name().name() == "message" {
            let Some(message_name) = node.attribute("name") else {
                continue;
            };
            let parts: Vec<Part> = node
                .children()
                .filter(|c| c.tag_name().name() == "part")
                .filter_map(|part| {
                    let name = part.attribute("name")?.to_string();
                    Some(Part {
                        name,
                        element: part.attribute("element").map(local_name),
                        concept: model_reference(&part, document, warnings),
                    })
                })
                .collect();
            messages.insert(message_name.to_string(), parts);
        }
    }

    let service_name = root
        .descendants()
        .find(|n| n.tag_name().name() == "service")
        .and_then(|n| n.attribute("name"))
        .or_else(|| root.attribute("name"))
        .unwrap_or(&document.source)
        .to_string();

    let mut operations = Vec::new();
    for port_type in root
        .descendants()
        .filter(|n| matches!(n.tag_name().name(), "portType" | "interface"))
    {
        for op_node in port_type
            .children()
            .filter(|n| n.tag_name().name() == "operation")
        {
            let Some(op_name) = op_node.attribute("name") else {
                warnings.push(format!(
                    "{}: operation without a name attribute skipped",
                    document.source
                ));
                continue;
            };
            let mut inputs = BTreeSet::new();
            let mut outputs = BTreeSet::new();
            for child in op_node.children() {
                match child.tag_name().name() {
                    "input" => inputs.extend(resolve_side(
                        child,
                        &messages,
                        &element_concepts,
                        document,
                        warnings,
                    )),
                    "output" => outputs.extend(resolve_side(
                        child,
                        &messages,
                        &element_concepts,
                        document,
                        warnings,
                    )),
                    _ => {}
                }
            }
            let mut id = format!("{service_name}#{op_name}");
            if used_ids.contains(&id) {
                let mut suffix = 2usize;
                while used_ids.contains(&format!("{id}~{suffix}")) {
                    suffix += 1;
                }
                warnings.push(format!(
                    "{}: duplicate operation id '{id}' renamed to '{id}~{suffix}'",
                    document.source
                ));
                id = format!("{id}~{suffix}");
            }
            used_ids.insert(id.clone());
            operations.push(Operation {
                id,
                name: op_name.to_string(),
                inputs,
                outputs,
            });
        }
    }

    if operations.is_empty() {
        return Ok(None);
    }
    Ok(Some(ServiceDescription {
        name: service_name,
        operations,
    }))
}

struct Part {
    name: String,
    element: Option<String>,
    concept: Option<String>,
}

/// Parameters referenced by one <input>/<output> element: WSDL 1.1 message
/// parts or a WSDL 2.0 element reference.
fn resolve_side(
    reference: roxmltree::Node,
    messages: &HashMap<String, Vec<Part>>,
    element_concepts: &HashMap<String, String>,
    document: &SawsdlDocument,
    warnings: &mut Vec<String>,
) -> BTreeSet<Parameter> {
    let mut side = BTreeSet::new();
    if let Some(message_ref) = reference.attribute("message") {
        let key = local_name(message_ref);
        if let Some(parts) = messages.get(&key) {
            for part in parts {
                let name = part.element.clone().unwrap_or_else(|| part.name.clone());
                let concept = part
                    .concept
                    .clone()
                    .or_else(|| {
                        part.element
                            .as_ref()
                            .and_then(|e| element_concepts.get(e).cloned())
                    })
                    .or_else(|| element_concepts.get(&part.name).cloned());
                side.insert(Parameter { name, concept });
            }
        } else {
            warnings.push(format!(
                "{}: message '{key}' referenced but not defined",
                document.source
            ));
        }
    } else if let Some(element_ref) = reference.attribute("element") {
        let name = local_name(element_ref);
        let concept = element_concepts.get(&name).cloned();
        side.insert(Parameter { name, concept });
    }
    side
}

/// First IRI of a whitespace-separated modelReference list; extra IRIs are
/// reported, not used.
fn model_reference(
    node: &roxmltree::Node,
    document: &SawsdlDocument,
    warnings: &mut Vec<String>,
) -> Option<String> {
    let attr = node
        .attributes()
        .find(|a| a.name() == "modelReference")?
        .value();
    let mut iris = attr.split_whitespace();
    let first = iris.next()?.to_string();
    let rest: Vec<&str> = iris.collect();
    if !rest.is_empty() {
        warnings.push(format!(
            "{}: modelReference lists {} extra IRI(s) after '{first}': {}",
            document.source,
            rest.len(),
            rest.join(" ")
        ));
    }
    Some(first)
}

fn local_name(qname: &str) -> String {
    qname.rsplit(':').next().unwrap_or(qname).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CollectionMode;

    const SINGLE_OP: &str = r#"<?xml version="1.0"?>
<definitions name="BookPrice"
    xmlns="http://schemas.xmlsoap.org/wsdl/"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema"
    xmlns:sawsdl="http://www.w3.org/ns/sawsdl"
    xmlns:tns="http://example.invalid/book">
  <types>
    <xsd:schema>
      <xsd:element name="BookTitle" sawsdl:modelReference="http://onto.invalid/books#Title"/>
      <xsd:element name="Price" sawsdl:modelReference="http://onto.invalid/books#Price http://onto.invalid/commerce#Cost"/>
    </xsd:schema>
  </types>
  <message name="GetPriceRequest"><part name="title" element="tns:BookTitle"/></message>
  <message name="GetPriceResponse"><part name="price" element="tns:Price"/></message>
  <portType name="BookPricePort">
    <operation name="getPrice">
      <input message="tns:GetPriceRequest"/>
      <output message="tns:GetPriceResponse"/>
    </operation>
  </portType>
  <service name="BookPriceService"/>
</definitions>"#;

    #[test]
    fn single_operation_document_maps_fully() {
        let docs = [SawsdlDocument::new("book.wsdl", SINGLE_OP)];
        let (collection, report) = parse_sawsdl(&docs).unwrap();
        assert_eq!(report.services_loaded, 1);
        assert_eq!(report.operations_loaded, 1);
        let op = collection.operations().next().unwrap();
        assert_eq!(op.name, "getPrice");
        let input = op.inputs.iter().next().unwrap();
        assert_eq!(input.name, "BookTitle");
        assert_eq!(
            input.concept.as_deref(),
            Some("http://onto.invalid/books#Title")
        );
        let output = op.outputs.iter().next().unwrap();
        assert_eq!(
            output.concept.as_deref(),
            Some("http://onto.invalid/books#Price")
        );
        // second IRI reported
        assert!(report
            .warnings
            .iter()
            .any(|w| w.contains("commerce#Cost")));
        assert_eq!(collection.mode, CollectionMode::Both);
    }

    #[test]
    fn unannotated_parameters_stay_but_collection_is_partial() {
        let xml = r#"<?xml version="1.0"?>
<definitions name="Plain" xmlns="http://schemas.xmlsoap.org/wsdl/" xmlns:tns="urn:x">
  <message name="In"><part name="raw" type="xsd:string"/></message>
  <message name="Out"><part name="cooked" type="xsd:string"/></message>
  <portType name="P">
    <operation name="cook"><input message="tns:In"/><output message="tns:Out"/></operation>
  </portType>
</definitions>"#;
        let docs = [
            SawsdlDocument::new("plain.wsdl", xml),
            SawsdlDocument::new("book.wsdl", SINGLE_OP),
        ];
        let (collection, _) = parse_sawsdl(&docs).unwrap();
        assert_eq!(collection.mode, CollectionMode::Semantic);
        let cook = collection
            .operations()
            .find(|op| op.name == "cook")
            .unwrap();
        assert!(cook.inputs.iter().all(|p| p.concept.is_none()));
        assert_eq!(cook.inputs.iter().next().unwrap().name, "raw");
    }

    #[test]
    fn batch_count_conservation() {
        let make = |i: usize| {
            SawsdlDocument::new(
                format!("doc{i}.wsdl"),
                format!(
                    r#"<definitions name="Svc{i}" xmlns="http://schemas.xmlsoap.org/wsdl/" xmlns:tns="urn:x">
  <message name="In"><part name="a{i}" type="t"/></message>
  <message name="Out"><part name="b{i}" type="t"/></message>
  <portType name="P"><operation name="run"><input message="tns:In"/><output message="tns:Out"/></operation></portType>
</definitions>"#
                ),
            )
        };
        let docs: Vec<SawsdlDocument> = (0..7).map(make).collect();
        let (_, report) = parse_sawsdl(&docs).unwrap();
        assert_eq!(report.services_loaded, 7);
        assert_eq!(report.operations_loaded, 7);
    }

    #[test]
    fn zero_operation_document_skipped_with_warning() {
        let docs = [SawsdlDocument::new(
            "empty.wsdl",
            r#"<definitions name="Empty" xmlns="http://schemas.xmlsoap.org/wsdl/"/>"#,
        )];
        let (collection, report) = parse_sawsdl(&docs).unwrap();
        assert!(collection.services.is_empty());
        assert!(report.warnings.iter().any(|w| w.contains("skipped")));
    }

    #[test]
    fn non_xml_input_is_a_parse_error() {
        let docs = [SawsdlDocument::new("bad.wsdl", "this is not xml")];
        assert!(matches!(parse_sawsdl(&docs), Err(Error::Parse { .. })));
    }

    #[test]
    fn wsdl2_interface_with_element_references() {
        let xml = r#"<?xml version="1.0"?>
<description xmlns="http://www.w3.org/ns/wsdl" xmlns:tns="urn:x" xmlns:sawsdl="http://www.w3.org/ns/sawsdl">
  <types>
    <schema xmlns="http://www.w3.org/2001/XMLSchema">
      <element name="Query" sawsdl:modelReference="http://onto.invalid/x#Q"/>
      <element name="Answer" sawsdl:modelReference="http://onto.invalid/x#A"/>
    </schema>
  </types>
  <interface name="I">
    <operation name="ask">
      <input element="tns:Query"/>
      <output element="tns:Answer"/>
    </operation>
  </interface>
  <service name="AskService" interface="tns:I"/>
</description>"#;
        let docs = [SawsdlDocument::new("ask.wsdl", xml)];
        let (collection, _) = parse_sawsdl(&docs).unwrap();
        let op = collection.operations().next().unwrap();
        assert_eq!(op.inputs.iter().next().unwrap().name, "Query");
        assert_eq!(
            op.outputs.iter().next().unwrap().concept.as_deref(),
            Some("http://onto.invalid/x#A")
        );
    }
}
