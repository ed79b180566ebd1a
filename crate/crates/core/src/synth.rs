//! Deterministic generator of service collections with planted domain
//! structure: each domain has its own parameter vocabulary, plus a shared
//! vocabulary drawn with probability `p_shared` that wires domains together.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Collection, Operation, Parameter, ServiceDescription};

const CONCEPT_PREFIX: &str = "http://synth.invalid/onto#";

/// Generator configuration. Ranges are inclusive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub domains: usize,
    pub services_per_domain: usize,
    pub ops_per_service: (usize, usize),
    pub params_per_side: (usize, usize),
    pub vocab_per_domain: usize,
    pub shared_vocab: usize,
    /// Probability that a parameter slot draws from the shared vocabulary.
    pub p_shared: f64,
    /// Emit concept annotations on every parameter, with a fraction of
    /// synonym names so syntactic and semantic networks differ.
    pub twin_semantic: bool,
    /// Fraction of annotated parameters given a synonym name (distinct name,
    /// same concept); only meaningful with `twin_semantic`.
    pub synonym_rate: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            domains: 4,
            services_per_domain: 10,
            ops_per_service: (1, 3),
            params_per_side: (1, 4),
            vocab_per_domain: 25,
            shared_vocab: 8,
            p_shared: 0.05,
            twin_semantic: false,
            synonym_rate: 0.2,
            seed: 0,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if self.domains == 0
            || self.services_per_domain == 0
            || self.vocab_per_domain == 0
            || self.ops_per_service.0 == 0
            || self.params_per_side.0 == 0
        {
            return Err(Error::Validation(
                "domains, services, vocabulary and range minima must be positive".into(),
            ));
        }
        if self.ops_per_service.0 > self.ops_per_service.1
            || self.params_per_side.0 > self.params_per_side.1
        {
            return Err(Error::Validation("range minimum exceeds maximum".into()));
        }
        if !(0.0..=1.0).contains(&self.p_shared) || !(0.0..=1.0).contains(&self.synonym_rate) {
            return Err(Error::Validation("probabilities must lie in [0, 1]".into()));
        }
        if self.p_shared > 0.0 && self.shared_vocab == 0 {
            return Err(Error::Validation(
                "p_shared > 0 requires a non-empty shared vocabulary".into(),
            ));
        }
        let reachable = self.vocab_per_domain + self.shared_vocab;
        if self.params_per_side.1 > reachable {
            return Err(Error::Validation(format!(
                "params_per_side max {} exceeds the {} reachable vocabulary entries",
                self.params_per_side.1, reachable
            )));
        }
        Ok(())
    }
}

/// Ground-truth group of a generated parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlantedGroup {
    Domain(usize),
    Shared,
}

/// Recovers the planted group from a parameter node key (a generated name,
/// synonym name or concept IRI). None for keys this generator did not emit.
pub fn planted_group(key: &str) -> Option<PlantedGroup> {
    let base = key.strip_prefix(CONCEPT_PREFIX).unwrap_or(key);
    if base.starts_with("shared_p") {
        return Some(PlantedGroup::Shared);
    }
    let rest = base.strip_prefix('d')?;
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() || !rest[digits.len()..].starts_with("_p") {
        return None;
    }
    digits.parse().ok().map(PlantedGroup::Domain)
}

/// Generates a collection and the planted service -> domain labels.
/// Fully deterministic given the spec (including its seed).
pub fn generate(spec: &SynthSpec) -> Result<(Collection, BTreeMap<String, usize>)> {
    spec.validate()?;
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);

    let domain_vocab: Vec<Vec<String>> = (0..spec.domains)
        .map(|d| {
            (0..spec.vocab_per_domain)
                .map(|k| format!("d{d}_p{k}"))
                .collect()
        })
        .collect();
    let shared_vocab: Vec<String> = (0..spec.shared_vocab)
        .map(|k| format!("shared_p{k}"))
        .collect();

    let mut services = Vec::new();
    let mut labels = BTreeMap::new();
    for domain in 0..spec.domains {
        for service_index in 0..spec.services_per_domain {
            let service_name = format!("svc{domain}_{service_index}");
            let op_count =
                rng.random_range(spec.ops_per_service.0..=spec.ops_per_service.1);
            let mut operations = Vec::with_capacity(op_count);
            for op_index in 0..op_count {
                let inputs = draw_side(spec, domain, &domain_vocab, &shared_vocab, &mut rng)?;
                let outputs = draw_side(spec, domain, &domain_vocab, &shared_vocab, &mut rng)?;
                operations.push(Operation {
                    id: format!("op{domain}_{service_index}_{op_index}"),
                    name: format!("op{domain}_{service_index}_{op_index}"),
                    inputs,
                    outputs,
                });
            }
            labels.insert(service_name.clone(), domain);
            services.push(ServiceDescription {
                name: service_name,
                operations,
            });
        }
    }
    Ok((Collection::new(services)?, labels))
}

/// Draws one side's parameter set: distinct base names, shared vocabulary with
/// probability `p_shared`, otherwise the domain's own vocabulary.
fn draw_side(
    spec: &SynthSpec,
    domain: usize,
    domain_vocab: &[Vec<String>],
    shared_vocab: &[String],
    rng: &mut ChaCha20Rng,
) -> Result<BTreeSet<Parameter>> {
    let count = rng.random_range(spec.params_per_side.0..=spec.params_per_side.1);
    let mut bases: BTreeSet<&str> = BTreeSet::new();
    let mut attempts = 0usize;
    while bases.len() < count {
        let from_shared = !shared_vocab.is_empty() && rng.random::<f64>() < spec.p_shared;
        let base = if from_shared {
            &shared_vocab[rng.random_range(0..shared_vocab.len())]
        } else {
            &domain_vocab[domain][rng.random_range(0..domain_vocab[domain].len())]
        };
        bases.insert(base.as_str());
        attempts += 1;
        if attempts > 100 * count {
            // saturated random draws; fill deterministically from the unused rest
            for base in domain_vocab[domain].iter().chain(shared_vocab.iter()) {
                if bases.len() == count {
                    break;
                }
                bases.insert(base.as_str());
            }
        }
    }

    let mut side = BTreeSet::new();
    for base in bases {
        let parameter = if spec.twin_semantic {
            let concept = format!("{CONCEPT_PREFIX}{base}");
            if rng.random::<f64>() < spec.synonym_rate {
                let variant = rng.random_range(1..=2u8);
                Parameter::annotated(format!("{base}_syn{variant}"), concept)
            } else {
                Parameter::annotated(base, concept)
            }
        } else {
            Parameter::syntactic(base)
        };
        side.insert(parameter);
    }
    Ok(side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MatcherSpec;
    use crate::network::{build_parameter_network, BuildOptions, OperationRule};

    #[test]
    fn service_counts_and_labels() {
        let spec = SynthSpec {
            domains: 4,
            services_per_domain: 10,
            ..Default::default()
        };
        let (collection, labels) = generate(&spec).unwrap();
        assert_eq!(collection.services.len(), 40);
        assert_eq!(labels.len(), 40);
        for service in &collection.services {
            assert!(labels.contains_key(&service.name));
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let spec = SynthSpec {
            twin_semantic: true,
            seed: 77,
            ..Default::default()
        };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
        assert_eq!(
            serde_json::to_string(&a.0).unwrap(),
            serde_json::to_string(&b.0).unwrap()
        );
    }

    #[test]
    fn isolated_domains_split_the_parameter_network() {
        let spec = SynthSpec {
            domains: 4,
            p_shared: 0.0,
            shared_vocab: 0,
            twin_semantic: false,
            seed: 5,
            ..Default::default()
        };
        let (collection, _) = generate(&spec).unwrap();
        let g = build_parameter_network(
            &collection,
            &BuildOptions::new(MatcherSpec::SyntacticExact, OperationRule::Full),
        )
        .unwrap();
        assert!(g.weakly_connected_components().len() >= 4);
        // no vocabulary crossings at all
        for label in g.labels() {
            assert!(matches!(
                planted_group(label),
                Some(PlantedGroup::Domain(_))
            ));
        }
    }

    #[test]
    fn generated_names_parse_back_to_their_group() {
        assert_eq!(planted_group("d3_p7"), Some(PlantedGroup::Domain(3)));
        assert_eq!(planted_group("d12_p0_syn2"), Some(PlantedGroup::Domain(12)));
        assert_eq!(planted_group("shared_p1"), Some(PlantedGroup::Shared));
        assert_eq!(
            planted_group("http://synth.invalid/onto#d0_p1"),
            Some(PlantedGroup::Domain(0))
        );
        assert_eq!(planted_group("price"), None);
    }

    #[test]
    fn twin_semantic_annotates_everything() {
        let spec = SynthSpec {
            twin_semantic: true,
            synonym_rate: 0.5,
            seed: 11,
            ..Default::default()
        };
        let (collection, _) = generate(&spec).unwrap();
        let mut synonyms = 0usize;
        let mut total = 0usize;
        for op in collection.operations() {
            for p in op.inputs.iter().chain(op.outputs.iter()) {
                assert!(p.concept.is_some());
                total += 1;
                if p.name.contains("_syn") {
                    synonyms += 1;
                }
            }
        }
        assert!(total > 0);
        // around half the parameters should carry synonym names
        let rate = synonyms as f64 / total as f64;
        assert!((0.3..0.7).contains(&rate), "synonym rate {rate}");
    }

    #[test]
    fn oversized_parameter_demand_rejected() {
        let spec = SynthSpec {
            vocab_per_domain: 2,
            shared_vocab: 1,
            params_per_side: (1, 5),
            ..Default::default()
        };
        assert!(matches!(generate(&spec), Err(Error::Validation(_))));
    }
}
