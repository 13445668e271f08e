//! White-box model of a web service corpus and its on-disk text format.
//!
//! A corpus is a list of services, each service a list of operations, each
//! operation two parameter lists (inputs and outputs). Parameters carry a
//! name and an optional concept URI. Nothing else from service descriptions
//! survives ingestion; composition analysis needs only this skeleton.
//!
//! The text format is line oriented ("WSC"): `#` starts a comment line,
//! `SVC <name>` opens a service, `OP <name>` opens an operation under the
//! current service, and `IN <name>[|<concept>]` / `OUT <name>[|<concept>]`
//! append parameters to the current operation. Tokens are whitespace
//! separated, so names cannot contain whitespace. Anything else is a syntax
//! error.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

/// Named value an operation consumes or produces. `concept` is a semantic
/// annotation URI when the source description carried one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parameter {
    pub name: String,
    pub concept: Option<String>,
}

impl Parameter {
    pub fn plain(name: &str) -> Self {
        Parameter { name: name.to_string(), concept: None }
    }

    pub fn annotated(name: &str, concept: &str) -> Self {
        Parameter { name: name.to_string(), concept: Some(concept.to_string()) }
    }
}

/// One invocable operation. `id` is unique across the corpus: it is the bare
/// operation name when that name is unique corpus-wide, otherwise
/// `<service>/<name>`. Inputs and outputs are deduplicated by
/// (name, concept); the two sides may overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operation {
    pub id: String,
    pub name: String,
    pub service: String,
    pub inputs: Vec<Parameter>,
    pub outputs: Vec<Parameter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Service {
    pub name: String,
    pub operations: Vec<Operation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub services: Vec<Service>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("duplicate operation id {id:?}")]
    DuplicateOperation { id: String },
}

impl Corpus {
    /// Assembles a corpus and assigns final operation ids. An operation keeps
    /// its bare name as id while that name is unique across the corpus;
    /// colliding names are qualified as `<service>/<name>`. Qualified ids
    /// that still collide are an error.
    pub fn from_services(mut services: Vec<Service>) -> Result<Corpus, CorpusError> {
        let mut name_uses: HashMap<String, usize> = HashMap::new();
        for svc in &services {
            for op in &svc.operations {
                *name_uses.entry(op.name.clone()).or_default() += 1;
            }
        }
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for svc in &mut services {
            for op in &mut svc.operations {
                op.id = if name_uses[&op.name] == 1 {
                    op.name.clone()
                } else {
                    format!("{}/{}", svc.name, op.name)
                };
                op.service = svc.name.clone();
                if !seen.insert(op.id.clone()) {
                    return Err(CorpusError::DuplicateOperation { id: op.id.clone() });
                }
            }
        }
        Ok(Corpus { services })
    }

    pub fn operations(&self) -> impl Iterator<Item = &Operation> {
        self.services.iter().flat_map(|s| s.operations.iter())
    }

    pub fn operation_count(&self) -> usize {
        self.services.iter().map(|s| s.operations.len()).sum()
    }
}

/// Summary counts over a corpus. `annotated_fraction` is the share of
/// parameter occurrences (post-dedup) that carry a concept; 0 for an empty
/// corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    pub services: usize,
    pub operations: usize,
    pub parameter_occurrences: usize,
    pub distinct_names: usize,
    pub distinct_concepts: usize,
    pub annotated_fraction: f64,
}

pub fn corpus_stats(corpus: &Corpus) -> CorpusStats {
    let mut names = BTreeSet::new();
    let mut concepts = BTreeSet::new();
    let mut occurrences = 0usize;
    let mut annotated = 0usize;
    for op in corpus.operations() {
        for p in op.inputs.iter().chain(op.outputs.iter()) {
            occurrences += 1;
            names.insert(p.name.as_str());
            if let Some(c) = &p.concept {
                annotated += 1;
                concepts.insert(c.as_str());
            }
        }
    }
    CorpusStats {
        services: corpus.services.len(),
        operations: corpus.operation_count(),
        parameter_occurrences: occurrences,
        distinct_names: names.len(),
        distinct_concepts: concepts.len(),
        annotated_fraction: if occurrences == 0 { 0.0 } else { annotated as f64 / occurrences as f64 },
    }
}

fn check_name(line: usize, what: &str, name: &str) -> Result<(), CorpusError> {
    if name.is_empty() {
        return Err(CorpusError::Syntax { line, reason: format!("empty {what}") });
    }
    if name.chars().any(char::is_control) {
        return Err(CorpusError::Syntax { line, reason: format!("control character in {what}") });
    }
    Ok(())
}

fn parse_param(line: usize, token: &str) -> Result<Parameter, CorpusError> {
    let (name, concept) = match token.split_once('|') {
        Some((n, c)) => (n, Some(c)),
        None => (token, None),
    };
    check_name(line, "parameter name", name)?;
    if let Some(c) = concept {
        check_name(line, "concept", c)?;
    }
    Ok(Parameter { name: name.to_string(), concept: concept.map(str::to_string) })
}

/// Parses WSC text into a corpus. Errors carry the 1-based line number.
pub fn parse_wsc(text: &str) -> Result<Corpus, CorpusError> {
    let mut services: Vec<Service> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let directive = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        let one_arg = |what: &str| -> Result<&str, CorpusError> {
            match rest.as_slice() {
                [arg] => Ok(arg),
                _ => Err(CorpusError::Syntax {
                    line,
                    reason: format!("{directive} takes exactly one {what}"),
                }),
            }
        };
        match directive {
            "SVC" => {
                let name = one_arg("service name")?;
                check_name(line, "service name", name)?;
                services.push(Service { name: name.to_string(), operations: Vec::new() });
            }
            "OP" => {
                let name = one_arg("operation name")?;
                check_name(line, "operation name", name)?;
                let svc = services.last_mut().ok_or(CorpusError::Syntax {
                    line,
                    reason: "OP outside a service".to_string(),
                })?;
                if svc.operations.iter().any(|o| o.name == name) {
                    return Err(CorpusError::DuplicateOperation {
                        id: format!("{}/{}", svc.name, name),
                    });
                }
                svc.operations.push(Operation {
                    id: name.to_string(),
                    name: name.to_string(),
                    service: svc.name.clone(),
                    inputs: Vec::new(),
                    outputs: Vec::new(),
                });
            }
            "IN" | "OUT" => {
                let param = parse_param(line, one_arg("parameter")?)?;
                let op = services
                    .last_mut()
                    .and_then(|s| s.operations.last_mut())
                    .ok_or(CorpusError::Syntax {
                        line,
                        reason: format!("{directive} outside an operation"),
                    })?;
                let side = if directive == "IN" { &mut op.inputs } else { &mut op.outputs };
                if !side.contains(&param) {
                    side.push(param);
                }
            }
            other => {
                return Err(CorpusError::Syntax {
                    line,
                    reason: format!("unknown directive {other:?}"),
                });
            }
        }
    }
    Corpus::from_services(services)
}

/// Canonical WSC text: services and parameters in stored order, one token
/// group per line, LF endings. `parse_wsc(serialize_wsc(c)) == c`.
pub fn serialize_wsc(corpus: &Corpus) -> String {
    let mut out = String::new();
    for svc in &corpus.services {
        out.push_str("SVC ");
        out.push_str(&svc.name);
        out.push('\n');
        for op in &svc.operations {
            out.push_str("OP ");
            out.push_str(&op.name);
            out.push('\n');
            for (tag, side) in [("IN ", &op.inputs), ("OUT ", &op.outputs)] {
                for p in side {
                    out.push_str(tag);
                    out.push_str(&p.name);
                    if let Some(c) = &p.concept {
                        out.push('|');
                        out.push_str(c);
                    }
                    out.push('\n');
                }
            }
        }
    }
    out
}
