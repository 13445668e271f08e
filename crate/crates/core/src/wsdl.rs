//! WSDL 1.1 ingestion with SAWSDL annotations.
//!
//! One document becomes one service: operations come from every portType,
//! parameters from the message parts the operations reference. A part's
//! concept is its own `sawsdl:modelReference` when present, otherwise the
//! modelReference of the global schema element or type the part points at
//! (one level, no chasing). modelReference may list several URIs separated
//! by whitespace; the first one wins and the rest are noted.
//!
//! Ingestion is forgiving at the edges and strict in the middle: a file that
//! is not well-formed XML or not a WSDL document is skipped with a reason,
//! an operation whose message cannot be resolved is skipped with a note, but
//! whatever parses cleanly must parse unambiguously.

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::corpus::{Corpus, CorpusError, Operation, Parameter, Service};

const WSDL_NS: &str = "http://schemas.xmlsoap.org/wsdl/";
const SAWSDL_NS: &str = "http://www.w3.org/ns/sawsdl";
const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema";

#[derive(Debug, Error)]
pub enum WsdlError {
    #[error("root element is not wsdl:definitions")]
    NotWsdl,
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// One parsed document: the service it defines plus anything the parser had
/// to gloss over to get there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WsdlService {
    pub service: Service,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IngestReport {
    /// Files read from disk, whether or not they parsed.
    pub files_read: usize,
    pub services: usize,
    pub operations: usize,
    /// (file, reason) for files that contributed nothing.
    pub skipped: Vec<(String, String)>,
    /// (file, note) for oddities inside files that still contributed.
    pub notes: Vec<(String, String)>,
}

fn local(qname: &str) -> &str {
    qname.rsplit_once(':').map_or(qname, |(_, l)| l)
}

/// First URI of a node's sawsdl:modelReference, noting ignored extras.
fn model_ref(node: roxmltree::Node, at: &str, notes: &mut Vec<String>) -> Option<String> {
    let raw = node.attribute((SAWSDL_NS, "modelReference"))?;
    let mut uris = raw.split_whitespace();
    let first = uris.next()?;
    let extra = uris.count();
    if extra > 0 {
        notes.push(format!("{at}: {extra} extra model reference(s) ignored"));
    }
    Some(first.to_string())
}

/// modelReference of the global schema element/type named `local_name`.
fn schema_concept(
    doc_root: roxmltree::Node,
    local_name: &str,
    notes: &mut Vec<String>,
) -> Option<String> {
    for node in doc_root.descendants() {
        let tag = node.tag_name();
        if tag.namespace() == Some(XSD_NS)
            && matches!(tag.name(), "element" | "complexType" | "simpleType")
            && node.attribute("name") == Some(local_name)
            && node.parent().is_some_and(|p| p.has_tag_name((XSD_NS, "schema")))
        {
            return model_ref(node, &format!("schema {} {local_name}", tag.name()), notes);
        }
    }
    None
}

/// Parses one WSDL document. `fallback_name` names the service when the
/// definitions element has no name attribute (callers pass the file stem).
pub fn parse_wsdl(text: &str, fallback_name: &str) -> Result<WsdlService, WsdlError> {
    let doc = roxmltree::Document::parse(text).map_err(|e| WsdlError::Xml(e.to_string()))?;
    let root = doc.root_element();
    if !root.has_tag_name((WSDL_NS, "definitions")) {
        return Err(WsdlError::NotWsdl);
    }
    let mut notes: Vec<String> = Vec::new();
    let service_name = root.attribute("name").unwrap_or(fallback_name).to_string();

    let mut messages: HashMap<String, Vec<Parameter>> = HashMap::new();
    for msg in root.children().filter(|n| n.has_tag_name((WSDL_NS, "message"))) {
        let Some(msg_name) = msg.attribute("name") else {
            notes.push("message without name ignored".to_string());
            continue;
        };
        if messages.contains_key(msg_name) {
            notes.push(format!("duplicate message {msg_name}; later definition ignored"));
            continue;
        }
        let mut params: Vec<Parameter> = Vec::new();
        for part in msg.children().filter(|n| n.has_tag_name((WSDL_NS, "part"))) {
            let Some(part_name) = part.attribute("name") else {
                notes.push(format!("message {msg_name}: part without name ignored"));
                continue;
            };
            let concept = model_ref(part, &format!("message {msg_name} part {part_name}"), &mut notes)
                .or_else(|| {
                    part.attribute("element")
                        .or_else(|| part.attribute("type"))
                        .and_then(|q| schema_concept(root, local(q), &mut notes))
                });
            let param = Parameter { name: part_name.to_string(), concept };
            if !params.contains(&param) {
                params.push(param);
            }
        }
        messages.insert(msg_name.to_string(), params);
    }

    let mut operations: Vec<Operation> = Vec::new();
    let port_types: Vec<_> =
        root.children().filter(|n| n.has_tag_name((WSDL_NS, "portType"))).collect();
    if port_types.is_empty() {
        notes.push("no portType; service has no operations".to_string());
    }
    for pt in &port_types {
        for op_node in pt.children().filter(|n| n.has_tag_name((WSDL_NS, "operation"))) {
            let Some(op_name) = op_node.attribute("name") else {
                let pt_name = pt.attribute("name").unwrap_or("(unnamed)");
                notes.push(format!("portType {pt_name}: operation without name skipped"));
                continue;
            };
            if operations.iter().any(|o| o.name == op_name) {
                notes.push(format!("duplicate operation {op_name}; later definition skipped"));
                continue;
            }
            let resolve = |tag: &str| -> Result<Vec<Parameter>, String> {
                match op_node.children().find(|n| n.has_tag_name((WSDL_NS, tag))) {
                    None => Ok(Vec::new()),
                    Some(io_node) => match io_node.attribute("message") {
                        None => Err(format!("{tag} has no message attribute")),
                        Some(q) => messages
                            .get(local(q))
                            .cloned()
                            .ok_or_else(|| format!("unresolved {tag} message {q:?}")),
                    },
                }
            };
            match (resolve("input"), resolve("output")) {
                (Ok(inputs), Ok(outputs)) => operations.push(Operation {
                    id: op_name.to_string(),
                    name: op_name.to_string(),
                    service: service_name.clone(),
                    inputs,
                    outputs,
                }),
                (Err(e), _) | (_, Err(e)) => {
                    notes.push(format!("operation {op_name} skipped: {e}"));
                }
            }
        }
    }

    Ok(WsdlService { service: Service { name: service_name, operations }, notes })
}

/// Regular files in `dir` (non-recursive) carrying `ext`, sorted by path.
pub fn files_with_extension(dir: &Path, ext: &str) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|entry| entry.ok())
        .map(|entry| entry.path())
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case(ext)))
        .collect();
    files.sort();
    Ok(files)
}

/// Ingests every `.wsdl` file in a directory, in filename order, into one
/// corpus. Files sharing a service name merge; an operation name seen again
/// for the same service keeps its first definition and the repeat is noted.
pub fn ingest_dir(dir: &Path) -> Result<(Corpus, IngestReport), WsdlError> {
    let mut report = IngestReport::default();
    let mut services: Vec<Service> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut seen_ops: BTreeSet<(String, String)> = BTreeSet::new();
    for path in files_with_extension(dir, "wsdl")? {
        let fname = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
        let stem = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                report.skipped.push((fname, e.to_string()));
                continue;
            }
        };
        report.files_read += 1;
        let mut parsed = match parse_wsdl(&text, &stem) {
            Ok(p) => p,
            Err(e) => {
                report.skipped.push((fname, e.to_string()));
                continue;
            }
        };
        for note in parsed.notes.drain(..) {
            report.notes.push((fname.clone(), note));
        }
        let svc_name = parsed.service.name.clone();
        let idx = *index.entry(svc_name.clone()).or_insert_with(|| {
            services.push(Service { name: svc_name.clone(), operations: Vec::new() });
            services.len() - 1
        });
        for op in parsed.service.operations {
            if !seen_ops.insert((svc_name.clone(), op.name.clone())) {
                report.notes.push((
                    fname.clone(),
                    format!("operation {} already defined for service {svc_name}; skipped", op.name),
                ));
                continue;
            }
            services[idx].operations.push(op);
        }
    }
    let corpus = Corpus::from_services(services)?;
    report.services = corpus.services.len();
    report.operations = corpus.operation_count();
    Ok((corpus, report))
}
