//! Composition-network extraction and analysis for web service corpora.
//!
//! The pipeline: ingest service descriptions into a [`corpus::Corpus`],
//! derive either of two directed networks from it ([`extract`]), and measure
//! the result ([`netstats`], [`powerlaw`]) against seeded random baselines
//! ([`randgraph`]). [`compose`] runs the layered composition search the
//! networks abstract over.
//!
//! Two network views share one graph type:
//!
//! * dependency network: nodes are parameter equivalence classes, an edge
//!   says some operation turns the source class into the target class;
//! * interaction network: nodes are operations, an edge says the source's
//!   outputs feed the target's inputs (fully or partially).
//!
//! Parameter equivalence is pluggable ([`matching`]): byte-exact names, or
//! concept URIs from SAWSDL annotations.

pub mod compose;
pub mod corpus;
pub mod extract;
pub mod graph;
pub mod matching;
pub mod netstats;
pub mod powerlaw;
pub mod randgraph;
pub mod wsdl;

pub use compose::{forward_chain, prune_plan, Plan, Request};
pub use corpus::{corpus_stats, parse_wsc, serialize_wsc, Corpus, CorpusError, Operation, Parameter, Service};
pub use extract::{build_dependency, build_interaction, DependencyNetwork, InteractionKind, InteractionNetwork};
pub use graph::{Graph, GraphError, NodeId};
pub use matching::{match_key, MatchKey, MatchMode};
pub use netstats::{topology_report, Scope, TopologyReport};
pub use powerlaw::{fit_discrete_power_law, ks_pvalue, PowerLawFit};
pub use randgraph::{er_ensemble_stats, er_gnm, ErEnsembleStats};
pub use wsdl::{ingest_dir, parse_wsdl, IngestReport};
