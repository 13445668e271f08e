//! Parameter similarity. Two parameters are interchangeable when their match
//! keys are equal; everything downstream (network nodes, composition state)
//! is keyed on these values rather than on parameter occurrences.
//!
//! Syntactic mode compares names byte for byte, no normalization. Semantic
//! mode compares concept URIs exactly; a parameter without an annotation
//! gets a sentinel key scoped to its operation, so unannotated parameters
//! never match anything (including unannotated parameters of other
//! operations).

use crate::corpus::{Operation, Parameter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatchMode {
    Syntactic,
    Semantic,
}

impl MatchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchMode::Syntactic => "syntactic",
            MatchMode::Semantic => "semantic",
        }
    }
}

/// Equivalence-class key of a parameter occurrence under one match mode.
/// Keys from different modes never compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchKey {
    pub mode: MatchMode,
    pub key: String,
}

impl MatchKey {
    pub fn new(mode: MatchMode, key: impl Into<String>) -> Self {
        MatchKey { mode, key: key.into() }
    }

    pub fn as_str(&self) -> &str {
        &self.key
    }
}

impl std::fmt::Display for MatchKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.key)
    }
}

/// Key of `param` as it occurs in `op`. The operation only matters for the
/// semantic sentinel of unannotated parameters.
pub fn match_key(param: &Parameter, mode: MatchMode, op: &Operation) -> MatchKey {
    let key = match mode {
        MatchMode::Syntactic => param.name.clone(),
        MatchMode::Semantic => match &param.concept {
            Some(c) => c.clone(),
            None => format!("unannotated:{}/{}/{}", op.service, op.name, param.name),
        },
    };
    MatchKey { mode, key }
}

/// True when the two occurrences are interchangeable under `mode`.
pub fn similar(p: &Parameter, op_p: &Operation, q: &Parameter, op_q: &Operation, mode: MatchMode) -> bool {
    match_key(p, mode, op_p) == match_key(q, mode, op_q)
}
