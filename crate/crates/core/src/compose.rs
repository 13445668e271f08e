//! Layered composition search over a corpus.
//!
//! A request names the match keys the client can already supply and the keys
//! it wants produced. Forward chaining fires, in each layer, every unused
//! operation whose inputs are all known, then adds the outputs of the whole
//! layer at once. Firing layers simultaneously keeps the layer count minimal:
//! anything fireable later was already fireable the first time its inputs
//! were covered.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::corpus::{Corpus, Operation};
use crate::matching::{match_key, MatchKey, MatchMode};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("request desires nothing")]
    EmptyDesired,
    #[error("plan does not satisfy the request; nothing to prune")]
    Unsatisfied,
    #[error("plan references unknown operation {0:?}")]
    UnknownOperation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub provided: BTreeSet<MatchKey>,
    pub desired: BTreeSet<MatchKey>,
}

impl Request {
    pub fn new(
        provided: impl IntoIterator<Item = MatchKey>,
        desired: impl IntoIterator<Item = MatchKey>,
    ) -> Result<Self, ComposeError> {
        let desired: BTreeSet<_> = desired.into_iter().collect();
        if desired.is_empty() {
            return Err(ComposeError::EmptyDesired);
        }
        Ok(Request { provided: provided.into_iter().collect(), desired })
    }
}

/// A layered plan. Layer k lists, sorted by id, the operations to invoke
/// once every layer before it has completed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub layers: Vec<Vec<String>>,
    pub satisfied: bool,
    pub known_at_end: BTreeSet<MatchKey>,
}

fn io_keys(op: &Operation, mode: MatchMode) -> (BTreeSet<MatchKey>, BTreeSet<MatchKey>) {
    let ins = op.inputs.iter().map(|p| match_key(p, mode, op)).collect();
    let outs = op.outputs.iter().map(|p| match_key(p, mode, op)).collect();
    (ins, outs)
}

/// Saturating forward chain. Stops at the first layer after which the
/// request is satisfied, or when no unused operation can fire. A request
/// satisfiable by the provided keys alone yields an empty plan.
pub fn forward_chain(
    corpus: &Corpus,
    request: &Request,
    mode: MatchMode,
) -> Result<Plan, ComposeError> {
    if request.desired.is_empty() {
        return Err(ComposeError::EmptyDesired);
    }
    let ops: Vec<(&Operation, BTreeSet<MatchKey>, BTreeSet<MatchKey>)> = corpus
        .operations()
        .map(|op| {
            let (ins, outs) = io_keys(op, mode);
            (op, ins, outs)
        })
        .collect();
    let mut known = request.provided.clone();
    let mut used = vec![false; ops.len()];
    let mut layers: Vec<Vec<String>> = Vec::new();
    while !request.desired.is_subset(&known) {
        let fireable: Vec<usize> = (0..ops.len())
            .filter(|&i| !used[i] && ops[i].1.is_subset(&known))
            .collect();
        if fireable.is_empty() {
            break;
        }
        let mut layer: Vec<String> = fireable.iter().map(|&i| ops[i].0.id.clone()).collect();
        layer.sort();
        for &i in &fireable {
            used[i] = true;
            known.extend(ops[i].2.iter().cloned());
        }
        layers.push(layer);
    }
    let satisfied = request.desired.is_subset(&known);
    Ok(Plan { layers, satisfied, known_at_end: known })
}

/// Strips a satisfied plan down to the operations that feed the request.
/// A backward sweep keeps an operation iff it outputs something still in
/// demand, and puts the kept operation's inputs in demand for the layers
/// before it; empty layers are dropped and the plan is replayed to restate
/// what the pruned invocations actually produce.
pub fn prune_plan(
    corpus: &Corpus,
    request: &Request,
    plan: &Plan,
    mode: MatchMode,
) -> Result<Plan, ComposeError> {
    if !plan.satisfied {
        return Err(ComposeError::Unsatisfied);
    }
    let by_id: BTreeMap<&str, &Operation> =
        corpus.operations().map(|op| (op.id.as_str(), op)).collect();
    let lookup = |id: &String| {
        by_id.get(id.as_str()).copied().ok_or_else(|| ComposeError::UnknownOperation(id.clone()))
    };

    let mut demand = request.desired.clone();
    let mut kept: Vec<Vec<String>> = Vec::with_capacity(plan.layers.len());
    for layer in plan.layers.iter().rev() {
        let mut keep = Vec::new();
        for id in layer {
            let op = lookup(id)?;
            let (ins, outs) = io_keys(op, mode);
            if !outs.is_disjoint(&demand) {
                demand.extend(ins);
                keep.push(id.clone());
            }
        }
        if !keep.is_empty() {
            kept.push(keep);
        }
    }
    kept.reverse();

    let mut known = request.provided.clone();
    for layer in &kept {
        let mut produced = BTreeSet::new();
        for id in layer {
            let (_, outs) = io_keys(lookup(id)?, mode);
            produced.extend(outs);
        }
        known.extend(produced);
    }
    Ok(Plan { layers: kept, satisfied: request.desired.is_subset(&known), known_at_end: known })
}
