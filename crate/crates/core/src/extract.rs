//! Builds the two composition networks of a corpus.
//!
//! Dependency network: one node per match-key equivalence class over all
//! parameter occurrences; every operation contributes an edge from each of
//! its input keys to each of its output keys. A key appearing on both sides
//! of one operation would be a self-loop; those are dropped and counted.
//!
//! Interaction network: one node per operation. Full semantics draw an edge
//! i -> j when operation i's outputs cover every input key of j; partial
//! semantics when they cover at least one. An operation with no inputs
//! receives no incoming edges under either semantics (nothing to cover is
//! not coverage).

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{Corpus, Operation, Parameter};
use crate::graph::{Graph, NodeId};
use crate::matching::{match_key, MatchKey, MatchMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InteractionKind {
    Full,
    Partial,
}

impl InteractionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InteractionKind::Full => "full",
            InteractionKind::Partial => "partial",
        }
    }
}

/// Dependency network plus bookkeeping. `provenance` maps each edge to the
/// ids of every operation that induces it; `self_loops_dropped` counts
/// (operation, key) incidents where a key sat on both sides.
#[derive(Debug, Clone)]
pub struct DependencyNetwork {
    pub graph: Graph,
    pub mode: MatchMode,
    pub provenance: BTreeMap<(NodeId, NodeId), BTreeSet<String>>,
    pub self_loops_dropped: usize,
}

impl DependencyNetwork {
    /// Lines of `src<TAB>dst<TAB>opId`, one per (edge, inducing operation),
    /// sorted by labels then id.
    pub fn provenance_tsv(&self) -> String {
        let mut rows: Vec<(&str, &str, &str)> = Vec::new();
        for ((u, v), ops) in &self.provenance {
            for id in ops {
                rows.push((self.graph.label(*u), self.graph.label(*v), id));
            }
        }
        rows.sort_unstable();
        let mut out = String::new();
        for (s, d, id) in rows {
            out.push_str(&format!("{s}\t{d}\t{id}\n"));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct InteractionNetwork {
    pub graph: Graph,
    pub mode: MatchMode,
    pub kind: InteractionKind,
}

/// Seam for alternative similarity measures: anything that keys a parameter
/// occurrence in the context of its operation can drive the builders.
pub trait KeyFn {
    fn key(&self, param: &Parameter, op: &Operation) -> MatchKey;
}

impl<F: Fn(&Parameter, &Operation) -> MatchKey> KeyFn for F {
    fn key(&self, param: &Parameter, op: &Operation) -> MatchKey {
        self(param, op)
    }
}

pub fn build_dependency(corpus: &Corpus, mode: MatchMode) -> DependencyNetwork {
    build_dependency_with(corpus, mode, |p: &Parameter, op: &Operation| match_key(p, mode, op))
}

pub fn build_dependency_with(corpus: &Corpus, mode: MatchMode, keyf: impl KeyFn) -> DependencyNetwork {
    let mut graph = Graph::new();
    let mut provenance: BTreeMap<(NodeId, NodeId), BTreeSet<String>> = BTreeMap::new();
    let mut dropped = 0usize;
    // Two passes so node indexes reflect occurrence order, not edge order.
    for op in corpus.operations() {
        for p in op.inputs.iter().chain(op.outputs.iter()) {
            graph.add_node(keyf.key(p, op).as_str());
        }
    }
    for op in corpus.operations() {
        let ins: BTreeSet<NodeId> = op
            .inputs
            .iter()
            .map(|p| graph.node(keyf.key(p, op).as_str()).unwrap())
            .collect();
        let outs: BTreeSet<NodeId> = op
            .outputs
            .iter()
            .map(|p| graph.node(keyf.key(p, op).as_str()).unwrap())
            .collect();
        for &i in &ins {
            for &o in &outs {
                if i == o {
                    dropped += 1;
                    continue;
                }
                graph.add_edge(i, o).unwrap();
                provenance.entry((i, o)).or_default().insert(op.id.clone());
            }
        }
    }
    DependencyNetwork { graph, mode, provenance, self_loops_dropped: dropped }
}

pub fn build_interaction(corpus: &Corpus, mode: MatchMode, kind: InteractionKind) -> InteractionNetwork {
    build_interaction_with(corpus, mode, kind, |p: &Parameter, op: &Operation| match_key(p, mode, op))
}

pub fn build_interaction_with(
    corpus: &Corpus,
    mode: MatchMode,
    kind: InteractionKind,
    keyf: impl KeyFn,
) -> InteractionNetwork {
    let mut graph = Graph::new();
    let mut in_keys: Vec<BTreeSet<MatchKey>> = Vec::new();
    let mut out_keys: Vec<BTreeSet<MatchKey>> = Vec::new();
    for op in corpus.operations() {
        graph.add_node(&op.id);
        in_keys.push(op.inputs.iter().map(|p| keyf.key(p, op)).collect());
        out_keys.push(op.outputs.iter().map(|p| keyf.key(p, op)).collect());
    }
    for (i, outs) in out_keys.iter().enumerate() {
        for (j, ins) in in_keys.iter().enumerate() {
            if i == j || ins.is_empty() {
                continue;
            }
            let covered = match kind {
                InteractionKind::Full => ins.is_subset(outs),
                InteractionKind::Partial => !ins.is_disjoint(outs),
            };
            if covered {
                graph.add_edge(i, j).unwrap();
            }
        }
    }
    InteractionNetwork { graph, mode, kind }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_wsc;

    // Two abstract operations: op1 consumes {a,b} and produces {d}; op2
    // consumes {c,b} and produces {e,f}.
    const TWO_OPS: &str = "SVC s\nOP op1\nIN a\nIN b\nOUT d\nOP op2\nIN c\nIN b\nOUT e\nOUT f\n";

    fn edge_labels(g: &Graph) -> BTreeSet<(String, String)> {
        g.edges()
            .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
            .collect()
    }

    #[test]
    fn dependency_network_of_two_operations() {
        let corpus = parse_wsc(TWO_OPS).unwrap();
        let net = build_dependency(&corpus, MatchMode::Syntactic);
        let mut labels: Vec<&str> = (0..net.graph.node_count()).map(|v| net.graph.label(v)).collect();
        labels.sort_unstable();
        assert_eq!(labels, vec!["a", "b", "c", "d", "e", "f"]);
        let want: BTreeSet<(String, String)> = [
            ("a", "d"),
            ("b", "d"),
            ("b", "e"),
            ("b", "f"),
            ("c", "e"),
            ("c", "f"),
        ]
        .iter()
        .map(|(s, d)| (s.to_string(), d.to_string()))
        .collect();
        assert_eq!(edge_labels(&net.graph), want);
        assert_eq!(net.self_loops_dropped, 0);
        // b -> e is induced by op2 alone.
        let b = net.graph.node("b").unwrap();
        let e = net.graph.node("e").unwrap();
        assert_eq!(net.provenance[&(b, e)], BTreeSet::from(["op2".to_string()]));
    }

    #[test]
    fn interaction_network_of_two_operations_is_empty() {
        let corpus = parse_wsc(TWO_OPS).unwrap();
        for kind in [InteractionKind::Full, InteractionKind::Partial] {
            let net = build_interaction(&corpus, MatchMode::Syntactic, kind);
            assert_eq!(net.graph.node_count(), 2);
            assert_eq!(net.graph.edge_count(), 0);
        }
    }

    #[test]
    fn chained_operations_interact() {
        let text = "SVC s\nOP first\nIN a\nOUT x\nOUT y\nOP second\nIN x\nIN y\nOUT z\nOP third\nIN y\nIN q\nOUT r\n";
        let corpus = parse_wsc(text).unwrap();
        let full = build_interaction(&corpus, MatchMode::Syntactic, InteractionKind::Full);
        assert_eq!(
            edge_labels(&full.graph),
            BTreeSet::from([("first".to_string(), "second".to_string())])
        );
        let partial = build_interaction(&corpus, MatchMode::Syntactic, InteractionKind::Partial);
        assert_eq!(
            edge_labels(&partial.graph),
            BTreeSet::from([
                ("first".to_string(), "second".to_string()),
                ("first".to_string(), "third".to_string()),
            ])
        );
    }

    #[test]
    fn no_input_operation_receives_no_edges() {
        let text = "SVC s\nOP source\nOUT a\nOP sink\nIN a\nOUT b\nOP constant\nOUT a\n";
        let corpus = parse_wsc(text).unwrap();
        for kind in [InteractionKind::Full, InteractionKind::Partial] {
            let net = build_interaction(&corpus, MatchMode::Syntactic, kind);
            // Vacuous coverage of "constant" draws nothing; only the sink is fed.
            assert_eq!(
                edge_labels(&net.graph),
                BTreeSet::from([
                    ("source".to_string(), "sink".to_string()),
                    ("constant".to_string(), "sink".to_string()),
                ])
            );
        }
    }

    #[test]
    fn self_loops_dropped_and_counted() {
        let text = "SVC s\nOP echo\nIN a\nIN b\nOUT a\nOUT c\n";
        let corpus = parse_wsc(text).unwrap();
        let net = build_dependency(&corpus, MatchMode::Syntactic);
        assert_eq!(net.self_loops_dropped, 1);
        assert_eq!(
            edge_labels(&net.graph),
            BTreeSet::from([
                ("a".to_string(), "c".to_string()),
                ("b".to_string(), "a".to_string()),
                ("b".to_string(), "c".to_string()),
            ])
        );
    }

    #[test]
    fn output_only_key_is_isolated_node() {
        let text = "SVC s\nOP lone\nOUT x\n";
        let corpus = parse_wsc(text).unwrap();
        let net = build_dependency(&corpus, MatchMode::Syntactic);
        assert_eq!(net.graph.node_count(), 1);
        assert_eq!(net.graph.edge_count(), 0);
    }

    #[test]
    fn semantic_mode_uses_concepts_and_sentinels() {
        let text = "SVC s\nOP give\nIN seed|http://o#S\nOUT isbn|http://o#I\nOUT junk\nOP take\nIN code|http://o#I\nIN junk\nOUT out|http://o#O\n";
        let corpus = parse_wsc(text).unwrap();
        let net = build_dependency(&corpus, MatchMode::Semantic);
        // isbn/code share a concept; the two "junk" occurrences do not match.
        let edges = edge_labels(&net.graph);
        assert!(edges.contains(&("http://o#I".to_string(), "http://o#O".to_string())));
        assert!(edges.contains(&("unannotated:s/take/junk".to_string(), "http://o#O".to_string())));
        assert_eq!(net.graph.node_count(), 5);

        let full = build_interaction(&corpus, MatchMode::Semantic, InteractionKind::Full);
        // take's unannotated input can never be covered.
        assert_eq!(full.graph.edge_count(), 0);
        let partial = build_interaction(&corpus, MatchMode::Semantic, InteractionKind::Partial);
        assert_eq!(
            edge_labels(&partial.graph),
            BTreeSet::from([("give".to_string(), "take".to_string())])
        );
    }

    #[test]
    fn duplicate_key_pairs_collapse_with_merged_provenance() {
        let text = "SVC s\nOP o1\nIN a\nOUT b\nSVC t\nOP o2\nIN a\nOUT b\n";
        let corpus = parse_wsc(text).unwrap();
        let net = build_dependency(&corpus, MatchMode::Syntactic);
        assert_eq!(net.graph.edge_count(), 1);
        let a = net.graph.node("a").unwrap();
        let b = net.graph.node("b").unwrap();
        assert_eq!(
            net.provenance[&(a, b)],
            BTreeSet::from(["o1".to_string(), "o2".to_string()])
        );
        assert_eq!(net.provenance_tsv(), "a\tb\to1\na\tb\to2\n");
    }
}
