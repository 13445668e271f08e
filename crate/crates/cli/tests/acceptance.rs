//! Release acceptance battery. Each numbered criterion prints exactly one
//! PASS, FAIL, or SKIP line. The battery runs twice and criterion 9 compares
//! the two transcripts byte for byte, so transcript lines carry only
//! seed-determined values; wall-clock budgets are tracked separately.
//!
//! Criterion 6 compares mean ensemble transitivity against l/(n(n-1)). That
//! reference is the directed density, but transitivity lives on the
//! undirected projection, where a random draw closes about twice that
//! fraction of triples: an unordered pair is linked when either of its two
//! directed slots was drawn. The observed mean lands on the doubled
//! reference, dozens of standard errors from the stated one, so the clause
//! as written cannot hold. It is asserted as written and reported FAIL with
//! both references. The final gate treats exactly that outcome as known;
//! any other outcome there, including an unexpected pass (which would mean
//! the estimator stopped measuring the projection), fails the battery.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wsnet_core::compose::{forward_chain, prune_plan, Request};
use wsnet_core::corpus::{parse_wsc, Corpus, Operation, Parameter, Service};
use wsnet_core::extract::{build_dependency, build_interaction, InteractionKind};
use wsnet_core::graph::Graph;
use wsnet_core::matching::{match_key, MatchKey, MatchMode};
use wsnet_core::netstats::{
    average_distance, component_summary, degree_correlation, diameter, Scope,
};
use wsnet_core::powerlaw::{
    degree_distribution_report, fit_discrete_power_law, hurwitz_zeta, ks_pvalue, nonzero_degrees,
};
use wsnet_core::randgraph::{er_ensemble_stats, er_gnm};
use wsnet_core::wsdl::ingest_dir;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Printed as FAIL but exempt from the final gate; see the module docs.
    KnownFail(String),
    Skip(String),
}

#[derive(Default)]
struct Battery {
    transcript: String,
    fatal: Vec<String>,
    overruns: Vec<String>,
}

impl Battery {
    fn criterion(&mut self, number: &str, budget: Duration, run: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        if elapsed > budget {
            self.overruns
                .push(format!("criterion {number} took {elapsed:?} (budget {budget:?})"));
        }
        let line = match outcome {
            Outcome::Pass(d) => format!("criterion {number}: PASS ({d})"),
            Outcome::Fail(d) => {
                self.fatal.push(format!("criterion {number}: {d}"));
                format!("criterion {number}: FAIL ({d})")
            }
            Outcome::KnownFail(d) => format!("criterion {number}: FAIL ({d})"),
            Outcome::Skip(d) => format!("criterion {number}: SKIP ({d})"),
        };
        let _ = writeln!(self.transcript, "{line}");
    }
}

fn key(name: &str) -> MatchKey {
    MatchKey::new(MatchMode::Syntactic, name)
}

fn labels(g: &Graph) -> BTreeSet<String> {
    (0..g.node_count()).map(|v| g.label(v).to_string()).collect()
}

fn labeled_edges(g: &Graph) -> BTreeSet<(String, String)> {
    g.edges().map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string())).collect()
}

fn c1() -> Outcome {
    let corpus = parse_wsc(include_str!("fixtures/fig1.wsc")).unwrap();
    let dep = build_dependency(&corpus, MatchMode::Syntactic);
    let want_nodes: BTreeSet<String> =
        ["a", "b", "c", "d", "e", "f"].iter().map(|s| s.to_string()).collect();
    let want_edges: BTreeSet<(String, String)> =
        [("a", "d"), ("b", "d"), ("b", "e"), ("b", "f"), ("c", "e"), ("c", "f")]
            .iter()
            .map(|(s, d)| (s.to_string(), d.to_string()))
            .collect();
    if labels(&dep.graph) != want_nodes {
        return Outcome::Fail(format!("dependency nodes {:?}", labels(&dep.graph)));
    }
    if labeled_edges(&dep.graph) != want_edges {
        return Outcome::Fail(format!("dependency edges {:?}", labeled_edges(&dep.graph)));
    }
    let full = build_interaction(&corpus, MatchMode::Syntactic, InteractionKind::Full);
    let isolated = full.graph.weak_components().isolated.len();
    if full.graph.node_count() != 2 || full.graph.edge_count() != 0 || isolated != 2 {
        return Outcome::Fail(format!(
            "interaction: {} nodes, {} links, {isolated} isolated",
            full.graph.node_count(),
            full.graph.edge_count()
        ));
    }
    Outcome::Pass(
        "dependency nodes {a..f} and 6 links exact; interaction 2 isolated nodes, 0 links".into(),
    )
}

fn c2() -> Outcome {
    let corpus = parse_wsc(include_str!("fixtures/fig2.wsc")).unwrap();
    let request =
        Request::new([key("AuthorName"), key("BookTitle")], [key("PubliDate")]).unwrap();
    let want = vec![
        vec!["AuthorNameBookTitle_ISBN".to_string()],
        vec!["ISBN_PubliDate".to_string()],
    ];
    let plan = match forward_chain(&corpus, &request, MatchMode::Syntactic) {
        Ok(plan) => plan,
        Err(e) => return Outcome::Fail(format!("forward chain: {e}")),
    };
    if !plan.satisfied || plan.layers != want {
        return Outcome::Fail(format!("plan {:?} satisfied={}", plan.layers, plan.satisfied));
    }
    let pruned = match prune_plan(&corpus, &request, &plan, MatchMode::Syntactic) {
        Ok(pruned) => pruned,
        Err(e) => return Outcome::Fail(format!("prune: {e}")),
    };
    if pruned.layers != want {
        return Outcome::Fail(format!("pruned plan {:?}", pruned.layers));
    }
    Outcome::Pass("two-layer plan [[AuthorNameBookTitle_ISBN], [ISBN_PubliDate]]".into())
}

/// All-pairs hop counts by relaxation, for checking the BFS sweeps.
fn floyd_warshall(g: &Graph, directed: bool) -> Vec<Vec<u32>> {
    const INF: u32 = u32::MAX;
    let n = g.node_count();
    let mut d = vec![vec![INF; n]; n];
    for (row, v) in d.iter_mut().zip(0..) {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = d[u][v].min(1);
        if !directed {
            d[v][u] = d[v][u].min(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] == INF {
                    continue;
                }
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// (mean, reachable pairs, unreachable pairs, diameter) over ordered pairs
/// u != v, or None when nothing is reachable.
fn distance_oracle(d: &[Vec<u32>]) -> Option<(f64, u64, u64, u32)> {
    let (mut sum, mut pairs, mut unreachable, mut max) = (0u64, 0u64, 0u64, 0u32);
    for (i, row) in d.iter().enumerate() {
        for (j, &dij) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            if dij == u32::MAX {
                unreachable += 1;
            } else {
                sum += u64::from(dij);
                pairs += 1;
                max = max.max(dij);
            }
        }
    }
    (pairs > 0).then(|| (sum as f64 / pairs as f64, pairs, unreachable, max))
}

fn census_oracle(g: &Graph) -> (u64, u64) {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        if u != v {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    let mut triangles = 0u64;
    for (u, row_u) in adj.iter().enumerate() {
        for (v, row_v) in adj.iter().enumerate().skip(u + 1) {
            if !row_u[v] {
                continue;
            }
            triangles += row_u
                .iter()
                .zip(row_v)
                .skip(v + 1)
                .filter(|&(&uw, &vw)| uw && vw)
                .count() as u64;
        }
    }
    let mut triples = 0u64;
    for row in &adj {
        for (u, &present) in row.iter().enumerate() {
            if !present {
                continue;
            }
            triples += row.iter().skip(u + 1).filter(|&&p| p).count() as u64;
        }
    }
    (triangles, triples)
}

fn c3() -> Outcome {
    let mut distance_checks = 0usize;
    let mut census_checks = 0usize;
    for i in 0..200u64 {
        let n = 2 + (i as usize * 7) % 49;
        let l = (i as usize * 13 + 5) % (n * (n - 1) + 1);
        let g = er_gnm(n, l, 1000 + i).unwrap();
        for directed in [true, false] {
            let fw = floyd_warshall(&g, directed);
            let oracle = distance_oracle(&fw);
            let got = average_distance(&g, Scope::WholeGraph, directed);
            match (&got, oracle) {
                (Ok(d), Some((mean, pairs, unreachable, max))) => {
                    let dia = diameter(&g, Scope::WholeGraph, directed).unwrap();
                    if d.mean != mean
                        || d.pairs_counted != pairs
                        || d.unreachable_pairs != unreachable
                        || dia != max
                    {
                        return Outcome::Fail(format!(
                            "graph {i} directed={directed}: got mean {} over {} pairs ({} unreachable), diameter {dia}; oracle mean {mean} over {pairs} pairs ({unreachable} unreachable), diameter {max}",
                            d.mean, d.pairs_counted, d.unreachable_pairs
                        ));
                    }
                    distance_checks += 1;
                }
                (Err(_), None) => {}
                _ => {
                    return Outcome::Fail(format!(
                        "graph {i} directed={directed}: degeneracy disagreement ({got:?} vs {oracle:?})"
                    ));
                }
            }
        }
        if n <= 30 {
            let census = g.triangle_census();
            let (triangles, triples) = census_oracle(&g);
            if census.triangles != triangles || census.connected_triples != triples {
                return Outcome::Fail(format!(
                    "graph {i}: census ({}, {}) vs oracle ({triangles}, {triples})",
                    census.triangles, census.connected_triples
                ));
            }
            census_checks += 1;
        }
    }
    let mut star = Graph::new();
    let hub = star.add_node("hub");
    for leaf in 0..25 {
        let v = star.add_node(&format!("leaf{leaf}"));
        star.add_edge(hub, v).unwrap();
    }
    match degree_correlation(&star) {
        Some(r) if (r + 1.0).abs() <= 1e-9 => {}
        other => return Outcome::Fail(format!("star degree correlation {other:?}, wanted -1")),
    }
    Outcome::Pass(format!(
        "{distance_checks} distance sweeps and {census_checks} triangle censuses match; star r = -1"
    ))
}

/// Random corpus over keys k0..k5: k0 and k2 share a concept, k1 and k3
/// carry distinct ones, k4 and k5 are unannotated. Semantic matching then
/// exercises merging, separation, and sentinel isolation at once.
fn random_corpus(seed: u64, max_ops: usize) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_ops = rng.random_range(1..=max_ops);
    let mut services = Vec::new();
    for o in 0..n_ops {
        let side = |rng: &mut ChaCha8Rng| -> Vec<Parameter> {
            let count = rng.random_range(0..=3usize);
            let mut picked = BTreeSet::new();
            for _ in 0..count {
                picked.insert(rng.random_range(0..6usize));
            }
            picked
                .into_iter()
                .map(|j| {
                    let name = format!("k{j}");
                    match j {
                        0 | 2 => Parameter::annotated(&name, "c://even"),
                        1 | 3 => Parameter::annotated(&name, &format!("c://odd{j}")),
                        _ => Parameter::plain(&name),
                    }
                })
                .collect()
        };
        let inputs = side(&mut rng);
        let outputs = side(&mut rng);
        services.push(Service {
            name: format!("s{o}"),
            operations: vec![Operation {
                id: String::new(),
                name: format!("op{o}"),
                service: String::new(),
                inputs,
                outputs,
            }],
        });
    }
    Corpus::from_services(services).unwrap()
}

fn dependency_oracle(
    corpus: &Corpus,
    mode: MatchMode,
) -> (BTreeSet<String>, BTreeSet<(String, String)>) {
    let mut nodes = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for op in corpus.operations() {
        for p in op.inputs.iter().chain(&op.outputs) {
            nodes.insert(match_key(p, mode, op).as_str().to_string());
        }
        for p in &op.inputs {
            for q in &op.outputs {
                let a = match_key(p, mode, op);
                let b = match_key(q, mode, op);
                if a != b {
                    edges.insert((a.as_str().to_string(), b.as_str().to_string()));
                }
            }
        }
    }
    (nodes, edges)
}

fn interaction_oracle(
    corpus: &Corpus,
    mode: MatchMode,
    kind: InteractionKind,
) -> BTreeSet<(String, String)> {
    let ops: Vec<&Operation> = corpus.operations().collect();
    let keys = |ps: &[Parameter], op: &Operation| -> BTreeSet<MatchKey> {
        ps.iter().map(|p| match_key(p, mode, op)).collect()
    };
    let mut edges = BTreeSet::new();
    for (i, a) in ops.iter().enumerate() {
        let outs = keys(&a.outputs, a);
        for (j, b) in ops.iter().enumerate() {
            if i == j {
                continue;
            }
            let ins = keys(&b.inputs, b);
            if ins.is_empty() {
                continue;
            }
            let hit = match kind {
                InteractionKind::Full => ins.is_subset(&outs),
                InteractionKind::Partial => !ins.is_disjoint(&outs),
            };
            if hit {
                edges.insert((a.id.clone(), b.id.clone()));
            }
        }
    }
    edges
}

fn c4() -> Outcome {
    let mut checks = 0usize;
    for i in 0..200u64 {
        let corpus = random_corpus(2000 + i, 8);
        let op_ids: BTreeSet<String> =
            corpus.operations().map(|op| op.id.clone()).collect();
        for mode in [MatchMode::Syntactic, MatchMode::Semantic] {
            let dep = build_dependency(&corpus, mode);
            let (want_nodes, want_edges) = dependency_oracle(&corpus, mode);
            if labels(&dep.graph) != want_nodes || labeled_edges(&dep.graph) != want_edges {
                return Outcome::Fail(format!("corpus {i} {mode:?}: dependency mismatch"));
            }
            let full = build_interaction(&corpus, mode, InteractionKind::Full);
            let partial = build_interaction(&corpus, mode, InteractionKind::Partial);
            let full_edges = labeled_edges(&full.graph);
            let partial_edges = labeled_edges(&partial.graph);
            if labels(&full.graph) != op_ids || labels(&partial.graph) != op_ids {
                return Outcome::Fail(format!("corpus {i} {mode:?}: interaction node mismatch"));
            }
            if full_edges != interaction_oracle(&corpus, mode, InteractionKind::Full) {
                return Outcome::Fail(format!("corpus {i} {mode:?}: full interaction mismatch"));
            }
            if partial_edges != interaction_oracle(&corpus, mode, InteractionKind::Partial) {
                return Outcome::Fail(format!(
                    "corpus {i} {mode:?}: partial interaction mismatch"
                ));
            }
            if !full_edges.is_subset(&partial_edges) {
                return Outcome::Fail(format!("corpus {i} {mode:?}: full not within partial"));
            }
            checks += 1;
        }
    }
    Outcome::Pass(format!("{checks} corpus/mode builds match the definition enumerations"))
}

/// P(X <= k) for the discrete power law, brute-forced far past any draw
/// this battery makes.
fn power_law_cdf(alpha: f64) -> Vec<f64> {
    const CAP: usize = 1_000_000;
    let z = hurwitz_zeta(alpha, 1.0);
    let mut cdf = Vec::with_capacity(CAP);
    let mut acc = 0.0;
    for k in 1..=CAP {
        acc += (k as f64).powf(-alpha) / z;
        cdf.push(acc);
    }
    cdf
}

fn sample_by_inversion(cdf: &[f64], n: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            (cdf.partition_point(|&c| c <= u) + 1) as u64
        })
        .collect()
}

fn sample_geometric(q: f64, n: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            ((1.0 - u).ln() / (1.0 - q).ln()).ceil().max(1.0) as u64
        })
        .collect()
}

fn c5() -> Outcome {
    let sample = sample_by_inversion(&power_law_cdf(2.5), 10_000, 3);
    let fit = match fit_discrete_power_law(&sample) {
        Ok(fit) => fit,
        Err(e) => return Outcome::Fail(format!("power-law fit: {e}")),
    };
    if !(2.40..=2.60).contains(&fit.alpha) {
        return Outcome::Fail(format!("alpha {:.4} outside [2.40, 2.60]", fit.alpha));
    }
    let fit = ks_pvalue(&sample, &fit, 500, 305).unwrap();
    let p_power = fit.pvalue.unwrap();
    if p_power <= 0.1 {
        return Outcome::Fail(format!("power-law p {p_power:.4} not above 0.1"));
    }
    let geometric = sample_geometric(0.05, 10_000, 7);
    let geo_fit = match fit_discrete_power_law(&geometric) {
        Ok(fit) => fit,
        Err(e) => return Outcome::Fail(format!("geometric fit: {e}")),
    };
    let geo_fit = ks_pvalue(&geometric, &geo_fit, 500, 507).unwrap();
    let p_geo = geo_fit.pvalue.unwrap();
    if p_geo >= 0.05 {
        return Outcome::Fail(format!("geometric p {p_geo:.4} not below 0.05"));
    }
    Outcome::Pass(format!(
        "alpha {:.3} at xmin {} with p {:.3}; geometric sample rejected at p {:.3}",
        fit.alpha, fit.xmin, p_power, p_geo
    ))
}

fn c6() -> Outcome {
    let trans = er_ensemble_stats(269, 633, 200, 42).unwrap();
    let target = 633.0 / (269.0 * 268.0);
    let doubled = 2.0 * target;
    let mean = trans.transitivity.mean;
    let band = 3.0 * trans.transitivity.stddev / 200f64.sqrt();
    let trans_ok = (mean - target).abs() <= band;
    let on_projection = (mean - doubled).abs() <= band;

    let dist = er_ensemble_stats(395, 3666, 200, 42).unwrap();
    let mean_d = dist.average_distance.mean;
    let dist_ok = (2.3..=3.3).contains(&mean_d);

    if trans_ok {
        return Outcome::Fail(format!(
            "transitivity mean {mean:.5} sits within {band:.5} of the directed density \
             {target:.5}; projection transitivity is expected near {doubled:.5}, so this pass \
             would mean the estimator no longer measures the undirected projection"
        ));
    }
    if !dist_ok {
        return Outcome::Fail(format!(
            "average distance {mean_d:.4} outside [2.3, 3.3] (transitivity mean {mean:.5})"
        ));
    }
    if on_projection {
        Outcome::KnownFail(format!(
            "transitivity clause: mean {mean:.5} vs stated reference l/(n(n-1)) = {target:.5} \
             ± {band:.5}; the stated reference is the directed density, and the mean instead \
             sits within the band around the projection pair probability 2l/(n(n-1)) = \
             {doubled:.5}; distance clause holds: {mean_d:.4} in [2.3, 3.3] bracketing 2.91"
        ))
    } else {
        Outcome::Fail(format!(
            "transitivity mean {mean:.5} matches neither {target:.5} nor {doubled:.5} within \
             {band:.5} (distance {mean_d:.4})"
        ))
    }
}

/// Fewest layers that can satisfy the request, by breadth-first search over
/// known-key states firing every nonempty subset of the ops able to run.
fn min_layers(corpus: &Corpus, request: &Request, mode: MatchMode) -> Option<usize> {
    let ops: Vec<(BTreeSet<MatchKey>, BTreeSet<MatchKey>)> = corpus
        .operations()
        .map(|op| {
            (
                op.inputs.iter().map(|p| match_key(p, mode, op)).collect(),
                op.outputs.iter().map(|p| match_key(p, mode, op)).collect(),
            )
        })
        .collect();
    if request.desired.is_subset(&request.provided) {
        return Some(0);
    }
    let mut frontier = BTreeSet::from([request.provided.clone()]);
    let mut visited = frontier.clone();
    for depth in 1..=ops.len() {
        let mut next = BTreeSet::new();
        for state in &frontier {
            let fireable: Vec<&BTreeSet<MatchKey>> = ops
                .iter()
                .filter(|(ins, outs)| ins.is_subset(state) && !outs.is_subset(state))
                .map(|(_, outs)| outs)
                .collect();
            for mask in 1u32..(1 << fireable.len()) {
                let mut grown = state.clone();
                for (b, outs) in fireable.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        grown.extend(outs.iter().cloned());
                    }
                }
                if request.desired.is_subset(&grown) {
                    return Some(depth);
                }
                if visited.insert(grown.clone()) {
                    next.insert(grown);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    None
}

fn draw_keys(rng: &mut ChaCha8Rng, count: usize) -> Vec<MatchKey> {
    let mut picked = BTreeSet::new();
    for _ in 0..count {
        picked.insert(rng.random_range(0..6usize));
    }
    picked.into_iter().map(|j| key(&format!("k{j}"))).collect()
}

fn c7() -> Outcome {
    let mut satisfied = 0usize;
    let mut unsatisfiable = 0usize;
    for i in 0..100u64 {
        let corpus = random_corpus(5000 + i, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + i);
        let n_provided = rng.random_range(1..=3usize);
        let provided = draw_keys(&mut rng, n_provided);
        let n_desired = rng.random_range(1..=2usize);
        let desired = draw_keys(&mut rng, n_desired);
        let request = Request::new(provided, desired).unwrap();
        let plan = forward_chain(&corpus, &request, MatchMode::Syntactic).unwrap();
        let oracle = min_layers(&corpus, &request, MatchMode::Syntactic);
        match (plan.satisfied, oracle) {
            (true, Some(optimum)) if plan.layers.len() == optimum => {
                let pruned = match prune_plan(&corpus, &request, &plan, MatchMode::Syntactic) {
                    Ok(pruned) => pruned,
                    Err(e) => return Outcome::Fail(format!("case {i}: prune: {e}")),
                };
                // A pruned plan is itself a valid layering, so optimality
                // pins its depth exactly.
                if !pruned.satisfied
                    || !request.desired.is_subset(&pruned.known_at_end)
                    || pruned.layers.len() != optimum
                {
                    return Outcome::Fail(format!(
                        "case {i}: pruned plan broke replay ({} layers, satisfied={})",
                        pruned.layers.len(),
                        pruned.satisfied
                    ));
                }
                satisfied += 1;
            }
            (false, None) => unsatisfiable += 1,
            (sat, oracle) => {
                return Outcome::Fail(format!(
                    "case {i}: forward chain satisfied={sat} with {} layers, exhaustive optimum {oracle:?}",
                    plan.layers.len()
                ));
            }
        }
    }
    Outcome::Pass(format!(
        "{satisfied} satisfiable requests hit the exhaustive optimum and replay after pruning; \
         {unsatisfiable} agreed unsatisfiable"
    ))
}

fn largest_component(g: &Graph) -> Graph {
    let decomp = g.weak_components();
    let (id, _) = decomp.largest().unwrap();
    g.induced_subgraph(&decomp.members(id)).unwrap()
}

fn c8() -> Outcome {
    let dir = match std::env::var("WSNET_SAWSDL_TC_DIR") {
        Ok(dir) if !dir.is_empty() => dir,
        _ => {
            return Outcome::Skip(
                "set WSNET_SAWSDL_TC_DIR to the SAWSDL-TC description directory to run the \
                 table reproduction"
                    .into(),
            );
        }
    };
    let (corpus, report) = match ingest_dir(Path::new(&dir)) {
        Ok(pair) => pair,
        Err(e) => return Outcome::Fail(format!("ingest: {e}")),
    };
    let dep_syn = build_dependency(&corpus, MatchMode::Syntactic).graph;
    let dep_sem = build_dependency(&corpus, MatchMode::Semantic).graph;
    let int_syn = build_interaction(&corpus, MatchMode::Syntactic, InteractionKind::Full).graph;
    let int_sem = build_interaction(&corpus, MatchMode::Semantic, InteractionKind::Full).graph;
    let mut issues: Vec<String> = Vec::new();

    for (name, g, want) in
        [("interaction-syntactic", &int_syn, 0.0235), ("interaction-semantic", &int_sem, 0.0295)]
    {
        let density = component_summary(g).largest_density;
        if (density - want).abs() > 0.0005 {
            issues.push(format!("{name} density {density:.4} vs {want}"));
        }
    }

    let sem = component_summary(&dep_sem);
    if (sem.largest_nodes as f64 - 268.0).abs() > 0.05 * 268.0 {
        issues.push(format!("dependency-semantic largest {} nodes vs 268", sem.largest_nodes));
    }
    if (sem.largest_links as f64 - 621.0).abs() > 0.05 * 621.0 {
        issues.push(format!("dependency-semantic largest {} links vs 621", sem.largest_links));
    }

    for (name, g, want) in [
        ("dependency-syntactic", &dep_syn, -0.21),
        ("dependency-semantic", &dep_sem, -0.22),
        ("interaction-syntactic", &int_syn, -0.45),
        ("interaction-semantic", &int_sem, -0.51),
    ] {
        match degree_correlation(&largest_component(g)) {
            Some(r) if (r - want).abs() <= 0.05 => {}
            other => issues.push(format!("{name} correlation {other:?} vs {want}")),
        }
    }

    // Published exponents and p-values for the dependency networks, in
    // (in, out, total) order; verdicts are compared at the 0.1 level.
    let fit_cases = [
        ("dependency-syntactic", &dep_syn, [(3.15, 0.42), (2.01, 0.02), (3.15, 0.81)]),
        ("dependency-semantic", &dep_sem, [(2.99, 0.57), (3.45, 0.21), (3.04, 0.84)]),
    ];
    for (name, g, expected) in fit_cases {
        let lc = largest_component(g);
        let fits = match degree_distribution_report(&lc) {
            Ok(report) => report,
            Err(e) => {
                issues.push(format!("{name} fits: {e}"));
                continue;
            }
        };
        let degrees = lc.degrees();
        let sides = [
            ("in", fits.indeg.fit, &degrees.indeg),
            ("out", fits.outdeg.fit, &degrees.outdeg),
            ("total", fits.total.fit, &degrees.total),
        ];
        for (k, ((direction, fit, seq), (gamma, p_published))) in
            sides.into_iter().zip(expected).enumerate()
        {
            if (fit.alpha - gamma).abs() > 0.2 {
                issues.push(format!("{name} {direction} exponent {:.3} vs {gamma}", fit.alpha));
            }
            let sample = nonzero_degrees(seq);
            let fit = ks_pvalue(&sample, &fit, 500, 43 + k as u64).unwrap();
            let p = fit.pvalue.unwrap();
            if (p >= 0.1) != (p_published >= 0.1) {
                issues.push(format!(
                    "{name} {direction} verdict differs: p {p:.3} vs published {p_published}"
                ));
            }
        }
    }

    for (name, g) in [("interaction-syntactic", &int_syn), ("interaction-semantic", &int_sem)] {
        let lc = largest_component(g);
        let fits = match degree_distribution_report(&lc) {
            Ok(report) => report,
            Err(e) => {
                issues.push(format!("{name} fits: {e}"));
                continue;
            }
        };
        let degrees = lc.degrees();
        let sides = [
            ("in", fits.indeg.fit, &degrees.indeg),
            ("out", fits.outdeg.fit, &degrees.outdeg),
            ("total", fits.total.fit, &degrees.total),
        ];
        for (k, (direction, fit, seq)) in sides.into_iter().enumerate() {
            let sample = nonzero_degrees(seq);
            let fit = ks_pvalue(&sample, &fit, 500, 47 + k as u64).unwrap();
            let p = fit.pvalue.unwrap();
            if p >= 0.05 {
                issues.push(format!("{name} {direction} fit not rejected: p {p:.3}"));
            }
        }
    }

    if issues.is_empty() {
        Outcome::Pass(format!(
            "{} services / {} operations reproduce the published component, correlation, and \
             fit values within stated tolerances",
            report.services, report.operations
        ))
    } else {
        Outcome::Fail(issues.join("; "))
    }
}

fn run_battery() -> Battery {
    let mut battery = Battery::default();
    battery.criterion("1", Duration::from_secs(1), c1);
    battery.criterion("2", Duration::from_secs(1), c2);
    battery.criterion("3", Duration::from_secs(30), c3);
    battery.criterion("4", Duration::from_secs(10), c4);
    battery.criterion("5", Duration::from_secs(120), c5);
    battery.criterion("6", Duration::from_secs(120), c6);
    battery.criterion("7", Duration::from_secs(30), c7);
    battery.criterion("8", Duration::from_secs(600), c8);
    battery
}

#[test]
fn acceptance_criteria() {
    let first = run_battery();
    let second = run_battery();
    let deterministic = first.transcript == second.transcript;

    let mut transcript = first.transcript.clone();
    if deterministic {
        transcript.push_str(
            "criterion 9: PASS (two full runs of criteria 1-8 produced byte-identical \
             transcripts)\n",
        );
    } else {
        transcript.push_str("criterion 9: FAIL (transcripts differ between runs)\n");
    }
    print!("{transcript}");

    let mut fatal = first.fatal;
    for extra in second.fatal.into_iter().chain(first.overruns).chain(second.overruns) {
        if !fatal.contains(&extra) {
            fatal.push(extra);
        }
    }
    if !deterministic {
        fatal.push(format!(
            "criterion 9: transcripts differ\nfirst:\n{}\nsecond:\n{}",
            first.transcript, second.transcript
        ));
    }
    assert!(
        fatal.is_empty(),
        "acceptance failures:\n{}\n\nfull transcript:\n{transcript}",
        fatal.join("\n")
    );
}
