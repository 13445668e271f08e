//! Seeded Erdős–Rényi baselines. G(n, l) here is the directed variant:
//! exactly `l` distinct ordered non-loop pairs drawn uniformly from the
//! n(n-1) possible ones. Ensembles rerun the topology metrics per sample and
//! aggregate mean and standard deviation; a sample whose largest component
//! yields no ordered pairs is skipped and the skip is reported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

use crate::graph::Graph;
use crate::netstats::{average_distance, transitivity, Scope, StatsError};

#[derive(Debug, Error, PartialEq)]
pub enum RandError {
    #[error("cannot place {l} edges on {n} nodes (max {max})")]
    TooManyEdges { n: usize, l: usize, max: usize },
    #[error("ensemble needs at least one sample")]
    NoSamples,
    #[error("all {0} samples were degenerate")]
    AllSamplesDegenerate(usize),
}

/// Directed G(n, l) with the given seed. Same seed, same graph. Node labels
/// are zero-padded decimal indexes.
pub fn er_gnm(n: usize, l: usize, seed: u64) -> Result<Graph, RandError> {
    let max = n.saturating_mul(n.saturating_sub(1));
    if l > max {
        return Err(RandError::TooManyEdges { n, l, max });
    }
    let mut g = Graph::new();
    let width = if n > 1 { (n - 1).to_string().len() } else { 1 };
    for i in 0..n {
        g.add_node(&format!("{i:0width$}"));
    }
    // Floyd's sampler: l distinct indexes out of 0..max, uniformly.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: HashSet<usize> = HashSet::with_capacity(l);
    for j in (max - l)..max {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut indexes: Vec<usize> = chosen.into_iter().collect();
    indexes.sort_unstable();
    for idx in indexes {
        let u = idx / (n - 1);
        let r = idx % (n - 1);
        let v = if r < u { r } else { r + 1 };
        g.add_edge(u, v).unwrap();
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanStd {
    pub mean: f64,
    pub stddev: f64,
}

fn mean_std(values: &[f64]) -> MeanStd {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let stddev = if values.len() < 2 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    MeanStd { mean, stddev }
}

/// Ensemble aggregates for G(n, l): per sample, the directed average
/// distance on the largest weak component and the transitivity of that
/// component's subgraph. Sample i uses seed + i.
#[derive(Debug, Clone, PartialEq)]
pub struct ErEnsembleStats {
    pub n: usize,
    pub l: usize,
    pub samples: usize,
    pub seed: u64,
    pub average_distance: MeanStd,
    pub transitivity: MeanStd,
    pub skipped: usize,
}

pub fn er_ensemble_stats(n: usize, l: usize, samples: usize, seed: u64) -> Result<ErEnsembleStats, RandError> {
    if samples == 0 {
        return Err(RandError::NoSamples);
    }
    let mut distances = Vec::with_capacity(samples);
    let mut transitivities = Vec::with_capacity(samples);
    let mut skipped = 0usize;
    for i in 0..samples {
        let g = er_gnm(n, l, seed.wrapping_add(i as u64))?;
        match average_distance(&g, Scope::LargestComponent, true) {
            Ok(d) => {
                let decomp = g.weak_components();
                let (id, _) = decomp.largest().expect("graph is non-empty");
                let focus = g.induced_subgraph(&decomp.members(id)).unwrap();
                distances.push(d.mean);
                transitivities.push(transitivity(&focus));
            }
            Err(StatsError::EmptyGraph | StatsError::DegenerateScope) => skipped += 1,
            Err(other) => unreachable!("unexpected per-sample failure: {other}"),
        }
    }
    if distances.is_empty() {
        return Err(RandError::AllSamplesDegenerate(samples));
    }
    Ok(ErEnsembleStats {
        n,
        l,
        samples,
        seed,
        average_distance: mean_std(&distances),
        transitivity: mean_std(&transitivities),
        skipped,
    })
}

/// The textbook sparse-graph estimate ln n / ln(l/n); None when it is
/// meaningless (l <= n or n < 2).
pub fn er_distance_closed_form(n: usize, l: usize) -> Option<f64> {
    if n < 2 || l <= n {
        return None;
    }
    Some((n as f64).ln() / (l as f64 / n as f64).ln())
}
