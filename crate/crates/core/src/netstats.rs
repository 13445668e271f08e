//! Topology metrics over extracted networks: connectivity breakdown, hop
//! distances, clustering, degree mixing, and the small-world comparison
//! against a random baseline of the same size.
//!
//! Conventions, fixed here and surfaced in every report: distances follow
//! edge direction by default and average over ordered reachable pairs
//! (unreachable pairs are counted, not folded in); per-component metrics use
//! the largest weak component; node shares are reported against both the
//! full node set and the non-isolated ("trimmed") node set, because both
//! bases are in circulation for these tables.

use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::randgraph::ErEnsembleStats;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("empty graph")]
    EmptyGraph,
    #[error("scope has no ordered pairs")]
    DegenerateScope,
    #[error("baseline shape ({baseline_n}, {baseline_l}) does not match largest component ({n}, {l})")]
    BaselineMismatch { baseline_n: usize, baseline_l: usize, n: usize, l: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scope {
    LargestComponent,
    WholeGraph,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::LargestComponent => "largest-component",
            Scope::WholeGraph => "whole-graph",
        }
    }
}

/// Connectivity breakdown of a directed network. "Small" components are the
/// non-largest components of size >= 2; size-1 components are exactly the
/// isolated nodes. Fractions are 0 when their base is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSummary {
    pub nodes: usize,
    pub links: usize,
    pub isolated: usize,
    pub isolated_frac_total: f64,
    pub isolated_frac_trimmed: f64,
    pub small_components: usize,
    /// (min, max) sizes of small components; None when there are none.
    pub small_size_range: Option<(usize, usize)>,
    pub largest_nodes: usize,
    pub largest_links: usize,
    pub largest_node_frac_total: f64,
    pub largest_node_frac_trimmed: f64,
    pub largest_link_frac: f64,
    pub largest_density: f64,
}

pub fn component_summary(g: &Graph) -> ComponentSummary {
    let n = g.node_count();
    let links = g.edge_count();
    let decomp = g.weak_components();
    let isolated = decomp.isolated.len();
    let trimmed = n - isolated;
    let (largest_id, largest_nodes) = decomp.largest().unwrap_or((0, 0));
    let largest_links = if largest_nodes > 1 {
        g.induced_subgraph(&decomp.members(largest_id)).unwrap().edge_count()
    } else {
        0
    };
    let mut small = 0usize;
    let mut small_range: Option<(usize, usize)> = None;
    for (&id, &size) in &decomp.sizes {
        if id == largest_id || size < 2 {
            continue;
        }
        small += 1;
        small_range = Some(match small_range {
            None => (size, size),
            Some((lo, hi)) => (lo.min(size), hi.max(size)),
        });
    }
    let frac = |part: usize, base: usize| if base == 0 { 0.0 } else { part as f64 / base as f64 };
    ComponentSummary {
        nodes: n,
        links,
        isolated,
        isolated_frac_total: frac(isolated, n),
        isolated_frac_trimmed: frac(isolated, trimmed),
        small_components: small,
        small_size_range: small_range,
        largest_nodes,
        largest_links,
        largest_node_frac_total: frac(largest_nodes, n),
        largest_node_frac_trimmed: frac(largest_nodes, trimmed),
        largest_link_frac: frac(largest_links, links),
        largest_density: if largest_nodes > 1 {
            largest_links as f64 / (largest_nodes as f64 * (largest_nodes - 1) as f64)
        } else {
            0.0
        },
    }
}

/// Mean hop count over ordered reachable pairs (u != v) within scope.
/// Unreachable ordered pairs are reported alongside, never averaged in.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSummary {
    pub mean: f64,
    pub pairs_counted: u64,
    pub unreachable_pairs: u64,
}

struct Sweep {
    sum: u64,
    reachable: u64,
    unreachable: u64,
    max: u32,
}

fn scope_nodes(g: &Graph, scope: Scope) -> Result<Vec<NodeId>, StatsError> {
    if g.node_count() == 0 {
        return Err(StatsError::EmptyGraph);
    }
    match scope {
        Scope::WholeGraph => Ok((0..g.node_count()).collect()),
        Scope::LargestComponent => {
            let decomp = g.weak_components();
            let (id, _) = decomp.largest().expect("non-empty graph has a component");
            Ok(decomp.members(id))
        }
    }
}

fn distance_sweep(g: &Graph, scope: Scope, directed: bool) -> Result<Sweep, StatsError> {
    let nodes = scope_nodes(g, scope)?;
    let in_scope: Vec<bool> = {
        let mut mask = vec![false; g.node_count()];
        for &v in &nodes {
            mask[v] = true;
        }
        mask
    };
    let mut sweep = Sweep { sum: 0, reachable: 0, unreachable: 0, max: 0 };
    for &src in &nodes {
        let dist = g.bfs_distances(src, directed).expect("scope nodes exist");
        for (v, d) in dist.iter().enumerate() {
            if v == src || !in_scope[v] {
                continue;
            }
            match d {
                Some(d) => {
                    sweep.sum += u64::from(*d);
                    sweep.reachable += 1;
                    sweep.max = sweep.max.max(*d);
                }
                None => sweep.unreachable += 1,
            }
        }
    }
    if sweep.reachable == 0 {
        return Err(StatsError::DegenerateScope);
    }
    Ok(sweep)
}

pub fn average_distance(g: &Graph, scope: Scope, directed: bool) -> Result<DistanceSummary, StatsError> {
    let s = distance_sweep(g, scope, directed)?;
    Ok(DistanceSummary {
        mean: s.sum as f64 / s.reachable as f64,
        pairs_counted: s.reachable,
        unreachable_pairs: s.unreachable,
    })
}

/// Longest finite shortest path within scope.
pub fn diameter(g: &Graph, scope: Scope, directed: bool) -> Result<u32, StatsError> {
    Ok(distance_sweep(g, scope, directed)?.max)
}

/// 3 * triangles / connected triples on the undirected projection; 0 when
/// the projection has no triples.
pub fn transitivity(g: &Graph) -> f64 {
    let census = g.triangle_census();
    if census.connected_triples == 0 {
        0.0
    } else {
        3.0 * census.triangles as f64 / census.connected_triples as f64
    }
}

/// Degree mixing (Newman's r): Pearson correlation of endpoint degrees over
/// the undirected projection's edges, both orientations included. None when
/// the projection has no edges or the degree variance is zero; that is
/// "undefined", which is not the same thing as 0.
pub fn degree_correlation(g: &Graph) -> Option<f64> {
    let proj = g.undirected_projection();
    if proj.edge_count() == 0 {
        return None;
    }
    let deg = proj.degrees().total;
    // Integer moments over both orientations keep exact cases exact
    // (a star comes out at -1 on the nose).
    let (mut sx, mut sxx, mut sxy) = (0i128, 0i128, 0i128);
    let mut m = 0i128;
    for (u, v) in proj.edges() {
        let (du, dv) = (deg[u] as i128, deg[v] as i128);
        sx += du + dv;
        sxx += du * du + dv * dv;
        sxy += 2 * du * dv;
        m += 2;
    }
    let num = m * sxy - sx * sx;
    let den = m * sxx - sx * sx;
    if den == 0 {
        return None;
    }
    Some(num as f64 / den as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmallWorld {
    pub network_distance: f64,
    pub baseline_distance: f64,
    pub baseline_stddev: f64,
    /// True when the network is at least as tightly knit as its baseline.
    pub verdict: bool,
}

/// Compares the network's largest-component average distance against an ER
/// ensemble of the same largest-component shape. The baseline must have been
/// generated for exactly that (nodes, links) pair.
pub fn small_world_assessment(g: &Graph, er: &ErEnsembleStats, directed: bool) -> Result<SmallWorld, StatsError> {
    let summary = component_summary(g);
    if er.n != summary.largest_nodes || er.l != summary.largest_links {
        return Err(StatsError::BaselineMismatch {
            baseline_n: er.n,
            baseline_l: er.l,
            n: summary.largest_nodes,
            l: summary.largest_links,
        });
    }
    let network = average_distance(g, Scope::LargestComponent, directed)?;
    Ok(SmallWorld {
        network_distance: network.mean,
        baseline_distance: er.average_distance.mean,
        baseline_stddev: er.average_distance.stddev,
        verdict: network.mean <= er.average_distance.mean,
    })
}

/// Everything the tables need for one network, with the conventions that
/// produced it. Transitivity and degree correlation are computed on the
/// scope subgraph; the component summary always covers the whole graph.
#[derive(Debug, Clone)]
pub struct TopologyReport {
    pub scope: Scope,
    pub directed: bool,
    pub components: ComponentSummary,
    pub distance: DistanceSummary,
    pub diameter: u32,
    pub transitivity: f64,
    pub degree_correlation: Option<f64>,
    pub er_baseline: Option<ErEnsembleStats>,
}

pub fn topology_report(g: &Graph, scope: Scope, directed: bool) -> Result<TopologyReport, StatsError> {
    let sweep = distance_sweep(g, scope, directed)?;
    let focus = match scope {
        Scope::WholeGraph => None,
        Scope::LargestComponent => Some(g.induced_subgraph(&scope_nodes(g, scope)?).unwrap()),
    };
    let focus = focus.as_ref().unwrap_or(g);
    Ok(TopologyReport {
        scope,
        directed,
        components: component_summary(g),
        distance: DistanceSummary {
            mean: sweep.sum as f64 / sweep.reachable as f64,
            pairs_counted: sweep.reachable,
            unreachable_pairs: sweep.unreachable,
        },
        diameter: sweep.max,
        transitivity: transitivity(focus),
        degree_correlation: degree_correlation(focus),
        er_baseline: None,
    })
}
