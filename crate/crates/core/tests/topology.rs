//! Whole-pipeline topology checks on graphs with hand-computable structure.

use wsnet_core::graph::Graph;
use wsnet_core::netstats::{small_world_assessment, topology_report, Scope};
use wsnet_core::randgraph::er_ensemble_stats;

fn directed_cycle(n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_node(&format!("c{i}"));
    }
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).unwrap();
    }
    g
}

/// On a directed cycle of 100 nodes the distances from any node are exactly
/// 1..=99, so the mean over ordered pairs is 50 and the diameter 99. A
/// random graph of the same shape is far tighter, so the small-world
/// comparison must come out negative.
#[test]
fn directed_cycle_is_not_small_world() {
    let g = directed_cycle(100);
    let report = topology_report(&g, Scope::LargestComponent, true).unwrap();
    assert_eq!(report.distance.mean, 50.0);
    assert_eq!(report.distance.pairs_counted, 100 * 99);
    assert_eq!(report.distance.unreachable_pairs, 0);
    assert_eq!(report.diameter, 99);
    assert_eq!(report.transitivity, 0.0);
    assert_eq!(report.components.largest_nodes, 100);
    assert_eq!(report.components.largest_links, 100);

    let er = er_ensemble_stats(100, 100, 30, 424242).unwrap();
    let sw = small_world_assessment(&g, &er, true).unwrap();
    assert_eq!(sw.network_distance, 50.0);
    assert!(
        sw.baseline_distance < 25.0,
        "ER baseline unexpectedly slow: {}",
        sw.baseline_distance
    );
    assert!(!sw.verdict);
}

/// Shape mismatch between the network and a prepared baseline is an error,
/// not a silent wrong comparison.
#[test]
fn baseline_shape_is_enforced() {
    let g = directed_cycle(10);
    let er = er_ensemble_stats(10, 11, 5, 1).unwrap();
    assert!(small_world_assessment(&g, &er, true).is_err());
}
