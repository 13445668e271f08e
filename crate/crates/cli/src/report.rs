//! Table rendering. Text mode mirrors the block structure of the published
//! tables (components, distances, degree fits, transitivity, correlation);
//! CSV mode emits one `table,network,metric,value` row per cell. Both are
//! fully deterministic for fixed inputs and seeds.

use std::io::{self, Write};

use wsnet_core::graph::Graph;
use wsnet_core::netstats::TopologyReport;
use wsnet_core::powerlaw::{degree_distribution_report, ks_pvalue, nonzero_degrees, PowerLawFit};
use wsnet_core::randgraph::{er_distance_closed_form, ErEnsembleStats};

pub struct FitRow {
    pub direction: &'static str,
    pub fit: PowerLawFit,
    pub zeros_excluded: usize,
    pub histogram: Vec<(u64, u64)>,
}

/// Fits all three degree directions, bootstrapping p-values when replicates
/// are requested. Directions get distinct seeds (seed+1..3) so their
/// replicate streams never overlap.
pub fn compute_fit_rows(g: &Graph, replicates: usize, seed: u64) -> Result<Vec<FitRow>, String> {
    let report = degree_distribution_report(g).map_err(|e| e.to_string())?;
    let degrees = g.degrees();
    let sides = [
        ("in", report.indeg, &degrees.indeg),
        ("out", report.outdeg, &degrees.outdeg),
        ("total", report.total, &degrees.total),
    ];
    let mut rows = Vec::new();
    for (i, (direction, dfit, seq)) in sides.into_iter().enumerate() {
        let mut fit = dfit.fit;
        if replicates > 0 {
            let sample = nonzero_degrees(seq);
            fit = ks_pvalue(&sample, &fit, replicates, seed.wrapping_add(i as u64 + 1))
                .map_err(|e| e.to_string())?;
        }
        rows.push(FitRow {
            direction,
            fit,
            zeros_excluded: dfit.zeros_excluded,
            histogram: dfit.histogram,
        });
    }
    Ok(rows)
}

pub struct Analysis<'a> {
    pub network: String,
    pub report: &'a TopologyReport,
    /// Fit rows, or the reason the network cannot be fitted.
    pub fits: Result<Vec<FitRow>, String>,
    /// Reason the requested ER baseline could not be built.
    pub er_note: Option<String>,
    pub seed: u64,
}

fn pct(x: f64) -> String {
    format!("{:.2}%", 100.0 * x)
}

/// Component count from the summary's partition: isolated nodes are size-1
/// components, small components are the non-largest of size >= 2, and the
/// largest counts only when it actually spans an edge.
fn component_count(r: &TopologyReport) -> usize {
    let c = &r.components;
    c.isolated + c.small_components + usize::from(c.largest_nodes >= 2)
}

pub fn render_text(a: &Analysis, out: &mut dyn Write) -> io::Result<()> {
    let r = a.report;
    let c = &r.components;
    writeln!(out, "{:<22}{}", "network", a.network)?;
    writeln!(out, "{:<22}{}", "scope", r.scope.as_str())?;
    writeln!(out, "{:<22}{}", "distances", if r.directed { "directed" } else { "undirected" })?;
    writeln!(out, "{:<22}{}", "seed", a.seed)?;

    writeln!(out, "\n== components ==")?;
    writeln!(out, "{:<22}{}", "components", component_count(r))?;
    writeln!(out, "{:<22}{}", "nodes", c.nodes)?;
    writeln!(out, "{:<22}{}", "links", c.links)?;
    writeln!(
        out,
        "{:<22}{} ({} of nodes, {} of non-isolated)",
        "isolated",
        c.isolated,
        pct(c.isolated_frac_total),
        pct(c.isolated_frac_trimmed)
    )?;
    writeln!(out, "{:<22}{}", "small components", c.small_components)?;
    let range = match c.small_size_range {
        Some((lo, hi)) => format!("{lo}..{hi} nodes"),
        None => "—".to_string(),
    };
    writeln!(out, "{:<22}{range}", "small size range")?;
    writeln!(
        out,
        "{:<22}{} nodes ({} of nodes, {} of non-isolated)",
        "largest component",
        c.largest_nodes,
        pct(c.largest_node_frac_total),
        pct(c.largest_node_frac_trimmed)
    )?;
    writeln!(
        out,
        "{:<22}{} ({} of links)",
        "largest links",
        c.largest_links,
        pct(c.largest_link_frac)
    )?;
    writeln!(out, "{:<22}{:.6}", "largest density", c.largest_density)?;

    writeln!(out, "\n== distances ==")?;
    writeln!(
        out,
        "{:<22}{:.4} ({} reachable ordered pairs, {} unreachable)",
        "average", r.distance.mean, r.distance.pairs_counted, r.distance.unreachable_pairs
    )?;
    writeln!(out, "{:<22}{}", "diameter", r.diameter)?;
    let er_line = match (&r.er_baseline, &a.er_note) {
        (Some(er), _) => format!(
            "{:.4} ± {:.4} (n={}, l={}, samples={}, seed={}, skipped {})",
            er.average_distance.mean, er.average_distance.stddev, er.n, er.l, er.samples, er.seed, er.skipped
        ),
        (None, Some(note)) => format!("unavailable: {note}"),
        (None, None) => "skipped (samples = 0)".to_string(),
    };
    writeln!(out, "{:<22}{er_line}", "ER ensemble")?;
    let closed = match r
        .er_baseline
        .as_ref()
        .and_then(|er| er_distance_closed_form(er.n, er.l))
    {
        Some(v) => format!("{v:.4}"),
        None => "—".to_string(),
    };
    writeln!(out, "{:<22}{closed}", "ER closed form")?;

    writeln!(out, "\n== degree fits ==")?;
    match &a.fits {
        Ok(rows) => {
            render_fit_table(rows, out)?;
        }
        Err(reason) => writeln!(out, "unavailable: {reason}")?,
    }

    writeln!(out, "\n== transitivity ==")?;
    writeln!(out, "{:<22}{:.6}", "network", r.transitivity)?;
    let er_t = match (&r.er_baseline, &a.er_note) {
        (Some(er), _) => format!("{:.6} ± {:.6}", er.transitivity.mean, er.transitivity.stddev),
        (None, Some(note)) => format!("unavailable: {note}"),
        (None, None) => "skipped (samples = 0)".to_string(),
    };
    writeln!(out, "{:<22}{er_t}", "ER ensemble")?;

    writeln!(out, "\n== degree correlation ==")?;
    let corr = match r.degree_correlation {
        Some(v) => format!("{v:.4}"),
        None => "undefined".to_string(),
    };
    writeln!(out, "{:<22}{corr}", "network")?;
    Ok(())
}

fn render_fit_table(rows: &[FitRow], out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "{:<10}{:<9}{:<6}{:<7}{:<10}{:<9}{:<12}seed",
        "direction", "alpha", "xmin", "ntail", "KS", "p-value", "replicates"
    )?;
    for row in rows {
        let p = row.fit.pvalue.map_or("—".to_string(), |p| format!("{p:.4}"));
        let seed = row.fit.seed.map_or("—".to_string(), |s| s.to_string());
        writeln!(
            out,
            "{:<10}{:<9.4}{:<6}{:<7}{:<10.6}{:<9}{:<12}{}",
            row.direction, row.fit.alpha, row.fit.xmin, row.fit.ntail, row.fit.ks, p, row.fit.replicates, seed
        )?;
    }
    let zeros: Vec<String> =
        rows.iter().map(|r| format!("{} {}", r.direction, r.zeros_excluded)).collect();
    writeln!(out, "zeros excluded: {}", zeros.join(", "))?;
    Ok(())
}

fn csv_escape(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

fn row(out: &mut dyn Write, table: &str, network: &str, metric: &str, value: impl std::fmt::Display) -> io::Result<()> {
    writeln!(out, "{table},{},{metric},{}", csv_escape(network), csv_escape(&value.to_string()))
}

pub fn render_csv(a: &Analysis, out: &mut dyn Write) -> io::Result<()> {
    let r = a.report;
    let c = &r.components;
    let net = a.network.as_str();
    writeln!(out, "table,network,metric,value")?;
    row(out, "meta", net, "scope", r.scope.as_str())?;
    row(out, "meta", net, "directed", r.directed)?;
    row(out, "meta", net, "seed", a.seed)?;

    row(out, "components", net, "components", component_count(r))?;
    row(out, "components", net, "nodes", c.nodes)?;
    row(out, "components", net, "links", c.links)?;
    row(out, "components", net, "isolated", c.isolated)?;
    row(out, "components", net, "isolated_share_of_nodes", c.isolated_frac_total)?;
    row(out, "components", net, "isolated_share_of_trimmed", c.isolated_frac_trimmed)?;
    row(out, "components", net, "small_components", c.small_components)?;
    if let Some((lo, hi)) = c.small_size_range {
        row(out, "components", net, "small_size_min", lo)?;
        row(out, "components", net, "small_size_max", hi)?;
    }
    row(out, "components", net, "largest_nodes", c.largest_nodes)?;
    row(out, "components", net, "largest_share_of_nodes", c.largest_node_frac_total)?;
    row(out, "components", net, "largest_share_of_trimmed", c.largest_node_frac_trimmed)?;
    row(out, "components", net, "largest_links", c.largest_links)?;
    row(out, "components", net, "largest_share_of_links", c.largest_link_frac)?;
    row(out, "components", net, "largest_density", c.largest_density)?;

    row(out, "distances", net, "average", r.distance.mean)?;
    row(out, "distances", net, "reachable_pairs", r.distance.pairs_counted)?;
    row(out, "distances", net, "unreachable_pairs", r.distance.unreachable_pairs)?;
    row(out, "distances", net, "diameter", r.diameter)?;
    match (&r.er_baseline, &a.er_note) {
        (Some(er), _) => {
            row(out, "distances", net, "er_average", er.average_distance.mean)?;
            row(out, "distances", net, "er_stddev", er.average_distance.stddev)?;
            row(out, "distances", net, "er_samples", er.samples)?;
            row(out, "distances", net, "er_skipped", er.skipped)?;
            row(out, "distances", net, "er_seed", er.seed)?;
            if let Some(v) = er_distance_closed_form(er.n, er.l) {
                row(out, "distances", net, "er_closed_form", v)?;
            }
        }
        (None, Some(note)) => row(out, "distances", net, "er_unavailable", note)?,
        (None, None) => {}
    }

    match &a.fits {
        Ok(rows) => {
            for fr in rows {
                let d = fr.direction;
                row(out, "degrees", net, &format!("{d}_alpha"), fr.fit.alpha)?;
                row(out, "degrees", net, &format!("{d}_xmin"), fr.fit.xmin)?;
                row(out, "degrees", net, &format!("{d}_ntail"), fr.fit.ntail)?;
                row(out, "degrees", net, &format!("{d}_ks"), fr.fit.ks)?;
                let p = fr.fit.pvalue.map_or(String::new(), |p| p.to_string());
                row(out, "degrees", net, &format!("{d}_pvalue"), p)?;
                row(out, "degrees", net, &format!("{d}_replicates"), fr.fit.replicates)?;
                let s = fr.fit.seed.map_or(String::new(), |s| s.to_string());
                row(out, "degrees", net, &format!("{d}_seed"), s)?;
                row(out, "degrees", net, &format!("{d}_zeros_excluded"), fr.zeros_excluded)?;
            }
        }
        Err(reason) => row(out, "degrees", net, "unavailable", reason)?,
    }

    row(out, "transitivity", net, "network", r.transitivity)?;
    match (&r.er_baseline, &a.er_note) {
        (Some(er), _) => {
            row(out, "transitivity", net, "er_mean", er.transitivity.mean)?;
            row(out, "transitivity", net, "er_stddev", er.transitivity.stddev)?;
        }
        (None, Some(note)) => row(out, "transitivity", net, "er_unavailable", note)?,
        (None, None) => {}
    }

    let corr = r.degree_correlation.map_or("undefined".to_string(), |v| v.to_string());
    row(out, "correlation", net, "network", corr)?;
    Ok(())
}

pub fn render_er_text(er: &ErEnsembleStats, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{:<22}G(n={}, l={})", "ensemble", er.n, er.l)?;
    writeln!(out, "{:<22}{} ({} skipped as degenerate)", "samples", er.samples, er.skipped)?;
    writeln!(out, "{:<22}{}", "seed", er.seed)?;
    writeln!(
        out,
        "{:<22}{:.4} ± {:.4}",
        "average distance", er.average_distance.mean, er.average_distance.stddev
    )?;
    writeln!(
        out,
        "{:<22}{:.6} ± {:.6}",
        "transitivity", er.transitivity.mean, er.transitivity.stddev
    )?;
    let closed = match er_distance_closed_form(er.n, er.l) {
        Some(v) => format!("{v:.4}"),
        None => "—".to_string(),
    };
    writeln!(out, "{:<22}{closed}", "closed-form distance")?;
    Ok(())
}

pub fn render_er_csv(er: &ErEnsembleStats, out: &mut dyn Write) -> io::Result<()> {
    let net = format!("er-{}-{}", er.n, er.l);
    writeln!(out, "table,network,metric,value")?;
    row(out, "er", &net, "samples", er.samples)?;
    row(out, "er", &net, "skipped", er.skipped)?;
    row(out, "er", &net, "seed", er.seed)?;
    row(out, "er", &net, "average", er.average_distance.mean)?;
    row(out, "er", &net, "average_stddev", er.average_distance.stddev)?;
    row(out, "er", &net, "transitivity", er.transitivity.mean)?;
    row(out, "er", &net, "transitivity_stddev", er.transitivity.stddev)?;
    if let Some(v) = er_distance_closed_form(er.n, er.l) {
        row(out, "er", &net, "closed_form", v)?;
    }
    Ok(())
}

pub fn render_fits_text(network: &str, rows: &[FitRow], out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{:<22}{network}", "network")?;
    writeln!(out, "\n== degree fits ==")?;
    render_fit_table(rows, out)
}

pub fn render_fits_csv(network: &str, rows: &[FitRow], out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "table,network,metric,value")?;
    for fr in rows {
        let d = fr.direction;
        row(out, "degrees", network, &format!("{d}_alpha"), fr.fit.alpha)?;
        row(out, "degrees", network, &format!("{d}_xmin"), fr.fit.xmin)?;
        row(out, "degrees", network, &format!("{d}_ntail"), fr.fit.ntail)?;
        row(out, "degrees", network, &format!("{d}_ks"), fr.fit.ks)?;
        let p = fr.fit.pvalue.map_or(String::new(), |p| p.to_string());
        row(out, "degrees", network, &format!("{d}_pvalue"), p)?;
        row(out, "degrees", network, &format!("{d}_replicates"), fr.fit.replicates)?;
        let s = fr.fit.seed.map_or(String::new(), |s| s.to_string());
        row(out, "degrees", network, &format!("{d}_seed"), s)?;
        row(out, "degrees", network, &format!("{d}_zeros_excluded"), fr.zeros_excluded)?;
    }
    Ok(())
}
