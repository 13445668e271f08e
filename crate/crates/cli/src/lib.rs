//! Terminal front-end: corpus in, networks and tables out.
//!
//! `run` is the whole program behind a testable seam: argv in, exit code
//! out, all writes going to the two streams the caller hands over. Exit 0
//! is success, 2 a usage problem, 1 a data problem (unreadable corpus,
//! degenerate network, unsatisfiable request).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use wsnet_core::compose::{forward_chain, prune_plan, ComposeError, Request};
use wsnet_core::corpus::{parse_wsc, serialize_wsc, Corpus, Service};
use wsnet_core::extract::{build_dependency, build_interaction, InteractionKind};
use wsnet_core::graph::Graph;
use wsnet_core::matching::{MatchKey, MatchMode};
use wsnet_core::netstats::{topology_report, Scope};
use wsnet_core::randgraph::er_ensemble_stats;
use wsnet_core::wsdl::{files_with_extension, ingest_dir, parse_wsdl};

mod report;

use report::{compute_fit_rows, render_er_csv, render_er_text, render_csv, render_text, Analysis};

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn data(e: impl std::fmt::Display) -> CliError {
    CliError::Data(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "wsnet",
    version,
    about = "Composition-network extraction and analysis for web service corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert WSDL descriptions into one WSC corpus file
    Convert(ConvertArgs),
    /// Extract a network and export it (edge list, node table, DOT)
    Extract(ExtractArgs),
    /// Report components, distances, degree fits, transitivity, correlation
    Analyze(AnalyzeArgs),
    /// Random-graph ensemble statistics for a given shape
    ErBaseline(ErBaselineArgs),
    /// Fit power laws to a network's degree distributions
    FitDegrees(FitDegreesArgs),
    /// Search a layered composition plan for a client request
    Search(SearchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatchingArg {
    Syntactic,
    Semantic,
}

impl MatchingArg {
    fn mode(self) -> MatchMode {
        match self {
            MatchingArg::Syntactic => MatchMode::Syntactic,
            MatchingArg::Semantic => MatchMode::Semantic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Dependency,
    Interaction,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InteractionArg {
    Full,
    Partial,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    Largest,
    Whole,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

#[derive(Args)]
struct NetworkArgs {
    /// Corpus: a .wsc file, a .wsdl file, or a directory of either
    #[arg(long)]
    corpus: PathBuf,
    /// Parameter matching mode
    #[arg(long, value_enum, default_value_t = MatchingArg::Syntactic)]
    matching: MatchingArg,
    /// Network model to extract
    #[arg(long, value_enum, default_value_t = ModelArg::Dependency)]
    model: ModelArg,
    /// Interaction edge rule [default: full; requires --model interaction]
    #[arg(long, value_enum)]
    interaction: Option<InteractionArg>,
}

#[derive(Args)]
struct ConvertArgs {
    /// WSDL directory or single .wsdl file
    #[arg(long)]
    corpus: PathBuf,
    /// Output .wsc path; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    net: NetworkArgs,
    /// Write the edge list (TSV) here instead of stdout
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Write the node table (TSV) here
    #[arg(long)]
    nodes: Option<PathBuf>,
    /// Write Graphviz DOT here
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Omit isolated nodes from the DOT output
    #[arg(long)]
    trim: bool,
    /// Write edge provenance (TSV), dependency model only
    #[arg(long)]
    provenance: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    net: NetworkArgs,
    /// Scope for distances, transitivity, and correlation
    #[arg(long, value_enum, default_value_t = ScopeArg::Largest)]
    scope: ScopeArg,
    /// Measure undirected distances instead of directed
    #[arg(long)]
    undirected: bool,
    /// RNG seed for baselines and bootstraps
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// ER ensemble size for baseline columns; 0 skips the baseline
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Bootstrap replicates for degree-fit p-values; 0 skips p-values
    #[arg(long, default_value_t = 1000)]
    replicates: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct ErBaselineArgs {
    /// Node count of the target shape
    #[arg(long)]
    nodes: usize,
    /// Directed link count of the target shape
    #[arg(long)]
    links: usize,
    /// Ensemble size
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// RNG seed; sample i uses seed + i
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct FitDegreesArgs {
    #[command(flatten)]
    net: NetworkArgs,
    /// Bootstrap replicates for p-values; 0 skips p-values
    #[arg(long, default_value_t = 1000)]
    replicates: usize,
    /// RNG seed; directions use seed+1, seed+2, seed+3
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write degree histograms here (direction, degree, count TSV)
    #[arg(long)]
    histograms: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Corpus: a .wsc file, a .wsdl file, or a directory of either
    #[arg(long)]
    corpus: PathBuf,
    /// Parameter matching mode
    #[arg(long, value_enum, default_value_t = MatchingArg::Syntactic)]
    matching: MatchingArg,
    /// Comma-separated keys the client can provide (names or concept URIs)
    #[arg(long = "in")]
    provided: Option<String>,
    /// Comma-separated keys the client wants produced
    #[arg(long = "out")]
    desired: String,
}

pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return 2;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Convert(args) => convert(args, out, err),
        Command::Extract(args) => extract(args, out, err),
        Command::Analyze(args) => analyze(args, out, err),
        Command::ErBaseline(args) => er_baseline(args, out),
        Command::FitDegrees(args) => fit_degrees(args, out, err),
        Command::Search(args) => search(args, out, err),
    }
}

/// Reads a corpus from any of the accepted forms. A directory is read as
/// WSC files when it has any, as WSDL otherwise; ingestion diagnostics go
/// to the error stream so stdout stays machine-readable.
fn load_corpus(path: &Path, err: &mut dyn Write) -> Result<Corpus, CliError> {
    if path.is_dir() {
        let wsc_files = files_with_extension(path, "wsc")
            .map_err(|e| data(format!("{}: {e}", path.display())))?;
        if !wsc_files.is_empty() {
            let mut services: Vec<Service> = Vec::new();
            for file in wsc_files {
                let text = std::fs::read_to_string(&file)
                    .map_err(|e| data(format!("{}: {e}", file.display())))?;
                let corpus =
                    parse_wsc(&text).map_err(|e| data(format!("{}: {e}", file.display())))?;
                services.extend(corpus.services);
            }
            return Corpus::from_services(services).map_err(data);
        }
        let (corpus, report) = ingest_dir(path).map_err(data)?;
        let _ = writeln!(
            err,
            "ingested {} file(s): {} service(s), {} operation(s)",
            report.files_read, report.services, report.operations
        );
        for (file, reason) in &report.skipped {
            let _ = writeln!(err, "skipped {file}: {reason}");
        }
        for (file, note) in &report.notes {
            let _ = writeln!(err, "note {file}: {note}");
        }
        if corpus.services.is_empty() {
            return Err(data(format!("{}: no .wsc or .wsdl files found", path.display())));
        }
        Ok(corpus)
    } else {
        let text = std::fs::read_to_string(path)
            .map_err(|e| data(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("wsdl")) {
            let stem = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let parsed = parse_wsdl(&text, &stem).map_err(data)?;
            for note in &parsed.notes {
                let _ = writeln!(err, "note {}: {note}", path.display());
            }
            Corpus::from_services(vec![parsed.service]).map_err(data)
        } else {
            parse_wsc(&text).map_err(|e| data(format!("{}: {e}", path.display())))
        }
    }
}

/// The network a command operates on, kept whole so dependency-only data
/// (provenance, dropped self-loops) stays reachable.
enum Network {
    Dependency(wsnet_core::extract::DependencyNetwork),
    Interaction(wsnet_core::extract::InteractionNetwork),
}

impl Network {
    fn graph(&self) -> &Graph {
        match self {
            Network::Dependency(net) => &net.graph,
            Network::Interaction(net) => &net.graph,
        }
    }

    fn name(&self) -> String {
        match self {
            Network::Dependency(net) => format!("dependency-{}", net.mode.as_str()),
            Network::Interaction(net) => {
                format!("interaction-{}-{}", net.kind.as_str(), net.mode.as_str())
            }
        }
    }
}

fn build_network(corpus: &Corpus, args: &NetworkArgs) -> Result<Network, CliError> {
    if args.model == ModelArg::Dependency && args.interaction.is_some() {
        return Err(CliError::Usage(
            "--interaction only applies to --model interaction".to_string(),
        ));
    }
    let mode = args.matching.mode();
    Ok(match args.model {
        ModelArg::Dependency => Network::Dependency(build_dependency(corpus, mode)),
        ModelArg::Interaction => {
            let kind = match args.interaction.unwrap_or(InteractionArg::Full) {
                InteractionArg::Full => InteractionKind::Full,
                InteractionArg::Partial => InteractionKind::Partial,
            };
            Network::Interaction(build_interaction(corpus, mode, kind))
        }
    })
}

fn convert(args: ConvertArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let corpus = if args.corpus.is_dir() {
        let (corpus, report) = ingest_dir(&args.corpus).map_err(data)?;
        let _ = writeln!(
            err,
            "ingested {} file(s): {} service(s), {} operation(s)",
            report.files_read, report.services, report.operations
        );
        for (file, reason) in &report.skipped {
            let _ = writeln!(err, "skipped {file}: {reason}");
        }
        for (file, note) in &report.notes {
            let _ = writeln!(err, "note {file}: {note}");
        }
        corpus
    } else {
        let text = std::fs::read_to_string(&args.corpus)?;
        let stem = args.corpus.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let parsed = parse_wsdl(&text, &stem).map_err(data)?;
        for note in &parsed.notes {
            let _ = writeln!(err, "note {}: {note}", args.corpus.display());
        }
        Corpus::from_services(vec![parsed.service]).map_err(data)?
    };
    let text = serialize_wsc(&corpus);
    match &args.output {
        Some(path) => {
            std::fs::write(path, text)?;
            let _ = writeln!(err, "wrote {}", path.display());
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn extract(args: ExtractArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let corpus = load_corpus(&args.net.corpus, err)?;
    let network = build_network(&corpus, &args.net)?;
    let graph = network.graph();
    match &network {
        Network::Dependency(net) => {
            let _ = writeln!(
                err,
                "{}: {} nodes, {} links, {} self-loop key pair(s) dropped",
                network.name(),
                graph.node_count(),
                graph.edge_count(),
                net.self_loops_dropped
            );
        }
        Network::Interaction(_) => {
            let _ = writeln!(
                err,
                "{}: {} nodes, {} links",
                network.name(),
                graph.node_count(),
                graph.edge_count()
            );
        }
    }
    let mut wrote_any = false;
    let mut emit = |path: &Option<PathBuf>, content: String, err: &mut dyn Write| -> Result<(), CliError> {
        if let Some(path) = path {
            std::fs::write(path, content)?;
            let _ = writeln!(err, "wrote {}", path.display());
            wrote_any = true;
        }
        Ok(())
    };
    emit(&args.edges, graph.edge_list_tsv(), err)?;
    emit(&args.nodes, graph.node_table_tsv(), err)?;
    emit(&args.dot, graph.dot(args.trim), err)?;
    if args.provenance.is_some() {
        match &network {
            Network::Dependency(net) => emit(&args.provenance, net.provenance_tsv(), err)?,
            Network::Interaction(_) => {
                return Err(CliError::Usage(
                    "--provenance only applies to the dependency model".to_string(),
                ));
            }
        }
    }
    if !wrote_any {
        out.write_all(graph.edge_list_tsv().as_bytes())?;
    }
    Ok(())
}

fn analyze(args: AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let corpus = load_corpus(&args.net.corpus, err)?;
    let network = build_network(&corpus, &args.net)?;
    let graph = network.graph();
    let scope = match args.scope {
        ScopeArg::Largest => Scope::LargestComponent,
        ScopeArg::Whole => Scope::WholeGraph,
    };
    let directed = !args.undirected;
    let mut report = topology_report(graph, scope, directed).map_err(data)?;

    let mut er_note = None;
    if args.samples > 0 {
        let (n, l) = (report.components.largest_nodes, report.components.largest_links);
        match er_ensemble_stats(n, l, args.samples, args.seed) {
            Ok(er) => report.er_baseline = Some(er),
            Err(e) => er_note = Some(e.to_string()),
        }
    }

    let analysis = Analysis {
        network: network.name(),
        report: &report,
        fits: compute_fit_rows(graph, args.replicates, args.seed),
        er_note,
        seed: args.seed,
    };
    match args.format {
        FormatArg::Text => render_text(&analysis, out)?,
        FormatArg::Csv => render_csv(&analysis, out)?,
    }
    Ok(())
}

fn er_baseline(args: ErBaselineArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let stats = er_ensemble_stats(args.nodes, args.links, args.samples, args.seed).map_err(data)?;
    match args.format {
        FormatArg::Text => render_er_text(&stats, out)?,
        FormatArg::Csv => render_er_csv(&stats, out)?,
    }
    Ok(())
}

fn fit_degrees(args: FitDegreesArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let corpus = load_corpus(&args.net.corpus, err)?;
    let network = build_network(&corpus, &args.net)?;
    let rows = compute_fit_rows(network.graph(), args.replicates, args.seed)
        .map_err(CliError::Data)?;
    if let Some(path) = &args.histograms {
        let mut text = String::new();
        for row in &rows {
            for (degree, count) in &row.histogram {
                text.push_str(&format!("{}\t{degree}\t{count}\n", row.direction));
            }
        }
        std::fs::write(path, text)?;
        let _ = writeln!(err, "wrote {}", path.display());
    }
    match args.format {
        FormatArg::Text => report::render_fits_text(&network.name(), &rows, out)?,
        FormatArg::Csv => report::render_fits_csv(&network.name(), &rows, out)?,
    }
    Ok(())
}

fn parse_keys(list: Option<&str>, mode: MatchMode) -> Vec<MatchKey> {
    list.unwrap_or("")
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| MatchKey::new(mode, t))
        .collect()
}

fn search(args: SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let corpus = load_corpus(&args.corpus, err)?;
    let mode = args.matching.mode();
    let provided = parse_keys(args.provided.as_deref(), mode);
    let desired = parse_keys(Some(args.desired.as_str()), mode);
    let request = Request::new(provided, desired).map_err(|e| match e {
        ComposeError::EmptyDesired => CliError::Usage("--out names no keys".to_string()),
        other => data(other),
    })?;
    let plan = forward_chain(&corpus, &request, mode).map_err(data)?;
    if !plan.satisfied {
        return Err(data(format!(
            "request cannot be satisfied; {} key(s) reachable",
            plan.known_at_end.len()
        )));
    }
    let pruned = prune_plan(&corpus, &request, &plan, mode).map_err(data)?;
    let _ = writeln!(
        err,
        "satisfied in {} layer(s) ({} before pruning)",
        pruned.layers.len(),
        plan.layers.len()
    );
    for (i, layer) in pruned.layers.iter().enumerate() {
        writeln!(out, "layer {}: {}", i + 1, layer.join(" "))?;
    }
    Ok(())
}
