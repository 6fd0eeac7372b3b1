//! `netrepo`: graph statistics, generation, sampling, clustering and layout
//! from the command line, plus the catalog service.
//!
//! Machine-readable output goes to stdout (or `--output`), diagnostics to
//! stderr. Exit status is 0 on success, 1 for bad input and 2 for usage
//! errors.

mod output;

use std::fs::File;
use std::io::{self, BufReader, Read};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use netrepo_core::clustering::{
    detect_communities, discover_roles, extract_role_features, RoleCount,
};
use netrepo_core::edgelist::parse_edge_list;
use netrepo_core::generators::{GeneratorConfig, Model, PatternSpec, PatternType, Wiring};
use netrepo_core::graph::build_graph;
use netrepo_core::layout::{compute_layout, DEFAULT_ITERATIONS};
use netrepo_core::sampler::{sample, SampleConfig, SampleMethod};
use netrepo_core::stats::{compute_all, compute_all_with_threads, distribution};
use netrepo_core::Graph;
use netrepo_service::{Catalog, DatasetInfo, ServiceConfig};

use output::Output;

#[derive(Parser)]
#[command(name = "netrepo", version, about = "Interactive graph data repository tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Global statistics, or the per-node table with --nodes
    Stats(StatsArgs),
    /// PDF, CDF and CCDF of a node statistic
    Dist(DistArgs),
    /// Generate a synthetic graph
    Generate(GenerateArgs),
    /// Sample a subgraph
    Sample(SampleArgs),
    /// Label propagation communities
    Communities(CommunityArgs),
    /// Structural roles
    Roles(RoleArgs),
    /// Force-directed node positions
    Layout(LayoutArgs),
    /// Run the HTTP catalog service
    Serve(ServeArgs),
    /// Add an edge-list file to a catalog directory
    Ingest(IngestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Edgelist,
}

#[derive(Args)]
struct Io {
    /// Edge-list file, `-` for stdin
    #[arg(short, long, default_value = "-")]
    input: String,
    /// Write to this file instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Emit the per-node statistics table
    #[arg(long)]
    nodes: bool,
    /// Worker threads; defaults to all cores
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct DistArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value = "degree")]
    statistic: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    ErdosRenyi,
    PreferentialAttachment,
    ChungLu,
    BlockChungLu,
    Pattern,
    Hybrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum WiringArg {
    Bridge,
    Disjoint,
}

#[derive(Args)]
struct GenerateArgs {
    /// JSON generator config; replaces the model flags
    #[arg(long, conflicts_with = "kind")]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Base model of a hybrid graph
    #[arg(long, value_enum)]
    base_kind: Option<Kind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m_attach: Option<usize>,
    #[arg(long)]
    seed_clique_size: Option<usize>,
    /// Comma-separated node weights
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    /// Block weights: blocks separated by `;`, weights by `,`
    #[arg(long)]
    block_weights: Option<String>,
    #[arg(long)]
    mu: Option<f64>,
    /// Pattern as TYPE:SIZE[:COUNT], repeatable
    #[arg(long = "pattern")]
    patterns: Vec<String>,
    #[arg(long, value_enum, default_value = "bridge")]
    wiring: WiringArg,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum MethodArg {
    Node,
    Edge,
    InducedEdge,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, value_enum, default_value = "induced_edge")]
    method: MethodArg,
    /// Fraction of nodes (or edges for the edge method) in (0, 1]
    #[arg(long)]
    fraction: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: Format,
}

#[derive(Args)]
struct CommunityArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct RoleArgs {
    #[command(flatten)]
    io: Io,
    /// Number of roles, or `auto`
    #[arg(long, default_value = "auto")]
    k: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct LayoutArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    iterations: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ServeArgs {
    /// Catalog directory
    #[arg(long)]
    root: PathBuf,
    #[arg(long, default_value = "127.0.0.1:8080")]
    addr: SocketAddr,
    /// Edge count above which ingest runs as a background job
    #[arg(long)]
    background_threshold: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct IngestArgs {
    #[arg(long)]
    root: PathBuf,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    collection: Option<String>,
    #[arg(long, default_value = "")]
    description: String,
    #[arg(long, default_value = "")]
    citation: String,
}

fn usage_error(message: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::InvalidValue, message).exit()
}

fn require_format(format: Format, allowed: &[Format], command: &str) {
    if !allowed.contains(&format) {
        let names: Vec<String> = allowed
            .iter()
            .map(|f| f.to_possible_value().expect("value").get_name().to_string())
            .collect();
        let name = format.to_possible_value().expect("value");
        usage_error(format!(
            "`{command}` does not support --format {}; use one of: {}",
            name.get_name(),
            names.join(", ")
        ));
    }
}

fn read_graph(input: &str) -> anyhow::Result<Graph> {
    let reader: Box<dyn Read> = if input == "-" {
        Box::new(io::stdin())
    } else {
        Box::new(File::open(input).with_context(|| format!("cannot open {input}"))?)
    };
    let source = if input == "-" { "<stdin>" } else { input };
    let raw = parse_edge_list(BufReader::new(reader)).context(source.to_string())?;
    let (g, report) = build_graph(&raw);
    if report.self_loops_dropped + report.duplicates_merged > 0 {
        log::warn!(
            "dropped {} self-loops and merged {} duplicate edges",
            report.self_loops_dropped,
            report.duplicates_merged
        );
    }
    Ok(g)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Stats(a) => {
            require_format(a.format, &[Format::Json, Format::Csv], "stats");
            let g = read_graph(&a.io.input)?;
            let (stats, table) = match a.threads {
                Some(t) => compute_all_with_threads(&g, t),
                None => compute_all(&g),
            };
            let out = Output::open(a.io.output.as_deref())?;
            match (a.nodes, a.format) {
                (false, Format::Json) => out.write(stats.to_json()),
                (false, _) => out.write(output::stats_csv(&stats)),
                (true, Format::Json) => out.write(output::json(&table)?),
                (true, _) => out.write(output::node_table_csv(&table)),
            }
        }
        Command::Dist(a) => {
            require_format(a.format, &[Format::Json, Format::Csv], "dist");
            let g = read_graph(&a.io.input)?;
            let (_, table) = compute_all(&g);
            let d = distribution(&table, &a.statistic)?;
            let out = Output::open(a.io.output.as_deref())?;
            match a.format {
                Format::Json => out.write(output::json(&d)?),
                _ => out.write(output::distribution_csv(&d)),
            }
        }
        Command::Generate(a) => {
            require_format(a.format, &[Format::Edgelist, Format::Json], "generate");
            let config = generator_config(&a)?;
            let g = config.generate()?;
            let out = Output::open(a.output.as_deref())?;
            match a.format {
                Format::Edgelist => out.write(g.to_edge_list()),
                _ => out.write(output::json(&serde_json::json!({
                    "config": config,
                    "n": g.node_count(),
                    "m": g.edge_count(),
                    "edges": g.edges().collect::<Vec<_>>(),
                }))?),
            }
        }
        Command::Sample(a) => {
            let g = read_graph(&a.io.input)?;
            let method = match a.method {
                MethodArg::Node => SampleMethod::Node,
                MethodArg::Edge => SampleMethod::Edge,
                MethodArg::InducedEdge => SampleMethod::InducedEdge,
            };
            let s = sample(&g, &SampleConfig { method, fraction: a.fraction, seed: a.seed })?;
            let out = Output::open(a.io.output.as_deref())?;
            match a.format {
                Format::Edgelist => out.write(s.graph.to_edge_list()),
                Format::Json => out.write(output::json(&serde_json::json!({
                    "n": s.graph.node_count(),
                    "m": s.graph.edge_count(),
                    "node_map": s.node_map,
                    "edges": s.graph.edges().collect::<Vec<_>>(),
                }))?),
                Format::Csv => out.write(output::node_map_csv(&s.node_map)),
            }
        }
        Command::Communities(a) => {
            require_format(a.format, &[Format::Json, Format::Csv], "communities");
            let g = read_graph(&a.io.input)?;
            let labels = detect_communities(&g, a.seed);
            Output::open(a.io.output.as_deref())?.write(output::labeling(&labels, a.format == Format::Csv)?)
        }
        Command::Roles(a) => {
            require_format(a.format, &[Format::Json, Format::Csv], "roles");
            let k = match a.k.as_str() {
                "auto" => RoleCount::Auto,
                n => RoleCount::Fixed(
                    n.parse()
                        .unwrap_or_else(|_| usage_error(format!("--k expects a number or `auto`, got `{n}`"))),
                ),
            };
            let g = read_graph(&a.io.input)?;
            let (_, table) = compute_all(&g);
            let labels = discover_roles(&extract_role_features(&g, &table), k, a.seed)?;
            Output::open(a.io.output.as_deref())?.write(output::labeling(&labels, a.format == Format::Csv)?)
        }
        Command::Layout(a) => {
            require_format(a.format, &[Format::Json, Format::Csv], "layout");
            let g = read_graph(&a.io.input)?;
            let pos = compute_layout(&g, a.seed, a.iterations);
            let out = Output::open(a.io.output.as_deref())?;
            match a.format {
                Format::Json => out.write(output::json(&pos)?),
                _ => out.write(output::positions_csv(&pos)),
            }
        }
        Command::Serve(a) => {
            let mut config = ServiceConfig::new(a.root);
            if let Some(t) = a.background_threshold {
                config.background_threshold = t;
            }
            if let Some(w) = a.workers {
                config.workers = w;
            }
            let catalog = Catalog::open(config)?;
            let runtime = tokio::runtime::Runtime::new()?;
            eprintln!("serving on http://{}", a.addr);
            runtime.block_on(netrepo_service::serve(catalog, a.addr))?;
            Ok(())
        }
        Command::Ingest(a) => {
            let text = std::fs::read_to_string(&a.input)
                .with_context(|| format!("cannot read {}", a.input.display()))?;
            let name = a.name.unwrap_or_else(|| {
                a.input
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "graph".into())
            });
            let catalog = Catalog::open(ServiceConfig::new(a.root))?;
            let info = DatasetInfo {
                name,
                collection: a.collection,
                description: a.description,
                citation: a.citation,
            };
            let record = catalog
                .ingest_text(info, &text)
                .with_context(|| a.input.display().to_string())?;
            Output::open(None)?.write(output::json(&record)?)
        }
    }
}

fn parse_pattern(text: &str) -> anyhow::Result<PatternSpec> {
    let parts: Vec<&str> = text.split(':').collect();
    if !(2..=3).contains(&parts.len()) {
        usage_error(format!("--pattern expects TYPE:SIZE[:COUNT], got `{text}`"));
    }
    let pattern: PatternType = serde_json::from_value(serde_json::Value::String(parts[0].into()))
        .unwrap_or_else(|_| usage_error(format!("unknown pattern type `{}`", parts[0])));
    let number = |s: &str| {
        s.parse::<usize>()
            .unwrap_or_else(|_| usage_error(format!("--pattern: `{s}` is not a count")))
    };
    Ok(PatternSpec {
        pattern,
        size: number(parts[1]),
        count: parts.get(2).map_or(1, |c| number(c)),
    })
}

fn required<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> T {
    value.unwrap_or_else(|| usage_error(format!("--{flag} is required for {kind}")))
}

fn model(a: &GenerateArgs, kind: Kind) -> anyhow::Result<Model> {
    let patterns = a
        .patterns
        .iter()
        .map(|p| parse_pattern(p))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let wiring = match a.wiring {
        WiringArg::Bridge => Wiring::Bridge,
        WiringArg::Disjoint => Wiring::Disjoint,
    };
    Ok(match kind {
        Kind::ErdosRenyi => Model::ErdosRenyi {
            n: required(a.n, "n", "erdos_renyi"),
            p: required(a.p, "p", "erdos_renyi"),
        },
        Kind::PreferentialAttachment => Model::PreferentialAttachment {
            n: required(a.n, "n", "preferential_attachment"),
            m_attach: required(a.m_attach, "m-attach", "preferential_attachment"),
            seed_clique_size: a.seed_clique_size,
        },
        Kind::ChungLu => Model::ChungLu {
            weights: a
                .weights
                .clone()
                .unwrap_or_else(|| usage_error("--weights is required for chung_lu")),
        },
        Kind::BlockChungLu => {
            let text = a
                .block_weights
                .as_deref()
                .unwrap_or_else(|| usage_error("--block-weights is required for block_chung_lu"));
            let weights = text
                .split(';')
                .map(|block| {
                    block
                        .split(',')
                        .map(|w| w.trim().parse::<f64>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .unwrap_or_else(|_| usage_error(format!("cannot parse --block-weights `{text}`")));
            Model::BlockChungLu {
                weights,
                mu: required(a.mu, "mu", "block_chung_lu"),
            }
        }
        Kind::Pattern => {
            if patterns.is_empty() {
                usage_error("at least one --pattern is required for pattern");
            }
            Model::Pattern { patterns, wiring }
        }
        Kind::Hybrid => {
            let base = required(a.base_kind, "base-kind", "hybrid");
            if matches!(base, Kind::Hybrid | Kind::Pattern) {
                usage_error("--base-kind must be a random graph model");
            }
            let base = model(
                &GenerateArgs {
                    patterns: Vec::new(),
                    ..a.shallow_clone()
                },
                base,
            )?;
            Model::Hybrid {
                base: Box::new(base),
                patterns,
                wiring,
            }
        }
    })
}

impl GenerateArgs {
    fn shallow_clone(&self) -> Self {
        Self {
            config: self.config.clone(),
            kind: self.kind,
            base_kind: self.base_kind,
            n: self.n,
            p: self.p,
            m_attach: self.m_attach,
            seed_clique_size: self.seed_clique_size,
            weights: self.weights.clone(),
            block_weights: self.block_weights.clone(),
            mu: self.mu,
            patterns: self.patterns.clone(),
            wiring: self.wiring,
            seed: self.seed,
            output: None,
            format: self.format,
        }
    }
}

fn generator_config(a: &GenerateArgs) -> anyhow::Result<GeneratorConfig> {
    if let Some(path) = &a.config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let mut config: GeneratorConfig = serde_json::from_str(&text)
            .with_context(|| format!("{}: invalid generator config", path.display()))?;
        if let Some(seed) = a.seed {
            config.rng_seed = seed;
        }
        return Ok(config);
    }
    let Some(kind) = a.kind else {
        bail!("either --kind or --config is required");
    };
    Ok(GeneratorConfig::new(model(a, kind)?, a.seed.unwrap_or(0)))
}
