//! Command-line entry point: compute bounds, run exact oracles, generate
//! random graph batches, compare persisted reports, verify formulas
//! against enumeration, and reproduce the random-graph protocols.
//!
//! Exit codes: 0 success, 1 invariant violation, 2 input error,
//! 3 resource refusal.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use domind::domination::BoundError;
use domind::experiment::{
    compare_domination, compare_independence, evaluate_graph,
    find_incomparability_witnesses, paper_grid_bip, paper_grid_gnp, read_reports,
    run_protocol, verify_graph, BoundReport, Cell, EvalOptions, ExperimentError,
    ProtocolConfig, VerifyOptions,
};
use domind::graph::{parse_edge_list, parse_graph6, parse_named_spec, Graph};
use domind::oracle::{all_graphs, exact_alpha_limited, exact_gamma_limited, OracleError};
use domind::randgraph::{
    sample_bip_perturbed_capped, sample_gnp_capped, BatchMeta, RngConfig, SampleError,
    DEFAULT_REJECTION_CAP, RNG_ALGORITHM, SIDE_A_DISTRIBUTION,
};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_REFUSED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "domind",
    version,
    about = "Exact domination and independence bounds for graphs"
)]
struct Cli {
    /// Worker threads (default: available parallelism; env DOMIND_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all bounds for each input graph
    Bounds(BoundsArgs),
    /// Exact domination/independence numbers for small graphs
    Oracle(OracleArgs),
    /// Generate a seeded random-graph batch as a graph6 stream
    Generate(GenerateArgs),
    /// Recompute comparison matrices from persisted reports
    Compare(CompareArgs),
    /// Cross-check formulas against exhaustive enumeration
    Verify(VerifyArgs),
    /// Run a full generate-evaluate-aggregate protocol
    Protocol(ProtocolArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    G6,
    Edges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file, or "-" for stdin (graph6 stream, one graph per line)
    input: Option<String>,
    /// Input format; auto-detects from the file extension
    #[arg(long, value_enum, default_value = "auto")]
    input_format: InputFormat,
    /// Construct named graphs, e.g. star:100, cycle:7, cbip:2,1000
    #[arg(long = "named", value_name = "FAMILY:PARAMS")]
    named: Vec<String>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Output format
    #[arg(short = 'o', long, value_enum, default_value = "human")]
    format: OutputFormat,
    /// Shorthand for --format json
    #[arg(long)]
    json: bool,
    /// Compute exact gamma/alpha for graphs up to this size (0 = off)
    #[arg(long, default_value_t = 0)]
    oracle_max_n: usize,
    /// Skip the bipartite bound
    #[arg(long)]
    no_hm3: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = domind::oracle::DEFAULT_GAMMA_LIMIT)]
    gamma_max_n: usize,
    #[arg(long, default_value_t = domind::oracle::DEFAULT_ALPHA_LIMIT)]
    alpha_max_n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Gnp,
    Bip,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    /// Edge probability (gnp)
    #[arg(long)]
    p: Option<f64>,
    /// Cross-edge removal probability (bip)
    #[arg(long)]
    pr: Option<f64>,
    /// Same-side edge addition probability (bip)
    #[arg(long)]
    pa: Option<f64>,
    #[arg(long)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_REJECTION_CAP)]
    rejection_cap: u32,
    /// Output prefix: writes <out>.g6 and <out>.json (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// JSON-lines report file produced by `bounds --format json` or
    /// `protocol`
    reports: PathBuf,
    /// Directory for gamma_matrix.csv / alpha_matrix.csv (stdout if
    /// omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistKind {
    All,
    Dom,
    Ind,
    Bip,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Also verify every connected non-complete graph on up to this many
    /// vertices (exhaustive catalog, max 7)
    #[arg(long, default_value_t = 0)]
    exhaustive_max_n: usize,
    /// Which distribution oracles to run
    #[arg(long, value_enum, default_value = "all")]
    dist: DistKind,
    #[arg(long, default_value_t = domind::oracle::DEFAULT_ENUM_LIMIT)]
    enum_limit: u64,
    #[arg(long, default_value_t = domind::oracle::DEFAULT_GAMMA_LIMIT)]
    gamma_max_n: usize,
    #[arg(long, default_value_t = domind::oracle::DEFAULT_ALPHA_LIMIT)]
    alpha_max_n: usize,
    /// Search the given report corpus (plus any --named graphs) for
    /// incomparability witnesses instead of running the formula suites
    #[arg(long)]
    witnesses: bool,
    /// Report corpus for --witnesses
    #[arg(long)]
    reports: Option<PathBuf>,
}

#[derive(Args)]
struct ProtocolArgs {
    #[arg(long, value_enum)]
    model: Model,
    /// Use the full parameter grid from the comparison tables
    #[arg(long)]
    paper_grid: bool,
    /// Scale factor on the 500 samples/cell of the full protocol
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Explicit cell instead of the grid
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    pr: Option<f64>,
    #[arg(long)]
    pa: Option<f64>,
    /// Samples per cell (overrides --scale)
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    oracle_max_n: usize,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("DOMIND_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    let code = match cli.command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Protocol(args) => cmd_protocol(args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &ExperimentError) -> u8 {
    match e {
        ExperimentError::Invariant(_) => EXIT_VIOLATION,
        ExperimentError::Oracle(OracleError::SizeLimitExceeded { .. })
        | ExperimentError::Oracle(OracleError::EnumerationLimitExceeded { .. }) => {
            EXIT_REFUSED
        }
        ExperimentError::Sample(SampleError::RejectionCapExceeded { .. }) => EXIT_REFUSED,
        _ => EXIT_INPUT,
    }
}

/// Every run echoes its resolved configuration (to stderr, so machine
/// output stays clean).
fn echo_config(config: serde_json::Value) {
    eprintln!("config: {config}");
}

/// Reads the input graphs as (id, graph) pairs; parse failures are
/// reported and skipped.
fn load_graphs(input: &InputArgs) -> (Vec<(String, Graph)>, usize) {
    let mut graphs = Vec::new();
    let mut failures = 0usize;

    for spec in &input.named {
        match parse_named_spec(spec) {
            Ok(g) => graphs.push((format!("named:{spec}"), g)),
            Err(e) => {
                eprintln!("skipping named graph {spec:?}: {e}");
                failures += 1;
            }
        }
    }

    let Some(path) = &input.input else {
        return (graphs, failures);
    };

    let (label, text) = if path == "-" {
        let mut buf = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
            eprintln!("cannot read stdin: {e}");
            return (graphs, failures + 1);
        }
        ("stdin".to_string(), buf)
    } else {
        match std::fs::read_to_string(path) {
            Ok(text) => (path.clone(), text),
            Err(e) => {
                eprintln!("cannot read {path}: {e}");
                return (graphs, failures + 1);
            }
        }
    };

    let format = match input.input_format {
        InputFormat::Auto => {
            let lower = label.to_lowercase();
            if lower.ends_with(".el") || lower.ends_with(".edges") || lower.ends_with(".txt")
            {
                InputFormat::Edges
            } else {
                InputFormat::G6
            }
        }
        other => other,
    };

    match format {
        InputFormat::Edges => match parse_edge_list(&text) {
            Ok(g) => graphs.push((label, g)),
            Err(e) => {
                eprintln!("{label}: {e}");
                failures += 1;
            }
        },
        _ => {
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line == ">>graph6<<" {
                    continue;
                }
                match parse_graph6(line) {
                    Ok(g) => graphs.push((format!("{label}:{}", lineno + 1), g)),
                    Err(e) => {
                        eprintln!("{label}:{}: {e}", lineno + 1);
                        failures += 1;
                    }
                }
            }
        }
    }
    (graphs, failures)
}

/// Decimal approximation with six significant digits, for annotation
/// only; comparisons never touch these.
fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.5}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (5 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn print_human_report(report: &BoundReport) {
    println!("graph {} (n={}, m={}):", report.graph_id, report.n, report.m);
    for (name, entry) in &report.bounds {
        let value = entry.value().expect("report entries round-trip");
        let approx = value.to_f64().unwrap_or(f64::NAN);
        let argopt = match entry.argopt {
            Some(domind::experiment::ArgOpt::T(t)) => format!(" at t={t}"),
            Some(domind::experiment::ArgOpt::Ab([a, b])) => {
                format!(" at (a,b)=({a},{b})")
            }
            None => String::new(),
        };
        println!("  {name:<10} = {value} ({}){argopt}", sig6(approx));
    }
    if let Some(oracle) = &report.oracle {
        let fmt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        println!(
            "  exact: gamma = {}, alpha = {}",
            fmt(oracle.gamma),
            fmt(oracle.alpha)
        );
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<u8, ExperimentError> {
    let format = if args.json { OutputFormat::Json } else { args.format };
    echo_config(serde_json::json!({
        "command": "bounds",
        "format": match format {
            OutputFormat::Human => "human",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        },
        "oracle_max_n": args.oracle_max_n,
        "hm3": !args.no_hm3,
        "named": args.input.named,
        "input": args.input.input,
    }));

    let (graphs, _) = load_graphs(&args.input);
    if graphs.is_empty() {
        eprintln!("no parseable input graphs");
        return Ok(EXIT_INPUT);
    }
    let opts = EvalOptions {
        hm3: !args.no_hm3,
        oracle_gamma_max_n: args.oracle_max_n,
        oracle_alpha_max_n: args.oracle_max_n,
        ..EvalOptions::default()
    };

    let mut printed = 0usize;
    if format == OutputFormat::Csv {
        println!("graph_id,n,m,bound,num,den,floor,ceil,approx");
    }
    for (id, g) in &graphs {
        let report = match evaluate_graph(g, id, &opts) {
            Ok(r) => r,
            Err(ExperimentError::Bound(BoundError::NotInGamma(proof))) => {
                eprintln!("skipping {id}: not in the required class ({proof})");
                continue;
            }
            Err(e) => return Err(e),
        };
        match format {
            OutputFormat::Human => print_human_report(&report),
            OutputFormat::Json => println!("{}", serde_json::to_string(&report)?),
            OutputFormat::Csv => {
                for (name, entry) in &report.bounds {
                    let approx =
                        entry.value().and_then(|v| v.to_f64()).unwrap_or(f64::NAN);
                    println!(
                        "{},{},{},{},{},{},{},{},{}",
                        report.graph_id,
                        report.n,
                        report.m,
                        name,
                        entry.num,
                        entry.den,
                        entry.floor,
                        entry.ceil,
                        sig6(approx)
                    );
                }
            }
        }
        printed += 1;
    }
    Ok(if printed == 0 { EXIT_INPUT } else { EXIT_OK })
}

fn cmd_oracle(args: OracleArgs) -> Result<u8, ExperimentError> {
    echo_config(serde_json::json!({
        "command": "oracle",
        "gamma_max_n": args.gamma_max_n,
        "alpha_max_n": args.alpha_max_n,
    }));
    let (graphs, _) = load_graphs(&args.input);
    if graphs.is_empty() {
        eprintln!("no parseable input graphs");
        return Ok(EXIT_INPUT);
    }
    for (id, g) in &graphs {
        let gamma = exact_gamma_limited(g, args.gamma_max_n)?;
        let alpha = exact_alpha_limited(g, args.alpha_max_n)?;
        println!(
            "{id}: n={} m={} gamma={gamma} alpha={alpha}",
            g.n(),
            g.edge_count()
        );
    }
    Ok(EXIT_OK)
}

fn cmd_generate(args: GenerateArgs) -> Result<u8, ExperimentError> {
    let cfg = RngConfig::new(args.seed);
    let params = match args.model {
        Model::Gnp => serde_json::json!({ "p": args.p }),
        Model::Bip => serde_json::json!({ "p_r": args.pr, "p_a": args.pa }),
    };
    echo_config(serde_json::json!({
        "command": "generate",
        "model": match args.model { Model::Gnp => "gnp", Model::Bip => "bip" },
        "n": args.n,
        "params": params,
        "samples": args.samples,
        "seed": args.seed,
        "rejection_cap": args.rejection_cap,
        "algorithm": RNG_ALGORITHM,
    }));

    let mut lines = String::new();
    for index in 0..args.samples {
        let g = match args.model {
            Model::Gnp => {
                let p = args.p.ok_or(ExperimentError::Sample(
                    SampleError::BadParameters("--p is required for the gnp model".into()),
                ))?;
                sample_gnp_capped(args.n, p, &cfg, index, args.rejection_cap)?
            }
            Model::Bip => {
                let (pr, pa) = (args.pr.unwrap_or(0.0), args.pa.unwrap_or(0.0));
                sample_bip_perturbed_capped(args.n, pr, pa, &cfg, index, args.rejection_cap)?
            }
        };
        lines.push_str(&g.to_graph6());
        lines.push('\n');
    }

    let meta = BatchMeta {
        model: match args.model {
            Model::Gnp => "gnp".into(),
            Model::Bip => "bip".into(),
        },
        n: args.n,
        params,
        seed: args.seed,
        index_start: 0,
        index_count: args.samples,
        rejection_cap: args.rejection_cap,
        algorithm: RNG_ALGORITHM.into(),
        side_a_distribution: matches!(args.model, Model::Bip)
            .then(|| SIDE_A_DISTRIBUTION.into()),
    };
    match &args.out {
        Some(prefix) => {
            let g6_path = prefix.with_extension("g6");
            let meta_path = prefix.with_extension("json");
            std::fs::write(&g6_path, lines)?;
            std::fs::write(&meta_path, serde_json::to_string_pretty(&meta)?)?;
            eprintln!("wrote {} and {}", g6_path.display(), meta_path.display());
        }
        None => {
            print!("{lines}");
            eprintln!("meta: {}", serde_json::to_string(&meta)?);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_compare(args: CompareArgs) -> Result<u8, ExperimentError> {
    echo_config(serde_json::json!({
        "command": "compare",
        "reports": args.reports.display().to_string(),
    }));
    let reports = read_reports(&args.reports)?;
    let gamma = compare_domination(&reports)?;
    let alpha = compare_independence(&reports)?;
    match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join("gamma_matrix.csv"), gamma.to_csv())?;
            std::fs::write(dir.join("alpha_matrix.csv"), alpha.to_csv())?;
            eprintln!(
                "wrote matrices for {} reports to {}",
                reports.len(),
                dir.display()
            );
        }
        None => {
            println!("# domination ({} graphs)", gamma.sample_size);
            print!("{}", gamma.to_csv());
            println!("# independence ({} graphs)", alpha.sample_size);
            print!("{}", alpha.to_csv());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, ExperimentError> {
    if args.witnesses {
        return cmd_verify_witnesses(&args);
    }
    echo_config(serde_json::json!({
        "command": "verify",
        "exhaustive_max_n": args.exhaustive_max_n,
        "dist": match args.dist {
            DistKind::All => "all",
            DistKind::Dom => "dom",
            DistKind::Ind => "ind",
            DistKind::Bip => "bip",
        },
        "enum_limit": args.enum_limit,
        "gamma_max_n": args.gamma_max_n,
        "alpha_max_n": args.alpha_max_n,
    }));

    let (mut graphs, _) = load_graphs(&args.input);
    if args.exhaustive_max_n > 0 {
        for n in 3..=args.exhaustive_max_n.min(7) {
            for g in all_graphs(n) {
                if g.in_gamma() {
                    graphs.push((format!("catalog:{}", g.to_graph6()), g));
                }
            }
        }
    }
    if graphs.is_empty() {
        eprintln!("no graphs to verify");
        return Ok(EXIT_INPUT);
    }

    let opts = VerifyOptions {
        enum_limit: args.enum_limit,
        oracle_gamma_max_n: args.gamma_max_n,
        oracle_alpha_max_n: args.alpha_max_n,
        check_dom: matches!(args.dist, DistKind::All | DistKind::Dom),
        check_ind: matches!(args.dist, DistKind::All | DistKind::Ind),
        check_bip: matches!(args.dist, DistKind::All | DistKind::Bip),
        check_sandwich: matches!(args.dist, DistKind::All),
    };

    use rayon::prelude::*;
    let outcomes: Vec<Result<(String, domind::experiment::VerifyOutcome), ExperimentError>> =
        graphs
            .par_iter()
            .map(|(id, g)| verify_graph(g, id, &opts).map(|o| (id.clone(), o)))
            .collect();

    let mut total_checks = 0usize;
    for outcome in outcomes {
        let (id, outcome) = outcome?;
        total_checks += outcome.checks;
        if let Some(first) = outcome.violations.first() {
            println!("FAIL {id}: {first}");
            for v in &outcome.violations[1..] {
                println!("     {v}");
            }
            return Ok(EXIT_VIOLATION);
        }
    }
    println!(
        "ok: {} graphs, {} checks, zero violations",
        graphs.len(),
        total_checks
    );
    Ok(EXIT_OK)
}

fn cmd_verify_witnesses(args: &VerifyArgs) -> Result<u8, ExperimentError> {
    echo_config(serde_json::json!({
        "command": "verify --witnesses",
        "reports": args.reports.as_ref().map(|p| p.display().to_string()),
        "named": args.input.named,
    }));
    let mut reports = match &args.reports {
        Some(path) => read_reports(path)?,
        None => Vec::new(),
    };
    let (graphs, _) = load_graphs(&args.input);
    let opts = EvalOptions {
        timings: false,
        ..EvalOptions::default()
    };
    for (id, g) in &graphs {
        reports.push(evaluate_graph(g, id, &opts)?);
    }
    if reports.is_empty() {
        eprintln!("no reports to search");
        return Ok(EXIT_INPUT);
    }
    let witnesses = find_incomparability_witnesses(&reports)?;
    let mut missing = 0usize;
    for w in &witnesses {
        match &w.graph_id {
            Some(id) => println!("{} beats {}: {}", w.winner, w.loser, id),
            None => {
                println!("{} beats {}: NO WITNESS FOUND", w.winner, w.loser);
                missing += 1;
            }
        }
    }
    Ok(if missing == 0 { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_protocol(args: ProtocolArgs) -> Result<u8, ExperimentError> {
    let cells: Vec<Cell> = if args.paper_grid {
        match args.model {
            Model::Gnp => paper_grid_gnp(),
            Model::Bip => paper_grid_bip(),
        }
    } else {
        let n = args.n.ok_or(ExperimentError::Sample(SampleError::BadParameters(
            "--n is required without --paper-grid".into(),
        )))?;
        match args.model {
            Model::Gnp => vec![Cell::Gnp {
                n,
                p: args.p.unwrap_or(0.5),
            }],
            Model::Bip => vec![Cell::Bip {
                n,
                p_r: args.pr.unwrap_or(0.05),
                p_a: args.pa.unwrap_or(0.05),
            }],
        }
    };
    let samples = args
        .samples
        .unwrap_or_else(|| ((500.0 * args.scale).round() as usize).max(1));

    echo_config(serde_json::json!({
        "command": "protocol",
        "model": match args.model { Model::Gnp => "gnp", Model::Bip => "bip" },
        "cells": cells.len(),
        "samples_per_cell": samples,
        "seed": args.seed,
        "oracle_max_n": args.oracle_max_n,
        "out": args.out.display().to_string(),
        "algorithm": RNG_ALGORITHM,
    }));

    let cfg = ProtocolConfig {
        cells,
        samples_per_cell: samples,
        seed: args.seed,
        oracle_gamma_max_n: args.oracle_max_n,
        oracle_alpha_max_n: args.oracle_max_n,
        hm3: true,
        out_dir: Some(args.out.clone()),
    };
    let outcome = run_protocol(&cfg)?;
    println!(
        "evaluated {} graphs ({} sampling failures); wrote {}",
        outcome.reports.len(),
        outcome.failures.len(),
        args.out.display()
    );
    println!("# domination strict-win matrix");
    print!("{}", outcome.gamma.to_csv());
    println!("# independence strict-win matrix");
    print!("{}", outcome.alpha.to_csv());
    Ok(EXIT_OK)
}
