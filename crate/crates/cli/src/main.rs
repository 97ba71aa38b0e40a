//! `bbcompress`: generate branch-and-bound trees, compress them, and compare
//! node orderings.

mod config;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use bbcompress::branching::{
    generate_tree, generate_tree_with, BranchRule, BranchingConfig, GenerationLog, NoObserver,
};
use bbcompress::clock::Clock;
use bbcompress::compress::{
    compress_with, CompressMode, CompressionLog, DisjunctionFinder, DropOnly, HeuristicConfig, HeuristicFinder,
    MrFinder, SupportMode,
};
use bbcompress::instance::{parse_json_instance, parse_mps, Instance};
use bbcompress::lp::{Backend, LpOptions};
use bbcompress::ordering::{auc, order_nodes, precompute_records, simulate, structural_records, NodeRecord, Ordering};
use bbcompress::scalar::parse_rational;
use bbcompress::tree::{deserialize_tree, serialize_tree};
use bbcompress::{compress::compression_ratio, BbTree, ExtendedValue, Rational, Scalar};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use config::{Common, CompressOpts, ConfigFile, GenerateOpts, Merge, PrecomputeOpts, ReportOpts, SimulateOpts};

#[derive(Parser)]
#[command(
    name = "bbcompress",
    version,
    about = "Branch-and-bound tree generation and compression"
)]
struct Cli {
    /// TOML or JSON file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a branch-and-bound tree for each instance.
    Generate {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        /// Tree file (single instance only).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for `<name>.tree.jsonl` files.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        opts: GenerateOpts,
    },
    /// Compress a tree with drop and replace steps.
    Compress {
        tree: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Compression log; defaults to `<out>.log.jsonl`.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Records used by record-based orderings.
        #[arg(long)]
        records: Option<PathBuf>,
        #[command(flatten)]
        opts: CompressOpts,
    },
    /// Process every internal node once against the original bound.
    Precompute {
        tree: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        opts: PrecomputeOpts,
    },
    /// Replay precomputed records under node orderings.
    Simulate {
        tree: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        opts: SimulateOpts,
    },
    /// Aggregate trajectory CSVs and compression logs per strategy.
    Report {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        opts: ReportOpts,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Run(anyhow::Error),
}

pub trait FailExt<T> {
    fn usage(self) -> Result<T, Failure>;
    fn run(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> FailExt<T> for Result<T, E> {
    fn usage(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Usage(e.into()))
    }

    fn run(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Run(e.into()))
    }
}

fn usage_err(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow!(msg.into()))
}

struct Settings {
    backend: Option<Backend>,
    virtual_clock: bool,
    config_snapshot: serde_json::Value,
}

impl Settings {
    fn clock(&self) -> Clock {
        if self.virtual_clock {
            Clock::virtual_clock()
        } else {
            Clock::wall()
        }
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    instance_path: Option<String>,
    instance_hash: Option<String>,
    backend: &'a str,
    virtual_clock: bool,
    config: &'a serde_json::Value,
    seed: Option<u64>,
    wall_time_secs: f64,
    outputs: Vec<String>,
    version: &'static str,
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(suffix);
    path.with_file_name(name)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating {}", dir.display()))
            .usage()?;
    }
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .usage()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .usage()
}

#[allow(clippy::too_many_arguments)]
fn write_manifest(
    command: &str,
    settings: &Settings,
    backend: Backend,
    instance: Option<(&Path, &Instance<Rational>)>,
    seed: Option<u64>,
    started: Instant,
    outputs: &[&Path],
    main_output: &Path,
) -> Result<(), Failure> {
    let manifest = Manifest {
        command,
        instance_path: instance.map(|(p, _)| p.display().to_string()),
        instance_hash: instance.map(|(_, i)| i.content_hash()),
        backend: backend_name(backend),
        virtual_clock: settings.virtual_clock,
        config: &settings.config_snapshot,
        seed,
        wall_time_secs: started.elapsed().as_secs_f64(),
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        version: env!("CARGO_PKG_VERSION"),
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write(&sibling(main_output, ".manifest.json"), &(text + "\n"))
}

fn backend_name(b: Backend) -> &'static str {
    match b {
        Backend::Exact => Rational::NAME,
        Backend::Float => f64::NAME,
    }
}

fn load_instance(path: &Path) -> Result<Instance<Rational>, Failure> {
    let text = read(path)?;
    let parsed = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => parse_json_instance(&text),
        _ => parse_mps(&text),
    };
    parsed.with_context(|| format!("parsing {}", path.display())).usage()
}

/// Backend named in a tree file's header.
fn tree_backend(path: &Path) -> Result<Backend, Failure> {
    let text = read(path)?;
    let first = text.lines().next().unwrap_or_default();
    let header: serde_json::Value = serde_json::from_str(first)
        .with_context(|| format!("{}: bad header", path.display()))
        .usage()?;
    header
        .get("backend")
        .and_then(|b| b.as_str())
        .ok_or_else(|| usage_err(format!("{}: header has no backend", path.display())))?
        .parse()
        .map_err(usage_err)
}

fn resolve_backend(settings: &Settings, tree: &Path) -> Result<Backend, Failure> {
    let found = tree_backend(tree)?;
    match settings.backend {
        Some(b) if b != found => Err(usage_err(format!(
            "tree {} was built with the {} backend",
            tree.display(),
            backend_name(found)
        ))),
        _ => Ok(found),
    }
}

fn load_tree<S: Scalar>(path: &Path, instance: &Instance<Rational>) -> Result<BbTree<S>, Failure> {
    let text = read(path)?;
    deserialize_tree(&text, Arc::new(instance.convert()))
        .with_context(|| format!("loading {}", path.display()))
        .usage()
}

fn secs(v: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(v).map_err(|e| usage_err(format!("bad duration {v}: {e}")))
}

// ---------- generate ----------

enum IncumbentMode {
    None,
    Auto,
    Value(Rational),
}

fn parse_incumbent(text: Option<&str>) -> Result<IncumbentMode, Failure> {
    match text.unwrap_or("none") {
        "none" => Ok(IncumbentMode::None),
        "auto" => Ok(IncumbentMode::Auto),
        other => parse_rational(other)
            .map(IncumbentMode::Value)
            .ok_or_else(|| usage_err(format!("bad incumbent `{other}`"))),
    }
}

fn generate_one<S: Scalar>(
    instance: &Instance<Rational>,
    config: &BranchingConfig,
    incumbent: &IncumbentMode,
    seed: u64,
    clock: &Clock,
) -> Result<(String, GenerationLog, usize), Failure> {
    let mut inst: Instance<S> = instance.convert();
    match incumbent {
        IncumbentMode::None => {}
        IncumbentMode::Value(v) => inst.known_optimal_value = Some(ExtendedValue::Finite(S::from_rational(v))),
        IncumbentMode::Auto => {
            let (_, log) = generate_tree(Arc::new(inst.clone()), &BranchingConfig::rb(), seed).run()?;
            if let Some(v) = ExtendedValue::<S>::parse_text(&log.incumbent).filter(ExtendedValue::is_finite) {
                inst.known_optimal_value = Some(v);
            }
        }
    }
    let (tree, log) = generate_tree_with(
        Arc::new(inst),
        config,
        seed,
        LpOptions::default(),
        clock,
        &mut NoObserver,
    )
    .with_context(|| format!("generating a tree for {}", instance.name))
    .run()?;
    Ok((serialize_tree(&tree), log, tree.size()))
}

fn cmd_generate(
    settings: &Settings,
    instances: &[PathBuf],
    out: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    opts: GenerateOpts,
) -> Result<(), Failure> {
    let rule: BranchRule = opts.rule.as_deref().unwrap_or("rb").parse().map_err(usage_err)?;
    let mut config = match rule {
        BranchRule::Fsb => BranchingConfig::fsb(),
        BranchRule::Rb => BranchingConfig::rb(),
    };
    if let Some(p) = opts.plunge {
        config.plunging = p;
    }
    if let Some(n) = opts.node_limit {
        config.node_limit = n;
    }
    let incumbent = parse_incumbent(opts.incumbent.as_deref())?;
    let seed = opts.seed.unwrap_or(0);
    let backend = settings.backend.unwrap_or_default();
    let targets: Vec<(PathBuf, PathBuf)> = match (instances, out, out_dir) {
        ([one], Some(out), None) => vec![(one.clone(), out)],
        (_, None, Some(dir)) => instances
            .iter()
            .map(|p| {
                let stem = p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                (p.clone(), dir.join(format!("{stem}.tree.jsonl")))
            })
            .collect(),
        _ => return Err(usage_err("give --out for one instance or --out-dir for several")),
    };
    let results: Vec<Result<(), Failure>> = targets
        .par_iter()
        .map(|(path, out)| {
            let started = Instant::now();
            let instance = load_instance(path)?;
            let clock = settings.clock();
            let (text, log, size) = match backend {
                Backend::Exact => generate_one::<Rational>(&instance, &config, &incumbent, seed, &clock)?,
                Backend::Float => generate_one::<f64>(&instance, &config, &incumbent, seed, &clock)?,
            };
            write(out, &text)?;
            let log_path = sibling(out, ".gen.json");
            write(
                &log_path,
                &(serde_json::to_string_pretty(&log).expect("log serializes") + "\n"),
            )?;
            write_manifest(
                "generate",
                settings,
                backend,
                Some((path, &instance)),
                Some(seed),
                started,
                &[out, &log_path],
                out,
            )?;
            println!(
                "{}: {} nodes, status {:?}, {} LP solves",
                instance.name, size, log.status, log.lp_solves
            );
            Ok(())
        })
        .collect();
    results.into_iter().collect()
}

// ---------- compress ----------

fn parse_support(method: &str, supp: Option<&str>) -> Result<SupportMode, Failure> {
    match method {
        "drop" => Ok(SupportMode::DropOnly),
        "exact" | "heuristic" => {
            let s = supp.unwrap_or("inf");
            format!("supp:{s}").parse().map_err(|e: String| usage_err(e))
        }
        other => Err(usage_err(format!("unknown method `{other}`"))),
    }
}

fn make_finder<S: Scalar>(
    method: &str,
    supp: Option<&str>,
    m: Option<i64>,
    node_limit: Option<Duration>,
    global_limit: Option<Duration>,
) -> Result<Box<dyn DisjunctionFinder<S>>, Failure> {
    let support = parse_support(method, supp)?;
    Ok(match method {
        "drop" => Box::new(DropOnly),
        "heuristic" => Box::new(HeuristicFinder {
            config: HeuristicConfig {
                per_node_limit: node_limit,
                global_limit,
                coefficient_cap: m.unwrap_or(100),
                ..HeuristicConfig::default()
            },
        }),
        _ => {
            let mut mode = CompressMode::new(support).with_coefficient_bound(m.unwrap_or(100));
            mode.per_node_limit = node_limit.or(mode.per_node_limit);
            mode.global_limit = global_limit.or(mode.global_limit);
            Box::new(MrFinder { mode })
        }
    })
}

fn read_records(path: &Path) -> Result<Vec<NodeRecord>, Failure> {
    read(path)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            serde_json::from_str(l)
                .with_context(|| format!("{} line {}", path.display(), i + 1))
                .usage()
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn compress_one<S: Scalar>(
    settings: &Settings,
    tree_path: &Path,
    instance: &Instance<Rational>,
    out: &Path,
    log_path: &Path,
    records: Option<&Path>,
    opts: &CompressOpts,
) -> Result<CompressionLog, Failure> {
    let tree: BbTree<S> = load_tree(tree_path, instance)?;
    let method = opts.method.as_deref().unwrap_or("heuristic");
    let default_global = if method == "exact" { 86_400.0 } else { 900.0 };
    let global = secs(opts.time_limit.unwrap_or(default_global))?;
    let node_limit = opts.node_time_limit.map(secs).transpose()?;
    let mut finder = make_finder::<S>(
        method,
        opts.supp.as_deref(),
        opts.coefficient_bound,
        node_limit,
        Some(global),
    )?;
    let ordering: Ordering = opts.order.as_deref().unwrap_or("dfs").parse().map_err(usage_err)?;
    let recs = match records {
        Some(p) => read_records(p)?,
        None if ordering == Ordering::Expert => return Err(usage_err("--order expert needs --records")),
        None => structural_records(&tree),
    };
    let order = order_nodes(&recs, &tree, ordering).usage()?;
    let clock = settings.clock();
    let (compressed, log) = compress_with(&tree, finder.as_mut(), Some(&order), Some(global), &clock).run()?;
    write(out, &serialize_tree(&compressed))?;
    write(log_path, &log.to_jsonl())?;
    Ok(log)
}

// ---------- precompute ----------

fn precompute_one<S: Scalar>(
    settings: &Settings,
    tree_path: &Path,
    instance: &Instance<Rational>,
    opts: &PrecomputeOpts,
) -> Result<Vec<NodeRecord>, Failure> {
    let tree: BbTree<S> = load_tree(tree_path, instance)?;
    let limit = secs(opts.node_limit_seconds.unwrap_or(1200.0))?;
    let method = opts.finder.as_deref().unwrap_or("heuristic");
    let mut finder = make_finder::<S>(method, opts.supp.as_deref(), opts.coefficient_bound, Some(limit), None)?;
    precompute_records(&tree, finder.as_mut(), Some(limit), &settings.clock()).run()
}

// ---------- simulate ----------

fn parse_horizons(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|h| match h.trim() {
            "inf" => Ok(f64::INFINITY),
            v => v
                .parse::<f64>()
                .ok()
                .filter(|x| *x >= 0.0)
                .ok_or_else(|| usage_err(format!("bad horizon `{v}`"))),
        })
        .collect()
}

pub fn format_horizon(h: f64) -> String {
    if h.is_infinite() {
        "inf".into()
    } else if h.fract() == 0.0 {
        format!("{h:.0}")
    } else {
        format!("{h}")
    }
}

#[derive(Debug, Serialize)]
struct TrajectoryRow {
    instance: String,
    strategy: String,
    #[serde(rename = "T")]
    t: String,
    auc_pct: String,
    ratio_pct: String,
    nodes_processed: usize,
}

fn simulate_one<S: Scalar>(
    tree_path: &Path,
    instance: &Instance<Rational>,
    records: &[NodeRecord],
    strategies: &[Ordering],
    horizons: &[f64],
    terminal: bool,
) -> Result<Vec<TrajectoryRow>, Failure> {
    let tree: BbTree<S> = load_tree(tree_path, instance)?;
    let jobs: Vec<(Ordering, f64)> = strategies
        .iter()
        .flat_map(|s| horizons.iter().map(move |h| (*s, *h)))
        .collect();
    jobs.par_iter()
        .map(|(strategy, h)| {
            let order = order_nodes(records, &tree, *strategy).usage()?;
            let traj = simulate(&tree, records, &order, *h);
            let auc_pct = if h.is_finite() && *h > 0.0 {
                format!("{:.4}", auc(&traj, terminal).expect("positive horizon"))
            } else {
                String::new()
            };
            Ok(TrajectoryRow {
                instance: instance.name.clone(),
                strategy: strategy.name().into(),
                t: format_horizon(*h),
                auc_pct,
                ratio_pct: format!("{:.4}", compression_ratio(traj.s0, traj.final_size())),
                nodes_processed: traj.nodes_processed(),
            })
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = ConfigFile::load(cli.config.as_deref()).usage()?;
    let common = cli.common.merge(file.common());
    if let Some(jobs) = common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| usage_err(e.to_string()))?;
    }
    let backend = common
        .backend
        .as_deref()
        .map(str::parse::<Backend>)
        .transpose()
        .map_err(usage_err)?;
    let snapshot = |opts: &dyn erased::Snapshot| -> serde_json::Value {
        serde_json::json!({ "common": common, "options": opts.snapshot() })
    };
    let mut settings = Settings {
        backend,
        virtual_clock: common.virtual_clock.unwrap_or(false),
        config_snapshot: serde_json::Value::Null,
    };
    let started = Instant::now();
    match cli.command {
        Command::Generate {
            instances,
            out,
            out_dir,
            opts,
        } => {
            let opts = opts.merge(file.generate);
            settings.config_snapshot = snapshot(&opts);
            cmd_generate(&settings, &instances, out, out_dir, opts)
        }
        Command::Compress {
            tree,
            instance,
            out,
            log,
            records,
            opts,
        } => {
            let opts = opts.merge(file.compress);
            settings.config_snapshot = snapshot(&opts);
            let inst = load_instance(&instance)?;
            let backend = resolve_backend(&settings, &tree)?;
            let log_path = log.unwrap_or_else(|| sibling(&out, ".log.jsonl"));
            let result = match backend {
                Backend::Exact => {
                    compress_one::<Rational>(&settings, &tree, &inst, &out, &log_path, records.as_deref(), &opts)?
                }
                Backend::Float => {
                    compress_one::<f64>(&settings, &tree, &inst, &out, &log_path, records.as_deref(), &opts)?
                }
            };
            write_manifest(
                "compress",
                &settings,
                backend,
                Some((&instance, &inst)),
                None,
                started,
                &[&out, &log_path],
                &out,
            )?;
            let s = &result.summary;
            println!(
                "{}: size {} -> {} ({:.2}%), bound {} -> {}, {:.3} s{}",
                s.method,
                s.initial_size,
                s.final_size,
                result.ratio_pct(),
                s.initial_bound,
                s.final_bound,
                s.total_time_secs,
                if s.timed_out { ", time limit reached" } else { "" }
            );
            Ok(())
        }
        Command::Precompute {
            tree,
            instance,
            out,
            opts,
        } => {
            let opts = opts.merge(file.precompute);
            settings.config_snapshot = snapshot(&opts);
            let inst = load_instance(&instance)?;
            let backend = resolve_backend(&settings, &tree)?;
            let records = match backend {
                Backend::Exact => precompute_one::<Rational>(&settings, &tree, &inst, &opts)?,
                Backend::Float => precompute_one::<f64>(&settings, &tree, &inst, &opts)?,
            };
            let text: String = records
                .iter()
                .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
                .collect();
            write(&out, &text)?;
            write_manifest(
                "precompute",
                &settings,
                backend,
                Some((&instance, &inst)),
                None,
                started,
                &[&out],
                &out,
            )?;
            let compressible = records.iter().filter(|r| r.compressible).count();
            println!("{} records, {} compressible", records.len(), compressible);
            Ok(())
        }
        Command::Simulate {
            tree,
            instance,
            records,
            out,
            opts,
        } => {
            let opts = opts.merge(file.simulate);
            settings.config_snapshot = snapshot(&opts);
            let inst = load_instance(&instance)?;
            let backend = resolve_backend(&settings, &tree)?;
            let recs = read_records(&records)?;
            let seed = opts.seed.unwrap_or(0);
            let strategies: Vec<Ordering> = match opts.strategy.as_deref().unwrap_or("all") {
                "all" => Ordering::all(seed).to_vec(),
                s => vec![match s.parse().map_err(usage_err)? {
                    Ordering::Random(0) if !s.contains(':') => Ordering::Random(seed),
                    o => o,
                }],
            };
            let horizons = parse_horizons(opts.horizon.as_deref().unwrap_or("900,3600,14400,inf"))?;
            let terminal = !opts.no_terminal.unwrap_or(false);
            let rows = match backend {
                Backend::Exact => simulate_one::<Rational>(&tree, &inst, &recs, &strategies, &horizons, terminal)?,
                Backend::Float => simulate_one::<f64>(&tree, &inst, &recs, &strategies, &horizons, terminal)?,
            };
            write(&out, &report::to_csv(&rows)?)?;
            write_manifest(
                "simulate",
                &settings,
                backend,
                Some((&instance, &inst)),
                Some(seed),
                started,
                &[&out],
                &out,
            )?;
            println!("{} rows", rows.len());
            Ok(())
        }
        Command::Report { inputs, out, opts } => {
            let opts = opts.merge(file.report);
            settings.config_snapshot = snapshot(&opts);
            let files = report::expand(&inputs)?;
            let summary = report::summarize(&files, opts.auc_horizon.unwrap_or(14_400.0))?;
            write(&out, &report::to_csv(&summary)?)?;
            write_manifest(
                "report",
                &settings,
                settings.backend.unwrap_or_default(),
                None,
                None,
                started,
                &[&out],
                &out,
            )?;
            println!("{} strategies from {} files", summary.len(), files.len());
            Ok(())
        }
    }
}

mod erased {
    pub trait Snapshot {
        fn snapshot(&self) -> serde_json::Value;
    }

    impl<T: serde::Serialize> Snapshot for T {
        fn snapshot(&self) -> serde_json::Value {
            serde_json::to_value(self).expect("options serialize")
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = serde_json::json!({ "error": "usage", "message": e.to_string().trim() });
            eprintln!("{err}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (kind, code, e) = match f {
                Failure::Usage(e) => ("usage", 2, e),
                Failure::Run(e) => ("run", 1, e),
            };
            let err = serde_json::json!({ "error": kind, "message": format!("{e:#}") });
            eprintln!("{err}");
            ExitCode::from(code)
        }
    }
}
