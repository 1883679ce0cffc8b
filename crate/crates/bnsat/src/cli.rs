//! The `bnsat` command line: thin subcommand wrappers over the library.
//!
//! Exit codes for `solve` are a stable contract: 10 when a model was found,
//! 20 when the budget was exhausted, 1 on input errors. Verification
//! subcommands exit 0 on a passing verdict and 2 on a failing one.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use anyhow::{Context, Result, anyhow, bail};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    self, AbsorptionVerdict, ChainKind, CorrespondenceOutcome, build_markov_chain_capped,
    build_transition_graph_capped, check_absorption, classify,
};
use crate::dynamics::{DEFAULT_PBN_P, PbnParams};
use crate::formula::dimacs::{parse_dimacs, write_dimacs};
use crate::formula::generate::{GenSpec, generate_with_witness};
use crate::formula::{Formula, State};
use crate::harness::{
    BenchPlan, BenchRow, run_bench, run_p_sweep, write_psweep_csv, write_raw_csv, write_summary_csv,
    write_summary_markdown,
};
use crate::mapping::Network;
use crate::solvers::{GsatParams, SolveBudget, Solver};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERDICT_FAILED: i32 = 2;
pub const EXIT_SOLVED: i32 = 10;
pub const EXIT_EXHAUSTED: i32 = 20;

#[derive(Parser)]
#[command(
    name = "bnsat",
    version,
    about = "SAT solving by boolean-network dynamics",
    after_help = "Exit codes for `solve`: 10 solved, 20 exhausted, 1 error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Plain key=value file supplying defaults for omitted flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads for bench/psweep (also: BNSAT_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a DIMACS CNF instance with one of the network solvers.
    Solve(SolveArgs),
    /// Generate a random k-SAT instance, optionally forced satisfiable.
    Gen(GenArgs),
    /// Exhaustive small-instance analysis and verification.
    Analyze(AnalyzeArgs),
    /// Run a solver-comparison benchmark over generated corpora.
    Bench(BenchArgs),
    /// Sweep the mixing probability of the probabilistic solver.
    Psweep(PsweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoFlag {
    Sbn,
    Pbn,
    Abn,
    Gsat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatFlag {
    Text,
    Json,
}

#[derive(Args)]
struct SolveArgs {
    /// Input CNF path, or `-` for standard input.
    input: PathBuf,
    #[arg(long)]
    algo: AlgoFlag,
    /// Mixing probability for the probabilistic solver.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Cap on transitions in the solver's native unit.
    #[arg(long)]
    max_iter: Option<u64>,
    /// Cap on single-node updates (cross-algorithm unit).
    #[arg(long)]
    max_micro: Option<u64>,
    /// Restart threshold coefficient c (threshold = c·n² transitions).
    #[arg(long)]
    restart_coeff: Option<f64>,
    /// Wall-clock limit in milliseconds.
    #[arg(long)]
    time_limit_ms: Option<u64>,
    /// Greedy-flip: flips per try (default 5·n).
    #[arg(long)]
    max_flips: Option<u64>,
    /// Greedy-flip: maximum tries.
    #[arg(long)]
    max_tries: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<FormatFlag>,
    /// Print every visited state to stderr, one bitstring per line.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Literals per clause.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Plant a hidden satisfying assignment.
    #[arg(long)]
    forced: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Output path, or `-` for standard output.
    #[arg(long, default_value = "-")]
    out: PathBuf,
    /// Also write the planted assignment to `<out>.witness` (requires
    /// --forced and a file output).
    #[arg(long)]
    emit_witness: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AnalyzeMode {
    /// Full synchronous transition graph with attractors and basins.
    Graph,
    /// Fixed points versus brute-force solutions over all states.
    #[value(alias = "prop1")]
    Correspondence,
    /// Chain absorption certificate: solutions absorb every trajectory.
    Absorption,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChainFlag {
    Pbn,
    Abn,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input CNF path, or `-` for standard input.
    input: PathBuf,
    #[arg(long)]
    mode: AnalyzeMode,
    /// Which stochastic dynamics to build the chain for (absorption mode).
    #[arg(long, value_enum, default_value_t = ChainFlag::Pbn)]
    chain: ChainFlag,
    #[arg(long)]
    p: Option<f64>,
    /// Write a DOT rendering of the graph (graph mode) or chain (absorption
    /// mode) to this path.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Override the exhaustive-enumeration cap (log2 of the state count).
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<FormatFlag>,
}

#[derive(Args)]
struct BenchArgs {
    /// Corpus shapes as `n`x`m`, comma separated (e.g. 50x100,50x150).
    #[arg(long, value_delimiter = ',', required = true)]
    rows: Vec<String>,
    /// Algorithms: sbn, pbn, pbn:<p>, abn, gsat.
    #[arg(long, value_delimiter = ',', required = true)]
    algos: Vec<String>,
    /// Instances per row.
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Per-run budget in single-node updates.
    #[arg(long)]
    micro_budget: Option<u64>,
    #[arg(long)]
    max_iter: Option<u64>,
    #[arg(long)]
    restart_coeff: Option<f64>,
    #[arg(long)]
    time_limit_ms: Option<u64>,
    /// Literals per clause.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Draw plain random instances instead of forced-satisfiable ones.
    #[arg(long)]
    unforced: bool,
    /// Report directory; receives raw_runs.csv, summary.csv, summary.md.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PsweepArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Probabilities to test, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    grid: Vec<f64>,
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Per-run budget in single-node updates.
    #[arg(long)]
    micro_budget: Option<u64>,
    #[arg(long)]
    restart_coeff: Option<f64>,
    /// Report directory; receives psweep.csv and psweep_raw.csv.
    #[arg(long)]
    out: PathBuf,
}

/// Parses and dispatches, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{err}");
            return EXIT_OK;
        }
        Err(err) => {
            eprint!("{err}");
            return EXIT_ERROR;
        }
    };

    let outcome = (|| -> Result<i32> {
        let config = FileConfig::load(cli.config.as_deref())?;
        init_threads(cli.threads, &config)?;
        match cli.command {
            Command::Solve(args) => cmd_solve(args, &config),
            Command::Gen(args) => cmd_gen(args, &config),
            Command::Analyze(args) => cmd_analyze(args, &config),
            Command::Bench(args) => cmd_bench(args, &config),
            Command::Psweep(args) => cmd_psweep(args, &config),
        }
    })();
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            EXIT_ERROR
        }
    }
}

/// Plain key=value defaults (`#` comments allowed). Flags always win.
struct FileConfig {
    entries: HashMap<String, String>,
}

impl FileConfig {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut entries = HashMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read config {}", path.display()))?;
            for (number, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| anyhow!("config line {}: expected key=value", number + 1))?;
                entries.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(FileConfig { entries })
    }

    fn get<V: FromStr>(&self, key: &str) -> Result<Option<V>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| anyhow!("config key {key}: cannot parse {raw:?}")),
        }
    }
}

fn init_threads(flag: Option<usize>, config: &FileConfig) -> Result<()> {
    let from_env = std::env::var("BNSAT_THREADS").ok().and_then(|v| v.parse().ok());
    if let Some(threads) = flag.or(from_env).or(config.get("threads")?) {
        // Ignore the error if a pool already exists (tests call run() twice).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Ok(())
}

fn read_formula(path: &Path) -> Result<Formula> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("cannot read standard input")?;
        buf
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?
    };
    Ok(parse_dimacs(&text)?)
}

fn model_line(model: &State) -> String {
    let mut line = String::from("v");
    for i in 0..model.len() {
        let v = i as i64 + 1;
        line.push_str(&format!(" {}", if model.get(i) { v } else { -v }));
    }
    line.push_str(" 0");
    line
}

fn cmd_solve(args: SolveArgs, config: &FileConfig) -> Result<i32> {
    let formula = read_formula(&args.input)?;
    let seed = args.seed.or(config.get("seed")?).unwrap_or(1);
    let p = args.p.or(config.get("p")?).unwrap_or(DEFAULT_PBN_P);
    let format = args.format.unwrap_or(FormatFlag::Text);

    let budget = SolveBudget {
        max_iterations: args.max_iter.or(config.get("max-iter")?).unwrap_or(1_000_000),
        restart_coefficient: args.restart_coeff.or(config.get("restart-coeff")?).unwrap_or(1.0),
        wall_clock_limit: args.time_limit_ms.map(Duration::from_millis),
        max_micro_updates: args.max_micro,
    };
    let solver = match args.algo {
        AlgoFlag::Sbn => Solver::Sbn,
        AlgoFlag::Pbn => Solver::Pbn(PbnParams::new(p)?),
        AlgoFlag::Abn => Solver::Abn,
        AlgoFlag::Gsat => Solver::Gsat(GsatParams { max_flips: args.max_flips, max_tries: args.max_tries }),
    };

    let outcome = if args.trace {
        solver.run_observed(&formula, &budget, seed, |state| eprintln!("{state}"))
    } else {
        solver.run(&formula, &budget, seed)
    };

    let record = outcome.record(&formula);
    match format {
        FormatFlag::Json => {
            let mut value = serde_json::to_value(&record)?;
            value["model"] = match outcome.model() {
                Some(model) => serde_json::Value::String(model.to_string()),
                None => serde_json::Value::Null,
            };
            println!("{value}");
            if let Some(model) = outcome.model() {
                println!("{}", model_line(model));
            }
        }
        FormatFlag::Text => {
            match outcome.model() {
                Some(model) => {
                    println!("s SATISFIABLE");
                    println!("{}", model_line(model));
                }
                None => println!("s UNKNOWN"),
            }
            println!(
                "c algorithm={} seed={} iterations={} micro_updates={} restarts={} elapsed_ms={:.3}",
                record.algorithm,
                record.seed,
                record.iterations,
                record.micro_updates,
                record.restarts,
                record.elapsed_ms
            );
        }
    }
    Ok(if outcome.is_solved() { EXIT_SOLVED } else { EXIT_EXHAUSTED })
}

fn cmd_gen(args: GenArgs, config: &FileConfig) -> Result<i32> {
    let seed = args.seed.or(config.get("seed")?).unwrap_or(1);
    let mut spec = GenSpec::new(args.n, args.m, seed).with_width(args.k);
    if args.forced {
        spec = spec.forced();
    }
    spec.validate()?;
    if args.emit_witness && !args.forced {
        bail!("--emit-witness requires --forced");
    }
    let to_stdout = args.out == Path::new("-");
    if args.emit_witness && to_stdout {
        bail!("--emit-witness requires a file output (--out)");
    }

    let (formula, witness) = generate_with_witness(&spec);
    let text = write_dimacs(&formula);
    if to_stdout {
        print!("{text}");
    } else {
        fs::write(&args.out, text).with_context(|| format!("cannot write {}", args.out.display()))?;
    }
    if args.emit_witness {
        let witness = witness.expect("forced generation yields a witness");
        let mut path = args.out.into_os_string();
        path.push(".witness");
        let path = PathBuf::from(path);
        fs::write(&path, model_line(&witness) + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(EXIT_OK)
}

fn cmd_analyze(args: AnalyzeArgs, config: &FileConfig) -> Result<i32> {
    let formula = read_formula(&args.input)?;
    let format = args.format.unwrap_or(FormatFlag::Json);
    let net = Network::compile(&formula);

    match args.mode {
        AnalyzeMode::Graph => {
            let cap = args.cap.unwrap_or(analysis::DEFAULT_STATE_CAP);
            let graph = build_transition_graph_capped(&net, cap)?;
            let report = classify(&graph);
            if let Some(path) = &args.dot {
                fs::write(path, analysis::dot::transition_graph_dot(&graph))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            match format {
                FormatFlag::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                FormatFlag::Text => {
                    for attractor in &report.attractors {
                        let states: Vec<String> =
                            attractor.states.iter().map(State::to_string).collect();
                        if attractor.is_fixed_point() {
                            println!("fixed point {} basin {}", states[0], attractor.basin_size);
                        } else {
                            println!(
                                "cycle period {} states {} basin {}",
                                attractor.period,
                                states.join(","),
                                attractor.basin_size
                            );
                        }
                    }
                }
            }
            Ok(EXIT_OK)
        }
        AnalyzeMode::Correspondence => {
            let cap = args.cap.unwrap_or(analysis::DEFAULT_STATE_CAP);
            let outcome = analysis::check_correspondence_capped(&formula, cap)?;
            match &outcome {
                CorrespondenceOutcome::Verified => match format {
                    FormatFlag::Json => println!("{}", serde_json::json!({"mode": "correspondence", "ok": true})),
                    FormatFlag::Text => println!("ok: fixed points match solutions on all {} states", 1u64 << formula.num_vars()),
                },
                CorrespondenceOutcome::Counterexample(state) => match format {
                    FormatFlag::Json => println!(
                        "{}",
                        serde_json::json!({"mode": "correspondence", "ok": false, "counterexample": state.to_string()})
                    ),
                    FormatFlag::Text => println!("counterexample: {state}"),
                },
            }
            Ok(if outcome.is_verified() { EXIT_OK } else { EXIT_VERDICT_FAILED })
        }
        AnalyzeMode::Absorption => {
            let p = args.p.or(config.get("p")?).unwrap_or(DEFAULT_PBN_P);
            let (kind, cap_default) = match args.chain {
                ChainFlag::Pbn => (ChainKind::Pbn { p }, analysis::markov::DEFAULT_PBN_CHAIN_CAP),
                ChainFlag::Abn => (ChainKind::AbnMicro, analysis::markov::DEFAULT_ABN_CHAIN_CAP),
            };
            let cap = args.cap.unwrap_or(cap_default);
            let chain = build_markov_chain_capped(&net, kind, cap)?;
            let solutions = analysis::brute_force_solutions_capped(&formula, cap)?;
            let verdict = check_absorption(&chain, &solutions);
            if let Some(path) = &args.dot {
                fs::write(path, analysis::dot::markov_chain_dot(&chain))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            describe_absorption(&verdict, format);
            Ok(if verdict.is_ok() { EXIT_OK } else { EXIT_VERDICT_FAILED })
        }
    }
}

fn describe_absorption(verdict: &AbsorptionVerdict, format: FormatFlag) {
    let (ok, detail) = match verdict {
        AbsorptionVerdict::Ok => (true, "solutions absorb every trajectory".to_string()),
        AbsorptionVerdict::OkVacuous => (true, "vacuous: unsatisfiable, no absorbing states".to_string()),
        AbsorptionVerdict::AbsorbingMismatch { missing, extra } => (
            false,
            format!(
                "absorbing mismatch: missing [{}] extra [{}]",
                missing.iter().map(State::to_string).collect::<Vec<_>>().join(","),
                extra.iter().map(State::to_string).collect::<Vec<_>>().join(","),
            ),
        ),
        AbsorptionVerdict::Stuck { states } => (
            false,
            format!(
                "stuck states: [{}]",
                states.iter().map(State::to_string).collect::<Vec<_>>().join(",")
            ),
        ),
    };
    match format {
        FormatFlag::Json => {
            println!("{}", serde_json::json!({"mode": "absorption", "ok": ok, "detail": detail}))
        }
        FormatFlag::Text => println!("{}{}", if ok { "ok: " } else { "failed: " }, detail),
    }
}

fn parse_bench_row(raw: &str, instances: usize) -> Result<BenchRow> {
    let (n, m) = raw
        .split_once(['x', 'X'])
        .ok_or_else(|| anyhow!("row {raw:?}: expected <n>x<m>"))?;
    Ok(BenchRow {
        num_vars: n.trim().parse().with_context(|| format!("row {raw:?}: bad n"))?,
        num_clauses: m.trim().parse().with_context(|| format!("row {raw:?}: bad m"))?,
        instances,
    })
}

fn parse_algo(raw: &str) -> Result<Solver> {
    let raw = raw.trim();
    if let Some(p) = raw.strip_prefix("pbn:") {
        let p: f64 = p.parse().with_context(|| format!("algorithm {raw:?}: bad probability"))?;
        return Ok(Solver::Pbn(PbnParams::new(p)?));
    }
    match raw {
        "sbn" => Ok(Solver::Sbn),
        "pbn" => Ok(Solver::Pbn(PbnParams::default())),
        "abn" => Ok(Solver::Abn),
        "gsat" => Ok(Solver::Gsat(GsatParams::default())),
        other => bail!("unknown algorithm {other:?} (expected sbn, pbn[:p], abn, gsat)"),
    }
}

fn bench_budget(
    micro_budget: Option<u64>,
    max_iter: Option<u64>,
    restart_coeff: f64,
    time_limit_ms: Option<u64>,
) -> SolveBudget {
    SolveBudget {
        max_iterations: max_iter.unwrap_or(if micro_budget.is_some() { u64::MAX } else { 1_000_000 }),
        restart_coefficient: restart_coeff,
        wall_clock_limit: time_limit_ms.map(Duration::from_millis),
        max_micro_updates: micro_budget,
    }
}

fn cmd_bench(args: BenchArgs, config: &FileConfig) -> Result<i32> {
    let instances = args.instances.or(config.get("instances")?).unwrap_or(100);
    let seed = args.seed.or(config.get("seed")?).unwrap_or(1);
    let micro = args.micro_budget.or(config.get("micro-budget")?);
    let restart = args.restart_coeff.or(config.get("restart-coeff")?).unwrap_or(1.0);

    let rows = args
        .rows
        .iter()
        .map(|raw| parse_bench_row(raw, instances))
        .collect::<Result<Vec<_>>>()?;
    let algorithms = args.algos.iter().map(|raw| parse_algo(raw)).collect::<Result<Vec<_>>>()?;

    let mut plan = BenchPlan::new(rows, algorithms, bench_budget(micro, args.max_iter, restart, args.time_limit_ms), seed);
    plan.clause_width = args.k;
    plan.forced = !args.unforced;

    let (report, runs) = run_bench(&plan);

    fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    let mut raw = Vec::new();
    write_raw_csv(&runs, &mut raw)?;
    fs::write(args.out.join("raw_runs.csv"), raw)?;
    let mut summary = Vec::new();
    write_summary_csv(&report, &mut summary)?;
    fs::write(args.out.join("summary.csv"), summary)?;
    let mut markdown = Vec::new();
    write_summary_markdown(&report, &mut markdown)?;
    fs::write(args.out.join("summary.md"), &markdown)?;

    print!("{}", String::from_utf8_lossy(&markdown));
    Ok(EXIT_OK)
}

fn cmd_psweep(args: PsweepArgs, config: &FileConfig) -> Result<i32> {
    let instances = args.instances.or(config.get("instances")?).unwrap_or(100);
    let seed = args.seed.or(config.get("seed")?).unwrap_or(1);
    let micro = args.micro_budget.or(config.get("micro-budget")?);
    let restart = args.restart_coeff.or(config.get("restart-coeff")?).unwrap_or(1.0);
    let budget = bench_budget(micro, None, restart, None);

    let (report, runs) = run_p_sweep(args.n, args.m, &args.grid, instances, &budget, seed);

    fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    let mut csv = Vec::new();
    write_psweep_csv(&report, &mut csv)?;
    fs::write(args.out.join("psweep.csv"), &csv)?;
    let mut raw = Vec::new();
    write_raw_csv(&runs, &mut raw)?;
    fs::write(args.out.join("psweep_raw.csv"), raw)?;

    print!("{}", String::from_utf8_lossy(&csv));
    if let Some(best) = report.best_cell() {
        println!(
            "best: p={} solved={:.1}% median_iterations={:.1}",
            best.p, best.solved_pct, best.median_iterations
        );
    }
    Ok(EXIT_OK)
}
