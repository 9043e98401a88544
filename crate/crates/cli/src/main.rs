//! Command-line front end for the `irregular-core` constructions.
//!
//! Four subcommands: `gen` writes host graphs as plain edge-list files,
//! `run` executes one construction per seed and prints a one-line summary
//! each, `oracle` answers exact small-host questions by enumeration, and
//! `verify` audits a stored subgraph against its host file.
//!
//! Exit codes are part of the interface:
//!
//! | code | meaning                                        |
//! |------|------------------------------------------------|
//! | 0    | success                                        |
//! | 1    | output failed verification                     |
//! | 2    | retry / resample budget exhausted              |
//! | 3    | host outside the algorithm's regime            |
//! | 4    | unreadable or malformed file                   |
//! | 5    | enumeration or search cap exceeded             |
//! | 6    | bad flags, bad config, or bad generator params |
//!
//! Identical command lines (including seeds) produce byte-identical
//! outputs: multi-trial runs fan out over worker threads but merge their
//! summaries, profiles, and reports in seed order, so `--jobs` never
//! changes what is written.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use irregular_core::graph::Graph;
use irregular_core::{dense, generate, intervals, io, oracle, rounding, strength, threshold, verify};

const EXIT_VERIFY: u8 = 1;
const EXIT_RETRIES: u8 = 2;
const EXIT_REGIME: u8 = 3;
const EXIT_FILE: u8 = 4;
const EXIT_CAP: u8 = 5;
const EXIT_USAGE: u8 = 6;

/// Environment variable consulted for the default `--jobs` value.
const JOBS_ENV: &str = "IRREGULAR_JOBS";

#[derive(Parser)]
#[command(name = "irregular", version, about = "Spanning subgraphs with low degree multiplicity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a host graph and write it as an edge list.
    Gen(GenArgs),
    /// Run a construction on a host graph, one trial per seed.
    Run(RunArgs),
    /// Answer an exact question about a small host by enumeration.
    Oracle(OracleArgs),
    /// Audit a stored subgraph against its host graph.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenModel {
    /// Random d-regular graph via the pairing model.
    Regular,
    /// Disjoint union of short cycles (always 2-regular).
    CycleUnion,
    /// Random graph topped up to a minimum-degree floor.
    ErMindeg,
}

#[derive(Args)]
struct GenArgs {
    /// Host model to draw from.
    #[arg(long, value_enum)]
    model: GenModel,
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Degree (regular) or minimum degree (er-mindeg); cycle unions are 2-regular.
    #[arg(long, visible_alias = "delta")]
    d: Option<usize>,
    /// Seed for the randomized models.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// One independent-threshold draw, no acceptance test.
    Threshold,
    /// Resampled thresholds on a regular host until all degree counts balance.
    #[value(name = "prop24")]
    Balanced,
    /// Peel, split, and resample for low multiplicity under a minimum-degree floor.
    #[value(name = "prop25")]
    LowMult,
    /// Prescribed degree sets on a regular host via interval halving.
    SplitRegular,
    /// Block-degree prescription for hosts with only a minimum-degree floor.
    SplitGeneral,
    /// Dependent rounding of fractional edge weights.
    Round,
    /// Exact strength search plus transfer to a subgraph.
    Strength,
    /// Two-scale weighting pipeline for dense regular hosts.
    Dense,
}

#[derive(Args)]
struct RunArgs {
    /// Construction to run.
    #[arg(long, value_enum)]
    algo: Algo,
    /// Host graph file (edge list).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Accuracy knob for the sampling and dense pipelines (default 0.2).
    #[arg(long)]
    eps: Option<f64>,
    /// Base seed; trial i runs with seed + i (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Resample budget for the accepting samplers.
    #[arg(long)]
    retries: Option<u32>,
    /// Number of independent seeds to run (default 1).
    #[arg(long)]
    trials: Option<u32>,
    /// Worker threads for multi-trial runs; default IRREGULAR_JOBS, then all cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// KEY=VALUE file supplying defaults for the flags above; flags win.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Fractional edge weights, one `p/q` per edge line (round only).
    #[arg(long, value_name = "FILE")]
    weights: Option<PathBuf>,
    /// Write per-trial degree profiles (CSV) here.
    #[arg(long, value_name = "FILE")]
    out_profile: Option<PathBuf>,
    /// Write per-trial run reports (CSV) here.
    #[arg(long, value_name = "FILE")]
    out_report: Option<PathBuf>,
    /// Store the resulting subgraph (single trial only).
    #[arg(long, value_name = "FILE")]
    out_subgraph: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleCheck {
    /// Exhaustive minimum of the largest degree multiplicity.
    MinM,
    /// Best achievable balance of degree counts on a regular host.
    Conj11,
    /// Whether the exhaustive minimum sits within the additive-slack bound.
    Conj12,
}

#[derive(Args)]
struct OracleArgs {
    /// Host graph file (edge list).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Question to answer.
    #[arg(long, value_enum)]
    check: OracleCheck,
}

#[derive(Args)]
struct VerifyArgs {
    /// Host graph file (edge list).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Stored subgraph file (`# subgraph of <digest>` header plus edge indices).
    #[arg(long, value_name = "FILE")]
    subgraph: PathBuf,
}

/// A failure with the exit code it must map to.
struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive as "errors" but are not failures.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Run(args) => cmd_run(args),
        Cmd::Oracle(args) => cmd_oracle(args),
        Cmd::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

// ---------------------------------------------------------------- plumbing

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_FILE, format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| fail(EXIT_FILE, format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_file(path)?;
    io::parse_edge_list(&text).map_err(|e| fail(EXIT_FILE, format!("{}: {e}", path.display())))
}

fn map_gen(e: generate::GenError) -> Failure {
    match e {
        generate::GenError::BudgetExhausted(_) => fail(EXIT_RETRIES, e.to_string()),
        _ => fail(EXIT_USAGE, e.to_string()),
    }
}

fn map_threshold(e: threshold::ThresholdError) -> Failure {
    match e {
        threshold::ThresholdError::BadEpsilon(_) => fail(EXIT_USAGE, e.to_string()),
        _ => fail(EXIT_REGIME, e.to_string()),
    }
}

fn map_interval(e: intervals::IntervalError) -> Failure {
    match e {
        intervals::IntervalError::BudgetExhausted { .. } => fail(EXIT_RETRIES, e.to_string()),
        _ => fail(EXIT_REGIME, e.to_string()),
    }
}

fn map_strength(e: strength::StrengthError) -> Failure {
    match e {
        strength::StrengthError::TooManyEdges { .. } => fail(EXIT_CAP, e.to_string()),
        strength::StrengthError::CapExceeded { .. } => fail(EXIT_RETRIES, e.to_string()),
        _ => fail(EXIT_REGIME, e.to_string()),
    }
}

fn map_oracle(e: oracle::OracleError) -> Failure {
    match e {
        oracle::OracleError::TooManyEdges { .. } => fail(EXIT_CAP, e.to_string()),
        _ => fail(EXIT_REGIME, e.to_string()),
    }
}

fn map_dense(e: dense::DenseError) -> Failure {
    match e {
        dense::DenseError::BadEpsilon(_) => fail(EXIT_USAGE, e.to_string()),
        dense::DenseError::RetriesExhausted { .. } => fail(EXIT_RETRIES, e.to_string()),
        _ => fail(EXIT_REGIME, e.to_string()),
    }
}

fn map_io(e: io::IoError) -> Failure {
    fail(EXIT_FILE, e.to_string())
}

// --------------------------------------------------------------------- gen

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let g = match args.model {
        GenModel::Regular => {
            let d = args.d.ok_or_else(|| fail(EXIT_USAGE, "--model regular needs --d"))?;
            generate::random_regular(args.n, d, args.seed).map_err(map_gen)?
        }
        GenModel::CycleUnion => {
            if args.d.is_some_and(|d| d != 2) {
                return Err(fail(EXIT_USAGE, "cycle unions are 2-regular; --d must be 2"));
            }
            generate::cycle_union(args.n).map_err(map_gen)?
        }
        GenModel::ErMindeg => {
            let d = args.d.ok_or_else(|| fail(EXIT_USAGE, "--model er-mindeg needs --delta"))?;
            generate::er_min_degree(args.n, d, args.seed).map_err(map_gen)?
        }
    };
    let text = io::write_edge_list(&g);
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            println!(
                "wrote {}: n={} m={} digest={}",
                path.display(),
                g.n(),
                g.edge_count(),
                io::graph_digest(&g)
            );
        }
        None => print!("{text}"),
    }
    Ok(())
}

// --------------------------------------------------------------------- run

/// Everything one trial produces, ready to merge in seed order.
struct TrialOut {
    summary: String,
    profile_block: String,
    report_block: String,
    subgraph_text: Option<String>,
}

fn cmd_run(mut args: RunArgs) -> Result<(), Failure> {
    if let Some(cfg) = args.config.clone() {
        apply_config(&mut args, &cfg)?;
    }
    if args.jobs.is_none() {
        if let Ok(v) = std::env::var(JOBS_ENV) {
            let jobs: usize = v.trim().parse().map_err(|_| {
                fail(EXIT_USAGE, format!("{JOBS_ENV} must be a positive integer, got `{v}`"))
            })?;
            args.jobs = Some(jobs);
        }
    }
    if args.jobs == Some(0) {
        return Err(fail(EXIT_USAGE, "--jobs must be at least 1"));
    }
    let trials = args.trials.unwrap_or(1);
    if trials == 0 {
        return Err(fail(EXIT_USAGE, "--trials must be at least 1"));
    }
    if trials > 1 && args.out_subgraph.is_some() {
        return Err(fail(EXIT_USAGE, "--out-subgraph stores a single subgraph; drop --trials"));
    }

    let g = load_graph(&args.input)?;
    let weights_text = match (args.algo, &args.weights) {
        (Algo::Round, Some(path)) => Some(read_file(path)?),
        (Algo::Round, None) => return Err(fail(EXIT_USAGE, "--algo round needs --weights FILE")),
        (_, Some(_)) => return Err(fail(EXIT_USAGE, "--weights only applies to --algo round")),
        (_, None) => None,
    };

    let eps = args.eps.unwrap_or(0.2);
    let seed0 = args.seed.unwrap_or(0);
    let want_subgraph = args.out_subgraph.is_some();
    let seeds: Vec<u64> = (0..u64::from(trials)).map(|i| seed0.wrapping_add(i)).collect();

    let outcomes: Vec<Result<TrialOut, Failure>> = if seeds.len() == 1 {
        vec![run_one(&g, &args, eps, seeds[0], weights_text.as_deref(), want_subgraph)]
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs.unwrap_or(0))
            .build()
            .map_err(|e| fail(EXIT_USAGE, format!("cannot build thread pool: {e}")))?;
        pool.install(|| {
            seeds
                .par_iter()
                .map(|&s| run_one(&g, &args, eps, s, weights_text.as_deref(), want_subgraph))
                .collect()
        })
    };

    // The first failing seed decides the exit; files are written only when
    // every trial succeeded, so partial output never lingers on disk.
    let mut done = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        done.push(outcome?);
    }
    for trial in &done {
        println!("{}", trial.summary);
    }
    if let Some(path) = &args.out_profile {
        let text: String = done.iter().map(|t| t.profile_block.as_str()).collect();
        write_file(path, &text)?;
    }
    if let Some(path) = &args.out_report {
        let text: String = done.iter().map(|t| t.report_block.as_str()).collect();
        write_file(path, &text)?;
    }
    if let Some(path) = &args.out_subgraph {
        let text = done[0].subgraph_text.as_deref().expect("requested subgraph was built");
        write_file(path, text)?;
    }
    Ok(())
}

/// Fills unset `run` flags from a KEY=VALUE file; explicit flags keep priority.
fn apply_config(args: &mut RunArgs, path: &Path) -> Result<(), Failure> {
    let text = read_file(path)?;
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| fail(EXIT_USAGE, format!("{}:{}: expected KEY=VALUE", path.display(), ln + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |what: &str| {
            fail(EXIT_USAGE, format!("{}:{}: {what} `{value}`", path.display(), ln + 1))
        };
        match key {
            "eps" => {
                if args.eps.is_none() {
                    args.eps = Some(value.parse().map_err(|_| bad("bad eps"))?);
                }
            }
            "seed" => {
                if args.seed.is_none() {
                    args.seed = Some(value.parse().map_err(|_| bad("bad seed"))?);
                }
            }
            "retries" => {
                if args.retries.is_none() {
                    args.retries = Some(value.parse().map_err(|_| bad("bad retries"))?);
                }
            }
            "trials" => {
                if args.trials.is_none() {
                    args.trials = Some(value.parse().map_err(|_| bad("bad trials"))?);
                }
            }
            "jobs" => {
                if args.jobs.is_none() {
                    args.jobs = Some(value.parse().map_err(|_| bad("bad jobs"))?);
                }
            }
            "weights" => {
                if args.weights.is_none() {
                    args.weights = Some(PathBuf::from(value));
                }
            }
            other => {
                return Err(fail(
                    EXIT_USAGE,
                    format!("{}:{}: unknown config key `{other}`", path.display(), ln + 1),
                ));
            }
        }
    }
    Ok(())
}

fn algo_token(algo: Algo) -> &'static str {
    match algo {
        Algo::Threshold => "threshold",
        Algo::Balanced => "prop24",
        Algo::LowMult => "prop25",
        Algo::SplitRegular => "split-regular",
        Algo::SplitGeneral => "split-general",
        Algo::Round => "round",
        Algo::Strength => "strength",
        Algo::Dense => "dense",
    }
}

fn check_word(outcome: dense::CheckOutcome) -> &'static str {
    match outcome {
        dense::CheckOutcome::Pass => "pass",
        dense::CheckOutcome::Fail => "fail",
        dense::CheckOutcome::Measured => "measured",
    }
}

fn opt_word(value: Option<bool>) -> &'static str {
    match value {
        Some(true) => "true",
        Some(false) => "false",
        None => "skipped",
    }
}

/// Runs one seeded trial end to end and audits its output.
fn run_one(
    g: &Graph,
    args: &RunArgs,
    eps: f64,
    seed: u64,
    weights_text: Option<&str>,
    want_subgraph: bool,
) -> Result<TrialOut, Failure> {
    let retries = args.retries;
    let mut rows: Vec<(&'static str, String)> = Vec::new();
    let (h, extra) = match args.algo {
        Algo::Threshold => {
            let h = threshold::threshold_subgraph(g, seed);
            (h, String::new())
        }
        Algo::Balanced => {
            let budget = retries.unwrap_or(threshold::DEFAULT_RETRIES);
            let run = threshold::sample_balanced_regular(g, eps, seed, budget).map_err(map_threshold)?;
            if !run.succeeded {
                return Err(fail(
                    EXIT_RETRIES,
                    format!(
                        "seed {seed}: no balanced draw in {} attempts (max deviation {}, tolerance {})",
                        run.attempts, run.max_deviation, run.target_deviation
                    ),
                ));
            }
            rows.push(("attempts", run.attempts.to_string()));
            rows.push(("max_deviation", run.max_deviation.to_string()));
            rows.push(("target_deviation", run.target_deviation.to_string()));
            rows.push(("condition_value", run.condition_value.to_string()));
            rows.push(("condition_holds", run.condition_holds.to_string()));
            rows.push(("classes", run.classes.to_string()));
            let extra = format!(
                " attempts={} dev={:.3} tol={:.3}",
                run.attempts, run.max_deviation, run.target_deviation
            );
            (run.subgraph, extra)
        }
        Algo::LowMult => {
            let budget = retries.unwrap_or(threshold::DEFAULT_RETRIES);
            let run =
                threshold::sample_low_multiplicity(g, eps, None, seed, budget).map_err(map_threshold)?;
            if !run.succeeded {
                return Err(fail(
                    EXIT_RETRIES,
                    format!(
                        "seed {seed}: tracked counts stayed above {} for {} attempts",
                        run.tracked_cap, run.attempts
                    ),
                ));
            }
            rows.push(("attempts", run.attempts.to_string()));
            rows.push(("max_tracked_count", run.max_tracked_count.to_string()));
            rows.push(("tracked_cap", run.tracked_cap.to_string()));
            rows.push(("multiplicity_bound", run.multiplicity_bound.to_string()));
            rows.push(("condition_direct", run.condition_direct.to_string()));
            rows.push(("condition_split", run.condition_split.to_string()));
            rows.push(("split_count", run.split_count.to_string()));
            rows.push(("tracked", run.tracked.to_string()));
            rows.push(("classes", run.classes.to_string()));
            let extra =
                format!(" attempts={} m_bound={:.3}", run.attempts, run.multiplicity_bound);
            (run.subgraph, extra)
        }
        Algo::SplitRegular | Algo::SplitGeneral => {
            let run = if args.algo == Algo::SplitRegular {
                intervals::regular_split(g, seed)
            } else {
                intervals::general_split(g, seed)
            }
            .map_err(map_interval)?;
            rows.push(("trivial", run.trivial.to_string()));
            rows.push(("parts", run.parts.to_string()));
            rows.push(("part_bound", run.part_bound.to_string()));
            rows.push(("asymptotic_bound", run.asymptotic_bound.to_string()));
            let extra =
                format!(" trivial={} parts={} bound={}", run.trivial, run.parts, run.part_bound);
            (run.subgraph, extra)
        }
        Algo::Round => {
            let text = weights_text.expect("weights were read before the fan-out");
            let z = io::parse_weights(text, g.edge_count()).map_err(map_io)?;
            let h = rounding::round_weights(g, &z);
            let bound = rounding::verify_bound(g, &z, &h);
            if !bound.violations.is_empty() {
                return Err(fail(
                    EXIT_VERIFY,
                    format!("seed {seed}: {} vertices left their rounding window", bound.violations.len()),
                ));
            }
            rows.push(("deviation_violations", bound.violations.len().to_string()));
            (h, String::from(" violations=0"))
        }
        Algo::Strength => {
            let weighting =
                strength::irregularity_strength(g, strength::DEFAULT_STRENGTH_CAP).map_err(map_strength)?;
            let transfer = strength::strength_to_subgraph(g, &weighting).map_err(map_strength)?;
            rows.push(("strength", transfer.s.to_string()));
            rows.push(("route", transfer.route.to_string()));
            rows.push(("route_bound", transfer.bound.to_string()));
            let extra =
                format!(" s={} route={} bound={}", transfer.s, transfer.route, transfer.bound);
            (transfer.subgraph, extra)
        }
        Algo::Dense => {
            let budget = retries.unwrap_or(dense::DENSE_RESAMPLE_CAP);
            let run = dense::run_dense_pipeline(g, eps, seed, budget).map_err(map_dense)?;
            rows.push(("attempts", run.attempts.to_string()));
            rows.push(("s_star", run.params.s_star.to_string()));
            rows.push(("slices", run.params.k.to_string()));
            rows.push(("regime_ok", run.params.regime_ok.to_string()));
            rows.push(("b_cap", run.b_cap.to_string()));
            rows.push(("max_b_multiplicity", run.max_b_multiplicity.to_string()));
            rows.push(("formula_bound", run.formula_bound.to_string()));
            rows.push(("target_buckets", check_word(run.concentration.target_buckets).to_string()));
            rows.push(("small_degrees", check_word(run.concentration.small_degrees).to_string()));
            rows.push((
                "upper_block_degrees",
                check_word(run.concentration.upper_block_degrees).to_string(),
            ));
            rows.push(("slice_activity", check_word(run.concentration.slice_activity).to_string()));
            rows.push(("big_activity", check_word(run.concentration.big_activity).to_string()));
            rows.push(("wz_ok", run.finish.wz_ok.to_string()));
            rows.push(("b_frozen", run.finish.b_frozen.to_string()));
            rows.push((
                "collisions_share_windows",
                opt_word(run.finish.collisions_share_windows).to_string(),
            ));
            rows.push((
                "collisions_conflict",
                opt_word(run.finish.collisions_conflict).to_string(),
            ));
            rows.push(("interval_escapes", run.finish.interval_escapes.to_string()));
            rows.push(("target_misses", run.state.target_misses.to_string()));
            rows.push(("rebalance_moves", run.state.rebalance_moves.to_string()));
            rows.push(("rebalance_misses", run.state.rebalance_misses.to_string()));
            rows.push(("unwindowed", run.state.unwindowed.to_string()));
            rows.push(("small_progressions", run.state.small_progressions.to_string()));
            let extra = format!(
                " attempts={} b_cap={} bound={}",
                run.attempts, run.b_cap, run.formula_bound
            );
            (run.subgraph, extra)
        }
    };

    let audit = verify::audit(g, &h);
    if !audit.passed() {
        return Err(fail(EXIT_VERIFY, format!("seed {seed}: output subgraph failed its audit")));
    }

    let token = algo_token(args.algo);
    let summary = format!(
        "seed={seed} algo={token} n={} kept={}{extra} degrees={}",
        audit.n, audit.kept_edges, audit.profile
    );
    let mut report = String::from("key,value\n");
    report.push_str(&format!("algo,{token}\n"));
    report.push_str(&format!("seed,{seed}\n"));
    report.push_str(&format!("n,{}\n", audit.n));
    report.push_str(&format!("host_edges,{}\n", audit.host_edges));
    report.push_str(&format!("kept_edges,{}\n", audit.kept_edges));
    report.push_str(&format!("max_multiplicity,{}\n", audit.max_multiplicity));
    report.push_str(&format!("distinct_degrees,{}\n", audit.distinct_degrees));
    for (key, value) in rows {
        report.push_str(&format!("{key},{value}\n"));
    }
    report.push_str("verify_passed,true\n");

    Ok(TrialOut {
        summary,
        profile_block: format!("# seed={seed}\n{}", audit.profile.to_csv()),
        report_block: format!("# seed={seed}\n{report}"),
        subgraph_text: want_subgraph.then(|| io::write_subgraph(&h)),
    })
}

// ------------------------------------------------------------------ oracle

fn cmd_oracle(args: OracleArgs) -> Result<(), Failure> {
    let g = load_graph(&args.input)?;
    match args.check {
        OracleCheck::MinM => {
            let outcome = oracle::min_max_multiplicity(&g).map_err(map_oracle)?;
            println!("min_m={}", outcome.minimum);
        }
        OracleCheck::Conj11 => {
            let outcome = oracle::best_regular_balance(&g).map_err(map_oracle)?;
            println!(
                "minimax={}/{} within_two={}",
                outcome.minimax_numerator, outcome.denominator, outcome.within_two
            );
        }
        OracleCheck::Conj12 => {
            let outcome = oracle::multiplicity_within_slack(&g).map_err(map_oracle)?;
            println!("min_m={} bound={:.3} holds={}", outcome.minimum, outcome.bound, outcome.holds);
        }
    }
    Ok(())
}

// ------------------------------------------------------------------ verify

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let g = load_graph(&args.input)?;
    let text = read_file(&args.subgraph)?;
    let h = io::parse_subgraph(&g, &text).map_err(map_io)?;
    let audit = verify::audit(&g, &h);
    print!("{}", audit.to_csv());
    if !audit.passed() {
        return Err(fail(EXIT_VERIFY, "verification failed"));
    }
    Ok(())
}
