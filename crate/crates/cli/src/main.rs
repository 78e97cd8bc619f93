//! `bwlab`: verification runs, counterexample reproduction, and
//! conjecture searches over the commutator bound catalog.
//!
//! Exit status: 0 on success, 1 when a proved bound is violated or the
//! counterexample reproduction mismatches, 2 on malformed input or I/O
//! failure. A violation of a conjectured bound exits 0 but raises the
//! `discovery` flag in the report.

use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use bwlab_core::{
    eval_all, eval_bound, hill_climb, implication_chain_check, known_counterexamples,
    pairing_report, psd_certificate, sample_instance, stream_rng, BoundId, BoundStatus,
    SampleDist, SearchConfig, Termination, Tolerance,
};
use bwlab_cli::report::{
    write_output, Aggregator, CertificateReport, InstanceFile, RunReport, SearchSummary,
};

/// Fixed default seed: bare invocations are reproducible.
const DEFAULT_SEED: u64 = 42;

/// Initial perturbation scale for hill climbs.
const DEFAULT_STEP_SIZE: f64 = 0.25;

#[derive(Parser)]
#[command(
    name = "bwlab",
    version,
    about = "Numerical laboratory for generalized-commutator norm inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the whole bound catalog on random instances per shape.
    Verify(VerifyArgs),
    /// Hill-climb the LHS/RHS ratio of one bound per shape.
    Search(SearchArgs),
    /// Reproduce the registry counterexamples exactly.
    Repro(ReproArgs),
    /// Evaluate the catalog and certificates on an instance file.
    Eval(EvalArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// RNG seed (fixed default keeps bare runs reproducible).
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Derive the seed from the clock instead (overrides --seed).
    #[arg(long)]
    entropy: bool,
    /// Tolerance for the holds verdict (used for both the absolute and the
    /// relative part).
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, default_value = "structured", value_parser = ["structured", "tabular"])]
    format: String,
}

impl CommonArgs {
    fn seed(&self) -> u64 {
        if self.entropy {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_nanos() as u64)
                .unwrap_or(DEFAULT_SEED)
        } else {
            self.seed
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Shapes as mxn, comma separated (e.g. 2x2,2x3,3x3).
    #[arg(long, value_delimiter = ',', required = true)]
    shapes: Vec<String>,
    /// Instances per shape.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Sampling distribution: complex_gaussian | real_gaussian |
    /// unit_sphere | low_rank_R.
    #[arg(long, default_value = "complex_gaussian")]
    dist: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SearchArgs {
    /// Catalog bound to maximize.
    #[arg(long, required = true)]
    bound: String,
    #[arg(long, value_delimiter = ',', required = true)]
    shapes: Vec<String>,
    /// Random starting draws per shape.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Ascent steps per shape.
    #[arg(long, default_value_t = 1000)]
    steps: u64,
    #[arg(long, default_value = "complex_gaussian")]
    dist: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ReproArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EvalArgs {
    /// Instance file: JSON with matrices a, c (m x n) and b (n x m).
    instance_file: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> Result<i32, String> {
    match command {
        Command::Verify(args) => cmd_verify(args),
        Command::Search(args) => cmd_search(args),
        Command::Repro(args) => cmd_repro(args),
        Command::Eval(args) => cmd_eval(args),
    }
}

fn parse_shape(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("invalid shape {s:?}; expected mxn"))?;
    let m: usize = m.parse().map_err(|_| format!("invalid shape {s:?}"))?;
    let n: usize = n.parse().map_err(|_| format!("invalid shape {s:?}"))?;
    if m == 0 || n == 0 {
        return Err(format!("shape {s:?} must have positive dimensions"));
    }
    Ok((m, n))
}

fn parse_dist(s: &str) -> Result<SampleDist, String> {
    SampleDist::parse(s).ok_or_else(|| {
        format!(
            "unknown distribution {s:?}; expected complex_gaussian, real_gaussian, \
             unit_sphere, or low_rank_R"
        )
    })
}

fn parse_bound(s: &str) -> Result<BoundId, String> {
    BoundId::parse(s).ok_or_else(|| {
        let names: Vec<&str> = bwlab_core::ALL_BOUNDS.iter().map(|b| b.as_str()).collect();
        format!("unknown bound {s:?}; expected one of {}", names.join(", "))
    })
}

fn finalize(
    mut report: RunReport,
    started: Instant,
    out: Option<&PathBuf>,
    format: &str,
) -> Result<(), String> {
    report.timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    report.wall_time_ms = started.elapsed().as_millis() as u64;
    let rendered = match format {
        "tabular" => report.to_tabular(),
        _ => report.to_structured(),
    };
    write_output(out.map(|p| p.as_path()), &rendered)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, String> {
    let started = Instant::now();
    let seed = args.common.seed();
    let dist = parse_dist(&args.dist)?;
    let tol = Tolerance::uniform(args.common.tol);
    let shapes: Vec<(usize, usize)> = args
        .shapes
        .iter()
        .map(|s| parse_shape(s))
        .collect::<Result<_, _>>()?;

    let mut agg = Aggregator::new();
    for (shape_index, &(m, n)) in shapes.iter().enumerate() {
        let mut rng = stream_rng(seed, shape_index as u64);
        for draw in 0..args.trials {
            let t = sample_instance(
                dist,
                m,
                n,
                &mut rng,
                format!("seed:{seed}:shape:{m}x{n}:draw:{draw}"),
            );
            agg.record_outcomes(&t, &eval_all(&t, tol));
            // The two-matrix family applies only to C = I; cover it from
            // the same draw on square shapes.
            if let Some(bw) = t.with_identity_c() {
                for id in [BoundId::Bw, BoundId::BwKyFan, BoundId::BwKron] {
                    let report = eval_bound(id, &bw, tol)
                        .expect("BW family applies once C is the identity");
                    agg.record(&bw, &report);
                }
            }
        }
    }

    let proved_violated = agg.any_violation(BoundStatus::Proved);
    let discovery = agg.any_violation(BoundStatus::Conjectured);
    let mut report = RunReport::new(
        format!(
            "verify --shapes {} --trials {} --seed {seed} --tol {} --dist {}",
            args.shapes.join(","),
            args.trials,
            args.common.tol,
            dist.as_str()
        ),
        seed,
    );
    report.discovery = discovery;
    report.bounds = agg.into_aggregates();
    finalize(report, started, args.common.out.as_ref(), &args.common.format)?;
    Ok(if proved_violated { 1 } else { 0 })
}

fn cmd_search(args: SearchArgs) -> Result<i32, String> {
    let started = Instant::now();
    let seed = args.common.seed();
    let bound = parse_bound(&args.bound)?;
    let dist = parse_dist(&args.dist)?;
    let shapes: Vec<(usize, usize)> = args
        .shapes
        .iter()
        .map(|s| parse_shape(s))
        .collect::<Result<_, _>>()?;

    for &(m, n) in &shapes {
        if !bound.searchable_on((m, n)) {
            return Err(format!(
                "bound {bound} is not searchable on shape {m}x{n}"
            ));
        }
    }

    let mut report = RunReport::new(
        format!(
            "search --bound {bound} --shapes {} --trials {} --steps {} --seed {seed} --dist {}",
            args.shapes.join(","),
            args.trials,
            args.steps,
            dist.as_str()
        ),
        seed,
    );

    let mut violation_found = false;
    for (shape_index, &shape) in shapes.iter().enumerate() {
        let config = SearchConfig {
            bound,
            shape,
            trials: args.trials as usize,
            ascent_steps: args.steps as usize,
            step_size: DEFAULT_STEP_SIZE,
            // Independent stream per shape.
            rng_seed: seed.wrapping_add(shape_index as u64),
            dist,
        };
        let record = hill_climb(&config);
        violation_found |= record.terminated == Termination::ViolationFound;
        report.searches.push(SearchSummary::from_record(
            bound,
            shape,
            args.trials,
            args.steps,
            &record,
        ));
    }

    report.discovery = violation_found && bound.status() == BoundStatus::Conjectured;
    let exit = if violation_found && bound.status() == BoundStatus::Proved {
        1
    } else {
        0
    };
    finalize(report, started, args.common.out.as_ref(), &args.common.format)?;
    Ok(exit)
}

fn cmd_repro(args: ReproArgs) -> Result<i32, String> {
    let started = Instant::now();
    let entries = known_counterexamples();
    let mut agg = Aggregator::new();
    let mut all_ok = true;
    for entry in &entries {
        let result = eval_bound(entry.bound, &entry.instance, Tolerance::default())
            .map_err(|e| e.to_string())?;
        agg.record(&entry.instance, &result);
        let lhs_ok = (result.lhs - entry.expected_lhs).abs() <= 1e-12;
        let rhs_ok = (result.rhs - entry.expected_rhs).abs() <= 1e-12;
        if !(lhs_ok && rhs_ok && !result.holds) {
            all_ok = false;
            eprintln!(
                "{}: expected (lhs, rhs) = ({}, {}), got ({}, {}), holds = {}",
                entry.id, entry.expected_lhs, entry.expected_rhs, result.lhs, result.rhs,
                result.holds
            );
        }
    }

    let mut report = RunReport::new("repro".to_string(), DEFAULT_SEED);
    report.bounds = agg.into_aggregates();
    finalize(report, started, args.common.out.as_ref(), &args.common.format)?;
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_eval(args: EvalArgs) -> Result<i32, String> {
    let started = Instant::now();
    let path = &args.instance_file;
    let raw = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: InstanceFile = serde_json::from_str(&raw)
        .map_err(|e| format!("malformed instance file {}: {e}", path.display()))?;
    let t = file.to_instance(&format!("file:{}", path.display()))?;
    let tol = Tolerance::uniform(args.common.tol);

    let mut agg = Aggregator::new();
    agg.record_outcomes(&t, &eval_all(&t, tol));

    let cert = psd_certificate(t.a(), t.c()).map_err(|e| e.to_string())?;
    let pairing = pairing_report(t.a(), t.c()).map_err(|e| e.to_string())?;
    let chain_ok = implication_chain_check(&t);

    let proved_violated = agg.any_violation(BoundStatus::Proved);
    let discovery = agg.any_violation(BoundStatus::Conjectured);
    let mut report = RunReport::new(
        format!("eval {} --tol {}", path.display(), args.common.tol),
        DEFAULT_SEED,
    );
    report.discovery = discovery;
    report.bounds = agg.into_aggregates();
    report.certificates = Some(CertificateReport::new(&cert, &pairing, chain_ok));
    finalize(report, started, args.common.out.as_ref(), &args.common.format)?;
    Ok(if proved_violated { 1 } else { 0 })
}
