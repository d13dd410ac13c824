//! `renyi`: command-line front end for the sandwiched Renyi divergence
//! library. Subcommands compute divergences and entropic quantities for
//! JSON state files, tabulate continuity bounds over parameter grids,
//! run the verification suites, evaluate the superadditivity
//! counterexample, and certify approximate Markov chains.
//!
//! State files are JSON objects `{"dims": [d1, d2, ...], "matrix":
//! [[re, im], ...]}` with the matrix flattened row-major. Every command
//! is deterministic given its inputs and `--seed`; `RENYI_THREADS` caps
//! the worker pool. Exit codes: 0 success, 1 verification failure,
//! 2 domain/regime error, 3 parse error, 4 optimizer non-convergence.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use renyi_core::divergence::{d_sandwiched, Alpha};
use renyi_core::harness::{
    counterexample, fmt_g, matrix_to_json, run_divergence_laws_with, run_suite, state_from_json,
    state_to_json, sweep, LawCorruption, Suite, SweepGrid, ALL_SUITES,
};
use renyi_core::linalg::PartitionedState;
use renyi_core::markov::{certify_amc, markov_gap, RecoveryKind};
use renyi_core::variational::{
    cmi_nonvar, cmi_up_outcomes, cond_entropy_nonvar, cond_entropy_up_outcome,
    gen_mutual_info_outcome, mutual_info_up_outcome, sep_distance_outcome, OptimizerConfig,
    OptimizerOutcome,
};
use renyi_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "renyi",
    version,
    about = "Sandwiched Renyi divergences, continuity bounds, and approximate-Markov-chain certificates",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 domain/regime error, \
                  3 parse error, 4 optimizer non-convergence.\n\
                  RENYI_THREADS caps the worker pool."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a divergence or entropic quantity for JSON state files
    Compute(ComputeArgs),
    /// Tabulate continuity bounds over a parameter grid
    Sweep(SweepArgs),
    /// Run verification suites and report violations with witnesses
    Verify(VerifyArgs),
    /// Evaluate the superadditivity counterexample chains
    Counterexample(OutputArgs),
    /// Recovery-map gaps and an approximate-Markov-chain certificate
    Markov(MarkovArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    /// Quantity: divergence, cond-entropy, cond-entropy-nonvar,
    /// mutual-info, cmi, cmi-nonvar, gen-mi, sep-distance
    quantity: String,
    /// State file(s); two-argument quantities take the second argument as
    /// the second file
    #[arg(required = true)]
    states: Vec<PathBuf>,
    /// Divergence order: a float in [1/2, 1) or (1, inf), "1", or "inf"
    #[arg(long, default_value = "2")]
    alpha: String,
    /// Seed for the optimizer's random restarts
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Grid description file (JSON); defaults: 64 orders in [1.01, 10],
    /// 32 distances in [1e-4, 0.5], d_A in {2, 4, 16, 256}
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Restrict the order axis to this single value
    #[arg(long)]
    alpha: Option<String>,
    /// Restrict the distance axis to this single value
    #[arg(long)]
    epsilon: Option<f64>,
    /// Restrict the dimension/kappa axis to this single value
    #[arg(long)]
    dim: Option<f64>,
    /// Seed recorded in the reproducibility metadata
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Output format (csv or json)
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run (default: all): divergence-laws, norm-laws,
    /// bound-validity, alaff, markov
    suites: Vec<String>,
    /// Trials per suite
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Run seed
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Negative control: flip the additivity-direction comparison so the
    /// divergence-laws suite must fail with a witness
    #[arg(long)]
    corrupt_subadditivity: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MarkovArgs {
    /// Tripartite state file (dims [d_A, d_B, d_C])
    state: PathBuf,
    /// Divergence order of the certificate
    #[arg(long, default_value = "1.5")]
    alpha: String,
    /// Free parameter of the certificate's lower bound; default: half the
    /// admissible limit at the given order
    #[arg(long)]
    cert_param: Option<f64>,
    /// Rotation parameter of the rotated recovery
    #[arg(long, default_value_t = 0.0)]
    rotation: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    renyi_core::exec::init_thread_cap_from_env();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification(_) => 1,
        Error::Parse(_) => 3,
        Error::NonConvergence(_) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compute(args) => run_compute(&args),
        Command::Sweep(args) => run_sweep(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Counterexample(args) => run_counterexample(&args),
        Command::Markov(args) => run_markov(&args),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_state(path: &Path) -> Result<PartitionedState> {
    let text = std::fs::read_to_string(path)?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    state_from_json(&v)
}

fn alpha_json(a: Alpha) -> Value {
    match a.finite() {
        Some(v) => json!(v),
        None => json!(a.to_string()),
    }
}

fn value_json(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(fmt_g(v))
    }
}

// ---------------------------------------------------------------------------
// compute
// ---------------------------------------------------------------------------

enum ComputeQuantity {
    Divergence,
    CondEntropy,
    CondEntropyNonvar,
    MutualInfo,
    Cmi,
    CmiNonvar,
    GenMi,
    SepDistance,
}

impl ComputeQuantity {
    fn parse(s: &str) -> Result<ComputeQuantity> {
        match s {
            "divergence" => Ok(ComputeQuantity::Divergence),
            "cond-entropy" => Ok(ComputeQuantity::CondEntropy),
            "cond-entropy-nonvar" => Ok(ComputeQuantity::CondEntropyNonvar),
            "mutual-info" => Ok(ComputeQuantity::MutualInfo),
            "cmi" => Ok(ComputeQuantity::Cmi),
            "cmi-nonvar" => Ok(ComputeQuantity::CmiNonvar),
            "gen-mi" => Ok(ComputeQuantity::GenMi),
            "sep-distance" => Ok(ComputeQuantity::SepDistance),
            other => Err(Error::Parse(format!("unknown compute quantity `{other}`"))),
        }
    }

    fn files(&self) -> usize {
        match self {
            ComputeQuantity::Divergence | ComputeQuantity::GenMi => 2,
            _ => 1,
        }
    }
}

fn run_compute(args: &ComputeArgs) -> Result<()> {
    let quantity = ComputeQuantity::parse(&args.quantity)?;
    let alpha: Alpha = args.alpha.parse()?;
    let cfg = OptimizerConfig { seed: args.seed, ..OptimizerConfig::default() };
    if args.states.len() != quantity.files() {
        return Err(Error::Parse(format!(
            "`{}` takes {} state file(s), got {}",
            args.quantity,
            quantity.files(),
            args.states.len()
        )));
    }
    let rho = load_state(&args.states[0])?;

    let mut outcomes: Vec<(&'static str, OptimizerOutcome)> = Vec::new();
    let value = match quantity {
        ComputeQuantity::Divergence => {
            let tau = load_state(&args.states[1])?;
            d_sandwiched(rho.state(), tau.state().matrix(), alpha)?
        }
        ComputeQuantity::CondEntropy => {
            let out = cond_entropy_up_outcome(&rho, alpha, &cfg)?;
            let value = out.value;
            outcomes.push(("achieving reference state", out));
            value
        }
        ComputeQuantity::CondEntropyNonvar => cond_entropy_nonvar(&rho, alpha)?,
        ComputeQuantity::MutualInfo => {
            let out = mutual_info_up_outcome(&rho, alpha, &cfg)?;
            let value = out.value;
            outcomes.push(("achieving product state", out));
            value
        }
        ComputeQuantity::Cmi => {
            let (value, out_cb, out_cab) = cmi_up_outcomes(&rho, alpha, &cfg)?;
            outcomes.push(("achieving reference state, C given B", out_cb));
            outcomes.push(("achieving reference state, C given AB", out_cab));
            value
        }
        ComputeQuantity::CmiNonvar => cmi_nonvar(&rho, alpha)?,
        ComputeQuantity::GenMi => {
            let tau = load_state(&args.states[1])?;
            let out = gen_mutual_info_outcome(&rho, tau.state(), alpha, &cfg)?;
            let value = out.value;
            outcomes.push(("achieving reference state", out));
            value
        }
        ComputeQuantity::SepDistance => {
            let out = sep_distance_outcome(&rho, alpha, &cfg)?;
            let value = out.value;
            outcomes.push(("achieving separable state", out));
            value
        }
    };

    match args.output.format {
        Format::Text => {
            let mut text = String::new();
            text.push_str(&format!("quantity = {}\n", args.quantity));
            text.push_str(&format!("alpha = {alpha}\n"));
            text.push_str(&format!("value = {}\n", fmt_g(value)));
            for (label, out) in &outcomes {
                text.push_str(&format!(
                    "optimizer [{label}]: converged = {}, iterations = {}, final gap = {}\n",
                    out.converged,
                    out.iterations,
                    fmt_g(out.gap)
                ));
                text.push_str(&format!(
                    "witness [{label}] (dim {}, row-major [re, im]): {}\n",
                    out.witness.dim(),
                    matrix_to_json(out.witness.matrix())
                ));
            }
            emit(&text, &args.output.out)
        }
        Format::Json => {
            let report = json!({
                "quantity": args.quantity,
                "alpha": alpha_json(alpha),
                "value": value_json(value),
                "optimizers": outcomes.iter().map(|(label, out)| json!({
                    "label": label,
                    "converged": out.converged,
                    "iterations": out.iterations,
                    "gap": value_json(out.gap),
                    "witness": {
                        "dim": out.witness.dim(),
                        "matrix": matrix_to_json(out.witness.matrix()),
                    },
                })).collect::<Vec<_>>(),
            });
            emit(&format!("{report:#}\n"), &args.output.out)
        }
        Format::Csv => Err(Error::Domain("csv output applies to sweep only".into())),
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn run_sweep(args: &SweepArgs) -> Result<()> {
    let mut grid = match &args.grid {
        Some(path) => SweepGrid::from_json(&std::fs::read_to_string(path)?)?,
        None => SweepGrid::default_grid(),
    };
    if let Some(a) = &args.alpha {
        grid.alphas = vec![a.parse()?];
    }
    if let Some(e) = args.epsilon {
        grid.epsilons = vec![e];
    }
    if let Some(d) = args.dim {
        grid.dims = vec![d];
    }
    let result = sweep(&grid, args.seed)?;
    match args.format {
        Format::Csv => emit(&result.to_csv(), &args.out),
        Format::Json => emit(&format!("{:#}\n", result.to_json()), &args.out),
        Format::Text => Err(Error::Domain("sweep emits csv or json".into())),
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn run_verify(args: &VerifyArgs) -> Result<()> {
    let suites: Vec<Suite> = if args.suites.is_empty() {
        ALL_SUITES.to_vec()
    } else {
        args.suites
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Suite>>>()?
    };
    if args.corrupt_subadditivity && !suites.contains(&Suite::DivergenceLaws) {
        return Err(Error::Domain(
            "the negative control applies to the divergence-laws suite".into(),
        ));
    }
    let mut reports = Vec::with_capacity(suites.len());
    for suite in suites {
        let report = if suite == Suite::DivergenceLaws && args.corrupt_subadditivity {
            run_divergence_laws_with(args.trials, args.seed, LawCorruption::FlippedSubadditivity)?
        } else {
            run_suite(suite, args.trials, args.seed)?
        };
        reports.push(report);
    }
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    let passed = violations == 0;

    match args.output.format {
        Format::Text => {
            let mut text = String::new();
            for report in &reports {
                text.push_str(&report.render_text());
            }
            text.push_str(&format!(
                "verification: {} suites, {} violations: {}\n",
                reports.len(),
                violations,
                if passed { "PASS" } else { "FAIL" }
            ));
            emit(&text, &args.output.out)?;
        }
        Format::Json => {
            let report = json!({
                "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                "passed": passed,
            });
            emit(&format!("{report:#}\n"), &args.output.out)?;
        }
        Format::Csv => return Err(Error::Domain("csv output applies to sweep only".into())),
    }
    if passed {
        Ok(())
    } else {
        Err(Error::Verification(format!(
            "{violations} violation(s) across {} suite(s)",
            reports.len()
        )))
    }
}

// ---------------------------------------------------------------------------
// counterexample
// ---------------------------------------------------------------------------

fn run_counterexample(args: &OutputArgs) -> Result<()> {
    let report = counterexample()?;
    match args.format {
        Format::Text => emit(&report.render_text(), &args.out),
        Format::Json => emit(&format!("{:#}\n", report.to_json()), &args.out),
        Format::Csv => Err(Error::Domain("csv output applies to sweep only".into())),
    }
}

// ---------------------------------------------------------------------------
// markov
// ---------------------------------------------------------------------------

fn default_cert_param(alpha: Alpha) -> f64 {
    match alpha.finite() {
        Some(a) if a < 1.0 => 0.5 * (1.0 - 1.0 / (2.0 * a)),
        Some(a) => 0.5 / (2.0 * a),
        None => 0.25,
    }
}

fn run_markov(args: &MarkovArgs) -> Result<()> {
    let rho = load_state(&args.state)?;
    let alpha: Alpha = args.alpha.parse()?;
    let cert_param = args.cert_param.unwrap_or_else(|| default_cert_param(alpha));

    let petz_gap = markov_gap(&rho, &RecoveryKind::Petz)?;
    let rotated_gap = markov_gap(&rho, &RecoveryKind::Rotated(args.rotation))?;
    let universal_gap = markov_gap(&rho, &RecoveryKind::universal())?;
    let cert = certify_amc(&rho, alpha, cert_param, args.rotation)?;

    match args.output.format {
        Format::Text => {
            let mut text = String::new();
            text.push_str(&format!("state: dims = {:?}\n", rho.dims()));
            text.push_str(&format!("alpha = {alpha}\n"));
            text.push_str(&format!("cmi (nonvariational) = {}\n", fmt_g(cert.cmi_value)));
            text.push_str(&format!("plain recovery gap = {}\n", fmt_g(petz_gap)));
            text.push_str(&format!(
                "rotated recovery gap (t = {}) = {}\n",
                fmt_g(args.rotation),
                fmt_g(rotated_gap)
            ));
            text.push_str(&format!("universal recovery gap = {}\n", fmt_g(universal_gap)));
            text.push_str(&format!(
                "certificate (cert_param = {}, rotation = {}):\n",
                fmt_g(cert.cert_param),
                fmt_g(cert.rotation)
            ));
            text.push_str(&format!(
                "  lower = {} <= cmi = {} <= upper = {}\n",
                fmt_g(cert.lower_bound),
                fmt_g(cert.cmi_value),
                fmt_g(cert.upper_bound)
            ));
            emit(&text, &args.output.out)
        }
        Format::Json => {
            let report = json!({
                "state": state_to_json(&rho),
                "alpha": alpha_json(alpha),
                "cmi": value_json(cert.cmi_value),
                "gaps": {
                    "plain": value_json(petz_gap),
                    "rotated": value_json(rotated_gap),
                    "rotation": args.rotation,
                    "universal": value_json(universal_gap),
                },
                "certificate": {
                    "cert_param": cert.cert_param,
                    "rotation": cert.rotation,
                    "lower": value_json(cert.lower_bound),
                    "upper": value_json(cert.upper_bound),
                },
            });
            emit(&format!("{report:#}\n"), &args.output.out)
        }
        Format::Csv => Err(Error::Domain("csv output applies to sweep only".into())),
    }
}
