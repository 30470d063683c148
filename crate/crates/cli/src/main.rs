//! `epmgp`: EP estimates of Gaussian probabilities over polyhedra, reference
//! oracles, and the accuracy and pathology experiments.
//!
//! Exit codes: 0 on success, 1 for invalid input (the message names the
//! offending field), 2 for numerical failure, including non-convergence
//! under `--strict`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use epmgp::experiments::pathology::{self, PathologyKind};
use epmgp::experiments::{run_alpha_sweep, run_pathology, run_study, StudyConfig, StudyKind};
use epmgp::oracle::{self, McBudget, QmcConfig};
use epmgp::{run_power_ep, EpConfig, Error, Problem};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "epmgp", version, about = "Gaussian probabilities over polyhedra by expectation propagation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run EP on a problem file and print logZ, Z and the posterior.
    Solve(SolveArgs),
    /// Reference probability for a problem file.
    Oracle(OracleArgs),
    /// Accuracy study against reference probabilities, written as CSV.
    Study(StudyArgs),
    /// Constructed failure cases on the [-1,1]^2 square, written as CSV.
    Pathology(PathologyArgs),
    /// Uniform power corrections on the constructed cases, written as CSV.
    AlphaSweep(AlphaArgs),
}

#[derive(Args, Clone)]
struct EpArgs {
    /// Convergence tolerance on site changes and logZ.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_sweeps: Option<usize>,
    /// Step size in (0, 1] for site updates.
    #[arg(long)]
    damping: Option<f64>,
    /// Refresh the posterior after every factor.
    #[arg(long)]
    sequential_refresh: bool,
    /// Exit with status 2 when any run fails to converge.
    #[arg(long)]
    strict: bool,
}

impl EpArgs {
    fn config(&self, base: EpConfig) -> EpConfig {
        EpConfig {
            tol: self.tol.unwrap_or(base.tol),
            max_sweeps: self.max_sweeps.unwrap_or(base.max_sweeps),
            damping: self.damping.unwrap_or(base.damping),
            sequential_refresh: base.sequential_refresh || self.sequential_refresh,
            ..base
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: PathBuf,
    /// Comma-separated per-constraint powers; overrides the file's `alphas`.
    #[arg(long)]
    alphas: Option<String>,
    #[command(flatten)]
    ep: EpArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// mc, qmc, orthant or exact.
    #[arg(long)]
    method: String,
    #[arg(long)]
    problem: PathBuf,
    /// Draws for mc, lattice points for qmc.
    #[arg(long)]
    samples: Option<u64>,
    /// Random shifts for qmc.
    #[arg(long, default_value_t = 8)]
    shifts: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StudyArgs {
    /// rect, poly, polyM or orthant.
    #[arg(long)]
    kind: String,
    /// Comma-separated dimensions.
    #[arg(long)]
    dims: Option<String>,
    /// Comma-separated constraint counts (polyM).
    #[arg(long)]
    m_list: Option<String>,
    #[arg(long, default_value_t = 50)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lattice points per shift for the Genz oracle.
    #[arg(long)]
    qmc_points: Option<u64>,
    #[arg(long)]
    qmc_shifts: Option<u32>,
    /// Initial rejection-sampling draws when the Genz oracle does not apply.
    #[arg(long)]
    mc_samples: Option<u64>,
    /// Most draws rejection sampling may extend to.
    #[arg(long)]
    mc_cap: Option<u64>,
    /// Multiplier on the sqrt(n) region half-widths.
    #[arg(long)]
    scale: Option<f64>,
    #[command(flatten)]
    ep: EpArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PathologyArgs {
    /// redundancy, extramass or rotated.
    #[arg(long)]
    kind: String,
    /// Comma-separated sweep values (copies k, half-width w or box count r).
    #[arg(long)]
    sweep: Option<String>,
    #[command(flatten)]
    ep: EpArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AlphaArgs {
    /// rotated, extramass or redundancy.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    sweep: Option<String>,
    /// Comma-separated uniform powers to evaluate.
    #[arg(long, default_value = "0.5,0.75,1,1.5,2,3,4,6,8,12,16")]
    grid: String,
    #[command(flatten)]
    ep: EpArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with the exit status it maps to.
enum Failure {
    Invalid(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid { .. } | Error::DimensionMismatch { .. } | Error::Unsupported(_) | Error::NotReducible(_) => {
                Failure::Invalid(e.to_string())
            }
            other => Failure::Numerical(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn invalid(field: &str, reason: impl std::fmt::Display) -> Failure {
    Failure::Invalid(format!("invalid {field}: {reason}"))
}

fn parse_list<T: std::str::FromStr>(text: &str, field: &str) -> Result<Vec<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(i, s)| s.parse::<T>().map_err(|e| invalid(&format!("{field}[{i}]"), format!("'{s}': {e}"))))
        .collect()
}

fn read_problem(path: &Path) -> Result<Problem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid("problem", format!("{}: {e}", path.display())))?;
    Ok(Problem::from_json(&text)?)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| invalid("out", format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn not_converged(strict: bool, count: usize) -> Outcome {
    if strict && count > 0 {
        Err(Failure::Numerical(format!("{count} run(s) did not converge")))
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SolveOutput {
    #[serde(rename = "logZ")]
    log_z: f64,
    #[serde(rename = "Z")]
    z: f64,
    mu: Vec<f64>,
    sigma: Vec<Vec<f64>>,
    sweeps: usize,
    converged: bool,
    max_delta: f64,
    skipped_updates: usize,
    clamped_updates: usize,
    oscillation: bool,
}

fn solve(a: SolveArgs) -> Outcome {
    let p = read_problem(&a.problem)?;
    let alphas = match &a.alphas {
        Some(text) => Some(parse_list::<f64>(text, "alphas")?),
        None => p.alphas.clone(),
    };
    let cfg = EpConfig {
        alphas,
        ..a.ep.config(EpConfig::default())
    };
    let s = run_power_ep(&p.prior, &p.region, &cfg)?;
    let n = s.mu.len();
    let out = SolveOutput {
        log_z: s.log_z,
        z: s.z(),
        mu: s.mu.iter().copied().collect(),
        sigma: (0..n).map(|i| (0..n).map(|j| s.sigma[(i, j)]).collect()).collect(),
        sweeps: s.sweeps,
        converged: s.converged,
        max_delta: s.max_delta,
        skipped_updates: s.skipped,
        clamped_updates: s.clamped,
        oscillation: s.oscillation,
    };
    emit(a.out.as_deref(), &to_json(&out))?;
    not_converged(a.ep.strict, usize::from(!s.converged))
}

fn run_oracle(a: OracleArgs) -> Outcome {
    let p = read_problem(&a.problem)?;
    if a.samples == Some(0) {
        return Err(invalid("samples", "must be at least 1"));
    }
    let est = match a.method.as_str() {
        "mc" => oracle::mc_rejection(&p.prior, &p.region, a.samples.unwrap_or(1_000_000), a.seed, 0)?,
        "qmc" => {
            if a.shifts < 2 {
                return Err(invalid("shifts", "need at least 2 shifts for an error estimate"));
            }
            let cfg = QmcConfig {
                points: a.samples.unwrap_or(500_000),
                shifts: a.shifts,
                seed: a.seed,
                ..QmcConfig::default()
            };
            oracle::genz_qmc(&p.prior, &p.region, &cfg)?
        }
        "orthant" => oracle::orthant(&p.prior, &p.region)?,
        "exact" => oracle::exact(&p.prior, &p.region)?,
        other => return Err(invalid("method", format!("unknown method '{other}' (mc, qmc, orthant, exact)"))),
    };
    emit(a.out.as_deref(), &to_json(&est))
}

fn study(a: StudyArgs) -> Outcome {
    let kind: StudyKind = a.kind.parse()?;
    let dims = match &a.dims {
        Some(t) => parse_list(t, "dims")?,
        None => match kind {
            StudyKind::PolyM => vec![10],
            StudyKind::Orthant => vec![2, 3],
            _ => vec![2, 3, 5, 10, 20],
        },
    };
    let mut cfg = StudyConfig::new(kind, dims, a.cases, a.seed);
    cfg.m_list = match &a.m_list {
        Some(t) => parse_list(t, "m_list")?,
        None => vec![2, 4, 8, 16, 32, 64],
    };
    cfg.ep = a.ep.config(cfg.ep);
    if let Some(v) = a.qmc_points {
        cfg.oracle.qmc.points = v;
    }
    if let Some(v) = a.qmc_shifts {
        cfg.oracle.qmc.shifts = v;
    }
    let base = McBudget::default();
    cfg.oracle.mc = McBudget {
        base: a.mc_samples.unwrap_or(base.base),
        cap: a.mc_cap.unwrap_or(base.cap),
        ..base
    };
    if let Some(s) = a.scale {
        cfg.scale = s;
    }
    let out = run_study(&cfg)?;
    emit(a.out.as_deref(), &out.table.to_csv())?;
    not_converged(a.ep.strict, out.cases.iter().filter(|c| !c.converged).count())
}

fn sweep_values(kind: PathologyKind, text: &Option<String>) -> Result<Vec<f64>, Failure> {
    match text {
        Some(t) => parse_list(t, "sweep"),
        None => Ok(kind.default_sweep()),
    }
}

fn run_pathology_cmd(a: PathologyArgs) -> Outcome {
    let kind: PathologyKind = a.kind.parse()?;
    let sweep = sweep_values(kind, &a.sweep)?;
    let ep = a.ep.config(pathology::default_config());
    let out = run_pathology(kind, &sweep, &ep)?;
    emit(a.out.as_deref(), &out.table.to_csv())?;
    not_converged(a.ep.strict, out.rows.iter().filter(|r| !r.outcome.converged).count())
}

fn alpha_sweep(a: AlphaArgs) -> Outcome {
    let kind: PathologyKind = a.kind.parse()?;
    let sweep = sweep_values(kind, &a.sweep)?;
    let grid = parse_list::<f64>(&a.grid, "grid")?;
    let ep = a.ep.config(pathology::default_config());
    let out = run_alpha_sweep(kind, &sweep, &grid, &ep)?;
    emit(a.out.as_deref(), &out.table.to_csv())?;
    not_converged(a.ep.strict, out.optima.iter().filter(|p| !p.outcome.converged).count())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Study(a) => study(a),
        Command::Pathology(a) => run_pathology_cmd(a),
        Command::AlphaSweep(a) => alpha_sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(2)
        }
    }
}
