//! `qlsp-lab` command-line front end.
//!
//! Exit codes: 0 success, 1 suite or assertion failure, 2 invalid input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::complexity::{sweep_c, sweep_kappa, warmstart_curve, SolverModel, WarmStartConfig};
use crate::config::{RunConfig, StartPoint};
use crate::error::Error;
use crate::instance::generate_sampled;
use crate::linalg::{condition_number, spectral_norm, Vector};
use crate::ppa::gd_warm_start;
use crate::solvers::{catalyst_solve, PsiMode};
use crate::table::{cost_csv, simulate_csv, warmstart_csv, SimulateRow};
use crate::verify::{run_suites, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "qlsp-lab", version, about = "Proximal-point preconditioning laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance and print its measured condition number and norm.
    Gen(Flags),
    /// Wrapped vs. unwrapped cost across the split constant c (CSV).
    SweepC(Flags),
    /// Wrapped vs. unwrapped cost across condition numbers (CSV, qualitative).
    SweepKappa(Flags),
    /// Gradient-descent warm start followed by the wrapped cost (CSV).
    Warmstart(Flags),
    /// End-to-end catalyst solves with measured error split (CSV).
    Simulate(Flags),
    /// Run the numerical property suites.
    Verify(Flags),
}

/// Every flag is parsed by the same code as the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// `key = value` config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub kappa: Option<String>,
    /// Comma list or `start..=end[:step]`.
    #[arg(long)]
    pub kappas: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    /// Comma list or `start..=end[:step]`.
    #[arg(long)]
    pub c_values: Option<String>,
    #[arg(long)]
    pub psi: Option<String>,
    /// `fixed:<value>` or `fixed-point[:<max_iter>[:<tol>]]`.
    #[arg(long)]
    pub psi_mode: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
    /// hhl | ambainis | cks | subasi | anlin | lintong | costa
    #[arg(long)]
    pub model: Option<String>,
    /// exact | inexact
    #[arg(long)]
    pub solver: Option<String>,
    #[arg(long)]
    pub gd_steps: Option<String>,
    #[arg(long)]
    pub gd_stepsize: Option<String>,
    /// prescribed (cond = kappa) | gram (cond = kappa², reference generator)
    #[arg(long)]
    pub spectrum: Option<String>,
    /// chacha8 (default) | mt19937 (numpy legacy stream; warmstart default)
    #[arg(long)]
    pub sampler: Option<String>,
    /// zero | star | gd:<iters>
    #[arg(long)]
    pub x0: Option<String>,
    #[arg(long)]
    pub runs: Option<String>,
    #[arg(long)]
    pub suites: Option<String>,
    #[arg(long)]
    pub perturb_kappa_hat: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
}

impl Flags {
    pub fn to_config(&self) -> Result<RunConfig, Error> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let pairs = [
            ("n", &self.n),
            ("kappa", &self.kappa),
            ("kappas", &self.kappas),
            ("seed", &self.seed),
            ("epsilon", &self.epsilon),
            ("c", &self.c),
            ("c_values", &self.c_values),
            ("psi", &self.psi),
            ("psi_mode", &self.psi_mode),
            ("d", &self.d),
            ("model", &self.model),
            ("solver", &self.solver),
            ("gd_steps", &self.gd_steps),
            ("gd_stepsize", &self.gd_stepsize),
            ("spectrum", &self.spectrum),
            ("sampler", &self.sampler),
            ("x0", &self.x0),
            ("runs", &self.runs),
            ("suites", &self.suites),
            ("perturb_kappa_hat", &self.perturb_kappa_hat),
            ("out", &self.out),
        ];
        let mut flags = RunConfig::default();
        for (key, value) in pairs {
            if let Some(v) = value {
                flags.set(key, v).map_err(|e| Error::invalid(format!("--{}: {e}", key.replace('_', "-"))))?;
            }
        }
        Ok(base.merged_with(flags))
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad parameters; exit 2.
    Input(Error),
    /// A check failed or output could not be written; exit 1.
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Failure(msg) => f.write_str(msg),
        }
    }
}

/// What a command produced: the primary text and an optional summary for stderr.
#[derive(Debug, Default)]
pub struct Output {
    pub body: String,
    pub summary: Option<String>,
    /// Set when the command ran but a check it asserts did not hold.
    pub failed: bool,
}

fn need_kappa(kappa: f64) -> Result<f64, Error> {
    if !(kappa >= 1.0) {
        return Err(Error::invalid(format!("kappa must be >= 1 (got {kappa})")));
    }
    Ok(kappa)
}

pub fn cmd_gen(cfg: &RunConfig) -> Result<Output, CliError> {
    let n = cfg.n.unwrap_or(100);
    let kappa = need_kappa(cfg.kappa.unwrap_or(10.0))?;
    let seed = cfg.seed.unwrap_or(1235);
    let spectrum = cfg.spectrum.unwrap_or_default();
    let inst = generate_sampled(n, kappa, seed, spectrum, cfg.sampler.unwrap_or_default())?;
    let fresh = inst.a.uncached();
    let measured = condition_number(&fresh)?;
    let norm = spectral_norm(&fresh);
    Ok(Output {
        body: format!(
            "n={n} kappa_target={kappa} kappa_measured={measured} norm={norm} seed={seed} spectrum={spectrum} sampler={}\n",
            cfg.sampler.unwrap_or_default()
        ),
        ..Output::default()
    })
}

pub fn cmd_sweep_c(cfg: &RunConfig) -> Result<Output, CliError> {
    let kappa = need_kappa(cfg.kappa.unwrap_or(20.0))?;
    let c_values = cfg
        .c_values
        .clone()
        .or(cfg.c.map(|c| vec![c]))
        .unwrap_or_else(|| (2..=19).map(f64::from).collect());
    let rows = sweep_c(
        kappa,
        cfg.d.unwrap_or(1.0),
        cfg.psi.unwrap_or(10.0),
        cfg.epsilon.unwrap_or(0.1),
        &c_values,
        cfg.model.unwrap_or(SolverModel::Costa),
    )?;
    let invalid = rows.iter().filter(|r| r.report.is_none()).count();
    Ok(Output {
        body: cost_csv(&rows),
        summary: Some(format!("rows={} invalid={invalid}", rows.len())),
        failed: false,
    })
}

pub fn cmd_sweep_kappa(cfg: &RunConfig) -> Result<Output, CliError> {
    let kappas = cfg
        .kappas
        .clone()
        .or(cfg.kappa.map(|k| vec![k]))
        .unwrap_or_else(|| (1..=10).map(|i| f64::from(i) * 100.0).collect());
    for &k in &kappas {
        need_kappa(k)?;
    }
    let rows = sweep_kappa(
        &kappas,
        cfg.c.unwrap_or(5.0),
        cfg.psi.unwrap_or(1.0),
        cfg.epsilon.unwrap_or(0.1),
        cfg.d,
        cfg.model.unwrap_or(SolverModel::Costa),
    )?;
    Ok(Output {
        body: cost_csv(&rows),
        summary: Some(format!("rows={} (qualitative reproduction)", rows.len())),
        failed: false,
    })
}

pub fn cmd_warmstart(cfg: &RunConfig) -> Result<Output, CliError> {
    let defaults = WarmStartConfig::default();
    let ws = WarmStartConfig {
        kappa_values: cfg.kappas.clone().or(cfg.kappa.map(|k| vec![k])).unwrap_or(defaults.kappa_values),
        gd_steps: cfg.gd_steps.clone().unwrap_or(defaults.gd_steps),
        epsilon: cfg.epsilon.unwrap_or(defaults.epsilon),
        c: cfg.c.unwrap_or(defaults.c),
        psi: cfg.psi.unwrap_or(defaults.psi),
        n: cfg.n.unwrap_or(defaults.n),
        seed: cfg.seed.unwrap_or(defaults.seed),
        gd_stepsize: cfg.gd_stepsize.unwrap_or(defaults.gd_stepsize),
        convention: cfg.spectrum.unwrap_or(defaults.convention),
        sampler: cfg.sampler.unwrap_or(defaults.sampler),
    };
    for &k in &ws.kappa_values {
        need_kappa(k)?;
    }
    let rows = warmstart_curve(&ws)?;
    let sufficient = rows.iter().filter(|r| r.report.is_none()).count();
    Ok(Output {
        body: warmstart_csv(&rows),
        summary: Some(format!(
            "rows={} warm_start_sufficient={sufficient} spectrum={} sampler={}",
            rows.len(),
            ws.convention,
            ws.sampler
        )),
        failed: false,
    })
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<Output, CliError> {
    let n = cfg.n.unwrap_or(100);
    let kappa = need_kappa(cfg.kappa.unwrap_or(100.0))?;
    let seed = cfg.seed.unwrap_or(1);
    let epsilon = cfg.epsilon.unwrap_or(0.1);
    let c = cfg.c.unwrap_or(5.0);
    let psi_mode = cfg.psi_mode.unwrap_or(PsiMode::Fixed(cfg.psi.unwrap_or(1.0)));
    let solver = cfg.solver.unwrap_or_default();
    let start = cfg.x0.unwrap_or_default();
    let stepsize = cfg.gd_stepsize.unwrap_or(1.5);
    let runs = cfg.runs.unwrap_or(1);
    let spectrum = cfg.spectrum.unwrap_or_default();
    let sampler = cfg.sampler.unwrap_or_default();
    if runs == 0 {
        return Err(Error::invalid("runs must be >= 1").into());
    }

    let mut rows = Vec::with_capacity(runs);
    let mut violations = 0;
    let mut worst: f64 = 0.0;
    for i in 0..runs as u64 {
        let run_seed = seed + i;
        let inst = generate_sampled(n, kappa, run_seed, spectrum, sampler)?;
        let x0 = match start {
            StartPoint::Zero => Vector::zeros(n),
            StartPoint::Solution => inst.x_star.clone(),
            StartPoint::GradientDescent(k) => gd_warm_start(&inst, &Vector::zeros(n), stepsize, k)?.0,
        };
        let d = (&x0 - &inst.x_star).norm();
        let mut row = SimulateRow {
            seed: run_seed,
            n,
            kappa,
            epsilon,
            c,
            psi: None,
            solver: solver.to_string(),
            eta: None,
            d,
            degree: None,
            solver_error: None,
            ppa_error: None,
            total_error: None,
            status: String::new(),
        };
        match catalyst_solve(&inst, &x0, epsilon, c, psi_mode, solver) {
            Ok(run) => {
                let errs = run.error_breakdown(&inst)?;
                row.psi = Some(run.budget.psi);
                row.eta = Some(run.plan.eta);
                row.degree = Some(run.outcome.degree_used);
                row.solver_error = Some(errs.solver_error);
                row.ppa_error = Some(errs.ppa_error);
                row.total_error = Some(errs.total_error);
                worst = worst.max(errs.total_error);
                row.status = if errs.total_error <= epsilon {
                    "ok".into()
                } else {
                    violations += 1;
                    "bound_violated".into()
                };
            }
            Err(Error::DegenerateTarget { .. }) => row.status = "degenerate_target".into(),
            Err(Error::HypothesisViolation(_)) => row.status = "hypothesis_violation".into(),
            Err(Error::NonConvergence { .. }) => row.status = "psi_not_converged".into(),
            Err(e) => return Err(e.into()),
        }
        rows.push(row);
    }
    let ok = rows.iter().filter(|r| r.status == "ok").count();
    Ok(Output {
        body: simulate_csv(&rows),
        summary: Some(format!(
            "runs={runs} ok={ok} violations={violations} worst_total_error={worst} epsilon={epsilon}"
        )),
        failed: violations > 0,
    })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Output, CliError> {
    let opts = VerifyOptions {
        kappa_hat_perturbation: cfg.perturb_kappa_hat.unwrap_or(0.0),
    };
    let reports = run_suites(cfg.suites.as_deref().unwrap_or(&[]), &opts)?;
    let mut body = String::new();
    for r in &reports {
        body.push_str(&r.to_string());
        body.push('\n');
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    Ok(Output {
        body,
        summary: Some(format!("suites={} failed={failed}", reports.len())),
        failed: failed > 0,
    })
}

type CommandFn = fn(&RunConfig) -> Result<Output, CliError>;

pub fn execute(command: &Command) -> Result<(Output, Option<PathBuf>), CliError> {
    let (flags, f): (&Flags, CommandFn) = match command {
        Command::Gen(fl) => (fl, cmd_gen),
        Command::SweepC(fl) => (fl, cmd_sweep_c),
        Command::SweepKappa(fl) => (fl, cmd_sweep_kappa),
        Command::Warmstart(fl) => (fl, cmd_warmstart),
        Command::Simulate(fl) => (fl, cmd_simulate),
        Command::Verify(fl) => (fl, cmd_verify),
    };
    let cfg = flags.to_config()?;
    Ok((f(&cfg)?, cfg.out))
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli.command).and_then(|(output, out_path)| {
        match out_path {
            Some(path) => fs::write(&path, &output.body)
                .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))?,
            None => std::io::stdout()
                .write_all(output.body.as_bytes())
                .map_err(|e| CliError::Failure(e.to_string()))?,
        }
        if let Some(summary) = &output.summary {
            eprintln!("{summary}");
        }
        if output.failed {
            return Err(CliError::Failure("one or more checks failed".into()));
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
