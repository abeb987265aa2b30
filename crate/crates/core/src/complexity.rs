//! Query-cost calculus for wrapped and unwrapped solvers.
//!
//! Every asymptotic cost is instantiated with constant 1. Where the reference
//! experiments fix a logarithm base it is base 10; the two costs that
//! are never plotted (Ambainis, Subaşı) use natural logs.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{generate_sampled, Sampler, SpectrumConvention};
use crate::linalg::Vector;
use crate::ppa::{gd_warm_start, select_eta};
use crate::solvers::{split_budget, ErrorBudget};

/// The seven subroutine cost models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverModel {
    Hhl,
    Ambainis,
    Cks,
    Subasi,
    AnLin,
    LinTong,
    Costa,
}

impl SolverModel {
    pub const ALL: [SolverModel; 7] = [
        SolverModel::Hhl,
        SolverModel::Ambainis,
        SolverModel::Cks,
        SolverModel::Subasi,
        SolverModel::AnLin,
        SolverModel::LinTong,
        SolverModel::Costa,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SolverModel::Hhl => "hhl",
            SolverModel::Ambainis => "ambainis",
            SolverModel::Cks => "cks",
            SolverModel::Subasi => "subasi",
            SolverModel::AnLin => "anlin",
            SolverModel::LinTong => "lintong",
            SolverModel::Costa => "costa",
        }
    }

    /// The cost formula as text.
    pub fn formula(&self) -> &'static str {
        match self {
            SolverModel::Hhl => "kappa^2 / eps",
            SolverModel::Ambainis => "kappa * ln(kappa)^3 / eps^3",
            SolverModel::Cks => "kappa * log10(kappa / eps)",
            SolverModel::Subasi => "kappa * ln(kappa) / eps",
            SolverModel::AnLin => "kappa * log10(kappa / eps)",
            SolverModel::LinTong => "kappa * log10(kappa / eps)",
            SolverModel::Costa => "kappa * log10(1 / eps)",
        }
    }
}

impl fmt::Display for SolverModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        SolverModel::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

/// Condition number of `(I + ηA)/‖I + ηA‖`: `κ(1 + η)/(κ + η)`.
pub fn kappa_hat(kappa: f64, eta: f64) -> f64 {
    if eta.is_infinite() {
        return kappa;
    }
    kappa * (1.0 + eta) / (kappa + eta)
}

fn check_budget_inputs(kappa: f64, c: f64, d: f64, psi: f64, epsilon: f64) -> Result<()> {
    if !(kappa >= 1.0 && kappa.is_finite()) {
        return Err(Error::InvalidBudget(format!("kappa must be >= 1 (got {kappa})")));
    }
    if !(c > 1.0) {
        return Err(Error::InvalidBudget(format!("c must be > 1 (got {c})")));
    }
    if !(epsilon > 0.0 && psi > 0.0 && d > 0.0) {
        return Err(Error::InvalidBudget(format!(
            "epsilon, psi and d must be positive (got {epsilon}, {psi}, {d})"
        )));
    }
    Ok(())
}

/// `κ̂` after the single-step budget: `κ − (c−1)(κ−1)Ψε / (c·d)`.
///
/// Valid only when `d > (1 − 1/c)εΨ = ε₂`, i.e. when the step size is positive.
pub fn kappa_hat_budget(kappa: f64, c: f64, d: f64, psi: f64, epsilon: f64) -> Result<f64> {
    check_budget_inputs(kappa, c, d, psi, epsilon)?;
    let eps2 = (1.0 - 1.0 / c) * epsilon * psi;
    if d <= eps2 {
        return Err(Error::InvalidBudget(format!(
            "d = {d} must exceed eps2 = (1 - 1/c)·eps·psi = {eps2}"
        )));
    }
    Ok(kappa - (c - 1.0) * (kappa - 1.0) * psi * epsilon / (c * d))
}

/// `κ̂` after the two-step budget: `κ − (κ−1)·√((c−1)Ψε / (c·d))`.
pub fn kappa_hat_two_step(kappa: f64, c: f64, d: f64, psi: f64, epsilon: f64) -> Result<f64> {
    check_budget_inputs(kappa, c, d, psi, epsilon)?;
    let radicand = (c - 1.0) * psi * epsilon / (c * d);
    if !(radicand > 0.0 && radicand <= 1.0) {
        return Err(Error::InvalidBudget(format!(
            "two-step radicand {radicand} must lie in (0, 1]"
        )));
    }
    Ok(kappa - (kappa - 1.0) * radicand.sqrt())
}

/// Unwrapped query count of `model` at condition number `kappa`.
pub fn solver_queries(model: SolverModel, kappa: f64, epsilon: f64) -> Result<f64> {
    if !(kappa >= 1.0 && kappa.is_finite()) {
        return Err(Error::invalid(format!("kappa must be >= 1 (got {kappa})")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1) (got {epsilon})")));
    }
    Ok(match model {
        SolverModel::Hhl => kappa * kappa / epsilon,
        SolverModel::Ambainis => kappa * kappa.ln().powi(3) / epsilon.powi(3),
        SolverModel::Cks | SolverModel::AnLin | SolverModel::LinTong => kappa * (kappa / epsilon).log10(),
        SolverModel::Subasi => kappa * kappa.ln() / epsilon,
        SolverModel::Costa => kappa * (1.0 / epsilon).log10(),
    })
}

/// Wrapped cost split into the gain from `κ̂ ≤ κ` and the price of `ε₁ = ε/c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub improvement: f64,
    pub overhead: f64,
    pub total: f64,
}

/// Costa: `κ̂·log10(1/ε) + κ̂·log10(c)`; CKS: `κ̂·log10(κ̂/ε) + κ̂·log10(c)`.
///
/// `total` is defined as the sum, so additivity holds exactly.
pub fn decompose(kappa_hat: f64, c: f64, epsilon: f64, model: SolverModel) -> Result<Decomposition> {
    if !(c > 1.0) {
        return Err(Error::InvalidSplit(c));
    }
    if !(epsilon > 0.0) {
        return Err(Error::invalid(format!("epsilon must be positive (got {epsilon})")));
    }
    let improvement = match model {
        SolverModel::Costa => kappa_hat * (1.0 / epsilon).log10(),
        SolverModel::Cks => kappa_hat * (kappa_hat / epsilon).log10(),
        other => return Err(Error::UnsupportedModel(other.to_string())),
    };
    let overhead = kappa_hat * c.log10();
    Ok(Decomposition {
        improvement,
        overhead,
        total: improvement + overhead,
    })
}

/// Warm-start distance `2(κ−1)ε₂/κ` that halves `κ̂`.
pub fn warm_start_d(kappa: f64, eps2: f64) -> Result<f64> {
    if !(kappa > 1.0) {
        return Err(Error::invalid(format!("kappa must be > 1 (got {kappa})")));
    }
    if !(eps2 > 0.0) {
        return Err(Error::invalid(format!("eps2 must be positive (got {eps2})")));
    }
    Ok(2.0 * (kappa - 1.0) * eps2 / kappa)
}

/// Baseline, wrapped cost and its decomposition for one parameter cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityReport {
    pub kappa: f64,
    pub d: f64,
    pub kappa_hat: f64,
    pub eta: f64,
    pub baseline: f64,
    pub improvement: f64,
    pub overhead: f64,
    pub total: f64,
    pub budget: ErrorBudget,
}

pub fn complexity_report(
    kappa: f64,
    c: f64,
    d: f64,
    psi: f64,
    epsilon: f64,
    model: SolverModel,
) -> Result<ComplexityReport> {
    let kappa_hat = kappa_hat_budget(kappa, c, d, psi, epsilon)?;
    let budget = split_budget(epsilon, c, psi)?;
    let eta = select_eta(kappa, d, budget.eps2).map_err(|e| Error::InvalidBudget(e.to_string()))?;
    let baseline = solver_queries(model, kappa, epsilon)?;
    let parts = decompose(kappa_hat, c, epsilon, model)?;
    Ok(ComplexityReport {
        kappa,
        d,
        kappa_hat,
        eta,
        baseline,
        improvement: parts.improvement,
        overhead: parts.overhead,
        total: parts.total,
        budget,
    })
}

/// Per-row outcome in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    Ok,
    /// The budget admits no positive step size at this cell.
    InvalidBudget,
    /// Warm start alone already reached `ε₂`; the wrapper is unnecessary.
    WarmStartSufficient,
    /// Row of the condition-number sweep, a qualitative reproduction.
    Qualitative,
}

impl CellStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CellStatus::Ok => "ok",
            CellStatus::InvalidBudget => "invalid_budget",
            CellStatus::WarmStartSufficient => "warm_start_sufficient",
            CellStatus::Qualitative => "qualitative",
        }
    }
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One sweep row; echoes every input needed to recompute it.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub kappa: f64,
    pub gd_steps: Option<usize>,
    pub c: f64,
    pub psi: f64,
    pub epsilon: f64,
    pub d: f64,
    pub baseline: f64,
    pub report: Option<ComplexityReport>,
    pub status: CellStatus,
}

impl SweepRow {
    /// Wrapped total cost, if the cell is valid.
    pub fn total(&self) -> Option<f64> {
        self.report.as_ref().map(|r| r.total)
    }
}

#[allow(clippy::too_many_arguments)]
fn cell(
    kappa: f64,
    c: f64,
    d: f64,
    psi: f64,
    epsilon: f64,
    model: SolverModel,
    gd_steps: Option<usize>,
    ok: CellStatus,
    invalid: CellStatus,
) -> Result<SweepRow> {
    let baseline = solver_queries(model, kappa, epsilon)?;
    let (report, status) = match complexity_report(kappa, c, d, psi, epsilon, model) {
        Ok(r) => (Some(r), ok),
        Err(Error::InvalidBudget(_)) | Err(Error::InvalidSplit(_)) => (None, invalid),
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        kappa,
        gd_steps,
        c,
        psi,
        epsilon,
        d,
        baseline,
        report,
        status,
    })
}

/// One report per `c`, in input order. Invalid cells are kept with
/// `status = invalid_budget`.
pub fn sweep_c(
    kappa: f64,
    d: f64,
    psi: f64,
    epsilon: f64,
    c_values: &[f64],
    model: SolverModel,
) -> Result<Vec<SweepRow>> {
    decompose(1.0, 2.0, 0.5, model)?;
    c_values
        .iter()
        .map(|&c| {
            cell(
                kappa,
                c,
                d,
                psi,
                epsilon,
                model,
                None,
                CellStatus::Ok,
                CellStatus::InvalidBudget,
            )
        })
        .collect()
}

/// Wrapped vs. unwrapped cost across condition numbers.
///
/// With `d = None` each row uses the halving warm-start distance
/// [`warm_start_d`]. Rows are tagged `qualitative`.
pub fn sweep_kappa(
    kappa_values: &[f64],
    c: f64,
    psi: f64,
    epsilon: f64,
    d: Option<f64>,
    model: SolverModel,
) -> Result<Vec<SweepRow>> {
    decompose(1.0, 2.0, 0.5, model)?;
    let budget = split_budget(epsilon, c, psi)?;
    kappa_values
        .iter()
        .map(|&kappa| {
            let d = match d {
                Some(d) => d,
                None => warm_start_d(kappa, budget.eps2).unwrap_or(0.0),
            };
            cell(
                kappa,
                c,
                d,
                psi,
                epsilon,
                model,
                None,
                CellStatus::Qualitative,
                CellStatus::InvalidBudget,
            )
        })
        .collect()
}

/// Parameters of the warm-start experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct WarmStartConfig {
    pub kappa_values: Vec<f64>,
    pub gd_steps: Vec<usize>,
    pub epsilon: f64,
    pub c: f64,
    pub psi: f64,
    pub n: usize,
    pub seed: u64,
    pub gd_stepsize: f64,
    pub convention: SpectrumConvention,
    pub sampler: Sampler,
}

impl Default for WarmStartConfig {
    /// The reference grid: n = 100, seed 1235, κ ∈ {100..500}, GD step 1.5
    /// for 200/500/1000 iterations, ε = 0.1, c = 5, Ψ = 1, with the Gram
    /// spectrum and Mersenne Twister stream of the reference experiment.
    fn default() -> Self {
        Self {
            kappa_values: vec![100.0, 200.0, 300.0, 400.0, 500.0],
            gd_steps: vec![200, 500, 1000],
            epsilon: 0.1,
            c: 5.0,
            psi: 1.0,
            n: 100,
            seed: 1235,
            gd_stepsize: 1.5,
            convention: SpectrumConvention::Gram,
            sampler: Sampler::Mt19937,
        }
    }
}

/// Runs gradient descent from `x0 = 0` on each instance, measures
/// `d = ‖x_GD − x*‖` after each iteration budget, and prices the wrapped
/// Costa solver with that `d`.
///
/// Rows are ordered by `κ` then GD budget, as given. Cells where GD already
/// reached `ε₂` carry `status = warm_start_sufficient`. Costs use the nominal
/// `κ` of the grid under either spectrum convention.
pub fn warmstart_curve(cfg: &WarmStartConfig) -> Result<Vec<SweepRow>> {
    split_budget(cfg.epsilon, cfg.c, cfg.psi)?;
    let max_steps = cfg.gd_steps.iter().copied().max().unwrap_or(0);
    let per_kappa: Vec<Vec<SweepRow>> = cfg
        .kappa_values
        .par_iter()
        .map(|&kappa| {
            let inst = generate_sampled(cfg.n, kappa, cfg.seed, cfg.convention, cfg.sampler)?;
            let (_, errors) = gd_warm_start(&inst, &Vector::zeros(cfg.n), cfg.gd_stepsize, max_steps)?;
            cfg.gd_steps
                .iter()
                .map(|&steps| {
                    cell(
                        kappa,
                        cfg.c,
                        errors[steps],
                        cfg.psi,
                        cfg.epsilon,
                        SolverModel::Costa,
                        Some(steps),
                        CellStatus::Ok,
                        CellStatus::WarmStartSufficient,
                    )
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_kappa.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn modified_condition_number() {
        assert_eq!(kappa_hat(20.0, 0.0), 1.0);
        assert_eq!(kappa_hat(20.0, f64::INFINITY), 20.0);
        assert!((kappa_hat(20.0, 1e12) - 20.0).abs() < 1e-9);
        assert_relative_eq!(kappa_hat(20.0, 20.0), 10.5, max_relative = 1e-15);
    }

    #[test]
    fn budget_kappa_hat() {
        assert_relative_eq!(kappa_hat_budget(20.0, 5.0, 1.0, 10.0, 0.1).unwrap(), 4.8, max_relative = 1e-14);
        assert_relative_eq!(kappa_hat(20.0, 5.0), 4.8, max_relative = 1e-14);
        assert_relative_eq!(kappa_hat_budget(20.0, 2.0, 1.0, 10.0, 0.1).unwrap(), 10.5, max_relative = 1e-14);
        assert!(matches!(
            kappa_hat_budget(20.0, 5.0, 0.8, 10.0, 0.1),
            Err(Error::InvalidBudget(_))
        ));
        assert!(kappa_hat_budget(20.0, 1.0, 1.0, 10.0, 0.1).is_err());
    }

    #[test]
    fn two_step_kappa_hat() {
        let v = kappa_hat_two_step(20.0, 5.0, 1.0, 10.0, 0.1).unwrap();
        assert!((v - (20.0 - 19.0 * 0.8f64.sqrt())).abs() < 1e-12);
        assert!((v - 3.0059).abs() < 1e-4);
        let eta = 20.0 * ((1.0f64 / 0.8).sqrt() - 1.0);
        assert!((kappa_hat(20.0, eta) - v).abs() < 1e-10);
        // radicand exactly 1: c = 2, psi·eps = 2d
        assert!((kappa_hat_two_step(20.0, 2.0, 1.0, 20.0, 0.1).unwrap() - 1.0).abs() < 1e-12);
        assert!(kappa_hat_two_step(20.0, 2.0, 1.0, 30.0, 0.1).is_err());
        assert!(v <= kappa_hat_budget(20.0, 5.0, 1.0, 10.0, 0.1).unwrap());
    }

    #[test]
    fn queries() {
        assert_relative_eq!(solver_queries(SolverModel::Costa, 20.0, 0.1).unwrap(), 20.0, max_relative = 1e-15);
        assert_relative_eq!(solver_queries(SolverModel::Hhl, 10.0, 0.1).unwrap(), 1000.0, max_relative = 1e-12);
        let cks = solver_queries(SolverModel::Cks, 20.0, 0.1).unwrap();
        assert!((cks - 46.0206).abs() < 1e-4);
        assert!(solver_queries(SolverModel::Costa, 0.5, 0.1).is_err());
        assert!(solver_queries(SolverModel::Costa, 2.0, 1.0).is_err());
        for m in SolverModel::ALL {
            assert!(solver_queries(m, 50.0, 0.01).unwrap() > 0.0);
        }
    }

    #[test]
    fn model_names_round_trip() {
        for m in SolverModel::ALL {
            assert_eq!(m.to_string().parse::<SolverModel>().unwrap(), m);
        }
        assert_eq!("Lin-Tong".parse::<SolverModel>().unwrap(), SolverModel::LinTong);
        assert!(matches!("qsvt".parse::<SolverModel>(), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn decomposition() {
        let d = decompose(4.8, 5.0, 0.1, SolverModel::Costa).unwrap();
        assert_relative_eq!(d.improvement, 4.8, max_relative = 1e-15);
        assert!((d.overhead - 3.355).abs() < 1e-3);
        assert!((d.total - 8.155).abs() < 1e-3);
        assert!((d.total - 4.8 * 50f64.log10()).abs() < 1e-12);

        let near_one = decompose(4.8, 1.0 + 1e-12, 0.1, SolverModel::Costa).unwrap();
        assert!(near_one.overhead < 1e-10);

        assert!(matches!(
            decompose(4.8, 5.0, 0.1, SolverModel::Hhl),
            Err(Error::UnsupportedModel(_))
        ));
        let cks = decompose(4.8, 5.0, 0.1, SolverModel::Cks).unwrap();
        assert!((cks.total - 4.8 * (4.8 * 5.0 / 0.1f64).log10()).abs() < 1e-12);
    }

    #[test]
    fn halving_distance() {
        assert_eq!(warm_start_d(2.0, 1.0).unwrap(), 1.0);
        assert!((warm_start_d(1e12, 0.3).unwrap() - 0.6).abs() < 1e-9);
        let b = split_budget(0.1, 5.0, 1.0).unwrap();
        let d = warm_start_d(40.0, b.eps2).unwrap();
        assert!((kappa_hat_budget(40.0, 5.0, d, 1.0, 0.1).unwrap() - 20.0).abs() < 1e-12);
        assert!(warm_start_d(1.0, 0.1).is_err());
    }

    #[test]
    fn split_sweep_grid() {
        let cs: Vec<f64> = (2..=19).map(f64::from).collect();
        let rows = sweep_c(20.0, 1.0, 10.0, 0.1, &cs, SolverModel::Costa).unwrap();
        assert_eq!(rows.len(), 18);
        let totals: Vec<f64> = rows.iter().map(|r| r.total().unwrap()).collect();
        assert!(totals.iter().all(|&t| t < 20.0));
        assert!(totals.windows(2).all(|w| w[1] < w[0]));
        let c5 = rows[3].report.as_ref().unwrap();
        assert!((c5.kappa_hat - 4.8).abs() < 1e-12);
        assert!((c5.total - 8.155056).abs() < 1e-6);
        assert!((c5.eta - 5.0).abs() < 1e-12);

        let cks = sweep_c(20.0, 1.0, 10.0, 0.1, &cs, SolverModel::Cks).unwrap();
        assert!(cks.iter().all(|r| r.total().unwrap() < r.baseline));
    }

    #[test]
    fn sweep_records_invalid_cells() {
        let rows = sweep_c(20.0, 0.5, 10.0, 0.1, &[1.5, 2.0], SolverModel::Costa).unwrap();
        // eps2 = (1 - 1/c)·0.1·10: 1/3 at c = 1.5, exactly d at c = 2
        assert_eq!(rows[0].status, CellStatus::Ok);
        assert_eq!(rows[1].status, CellStatus::InvalidBudget);
        assert!(rows[1].report.is_none());
        let rows = sweep_c(20.0, 1.0, 10.0, 0.1, &[0.5], SolverModel::Costa).unwrap();
        assert_eq!(rows[0].status, CellStatus::InvalidBudget);
        assert!(sweep_c(20.0, 1.0, 10.0, 0.1, &[2.0], SolverModel::Hhl).is_err());
    }

    #[test]
    fn kappa_sweep_halves() {
        let rows = sweep_kappa(&[10.0, 100.0, 1000.0], 5.0, 1.0, 0.1, None, SolverModel::Costa).unwrap();
        for r in &rows {
            assert_eq!(r.status, CellStatus::Qualitative);
            let rep = r.report.as_ref().unwrap();
            assert!((rep.kappa_hat - r.kappa / 2.0).abs() < 1e-9);
        }
        let rows = sweep_kappa(&[1.0], 5.0, 1.0, 0.1, None, SolverModel::Costa).unwrap();
        assert_eq!(rows[0].status, CellStatus::InvalidBudget);
    }

    #[test]
    fn warm_start_zero_steps_has_unit_distance() {
        let cfg = WarmStartConfig {
            kappa_values: vec![50.0],
            gd_steps: vec![0, 10, 100],
            n: 20,
            ..WarmStartConfig::default()
        };
        let rows = warmstart_curve(&cfg).unwrap();
        assert_eq!(rows.len(), 3);
        assert!((rows[0].d - 1.0).abs() <= 1e-12);
        assert!(rows[1].d < rows[0].d && rows[2].d < rows[1].d);
    }

    #[test]
    fn reference_grid_matches_independent_distances() {
        // ‖x_GD − x*‖ from an independent numpy run of the same construction.
        let want = [
            (100.0, [0.14939992566089827, 0.12636466743728678, 0.11163086832907418]),
            (300.0, [0.16026300372949073, 0.1398081919415029, 0.13080525583217073]),
            (500.0, [0.16221879660054922, 0.1417964046237333, 0.13317457589917997]),
        ];
        let cfg = WarmStartConfig {
            kappa_values: want.iter().map(|w| w.0).collect(),
            ..WarmStartConfig::default()
        };
        let rows = warmstart_curve(&cfg).unwrap();
        for (chunk, (_, ds)) in rows.chunks(3).zip(want) {
            for (row, d) in chunk.iter().zip(ds) {
                assert!((row.d - d).abs() <= 1e-9, "kappa {} steps {:?}: {} vs {d}", row.kappa, row.gd_steps, row.d);
                assert_eq!(row.status, CellStatus::Ok);
            }
        }
    }

    #[test]
    fn prescribed_spectrum_reaches_eps2_before_the_budget_is_spent() {
        let cfg = WarmStartConfig {
            convention: SpectrumConvention::Prescribed,
            ..WarmStartConfig::default()
        };
        let rows = warmstart_curve(&cfg).unwrap();
        assert!(rows.iter().all(|r| r.status == CellStatus::WarmStartSufficient));
    }
}
