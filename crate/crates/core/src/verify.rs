//! Numerical property suites run by `qlsp-lab verify`.
//!
//! Each suite draws its own deterministic inputs, checks one identity or
//! bound at a fixed tolerance, and reports the worst observed value.

use std::fmt;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexity::{decompose, kappa_hat, kappa_hat_budget, kappa_hat_two_step, warm_start_d, SolverModel};
use crate::error::{Error, Result};
use crate::instance::{gaussian_vector, generate};
use crate::linalg::{condition_number, horner, spectral_norm, SymMatrix, Vector};
use crate::ppa::{
    compute_psi, normalized_state_distance, ppa_run, ppa_step, select_eta, select_eta_two_step, two_step_solve,
};
use crate::solvers::{catalyst_solve, cks_degree, split_budget, truncated_inverse_coeffs, PsiMode, SolverKind};

pub const SUITES: &[&str] = &[
    "lemma1", "prop2", "lemma3", "cks", "theorem5", "eq11", "budget", "two_step", "halving",
];

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct VerifyOptions {
    /// Relative perturbation applied to the closed-form `κ̂` in the `lemma1`
    /// suite. Nonzero values exist to confirm the suite can fail.
    pub kappa_hat_perturbation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    /// Largest observed violation measure (meaning depends on the suite).
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<9} checks={:<6} worst={:.3e} tol={:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.worst,
            self.tolerance
        )
    }
}

/// Tracks the worst value of a measure that must stay `<= tolerance`.
struct Tally {
    name: &'static str,
    tolerance: f64,
    checks: usize,
    worst: f64,
    passed: bool,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            checks: 0,
            worst: 0.0,
            passed: true,
        }
    }

    fn record(&mut self, measure: f64) {
        self.checks += 1;
        if measure.is_nan() || measure > self.tolerance {
            self.passed = false;
        }
        if measure.is_nan() || measure > self.worst {
            self.worst = measure;
        }
    }

    /// Records a boolean side condition without touching `worst`.
    fn require(&mut self, ok: bool) {
        self.checks += 1;
        self.passed &= ok;
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            checks: self.checks,
            worst: self.worst,
            tolerance: self.tolerance,
            passed: self.passed,
        }
    }
}

/// Measured condition number of `(I + ηA)/‖I + ηA‖`, built entrywise and
/// decomposed from scratch.
pub fn measured_modified_condition(a: &SymMatrix, eta: f64) -> Result<f64> {
    let n = a.dim();
    let resolvent = SymMatrix::from_dmatrix(DMatrix::identity(n, n) + a.matrix() * eta)?;
    let norm = spectral_norm(&resolvent);
    let normalized = SymMatrix::from_dmatrix(resolvent.matrix() / norm)?;
    condition_number(&normalized)
}

/// Closed-form `κ̂` against the eigensolver, relative error `<= 1e-8`.
pub fn lemma1(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut t = Tally::new("lemma1", 1e-8);
    for kappa in [2.0, 20.0, 200.0] {
        let inst = generate(50, kappa, kappa as u64)?;
        for eta in [0.1, 1.0, 10.0, 100.0, 1e4] {
            let predicted = kappa_hat(kappa, eta) * (1.0 + opts.kappa_hat_perturbation);
            let measured = measured_modified_condition(&inst.a.uncached(), eta)?;
            t.record((predicted - measured).abs() / predicted);
        }
    }
    Ok(t.finish())
}

/// Single step with `η = κ(d/ε₂ − 1)` lands within `ε₂`; the bound is tight
/// along the bottom eigenvector. Measure: `‖x₁ − x*‖/ε₂ − 1`, must be `<= 0`.
pub fn prop2(pairs: usize, seed: u64) -> Result<SuiteReport> {
    let mut t = Tally::new("prop2", 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tight_gap: f64 = 0.0;
    for i in 0..pairs {
        let n = [8, 20, 50, 100][i % 4];
        let kappa = 1.0 + rng.gen_range(0.0..199.0);
        let inst = generate(n, kappa, rng.gen())?;
        let dir = gaussian_vector(n, rng.gen());
        let d = 10f64.powf(rng.gen_range(-2.0..1.0));
        let x0 = &inst.x_star + &dir * (d / dir.norm());
        let eps2 = d * rng.gen_range(0.01..0.99);
        let eta = select_eta(kappa, d, eps2)?;

        let x1 = ppa_step(&inst, &x0, eta)?;
        let err = (&x1 - &inst.x_star).norm();
        t.record(err / eps2 - 1.0);

        let psi = compute_psi(&inst, &x0, eta)?;
        t.require(normalized_state_distance(&x1, &inst.x_star)? <= eps2 / psi);

        let aligned = &inst.x_star + inst.a.spectrum().min_eigenvector() * d;
        let x1 = ppa_step(&inst, &aligned, eta)?;
        tight_gap = tight_gap.max(((&x1 - &inst.x_star).norm() - eps2).abs());
    }
    t.require(tight_gap <= 1e-9);
    Ok(t.finish())
}

/// `‖x/‖x‖ − y/‖y‖‖ <= ‖x − y‖/√(‖x‖‖y‖)` over pairs at magnitudes
/// `1e-3…1e3`. Measure: `distance/bound − 1`, allowing a few ulps of slack
/// for the unit-scale rounding in the left-hand side.
pub fn lemma3(pairs: usize, seed: u64) -> Result<SuiteReport> {
    let mut t = Tally::new("lemma3", 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let dim = rng.gen_range(2..=16);
        let scale = 10f64.powf(rng.gen_range(-3.0..3.0));
        let x = gaussian_vector(dim, rng.gen()) * scale;
        let delta = gaussian_vector(dim, rng.gen());
        let rel = 10f64.powf(rng.gen_range(-6.0..0.3));
        let y = &x + &delta * (rel * x.norm() / delta.norm());
        let eps = (&x - &y).norm();
        let bound = eps / (x.norm() * y.norm()).sqrt();
        let dist = normalized_state_distance(&x, &y)?;
        t.record((dist - 1e-15) / bound - 1.0);
    }
    Ok(t.finish())
}

/// Sup of `|p_t(x) − 1/x|` on a 10⁴-point grid of `[1/κ, 1]` with
/// `t = ⌈κ ln(κ/ε)⌉`. Measure: sup/ε, must be `<= 1`.
pub fn cks() -> Result<SuiteReport> {
    let mut t = Tally::new("cks", 1.0);
    for kappa in [2.0, 10.0, 50.0] {
        for eps in [1e-1, 1e-2, 1e-3] {
            let sup = cks_grid_sup(kappa, eps, 10_000)?;
            t.record(sup / eps);
        }
    }
    Ok(t.finish())
}

pub fn cks_grid_sup(kappa: f64, eps: f64, points: usize) -> Result<f64> {
    let coeffs = truncated_inverse_coeffs(cks_degree(kappa, eps)?)?;
    let lo = 1.0 / kappa;
    Ok((0..points)
        .map(|i| lo + (1.0 - lo) * i as f64 / (points - 1) as f64)
        .map(|x| (horner(&coeffs, 1.0 - x) - 1.0 / x).abs())
        .fold(0.0, f64::max))
}

/// End-to-end catalyst runs with the polynomial solver. Measure: total
/// normalized error / ε; the solver and step shares must respect `4ε₁` and
/// `ε₂/Ψ`.
pub fn theorem5(runs: usize, n: usize) -> Result<SuiteReport> {
    let mut t = Tally::new("theorem5", 1.0);
    let (epsilon, c) = (0.1, 5.0);
    for i in 0..runs {
        let kappa = [50.0, 100.0, 200.0][i % 3];
        let inst = generate(n, kappa, 5000 + i as u64)?;
        let run = catalyst_solve(
            &inst,
            &Vector::zeros(n),
            epsilon,
            c,
            PsiMode::Fixed(1.0),
            SolverKind::Inexact,
        )?;
        let errs = run.error_breakdown(&inst)?;
        t.record(errs.total_error / epsilon);
        t.require(errs.solver_error <= 4.0 * run.budget.eps1);
        t.require(errs.ppa_error <= run.budget.eps2 / run.budget.psi);
    }
    Ok(t.finish())
}

/// `improvement + overhead = total = κ̂·log10(c/ε)` (Costa) and
/// `κ̂·log10(κ̂c/ε)` (CKS). Measure: relative gap.
pub fn eq11() -> Result<SuiteReport> {
    let mut t = Tally::new("eq11", 1e-12);
    for kh in [1.0, 1.5, 4.8, 20.0, 300.0] {
        for c in [1.01, 2.0, 5.0, 19.0, 100.0] {
            for eps in [0.5, 0.1, 1e-3] {
                let costa = decompose(kh, c, eps, SolverModel::Costa)?;
                let want = kh * (c / eps).log10();
                t.record(((costa.improvement + costa.overhead) - costa.total).abs() / costa.total);
                t.record((costa.total - want).abs() / want);
                let cks = decompose(kh, c, eps, SolverModel::Cks)?;
                let want = kh * (kh * c / eps).log10();
                t.record((cks.total - want).abs() / want);
            }
        }
    }
    Ok(t.finish())
}

/// `kappa_hat_budget = kappa_hat ∘ select_eta ∘ split_budget` on a 10³-cell
/// grid, absolute gap `<= 1e-10`, and the value stays in `[1, κ]`.
pub fn budget() -> Result<SuiteReport> {
    let mut t = Tally::new("budget", 1e-10);
    let kappas = [1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0];
    let cs = [1.1, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0, 19.0, 50.0, 100.0];
    let triples = [
        (0.1, 10.0, 1.0),
        (0.1, 1.0, 0.1),
        (0.1, 1.0, 1.0),
        (0.01, 1.0, 0.05),
        (0.05, 2.0, 0.5),
        (0.2, 0.5, 0.3),
        (0.3, 3.0, 1.5),
        (0.001, 1.0, 0.0011),
        (0.1, 10.0, 2.0),
        (0.5, 1.0, 4.0),
    ];
    for &kappa in &kappas {
        for &c in &cs {
            for &(epsilon, psi, d) in &triples {
                let direct = kappa_hat_budget(kappa, c, d, psi, epsilon)?;
                let b = split_budget(epsilon, c, psi)?;
                let via_eta = kappa_hat(kappa, select_eta(kappa, d, b.eps2)?);
                t.record((direct - via_eta).abs());
                t.require((1.0..=kappa).contains(&direct) || (direct - 1.0).abs() < 1e-12);
            }
        }
    }
    Ok(t.finish())
}

/// Two-step closed form vs. two PPA iterations, its `ε₂` guarantee, the
/// two-step `κ̂` identity, and dominance over the single-step `κ̂`.
pub fn two_step() -> Result<SuiteReport> {
    let mut t = Tally::new("two_step", 1e-9);
    for (i, kappa) in [2.0, 20.0, 200.0].into_iter().enumerate() {
        let inst = generate(40, kappa, 900 + i as u64)?;
        let d = inst.x_star.norm();
        for eps2 in [0.5, 0.1, 0.01] {
            let eta = select_eta_two_step(kappa, d, eps2)?;
            let closed = two_step_solve(&inst, eta)?;
            let iterated = ppa_run(&inst, &Vector::zeros(inst.dim()), eta, 2)?;
            t.record((&closed - iterated.last()).norm());
            t.require((&closed - &inst.x_star).norm() <= eps2);
        }
    }
    for kappa in [2.0, 20.0, 200.0] {
        for c in [1.5, 2.0, 5.0, 10.0] {
            for (epsilon, psi, d) in [(0.1, 10.0, 1.0), (0.1, 1.0, 1.0), (0.01, 1.0, 0.5), (0.2, 2.0, 3.0)] {
                let two = kappa_hat_two_step(kappa, c, d, psi, epsilon)?;
                let b = split_budget(epsilon, c, psi)?;
                let eta = select_eta_two_step(kappa, d, b.eps2)?;
                t.require((two - kappa_hat(kappa, eta)).abs() <= 1e-10);
                t.require(two <= kappa_hat_budget(kappa, c, d, psi, epsilon)? + 1e-12);
            }
        }
    }
    Ok(t.finish())
}

/// `d = 2(κ−1)ε₂/κ` gives `κ̂ = κ/2`.
pub fn halving() -> Result<SuiteReport> {
    let mut t = Tally::new("halving", 1e-12);
    for kappa in [10.0, 100.0, 1000.0] {
        for (epsilon, c, psi) in [(0.1, 5.0, 1.0), (0.1, 2.0, 10.0), (0.01, 19.0, 0.3), (0.5, 1.5, 7.0)] {
            let eps2 = split_budget(epsilon, c, psi)?.eps2;
            let d = warm_start_d(kappa, eps2)?;
            t.record((kappa_hat_budget(kappa, c, d, psi, epsilon)? - kappa / 2.0).abs());
        }
    }
    Ok(t.finish())
}

/// Runs the named suites (all when `names` is empty) in the canonical order.
pub fn run_suites(names: &[String], opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    for name in names {
        if !SUITES.contains(&name.as_str()) {
            return Err(Error::invalid(format!(
                "unknown suite `{name}` (known: {})",
                SUITES.join(", ")
            )));
        }
    }
    let selected = |s: &str| names.is_empty() || names.iter().any(|n| n == s);
    let mut reports = Vec::new();
    for &name in SUITES.iter().filter(|s| selected(s)) {
        reports.push(match name {
            "lemma1" => lemma1(opts)?,
            "prop2" => prop2(100, 2)?,
            "lemma3" => lemma3(10_000, 3)?,
            "cks" => cks()?,
            "theorem5" => theorem5(6, 60)?,
            "eq11" => eq11()?,
            "budget" => budget()?,
            "two_step" => two_step()?,
            "halving" => halving()?,
            _ => unreachable!("validated above"),
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbation_breaks_lemma1() {
        let clean = lemma1(&VerifyOptions::default()).unwrap();
        assert!(clean.passed, "{clean}");
        let bad = lemma1(&VerifyOptions {
            kappa_hat_perturbation: 1e-3,
        })
        .unwrap();
        assert!(!bad.passed);
    }

    #[test]
    fn selection() {
        let r = run_suites(&["lemma3".to_string()], &VerifyOptions::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].name, "lemma3");
        assert!(run_suites(&["nope".to_string()], &VerifyOptions::default()).is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for r in [eq11().unwrap(), budget().unwrap(), halving().unwrap(), cks().unwrap()] {
            assert!(r.passed, "{r}");
        }
    }
}
