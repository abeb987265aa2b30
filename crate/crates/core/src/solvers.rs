//! Classical stand-ins for the linear-system subroutine and the end-to-end
//! catalyst pipeline built on them.
//!
//! The pipeline takes one proximal step, but instead of applying the
//! resolvent exactly it hands the normalized modified matrix
//! `M = (I + ηA)/‖I + ηA‖` and right-hand side `w = x0 + ηb` to a solver that
//! only returns the normalized direction of `M⁻¹w`. The target accuracy `ε`
//! is split between that solver (`ε₁ = ε/c`) and the proximal step
//! (`ε₂ = (1 − 1/c)εΨ`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::LinearSystemInstance;
use crate::linalg::{apply_poly, condition_number, solve_spd, spectral_norm, SymMatrix, Vector};
use crate::ppa::{compute_psi, normalized_state_distance, select_eta, PpaPlan};

/// Largest solver accuracy for which the normalized-state bound `4ε₁` holds.
pub const MAX_SOLVER_EPS: f64 = 0.5;

/// Split of the target accuracy between the inner solver and the proximal step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBudget {
    pub epsilon: f64,
    pub c: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub psi: f64,
}

/// `ε₁ = ε/c`, `ε₂ = (1 − 1/c)·ε·Ψ`, so that `ε₁ + ε₂/Ψ = ε`.
pub fn split_budget(epsilon: f64, c: f64, psi: f64) -> Result<ErrorBudget> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::invalid(format!("epsilon must be positive (got {epsilon})")));
    }
    if !(c > 1.0) {
        return Err(Error::InvalidSplit(c));
    }
    if !(psi > 0.0 && psi.is_finite()) {
        return Err(Error::invalid(format!("psi must be positive (got {psi})")));
    }
    Ok(ErrorBudget {
        epsilon,
        c,
        eps1: epsilon / c,
        eps2: (1.0 - 1.0 / c) * epsilon * psi,
        psi,
    })
}

/// Degree `⌈κ·ln(κ/ε)⌉` (at least 1) at which the truncated Taylor inverse is
/// within `ε` of `1/x` on `[1/κ, 1]`.
///
/// The error of `p_t` is `(1 − x)^t / x`, largest at `x = 1/κ`, where it is
/// `κ(1 − 1/κ)^t ≤ κ·e^{−t/κ}`; the natural log makes that `≤ ε`.
pub fn cks_degree(kappa: f64, eps: f64) -> Result<usize> {
    if !(kappa >= 1.0 && kappa.is_finite()) {
        return Err(Error::invalid(format!("kappa must be >= 1 (got {kappa})")));
    }
    if !(eps > 0.0 && eps < kappa) {
        return Err(Error::invalid(format!(
            "need 0 < eps < kappa (got eps = {eps}, kappa = {kappa})"
        )));
    }
    let t = (kappa * (kappa / eps).ln()).ceil();
    Ok((t as usize).max(1))
}

/// Coefficients of `p_t(x) = Σ_{k<t} (1 − x)^k` in the `(1 − x)` basis: `t` ones.
pub fn truncated_inverse_coeffs(t: usize) -> Result<Vec<f64>> {
    if t < 1 {
        return Err(Error::invalid("polynomial degree count t must be >= 1"));
    }
    Ok(vec![1.0; t])
}

/// Closed form `(1 − (1 − x)^t) / x` of the truncated inverse.
pub fn truncated_inverse_closed_form(t: usize, x: f64) -> f64 {
    (1.0 - (1.0 - x).powi(t as i32)) / x
}

/// What a solver hands back: a unit vector and the accuracy it vouches for.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOutcome {
    pub state: Vector,
    /// A-priori bound on the normalized-state error.
    pub reported_eps1: f64,
    /// Polynomial degree count used; 0 for the exact solver.
    pub degree_used: usize,
}

fn check_rhs(m: &SymMatrix, v: &Vector) -> Result<f64> {
    if v.len() != m.dim() {
        return Err(Error::invalid(format!(
            "vector length {} does not match matrix dimension {}",
            v.len(),
            m.dim()
        )));
    }
    let norm = v.norm();
    if !(norm > 0.0) {
        return Err(Error::invalid("right-hand side must be nonzero"));
    }
    Ok(norm)
}

fn normalize(v: Vector) -> Result<Vector> {
    let norm = v.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::invalid("solver produced a zero or non-finite vector"));
    }
    Ok(v / norm)
}

/// Truncated-Taylor inexact solver.
///
/// Requires `‖M‖ ≤ 1`, so the spectrum lies in `[λ_min, 1]`. The polynomial
/// degree is taken from [`cks_degree`] with `κ = 1/λ_min` and `ε′ = eps1`,
/// which bounds `‖p_t(M) − M⁻¹‖ ≤ eps1 < 1/2`; the normalized output is then
/// within `4·eps1` of the normalized `M⁻¹v`.
pub fn inexact_qlsp(m: &SymMatrix, v: &Vector, eps1: f64) -> Result<SolverOutcome> {
    if !(eps1 > 0.0 && eps1 < MAX_SOLVER_EPS) {
        return Err(Error::HypothesisViolation(format!(
            "solver accuracy must lie in (0, {MAX_SOLVER_EPS}) (got {eps1})"
        )));
    }
    check_rhs(m, v)?;
    let norm = spectral_norm(m);
    if norm > 1.0 + 1e-12 {
        return Err(Error::invalid(format!("matrix norm {norm} exceeds 1")));
    }
    let lambda_min = m.spectrum().min();
    if lambda_min <= 0.0 {
        return Err(Error::NotPositiveDefinite(lambda_min));
    }
    condition_number(m)?;
    let degree = cks_degree(1.0 / lambda_min, eps1)?;
    let coeffs = truncated_inverse_coeffs(degree)?;
    let state = normalize(apply_poly(m, &coeffs, v)?)?;
    Ok(SolverOutcome {
        state,
        reported_eps1: 4.0 * eps1,
        degree_used: degree,
    })
}

/// Idealized solver: the normalized exact `M⁻¹v`.
pub fn exact_qlsp(m: &SymMatrix, v: &Vector) -> Result<SolverOutcome> {
    check_rhs(m, v)?;
    condition_number(m)?;
    let state = normalize(solve_spd(m, v)?)?;
    Ok(SolverOutcome {
        state,
        reported_eps1: 0.0,
        degree_used: 0,
    })
}

/// Which subroutine the pipeline calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverKind {
    Exact,
    #[default]
    Inexact,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Exact => "exact",
            SolverKind::Inexact => "inexact",
        })
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(SolverKind::Exact),
            "inexact" => Ok(SolverKind::Inexact),
            other => Err(Error::invalid(format!("unknown solver `{other}` (expected exact or inexact)"))),
        }
    }
}

/// How `Ψ` is obtained.
///
/// `Ψ` depends on `η`, and `η` depends on `ε₂ ∝ Ψ`. `Fixed` treats it as an
/// input constant. `FixedPoint` starts at `Ψ = 1` and alternates
/// budget → `η` → `Ψ` until successive values differ by at most `tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiMode {
    Fixed(f64),
    FixedPoint { max_iter: usize, tol: f64 },
}

impl PsiMode {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PsiMode::Fixed(v) if !(v > 0.0 && v.is_finite()) => {
                Err(Error::invalid(format!("fixed psi must be positive (got {v})")))
            }
            PsiMode::FixedPoint { max_iter, tol } if max_iter == 0 || !(tol > 0.0) => Err(Error::invalid(
                format!("fixed-point psi needs max_iter >= 1 and tol > 0 (got {max_iter}, {tol})"),
            )),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PsiMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiMode::Fixed(v) => write!(f, "fixed:{v}"),
            PsiMode::FixedPoint { max_iter, tol } => write!(f, "fixed-point:{max_iter}:{tol}"),
        }
    }
}

impl FromStr for PsiMode {
    type Err = Error;

    /// `fixed:<value>` or `fixed-point[:<max_iter>[:<tol>]]`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = |what: &str| Error::invalid(format!("bad psi mode `{s}`: {what}"));
        let mode = match parts.as_slice() {
            ["fixed", v] => PsiMode::Fixed(v.parse().map_err(|_| bad("value is not a number"))?),
            ["fixed-point", rest @ ..] if rest.len() <= 2 => {
                let max_iter = match rest.first() {
                    Some(v) => v.parse().map_err(|_| bad("max_iter is not an integer"))?,
                    None => 100,
                };
                let tol = match rest.get(1) {
                    Some(v) => v.parse().map_err(|_| bad("tol is not a number"))?,
                    None => 1e-12,
                };
                PsiMode::FixedPoint { max_iter, tol }
            }
            _ => return Err(bad("expected fixed:<value> or fixed-point[:<max_iter>[:<tol>]]")),
        };
        mode.validate()?;
        Ok(mode)
    }
}

/// Everything fixed before the subroutine is called.
#[derive(Debug, Clone)]
pub struct CatalystPlan {
    pub budget: ErrorBudget,
    pub plan: PpaPlan,
    /// `(I + ηA)/‖I + ηA‖`.
    pub modified: SymMatrix,
    /// `x0 + ηb`.
    pub rhs: Vector,
    /// Number of `Ψ` updates performed (0 for a fixed `Ψ`).
    pub psi_iterations: usize,
}

/// Result of one catalyst solve.
#[derive(Debug, Clone)]
pub struct CatalystRun {
    pub outcome: SolverOutcome,
    pub plan: PpaPlan,
    pub budget: ErrorBudget,
    pub modified: SymMatrix,
    pub rhs: Vector,
}

/// Measured error split of a catalyst run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBreakdown {
    /// Solver output vs. normalized exact `M⁻¹w`.
    pub solver_error: f64,
    /// Normalized exact `M⁻¹w` vs. normalized `x*`.
    pub ppa_error: f64,
    /// Solver output vs. normalized `x*`.
    pub total_error: f64,
}

fn resolve_budget(
    inst: &LinearSystemInstance,
    x0: &Vector,
    d: f64,
    epsilon: f64,
    c: f64,
    psi_mode: PsiMode,
) -> Result<(ErrorBudget, f64, usize)> {
    psi_mode.validate()?;
    let kappa = inst.effective_kappa();
    match psi_mode {
        PsiMode::Fixed(psi) => {
            let budget = split_budget(epsilon, c, psi)?;
            let eta = select_eta(kappa, d, budget.eps2)?;
            Ok((budget, eta, 0))
        }
        PsiMode::FixedPoint { max_iter, tol } => {
            let mut psi = 1.0;
            let mut last_change = f64::INFINITY;
            for k in 1..=max_iter {
                let budget = split_budget(epsilon, c, psi)?;
                let eta = select_eta(kappa, d, budget.eps2)?;
                let next = compute_psi(inst, x0, eta)?;
                last_change = (next - psi).abs();
                psi = next;
                if last_change <= tol {
                    let budget = split_budget(epsilon, c, psi)?;
                    let eta = select_eta(kappa, d, budget.eps2)?;
                    return Ok((budget, eta, k));
                }
            }
            Err(Error::NonConvergence {
                iterations: max_iter,
                last_change,
            })
        }
    }
}

/// Resolves `Ψ`, the budget and `η`, and forms the normalized modified system.
pub fn prepare_catalyst(
    inst: &LinearSystemInstance,
    x0: &Vector,
    epsilon: f64,
    c: f64,
    psi_mode: PsiMode,
) -> Result<CatalystPlan> {
    if x0.len() != inst.dim() {
        return Err(Error::invalid(format!(
            "x0 has length {}, instance dimension is {}",
            x0.len(),
            inst.dim()
        )));
    }
    let d = (x0 - &inst.x_star).norm();
    let (budget, eta, psi_iterations) = resolve_budget(inst, x0, d, epsilon, c, psi_mode)?;
    let plan = PpaPlan::new(eta, 1, x0.clone(), d)?;

    let resolvent = inst.a.affine(1.0, eta);
    let norm = spectral_norm(&resolvent);
    let modified = resolvent.affine(0.0, 1.0 / norm);
    let rhs = x0 + &inst.b * eta;
    Ok(CatalystPlan {
        budget,
        plan,
        modified,
        rhs,
        psi_iterations,
    })
}

impl CatalystPlan {
    pub fn run(self, solver: SolverKind) -> Result<CatalystRun> {
        let outcome = match solver {
            SolverKind::Exact => exact_qlsp(&self.modified, &self.rhs)?,
            SolverKind::Inexact => inexact_qlsp(&self.modified, &self.rhs, self.budget.eps1)?,
        };
        Ok(CatalystRun {
            outcome,
            plan: self.plan,
            budget: self.budget,
            modified: self.modified,
            rhs: self.rhs,
        })
    }
}

/// One proximal step with the subroutine in place of the exact resolvent.
///
/// With exact arithmetic the returned state is within `ε₁·4 + ε₂/Ψ` of the
/// normalized solution for the inexact solver and within `ε₂/Ψ` for the
/// exact one.
pub fn catalyst_solve(
    inst: &LinearSystemInstance,
    x0: &Vector,
    epsilon: f64,
    c: f64,
    psi_mode: PsiMode,
    solver: SolverKind,
) -> Result<CatalystRun> {
    prepare_catalyst(inst, x0, epsilon, c, psi_mode)?.run(solver)
}

impl CatalystRun {
    pub fn error_breakdown(&self, inst: &LinearSystemInstance) -> Result<ErrorBreakdown> {
        let exact_step = solve_spd(&self.modified, &self.rhs)?;
        Ok(ErrorBreakdown {
            solver_error: normalized_state_distance(&self.outcome.state, &exact_step)?,
            ppa_error: normalized_state_distance(&exact_step, &inst.x_star)?,
            total_error: normalized_state_distance(&self.outcome.state, &inst.x_star)?,
        })
    }
}
