//! Proximal point iteration on the quadratic `½ xᵀAx − bᵀx`.
//!
//! Each step applies the resolvent `x ← (I + ηA)⁻¹ (x + ηb)`. The error
//! contracts by at least `1/(1 + η/κ)` per step, which is what the step-size
//! rule and the iteration bound below invert.

use crate::error::{Error, Result};
use crate::instance::LinearSystemInstance;
use crate::linalg::{solve_spd, spectral_norm, SymMatrix, Vector};

/// Step size, step count and starting point for one PPA run.
#[derive(Debug, Clone, PartialEq)]
pub struct PpaPlan {
    pub eta: f64,
    pub steps: usize,
    pub x0: Vector,
    /// `‖x0 − x*‖`.
    pub d: f64,
}

impl PpaPlan {
    pub fn new(eta: f64, steps: usize, x0: Vector, d: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::invalid(format!("eta must be positive (got {eta})")));
        }
        if steps == 0 {
            return Err(Error::invalid("steps must be >= 1"));
        }
        if !(d >= 0.0) {
            return Err(Error::invalid(format!("d must be >= 0 (got {d})")));
        }
        Ok(Self { eta, steps, x0, d })
    }

    /// Plan whose `d` is measured against the instance's known solution.
    pub fn for_instance(inst: &LinearSystemInstance, eta: f64, steps: usize, x0: Vector) -> Result<Self> {
        check_len(inst, &x0)?;
        let d = (&x0 - &inst.x_star).norm();
        Self::new(eta, steps, x0, d)
    }
}

/// Iterates `x_0 … x_t` and their distances to `x*`.
#[derive(Debug, Clone, PartialEq)]
pub struct PpaTrace {
    pub iterates: Vec<Vector>,
    pub errors: Vec<f64>,
}

impl PpaTrace {
    pub fn last(&self) -> &Vector {
        self.iterates.last().expect("trace holds at least x0")
    }
}

fn check_len(inst: &LinearSystemInstance, x: &Vector) -> Result<()> {
    if x.len() != inst.dim() {
        return Err(Error::invalid(format!(
            "vector length {} does not match instance dimension {}",
            x.len(),
            inst.dim()
        )));
    }
    Ok(())
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::invalid(format!("eta must be positive and finite (got {eta})")));
    }
    Ok(())
}

/// Single-step step size `η = κ(d/ε₂ − 1)`.
pub fn select_eta(kappa: f64, d: f64, eps2: f64) -> Result<f64> {
    if !(kappa >= 1.0) {
        return Err(Error::invalid(format!("kappa must be >= 1 (got {kappa})")));
    }
    if !(eps2 > 0.0) {
        return Err(Error::invalid(format!("eps2 must be positive (got {eps2})")));
    }
    if eps2 >= d {
        return Err(Error::DegenerateTarget { d, eps2 });
    }
    Ok(kappa * (d / eps2 - 1.0))
}

/// Lower bound `ln(d/ε₂) / ln(1 + η/κ)` on the number of steps reaching `ε₂`.
pub fn min_iterations(kappa: f64, d: f64, eps2: f64, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    if !(kappa >= 1.0) {
        return Err(Error::invalid(format!("kappa must be >= 1 (got {kappa})")));
    }
    if !(eps2 > 0.0 && d > eps2) {
        return Err(Error::invalid(format!("need d > eps2 > 0 (got d = {d}, eps2 = {eps2})")));
    }
    Ok((d / eps2).ln() / (eta / kappa).ln_1p())
}

/// `I + ηA`, spectrum carried over from `A` when cached.
pub fn resolvent_matrix(a: &SymMatrix, eta: f64) -> SymMatrix {
    a.affine(1.0, eta)
}

/// One resolvent step `(I + ηA)⁻¹ (x_t + ηb)`.
pub fn ppa_step(inst: &LinearSystemInstance, x_t: &Vector, eta: f64) -> Result<Vector> {
    check_eta(eta)?;
    check_len(inst, x_t)?;
    let rhs = x_t + &inst.b * eta;
    solve_spd(&resolvent_matrix(&inst.a, eta), &rhs)
}

/// `steps` resolvent steps from `x0`.
pub fn ppa_run(inst: &LinearSystemInstance, x0: &Vector, eta: f64, steps: usize) -> Result<PpaTrace> {
    check_eta(eta)?;
    check_len(inst, x0)?;
    if steps == 0 {
        return Err(Error::invalid("steps must be >= 1"));
    }
    let resolvent = resolvent_matrix(&inst.a, eta);
    let eta_b = &inst.b * eta;

    let mut iterates = Vec::with_capacity(steps + 1);
    let mut errors = Vec::with_capacity(steps + 1);
    iterates.push(x0.clone());
    errors.push((x0 - &inst.x_star).norm());
    for _ in 0..steps {
        let prev = iterates.last().expect("non-empty");
        let next = solve_spd(&resolvent, &(prev + &eta_b))?;
        errors.push((&next - &inst.x_star).norm());
        iterates.push(next);
    }
    Ok(PpaTrace { iterates, errors })
}

/// Two PPA steps from `x0 = 0` in closed form: `((I+ηA)⁻² + (I+ηA)⁻¹) ηb`.
pub fn two_step_solve(inst: &LinearSystemInstance, eta: f64) -> Result<Vector> {
    check_eta(eta)?;
    let resolvent = resolvent_matrix(&inst.a, eta);
    let once = solve_spd(&resolvent, &(&inst.b * eta))?;
    let twice = solve_spd(&resolvent, &once)?;
    Ok(twice + once)
}

/// Two-step step size `η = κ(√(d/ε₂) − 1)`.
pub fn select_eta_two_step(kappa: f64, d: f64, eps2: f64) -> Result<f64> {
    select_eta(kappa, d, eps2)?;
    Ok(kappa * ((d / eps2).sqrt() - 1.0))
}

/// Gradient descent `x ← x − step·(Ax − b)` for `iters` iterations.
///
/// Returns the final iterate and `‖x_k − x*‖` for `k = 0..=iters`. Steps at
/// or beyond `2/‖A‖` are rejected.
pub fn gd_warm_start(
    inst: &LinearSystemInstance,
    x0: &Vector,
    step: f64,
    iters: usize,
) -> Result<(Vector, Vec<f64>)> {
    check_len(inst, x0)?;
    let limit = 2.0 / spectral_norm(&inst.a);
    if !(step > 0.0) {
        return Err(Error::invalid(format!("gradient step must be positive (got {step})")));
    }
    if step >= limit {
        return Err(Error::DivergenceRisk { step, limit });
    }
    let a = inst.a.matrix();
    let mut x = x0.clone();
    let mut errors = Vec::with_capacity(iters + 1);
    errors.push((&x - &inst.x_star).norm());
    for _ in 0..iters {
        let grad = a * &x - &inst.b;
        x.axpy(-step, &grad, 1.0);
        errors.push((&x - &inst.x_star).norm());
    }
    Ok((x, errors))
}

/// `‖x/‖x‖ − y/‖y‖‖`, the distance between the states `x` and `y` encode.
pub fn normalized_state_distance(x: &Vector, y: &Vector) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!("length mismatch: {} vs {}", x.len(), y.len())));
    }
    let (nx, ny) = (x.norm(), y.norm());
    if !(nx > 0.0 && ny > 0.0) {
        return Err(Error::invalid("normalized distance needs nonzero vectors"));
    }
    Ok((x / nx - y / ny).norm())
}

/// `Ψ = √(‖(I + ηA)⁻¹(x0 + ηb)‖ · ‖A⁻¹b‖)`.
pub fn compute_psi(inst: &LinearSystemInstance, x0: &Vector, eta: f64) -> Result<f64> {
    let step = ppa_step(inst, x0, eta)?;
    let solution = solve_spd(&inst.a, &inst.b)?;
    Ok((step.norm() * solution.norm()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate, gaussian_vector};
    use crate::linalg::SymMatrix;
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;

    fn diag_instance(diag: &[f64], x_star: &[f64]) -> LinearSystemInstance {
        let a = SymMatrix::diagonal(diag).unwrap();
        let x_star = Vector::from_column_slice(x_star);
        let b = a.mul_vec(&x_star);
        LinearSystemInstance {
            a,
            b,
            x_star,
            kappa: diag.iter().cloned().fold(f64::MIN, f64::max) / diag.iter().cloned().fold(f64::MAX, f64::min),
            seed: 0,
            convention: Default::default(),
        }
    }

    #[test]
    fn eta_rule() {
        assert_relative_eq!(select_eta(20.0, 1.0, 0.1).unwrap(), 180.0, max_relative = 1e-14);
        assert_eq!(select_eta(2.0, 4.0, 1.0).unwrap(), 6.0);
        assert!(matches!(select_eta(5.0, 0.1, 0.1), Err(Error::DegenerateTarget { .. })));
        assert!(select_eta(0.5, 1.0, 0.1).is_err());
    }

    #[test]
    fn iteration_bound() {
        let eta = select_eta(20.0, 1.0, 0.1).unwrap();
        assert!((min_iterations(20.0, 1.0, 0.1, eta).unwrap() - 1.0).abs() < 1e-12);
        let eta2 = 20.0 * (10f64.sqrt() - 1.0);
        assert!((min_iterations(20.0, 1.0, 0.1, eta2).unwrap() - 2.0).abs() < 1e-12);
        let ratio = (1.0 + 3.0 / 7.0f64).powi(3);
        assert!((min_iterations(7.0, ratio, 1.0, 3.0).unwrap() - 3.0).abs() < 1e-12);
        assert!(min_iterations(7.0, 1.0, 2.0, 3.0).is_err());
    }

    #[test]
    fn fixed_point_and_scalar_resolvent() {
        let inst = generate(8, 10.0, 1).unwrap();
        let next = ppa_step(&inst, &inst.x_star, 3.0).unwrap();
        assert!((next - &inst.x_star).norm() < 1e-12);

        let ident = generate(4, 1.0, 2).unwrap();
        let eta = 2.5;
        let x1 = ppa_step(&ident, &Vector::zeros(4), eta).unwrap();
        let want = &ident.b * (eta / (1.0 + eta));
        assert!((x1 - want).norm() < 1e-12);
    }

    #[test]
    fn one_step_reaches_target() {
        let inst = generate(100, 100.0, 4).unwrap();
        let x0 = Vector::zeros(100);
        let eps2 = 0.1;
        let eta = select_eta(100.0, 1.0, eps2).unwrap();
        let x1 = ppa_step(&inst, &x0, eta).unwrap();
        let truth = solve_spd(&inst.a, &inst.b).unwrap();
        assert!((&x1 - &truth).norm() <= eps2);
        let resolvent = resolvent_matrix(&inst.a, eta).uncached();
        let residual = (resolvent.mul_vec(&x1) - (&x0 + &inst.b * eta)).norm();
        assert!(residual <= 1e-8 * (&inst.b * eta).norm());
    }

    #[test]
    fn run_contracts_at_rate() {
        let inst = generate(30, 50.0, 8).unwrap();
        let x0 = gaussian_vector(30, 80);
        let eta = 4.0;
        let trace = ppa_run(&inst, &x0, eta, 5).unwrap();
        assert_eq!(trace.iterates.len(), 6);
        let rate = 1.0 + eta / 50.0;
        for k in 0..=5 {
            assert!(trace.errors[k] <= trace.errors[0] / rate.powi(k as i32) * (1.0 + 1e-12));
        }
        assert!(trace.errors.windows(2).all(|w| w[1] <= w[0]));

        let single = ppa_run(&inst, &x0, eta, 1).unwrap();
        assert_eq!(single.last(), &ppa_step(&inst, &x0, eta).unwrap());
    }

    #[test]
    fn contraction_is_tight_along_min_eigenvector() {
        let inst = generate(20, 25.0, 9).unwrap();
        let u = inst.a.spectrum().min_eigenvector();
        let x0 = &inst.x_star + &u * 0.7;
        let eta = 10.0;
        let trace = ppa_run(&inst, &x0, eta, 4).unwrap();
        for k in 0..=4 {
            let bound = 0.7 / (1.0 + eta / 25.0f64).powi(k as i32);
            assert!((trace.errors[k] - bound).abs() <= 1e-9);
        }
    }

    #[test]
    fn two_step_matches_run() {
        let ident = generate(3, 1.0, 0).unwrap();
        let eta = 1.5;
        let x2 = two_step_solve(&ident, eta).unwrap();
        let scale = eta / (1.0 + eta).powi(2) + eta / (1.0 + eta);
        assert!((x2 - &ident.b * scale).norm() < 1e-12);

        let inst = generate(20, 20.0, 17).unwrap();
        let eps2 = 0.1;
        let eta = select_eta_two_step(20.0, 1.0, eps2).unwrap();
        assert_relative_eq!(eta, 20.0 * (10f64.sqrt() - 1.0), max_relative = 1e-14);
        let x2 = two_step_solve(&inst, eta).unwrap();
        let run = ppa_run(&inst, &Vector::zeros(20), eta, 2).unwrap();
        assert!((&x2 - run.last()).norm() <= 1e-9);
        assert!((&x2 - &inst.x_star).norm() <= eps2);
    }

    #[test]
    fn gradient_descent() {
        let inst = generate(10, 5.0, 3).unwrap();
        let (x, errs) = gd_warm_start(&inst, &inst.x_star, 1.0, 5).unwrap();
        assert!((x - &inst.x_star).norm() < 1e-14);
        assert!(errs.iter().all(|&e| e < 1e-14));

        let (_, errs) = gd_warm_start(&inst, &Vector::zeros(10), 1.5, 50).unwrap();
        assert!(errs.windows(2).all(|w| w[1] < w[0]));

        assert!(matches!(
            gd_warm_start(&inst, &Vector::zeros(10), 2.0, 1),
            Err(Error::DivergenceRisk { .. })
        ));
        assert!(gd_warm_start(&inst, &Vector::zeros(10), 0.0, 1).is_err());
    }

    #[test]
    fn gradient_descent_scalar_recurrence() {
        let kappa = 8.0;
        let inst = diag_instance(&[1.0, 1.0 / kappa], &[0.6, 0.8]);
        let step = 1.5;
        let x0 = Vector::zeros(2);
        let (x, _) = gd_warm_start(&inst, &x0, step, 7).unwrap();
        for (i, lambda) in [1.0, 1.0 / kappa].into_iter().enumerate() {
            let factor = (1.0 - step * lambda).abs();
            let want = factor.powi(7) * inst.x_star[i];
            assert_relative_eq!((x[i] - inst.x_star[i]).abs(), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn normalized_distance() {
        let x = Vector::from_vec(vec![1.0, -2.0, 0.5]);
        assert!(normalized_state_distance(&x, &(&x * 3.0)).unwrap() < 1e-15);
        assert_relative_eq!(normalized_state_distance(&x, &(-&x)).unwrap(), 2.0, max_relative = 1e-15);
        assert!(normalized_state_distance(&x, &Vector::zeros(3)).is_err());

        let y = &x + Vector::from_vec(vec![0.006, 0.0, -0.008]);
        let gap = (&x - &y).norm();
        let bound = gap / (x.norm() * y.norm()).sqrt();
        assert!(normalized_state_distance(&x, &y).unwrap() <= bound);
    }

    #[test]
    fn psi_values() {
        let ident = generate(3, 1.0, 5).unwrap();
        let eta = 3.0;
        let psi = compute_psi(&ident, &Vector::zeros(3), eta).unwrap();
        let want = (eta / (1.0 + eta) * ident.b.norm() * ident.b.norm()).sqrt();
        assert!((psi - want).abs() < 1e-12);

        let inst = generate(40, 30.0, 6).unwrap();
        let psi = compute_psi(&inst, &Vector::zeros(40), 1e8).unwrap();
        assert!((psi - 1.0).abs() <= 1e-3);

        let inst = generate(100, 100.0, 7).unwrap();
        let x0 = gaussian_vector(100, 70) * 0.1;
        let eta = 50.0;
        let resolvent = DMatrix::<f64>::identity(100, 100) + inst.a.matrix() * eta;
        let x1 = resolvent.lu().solve(&(&x0 + &inst.b * eta)).unwrap();
        let sol = inst.a.matrix().clone().lu().solve(&inst.b).unwrap();
        let want = (x1.norm() * sol.norm()).sqrt();
        assert!((compute_psi(&inst, &x0, eta).unwrap() - want).abs() < 1e-10);
    }

    #[test]
    fn plan_validation() {
        let inst = generate(4, 3.0, 0).unwrap();
        let plan = PpaPlan::for_instance(&inst, 2.0, 1, Vector::zeros(4)).unwrap();
        assert!((plan.d - 1.0).abs() <= 1e-12);
        assert!(PpaPlan::new(0.0, 1, Vector::zeros(4), 1.0).is_err());
        assert!(PpaPlan::new(1.0, 0, Vector::zeros(4), 1.0).is_err());
    }
}
