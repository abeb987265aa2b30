// End to end: split the budget, take one proximal step through the
// polynomial solver, and compare the result with the exact normalized state.

use qlsp_catalyst::solvers::{catalyst_solve, PsiMode, SolverKind};
use qlsp_catalyst::{generate, Result, Vector};

pub fn run_example() -> Result<()> {
    let (epsilon, c) = (0.1, 5.0);
    let inst = generate(100, 100.0, 1)?;
    let x0 = Vector::zeros(inst.dim());
    let run = catalyst_solve(&inst, &x0, epsilon, c, PsiMode::Fixed(1.0), SolverKind::Inexact)?;
    let errs = run.error_breakdown(&inst)?;

    let b = run.budget;
    println!("eps1 = {}, eps2 = {}, eta = {}", b.eps1, b.eps2, run.plan.eta);
    println!("polynomial degree = {}", run.outcome.degree_used);
    println!(
        "solver error {:.3e} (<= {:.3e}), step error {:.3e} (<= {:.3e}), total {:.3e} (<= {epsilon})",
        errs.solver_error,
        4.0 * b.eps1,
        errs.ppa_error,
        b.eps2 / b.psi,
        errs.total_error
    );
    assert!(errs.total_error <= epsilon);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
