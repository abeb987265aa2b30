// Two proximal steps from `x₀ = 0` in closed form, with the milder step
// size `η = κ(√(d/ε₂) − 1)`.

use qlsp_catalyst::complexity::{kappa_hat, kappa_hat_budget, kappa_hat_two_step};
use qlsp_catalyst::ppa::{ppa_run, select_eta, select_eta_two_step, two_step_solve};
use qlsp_catalyst::{generate, Result, Vector};

pub fn run_example() -> Result<()> {
    let kappa = 200.0;
    let inst = generate(60, kappa, 5)?;
    let (d, eps2) = (inst.x_star.norm(), 0.01);

    let eta = select_eta_two_step(kappa, d, eps2)?;
    let closed = two_step_solve(&inst, eta)?;
    let iterated = ppa_run(&inst, &Vector::zeros(inst.dim()), eta, 2)?;
    println!("eta two-step = {eta:.4}, single-step = {:.4}", select_eta(kappa, d, eps2)?);
    println!("closed form vs iterated: {:.2e}", (&closed - iterated.last()).norm());
    println!("||x2 - x*|| = {:.6} (eps2 = {eps2})", (&closed - &inst.x_star).norm());
    println!("kappa_hat two-step = {:.4}", kappa_hat(kappa, eta));

    let (c, psi, epsilon) = (5.0, 10.0, 0.1);
    let two = kappa_hat_two_step(kappa, c, 1.0, psi, epsilon)?;
    let one = kappa_hat_budget(kappa, c, 1.0, psi, epsilon)?;
    println!("budgeted kappa_hat: two-step {two:.4} vs single-step {one:.4}");
    assert!(two <= one);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
