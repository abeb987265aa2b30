// One proximal step with `η = κ(d/ε₂ − 1)` lands within `ε₂` of `x*`, and
// hits it exactly when the start is off along the smallest eigenvector.

use qlsp_catalyst::ppa::{min_iterations, ppa_step, select_eta};
use qlsp_catalyst::{generate, Result, Vector};

pub fn run_example() -> Result<()> {
    let kappa = 50.0;
    let inst = generate(40, kappa, 3)?;
    let (d, eps2) = (1.0, 0.05);
    let eta = select_eta(kappa, d, eps2)?;
    println!("eta = {eta}, steps needed = {}", min_iterations(kappa, d, eps2, eta)?);

    let x0 = Vector::zeros(inst.dim());
    let x1 = ppa_step(&inst, &x0, eta)?;
    println!("from x0 = 0:        ||x1 - x*|| = {:.6}", (&x1 - &inst.x_star).norm());

    let worst = &inst.x_star + inst.a.spectrum().min_eigenvector() * d;
    let x1 = ppa_step(&inst, &worst, eta)?;
    let err = (&x1 - &inst.x_star).norm();
    println!("worst-case start:   ||x1 - x*|| = {err:.12} (eps2 = {eps2})");
    assert!((err - eps2).abs() <= 1e-9);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
