// Draw a seeded instance and check what was built against what was asked for.

use qlsp_catalyst::linalg::{condition_number, spectral_norm};
use qlsp_catalyst::{generate, Result};

pub fn run_example() -> Result<()> {
    let inst = generate(50, 200.0, 7)?;
    // Decompose from the raw entries rather than the cached construction spectrum.
    let fresh = inst.a.uncached();
    let kappa = condition_number(&fresh)?;
    let norm = spectral_norm(&fresh);
    let residual = (inst.a.mul_vec(&inst.x_star) - &inst.b).norm();

    println!("n = {}, target kappa = {}", inst.dim(), inst.kappa);
    println!("measured kappa = {kappa:.10}, ||A|| = {norm:.12}");
    println!("||x*|| = {:.12}, ||A x* - b|| = {residual:.2e}", inst.x_star.norm());
    assert!((kappa - 200.0).abs() <= 1e-6 * 200.0);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
