// The proximal resolvent `I + ηA` is better conditioned than `A`: after
// normalization its condition number is `κ(1 + η)/(κ + η)`.

use qlsp_catalyst::complexity::kappa_hat;
use qlsp_catalyst::verify::measured_modified_condition;
use qlsp_catalyst::{generate, Result};

pub fn run_example() -> Result<()> {
    let kappa = 200.0;
    let inst = generate(50, kappa, 11)?;
    println!("{:>8} {:>14} {:>14}", "eta", "predicted", "measured");
    for eta in [0.1, 1.0, 10.0, 100.0, 1e4] {
        let predicted = kappa_hat(kappa, eta);
        let measured = measured_modified_condition(&inst.a, eta)?;
        println!("{eta:>8} {predicted:>14.8} {measured:>14.8}");
        assert!((predicted - measured).abs() <= 1e-8 * predicted);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
