// Wrapped vs. unwrapped query cost as the split constant `c` grows, at
// `κ = 20`, `d = 1`, `Ψ = 10`, `ε = 0.1`.

use qlsp_catalyst::complexity::{sweep_c, SolverModel};
use qlsp_catalyst::table::cost_csv;
use qlsp_catalyst::Result;

pub fn run_example() -> Result<()> {
    let cs: Vec<f64> = (2..=19).map(f64::from).collect();
    let rows = sweep_c(20.0, 1.0, 10.0, 0.1, &cs, SolverModel::Costa)?;
    print!("{}", cost_csv(&rows));
    let c5 = rows[3].report.as_ref().expect("c = 5 is a valid cell");
    assert!((c5.kappa_hat - 4.8).abs() < 1e-12);
    assert!(rows.iter().all(|r| r.total().is_some_and(|t| t < r.baseline)));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
