// Gradient descent shrinks `d = ‖x₀ − x*‖`, and the wrapped solver gets
// cheaper with every extra warm-start iteration.

use qlsp_catalyst::complexity::{warmstart_curve, WarmStartConfig};
use qlsp_catalyst::table::warmstart_csv;
use qlsp_catalyst::Result;

pub fn run_example() -> Result<()> {
    let cfg = WarmStartConfig::default();
    let rows = warmstart_curve(&cfg)?;
    print!("{}", warmstart_csv(&rows));
    for per_kappa in rows.chunks(cfg.gd_steps.len()) {
        let totals: Vec<f64> = per_kappa.iter().filter_map(|r| r.total()).collect();
        assert_eq!(totals.len(), per_kappa.len());
        assert!(totals.windows(2).all(|w| w[1] <= w[0]));
        assert!(totals.iter().all(|&t| t < per_kappa[0].baseline));
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
