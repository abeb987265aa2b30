// The degree-`t` truncated series `Σ (1 − x)^k` approximates `1/x` on
// `[1/κ, 1]` to within `ε` once `t = ⌈κ ln(κ/ε)⌉`.

use qlsp_catalyst::linalg::horner;
use qlsp_catalyst::solvers::{cks_degree, truncated_inverse_coeffs};
use qlsp_catalyst::Result;

pub fn run_example() -> Result<()> {
    for kappa in [2.0, 10.0, 50.0] {
        for eps in [1e-1, 1e-2, 1e-3] {
            let t = cks_degree(kappa, eps)?;
            let coeffs = truncated_inverse_coeffs(t)?;
            let sup = (0..10_000)
                .map(|k| 1.0 / kappa + (1.0 - 1.0 / kappa) * k as f64 / 9_999.0)
                .map(|x| (horner(&coeffs, 1.0 - x) - 1.0 / x).abs())
                .fold(0.0, f64::max);
            println!("kappa {kappa:>4} eps {eps:<6} degree {t:>4} sup error {sup:.3e}");
            assert!(sup <= eps);
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
