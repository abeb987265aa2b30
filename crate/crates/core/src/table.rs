//! CSV rendering for sweep and simulation rows.
//!
//! Floats use Rust's `Display`, the shortest decimal that round-trips. Lines
//! end in `\n`; missing values (invalid cells) are empty fields.

use std::fmt::Write as _;

use crate::complexity::SweepRow;

pub const COST_HEADER: &str = "kappa,c,eta,psi,epsilon,d,kappa_hat,baseline,improvement,overhead,total,status";
pub const WARMSTART_HEADER: &str =
    "kappa,gd_steps,c,eta,psi,epsilon,d,kappa_hat,baseline,improvement,overhead,total,status";
pub const SIMULATE_HEADER: &str =
    "seed,n,kappa,epsilon,c,psi,solver,eta,d,degree,solver_error,ppa_error,total_error,status";

pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn cost_fields(row: &SweepRow) -> [String; 11] {
    let r = row.report.as_ref();
    [
        fmt_f64(row.c),
        opt(r.map(|r| r.eta)),
        fmt_f64(row.psi),
        fmt_f64(row.epsilon),
        fmt_f64(row.d),
        opt(r.map(|r| r.kappa_hat)),
        fmt_f64(row.baseline),
        opt(r.map(|r| r.improvement)),
        opt(r.map(|r| r.overhead)),
        opt(r.map(|r| r.total)),
        row.status.to_string(),
    ]
}

/// Rows of `sweep-c` / `sweep-kappa`.
pub fn cost_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(COST_HEADER);
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "{},{}", fmt_f64(row.kappa), cost_fields(row).join(","));
    }
    out
}

/// Rows of `warmstart`: the cost schema with `gd_steps` after `kappa`.
pub fn warmstart_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(WARMSTART_HEADER);
    out.push('\n');
    for row in rows {
        let steps = row.gd_steps.map(|s| s.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{steps},{}", fmt_f64(row.kappa), cost_fields(row).join(","));
    }
    out
}

/// One `simulate` row.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulateRow {
    pub seed: u64,
    pub n: usize,
    pub kappa: f64,
    pub epsilon: f64,
    pub c: f64,
    pub psi: Option<f64>,
    pub solver: String,
    pub eta: Option<f64>,
    pub d: f64,
    pub degree: Option<usize>,
    pub solver_error: Option<f64>,
    pub ppa_error: Option<f64>,
    pub total_error: Option<f64>,
    pub status: String,
}

pub fn simulate_csv(rows: &[SimulateRow]) -> String {
    let mut out = String::new();
    out.push_str(SIMULATE_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            r.seed.to_string(),
            r.n.to_string(),
            fmt_f64(r.kappa),
            fmt_f64(r.epsilon),
            fmt_f64(r.c),
            opt(r.psi),
            r.solver.clone(),
            opt(r.eta),
            fmt_f64(r.d),
            r.degree.map(|t| t.to_string()).unwrap_or_default(),
            opt(r.solver_error),
            opt(r.ppa_error),
            opt(r.total_error),
            r.status.clone(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{sweep_c, SolverModel};

    #[test]
    fn cost_row_layout() {
        let rows = sweep_c(20.0, 1.0, 10.0, 0.1, &[5.0], SolverModel::Costa).unwrap();
        let csv = cost_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(COST_HEADER));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), 12);
        assert_eq!(fields[0], "20");
        assert_eq!(fields[1], "5");
        assert_eq!(fields[11], "ok");
        let total: f64 = fields[10].parse().unwrap();
        assert_eq!(total, rows[0].total().unwrap());
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn invalid_cells_leave_blanks() {
        let rows = sweep_c(20.0, 0.1, 10.0, 0.1, &[5.0], SolverModel::Costa).unwrap();
        let csv = cost_csv(&rows);
        let line = csv.lines().nth(1).unwrap();
        assert_eq!(line, "20,5,,10,0.1,0.1,,20,,,,invalid_budget");
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 8.155056414720, 1e-300, 123456789.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
