use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlsp-lab"))
        .args(args)
        .output()
        .expect("qlsp-lab runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn gen_reports_measured_condition() {
    let out = lab(&["gen", "--n", "2", "--kappa", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("kappa_measured=1"), "{text}");

    let out = lab(&["gen", "--n", "30", "--kappa", "50", "--seed", "9"]);
    let text = stdout(&out);
    let measured: f64 = text
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix("kappa_measured="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((measured - 50.0).abs() <= 1e-6 * 50.0);
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(lab(&["gen", "--kappa", "0.5"]).status.code(), Some(2));
    assert_eq!(lab(&["sweep-c", "--c", "1"]).status.code(), Some(0));
    assert_eq!(lab(&["simulate", "--c", "1"]).status.code(), Some(2));
    assert_eq!(lab(&["verify", "--suites", "nonsense"]).status.code(), Some(2));
    assert_eq!(lab(&["sweep-c", "--colour", "red"]).status.code(), Some(2));
    assert_eq!(lab(&["gen", "--config", "/nonexistent/run.cfg"]).status.code(), Some(2));
}

#[test]
fn sweep_c_is_deterministic_and_matches_closed_form() {
    let a = lab(&["sweep-c"]);
    let b = lab(&["sweep-c"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rows = csv_rows(&stdout(&a));
    assert_eq!(rows.len(), 18);
    let c5 = rows.iter().find(|r| r[1] == "5").unwrap();
    let kh: f64 = c5[6].parse().unwrap();
    let total: f64 = c5[10].parse().unwrap();
    assert!((kh - 4.8).abs() <= 1e-9);
    assert!((total - 4.8 * 50f64.log10()).abs() <= 1e-9);
    assert_eq!(c5[11], "ok");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    let out_path = dir.path().join("rows.csv");
    std::fs::write(&cfg, "# split sweep\nkappa = 20\nd = 1\npsi = 10\nepsilon = 0.1\nc_values = 2..=4\n").unwrap();
    let out = lab(&[
        "sweep-c",
        "--config",
        cfg.to_str().unwrap(),
        "--c-values",
        "5",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rows = csv_rows(&std::fs::read_to_string(&out_path).unwrap());
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][1], "5");
}

#[test]
fn sweep_kappa_rows_are_qualitative() {
    let out = lab(&["sweep-kappa", "--kappas", "100..=300:100"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 3);
    for r in rows {
        let kappa: f64 = r[0].parse().unwrap();
        let kh: f64 = r[6].parse().unwrap();
        assert!((kh - kappa / 2.0).abs() <= 1e-9);
        assert_eq!(r[11], "qualitative");
    }
}

#[test]
fn warmstart_zero_steps_starts_at_unit_distance() {
    let out = lab(&["warmstart", "--kappas", "100", "--gd-steps", "0,200"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows[0][1], "0");
    let d: f64 = rows[0][6].parse().unwrap();
    assert!((d - 1.0).abs() <= 1e-12);
    let total: f64 = rows[1][11].parse().unwrap();
    let baseline: f64 = rows[1][8].parse().unwrap();
    assert!(total < baseline);
}

#[test]
fn simulate_exact_and_inexact() {
    let out = lab(&["simulate", "--n", "40", "--kappa", "50", "--solver", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    let solver_error: f64 = rows[0][10].parse().unwrap();
    assert!(solver_error <= 1e-12);

    let out = lab(&["simulate", "--n", "60", "--kappa", "100", "--runs", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[13] == "ok"));

    let out = lab(&["simulate", "--n", "20", "--x0", "star"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(csv_rows(&stdout(&out))[0][13], "degenerate_target");
}

#[test]
fn verify_passes_and_can_fail() {
    let out = lab(&["verify", "--suites", "lemma3,budget,halving"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.starts_with("PASS")));

    let out = lab(&["verify", "--suites", "lemma1", "--perturb-kappa-hat", "1e-3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL"));
}
