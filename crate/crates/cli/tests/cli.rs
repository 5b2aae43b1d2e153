//! End-to-end tests of the `keyrate` binary: exit codes, output shapes,
//! and byte stability of the CSV.

use std::path::PathBuf;
use std::process::{Command, Output};

fn keyrate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keyrate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn data_file() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/exp60km.txt")
        .display()
        .to_string()
}

#[test]
fn privacy_compare_prints_reference_numbers() {
    let out = keyrate(&["privacy-compare", "--step", "1e-5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "max deviation 15.36% at e = 3.85%\n");
}

#[test]
fn privacy_compare_rejects_coarse_step() {
    let out = keyrate(&["privacy-compare", "--step", "2e-4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("grid step"));
}

#[test]
fn simulate_flags_pns_insecure_rows() {
    let out = keyrate(&[
        "simulate", "--setup", "GYS", "--mode", "nondecoy", "--mu", "0.1",
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("flagged insecure"));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "distance_km,mu,scheme,mode,Q_mu,E_mu,Q1_bound,e1_bound,R"
    );
    for line in lines {
        assert!(line.ends_with(",0.00000e0"), "unclamped row: {line}");
        assert!(line.contains(",0.1,"), "mu column wrong: {line}");
    }
}

#[test]
fn simulate_csv_is_byte_stable() {
    let args = [
        "simulate", "--setup", "T8", "--mode", "decoy", "--dmax", "15", "--dstep", "5",
    ];
    let a = keyrate(&args);
    let b = keyrate(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn simulate_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = keyrate(&[
        "simulate", "--setup", "GYS", "--scheme", "gllp", "--dmax", "10",
        "--dstep", "5", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 3); // header + 0, 5, 10 km
    assert!(text.lines().nth(1).unwrap().contains(",gllp,nondecoy,"));
}

#[test]
fn simulate_accepts_setup_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rig.txt");
    std::fs::write(
        &path,
        "name = rig\nwavelength_nm = 1550\nalpha_db_per_km = 0.21\n\
         e_d = 0.033\ny0 = 1.7e-6\neta_bob = 0.045\n",
    )
    .unwrap();
    let custom = keyrate(&[
        "simulate", "--setup-file", path.to_str().unwrap(), "--dmax", "10", "--dstep", "5",
    ]);
    let builtin = keyrate(&["simulate", "--setup", "GYS", "--dmax", "10", "--dstep", "5"]);
    assert!(custom.status.success());
    assert_eq!(custom.stdout, builtin.stdout);
}

#[test]
fn usage_errors_exit_two() {
    let out = keyrate(&["simulate", "--setup", "GYS", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = keyrate(&["simulate"]); // neither --setup nor --setup-file
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one() {
    let out = keyrate(&["simulate", "--setup", "NIST"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown setup"));
}

#[test]
fn max_distance_reports_cutoff_and_qber() {
    let out = keyrate(&["max-distance", "--setup", "GYS", "--scheme", "gllp"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("gllp: max distance 34"), "{text}");
    assert!(text.contains("E_mu at cutoff = 4.34"), "{text}");
}

#[test]
fn max_distance_both_schemes_ordered() {
    let out = keyrate(&["max-distance", "--setup", "KTH", "--mode", "decoy"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().next().unwrap().starts_with("lutkenhaus:"));
    assert!(text.lines().nth(1).unwrap().starts_with("gllp:"));
}

#[test]
fn optimal_mu_decoy_near_half() {
    let out = keyrate(&[
        "optimal-mu", "--setup", "GYS", "--mode", "decoy", "--distance", "0",
        "--scheme", "gllp",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("gllp: optimal mu 0.48"), "{text}");
}

#[test]
fn optimal_mu_past_cutoff_fails() {
    let out = keyrate(&[
        "optimal-mu", "--setup", "GYS", "--distance", "200", "--scheme", "gllp",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no positive key rate"));
}

#[test]
fn analyze_reproduces_published_run() {
    let out = keyrate(&[
        "analyze", "--data", &data_file(),
        "--override", "y0=1.11e-4", "--override", "q_nu=5.47e-4",
        "--e1-source", "signal",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("Q_1 >= 8.495646e-4"), "{text}");
    assert!(text.contains("e_1 <= 2.7330%"), "{text}");
    assert!(text.contains("key = 10422 bits"), "{text}");
    assert!(text.contains("key = 9428 bits"), "{text}");
    assert!(text.contains("override (raw ratio 6.211666e-5)"), "{text}");
}

#[test]
fn analyze_machine_block() {
    let out = keyrate(&[
        "analyze", "--data", &data_file(),
        "--override", "y0=1.11e-4", "--override", "q_nu=5.47e-4",
        "--machine",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("k_lutkenhaus = 10422"));
    assert!(text.contains("q_nu = 5.470000e-4"));
    assert!(text.contains("q_nu_computed = 5.048644e-4"));
    assert!(text.contains("e1_source = signal"));
}

#[test]
fn analyze_decoy_e1_source_clamps_on_this_data() {
    let out = keyrate(&[
        "analyze", "--data", &data_file(),
        "--override", "y0=1.11e-4", "--override", "q_nu=5.47e-4",
        "--e1-source", "decoy",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("numerator clamped to 0"));
}

#[test]
fn analyze_rejects_bad_overrides_and_files() {
    let out = keyrate(&["analyze", "--data", &data_file(), "--override", "qvac=1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown override key"));

    let out = keyrate(&["analyze", "--data", "/no/such/file"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("/no/such/file"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.txt");
    std::fs::write(&path, "n = 100\n").unwrap();
    let out = keyrate(&["analyze", "--data", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("missing required key"));
}
