//! End-to-end tests of the binary: exit codes, output determinism, format
//! selection, and checkpoint/resume.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_maxrefl"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("maxrefl-test-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn chain_defaults_reproduce_the_volume_bound() {
    let out = run(&["chain", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let vol_bound = v["vol_bound"].as_f64().unwrap();
    let expected = 64.0 * std::f64::consts::PI.powi(2);
    assert!((vol_bound / expected - 1.0).abs() <= 1e-12);
    assert_eq!(v["index_bound"].as_u64(), Some(4));
}

#[test]
fn orbifold_crosscap_case() {
    let out = run(&["orbifold", "--symbol", "3x"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("supergroup:            *622"), "{text}");
    assert!(text.contains("index:                 4"), "{text}");
    assert!(text.contains("3x -(2:1)-> 6* -(2:1)-> *622"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        run(&["orbifold", "--symbol", "*237"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--min-disc", "5"]).status.code(), Some(2));
    assert_eq!(
        run(&["chain", "--format", "csv"]).status.code(),
        Some(2),
        "csv is not a chain format"
    );
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["scan", "--help"]).status.code(), Some(0));
}

#[test]
fn convergence_failure_exits_3() {
    let out = run(&["spectrum", "--depth", "1", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_hatcher_passes_by_default_and_fails_at_tiny_cutoff() {
    let ok = run(&["verify-hatcher"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("hatcher check: PASS (16/16 passing)"));

    let bad = run(&["verify-hatcher", "--cutoff", "0.01"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("hatcher check: FAIL"));

    let json = run(&["verify-hatcher", "--format", "json"]);
    assert_eq!(json.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["all_passing"].as_bool(), Some(true));
    assert_eq!(v["entries"].as_array().unwrap().len(), 16);
}

#[test]
fn scan_output_is_byte_deterministic_and_parallel_invariant() {
    let args = [
        "scan",
        "--min-disc",
        "-200",
        "--max-disc",
        "-3",
        "--tol",
        "1e-8",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "identical runs must match bytes");
    let mut with_threads: Vec<&str> = args.to_vec();
    with_threads.extend_from_slice(&["--parallel", "3"]);
    let c = run(&with_threads);
    assert_eq!(a.stdout, c.stdout, "parallel scan must match serial bytes");
    let text = stdout(&a);
    assert_eq!(
        text.lines().next(),
        Some("d,h,w,L2,L2_err,zeta_k2,borel_lower,passes_exact,passes_crude")
    );
}

#[test]
fn scan_json_mirrors_the_csv_schema() {
    let out = run(&[
        "scan",
        "--min-disc",
        "-20",
        "--max-disc",
        "-3",
        "--tol",
        "1e-8",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), v["n_scanned"].as_u64().unwrap() as usize);
    let first = &records[0];
    assert_eq!(first["d"].as_i64(), Some(-3));
    for key in [
        "d",
        "h",
        "w",
        "L2",
        "L2_err",
        "zeta_k2",
        "borel_lower",
        "passes_exact",
        "passes_crude",
    ] {
        assert!(first.get(key).is_some(), "missing key {key}");
    }
}

#[test]
fn scan_table_has_summary_counts() {
    let out = run(&[
        "scan",
        "--min-disc",
        "-20",
        "--max-disc",
        "-3",
        "--tol",
        "1e-8",
        "--format",
        "table",
    ]);
    assert_eq!(out.status.code(), Some(0));
    // [-20, -3] holds the fundamental discriminants -3,-4,-7,-8,-11,-15,-19,-20.
    assert!(
        stdout(&out).contains("scanned: 8  passing: 8"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn checkpoint_resume_produces_the_full_file() {
    let dir = temp_dir("ckpt");
    let ckpt_dir = dir.join("checkpoints");
    let full_csv = dir.join("full.csv");
    let part_csv = dir.join("part.csv");

    // Reference: one uninterrupted run, no checkpointing.
    let full = run(&[
        "scan",
        "--min-disc",
        "-100",
        "--max-disc",
        "-3",
        "--tol",
        "1e-8",
        "--out",
        full_csv.to_str().unwrap(),
    ]);
    assert_eq!(full.status.code(), Some(0));

    // Simulated interruption: the records up to |d| = 47 are already in
    // part.csv and the checkpoint says 47.
    let prefix = run(&[
        "scan",
        "--min-disc",
        "-47",
        "--max-disc",
        "-3",
        "--tol",
        "1e-8",
        "--out",
        part_csv.to_str().unwrap(),
    ]);
    assert_eq!(prefix.status.code(), Some(0));
    fs::create_dir_all(&ckpt_dir).unwrap();
    fs::write(ckpt_dir.join("scan.ckpt"), "47\n").unwrap();

    // Resume over the full range; only |d| > 47 should be appended.
    let resumed = bin()
        .args([
            "scan",
            "--min-disc",
            "-100",
            "--max-disc",
            "-3",
            "--tol",
            "1e-8",
            "--out",
            part_csv.to_str().unwrap(),
        ])
        .env("MAXREFL_CHECKPOINT_DIR", &ckpt_dir)
        .output()
        .unwrap();
    assert_eq!(resumed.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(&part_csv).unwrap(),
        fs::read_to_string(&full_csv).unwrap(),
        "stitched file must equal the uninterrupted scan"
    );
    assert!(
        !ckpt_dir.join("scan.ckpt").exists(),
        "checkpoint is cleared after completion"
    );
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn checkpointed_fresh_run_writes_checkpoint_and_completes() {
    let dir = temp_dir("ckpt-fresh");
    let out_csv = dir.join("scan.csv");
    let ckpt_dir = dir.join("ck");
    let out = bin()
        .args([
            "scan",
            "--min-disc",
            "-60",
            "--max-disc",
            "-3",
            "--tol",
            "1e-8",
            "--out",
            out_csv.to_str().unwrap(),
        ])
        .env("MAXREFL_CHECKPOINT_DIR", &ckpt_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let plain = run(&[
        "scan",
        "--min-disc",
        "-60",
        "--max-disc",
        "-3",
        "--tol",
        "1e-8",
    ]);
    assert_eq!(fs::read_to_string(&out_csv).unwrap(), stdout(&plain));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn spectrum_mesh_export_import_round_trip() {
    let dir = temp_dir("mesh");
    let mesh_path = dir.join("sphere.txt");
    let direct = run(&[
        "spectrum",
        "--depth",
        "2",
        "--k",
        "5",
        "--format",
        "json",
        "--mesh-out",
        mesh_path.to_str().unwrap(),
    ]);
    assert_eq!(direct.status.code(), Some(0));
    let imported = run(&[
        "spectrum",
        "--mesh-in",
        mesh_path.to_str().unwrap(),
        "--k",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(imported.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_str(&stdout(&direct)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&imported)).unwrap();
    assert_eq!(a["depth"].as_u64(), Some(2));
    assert!(b["depth"].is_null(), "imported meshes carry no depth");
    assert_eq!(
        a["eigenvalues"], b["eigenvalues"],
        "identical mesh, identical spectrum"
    );
    assert_eq!(a["n_vertices"], b["n_vertices"]);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn out_flag_matches_stdout_bytes() {
    let dir = temp_dir("out");
    let path = dir.join("chain.json");
    let to_stdout = run(&["chain", "--format", "json"]);
    let to_file = run(&["chain", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(to_file.status.code(), Some(0));
    assert_eq!(fs::read(&path).unwrap(), to_stdout.stdout);
    let _ = fs::remove_dir_all(&dir);
}
