use std::path::PathBuf;
use std::sync::Mutex;

use dualframe::cli::{main_with_args, EXIT_FAILED, EXIT_INVALID, EXIT_OK, SEED_ENV};
use serde_json::Value;

// Serializes runs because DUALFRAME_SEED is process-wide.
static ENV: Mutex<()> = Mutex::new(());

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "configs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> i32 {
    let _guard = ENV.lock().unwrap_or_else(|e| e.into_inner());
    main_with_args(std::iter::once("dualframe").chain(args.iter().copied()))
}

fn run_to_file(args: &[&str]) -> (i32, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out_s = out.to_string_lossy().into_owned();
    let mut full = args.to_vec();
    full.extend(["--out", &out_s]);
    let code = run(&full);
    (code, std::fs::read_to_string(&out).unwrap_or_default())
}

fn without_timings(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn exit_codes() {
    let cases = [
        ("verify", "quincunx_tent.json", EXIT_OK),
        ("verify", "skew_radial.json", EXIT_OK),
        ("verify", "quincunx_radial.json", EXIT_OK),
        ("verify", "tampered.json", EXIT_FAILED),
        ("build", "integer_lattice.json", EXIT_FAILED),
        ("inspect", "identity.json", EXIT_INVALID),
        ("transform", "zero_signal.json", EXIT_INVALID),
        ("transform", "uncovered.json", EXIT_OK),
        ("transform", "transform_1d.json", EXIT_OK),
    ];
    for (cmd, cfg, want) in cases {
        let (code, _) = run_to_file(&[cmd, "--config", &config(cfg)]);
        assert_eq!(code, want, "{cmd} {cfg}");
    }
}

#[test]
fn bad_arguments_are_invalid_input() {
    let cfg = config("quincunx_tent.json");
    assert_eq!(run(&["export", "--config", &cfg, "--what", "spectrum"]), EXIT_INVALID);
    assert_eq!(run(&["frobnicate"]), EXIT_INVALID);
    assert_eq!(run(&["verify", "--config", "/nonexistent/config.json"]), EXIT_INVALID);
    assert_eq!(
        run(&["export", "--config", &cfg, "--what", "psi", "--resolution", "1"]),
        EXIT_INVALID
    );
}

#[test]
fn reports_are_reproducible() {
    for (cmd, cfg) in [("verify", "quincunx_tent.json"), ("transform", "transform_1d.json")] {
        let cfg = config(cfg);
        let (_, a) = run_to_file(&[cmd, "--config", &cfg]);
        let (_, b) = run_to_file(&[cmd, "--config", &cfg]);
        let (_, c) = run_to_file(&["--parallel", cmd, "--config", &cfg]);
        assert_eq!(without_timings(&a), without_timings(&b));
        assert_eq!(without_timings(&a), without_timings(&c));
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["command"], cmd);
    }
}

#[test]
fn seed_comes_from_environment() {
    let cfg = config("quincunx_tent.json");
    let (code, text) = {
        let _guard = ENV.lock().unwrap_or_else(|e| e.into_inner());
        std::env::set_var(SEED_ENV, "7");
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("r.json");
        let code = main_with_args(["dualframe", "verify", "--config", &cfg, "--out", out.to_str().unwrap()]);
        std::env::remove_var(SEED_ENV);
        (code, std::fs::read_to_string(out).unwrap())
    };
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["config"]["verification"]["seed"], 7);

    let code = {
        let _guard = ENV.lock().unwrap_or_else(|e| e.into_inner());
        std::env::set_var(SEED_ENV, "not-a-number");
        let code = main_with_args(["dualframe", "verify", "--config", &cfg]);
        std::env::remove_var(SEED_ENV);
        code
    };
    assert_eq!(code, EXIT_INVALID);
}

fn csv_rows(text: &str) -> (csv::StringRecord, Vec<csv::StringRecord>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let head = r.headers().unwrap().clone();
    (head, r.records().map(|x| x.unwrap()).collect())
}

#[test]
fn export_tent_peaks_at_half_half() {
    let (code, text) = run_to_file(&[
        "export",
        "--config",
        &config("quincunx_tent.json"),
        "--what",
        "psi",
        "--resolution",
        "5",
    ]);
    assert_eq!(code, EXIT_OK);
    let (head, rows) = csv_rows(&text);
    assert_eq!(head, vec!["x1", "x2", "value"]);
    assert_eq!(rows.len(), 25);
    let best = rows
        .iter()
        .max_by(|a, b| a[2].parse::<f64>().unwrap().total_cmp(&b[2].parse::<f64>().unwrap()))
        .unwrap();
    assert_eq!(best[2].parse::<f64>().unwrap(), 1.0);
    assert_eq!(best[0].parse::<f64>().unwrap(), 0.5);
    assert_eq!(best[1].parse::<f64>().unwrap(), 0.5);
}

#[test]
fn export_shells_and_lattice() {
    let cfg = config("skew_radial.json");
    let (code, text) = run_to_file(&["export", "--config", &cfg, "--what", "shells", "--resolution", "12"]);
    assert_eq!(code, EXIT_OK);
    let (head, rows) = csv_rows(&text);
    assert_eq!(head, vec!["m", "theta", "x1", "x2"]);
    assert_eq!(rows.len(), 48);
    let ms: std::collections::BTreeSet<_> = rows.iter().map(|r| r[0].to_string()).collect();
    assert_eq!(ms.into_iter().collect::<Vec<_>>(), vec!["0", "1", "2", "3"]);

    let (code, text) = run_to_file(&["export", "--config", &cfg, "--what", "lattice", "--resolution", "1"]);
    assert_eq!(code, EXIT_OK);
    let (head, rows) = csv_rows(&text);
    assert_eq!(head, vec!["set", "k1", "k2", "x1", "x2"]);
    assert_eq!(rows.len(), 18);

    let (code, _) = run_to_file(&["export", "--config", &config("transform_1d.json"), "--what", "shells"]);
    assert_eq!(code, EXIT_INVALID);
}
