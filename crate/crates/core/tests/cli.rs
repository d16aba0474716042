//! End-to-end runs of the `gammaspace` binary.

mod common;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CONFIG: &str = r#"{
    "p": 2,
    "weight": {"b": "inf", "pieces": [{"lo": 0, "hi": 1, "coeff": 1, "exp": 0}, {"lo": 1, "hi": "inf", "coeff": 1, "exp": 0.5}]},
    "functions": [{"breaks": [0, 1, 3], "values": [2, 0.5]}],
    "grid": {"decades_lo": -3, "decades_hi": 3, "points_per_decade": 4},
    "samples": 30
}"#;

fn gammaspace(args: &[&str], dir: &Path, threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gammaspace"));
    cmd.args(args).current_dir(dir);
    match threads {
        Some(n) => cmd.env("GAMMASPACE_THREADS", n),
        None => cmd.env_remove("GAMMASPACE_THREADS"),
    };
    cmd.output().unwrap()
}

fn setup(config: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cfg.json"), config).unwrap();
    dir
}

fn untimed(path: &Path) -> Value {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn report_and_csv_are_written() {
    let dir = setup(CONFIG);
    let out = gammaspace(&["indices", "--config", "cfg.json", "--out", "r.json", "--csv", "h.csv"], dir.path(), None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = untimed(&dir.path().join("r.json"));
    assert_eq!(report["command"], "indices");
    assert!((report["results"]["i_lower"].as_f64().unwrap() - 0.5).abs() < 1e-3);
    let csv = std::fs::read_to_string(dir.path().join("h.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,h"));
    assert!(lines.count() > 10);

    let out = gammaspace(&["dual-weight", "--config", "cfg.json", "--csv", "psi.csv"], dir.path(), None);
    assert!(out.status.success());
    let stdout: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stdout["command"], "dual-weight");
    let csv = std::fs::read_to_string(dir.path().join("psi.csv")).unwrap();
    assert!(csv.starts_with("t,psi,local_slope\n"));
}

#[test]
fn runs_are_deterministic_across_threads() {
    let dir = setup(CONFIG);
    let run = |name: &str, threads: Option<&str>| {
        let out = gammaspace(&["report-all", "--config", "cfg.json", "--out", name, "--seed", "5"], dir.path(), threads);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        untimed(&dir.path().join(name))
    };
    let a = run("a.json", None);
    assert_eq!(a, run("b.json", None));
    assert_eq!(a, run("c.json", Some("1")));
    assert_eq!(a["config"]["seed"], 5);
}

#[test]
fn flags_override_config() {
    let dir = setup(CONFIG);
    let out = gammaspace(&["validate", "--config", "cfg.json", "--p", "3"], dir.path(), None);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["p"], 3.0);
}

#[test]
fn exit_codes() {
    let dir = setup(CONFIG);
    let code = |args: &[&str]| gammaspace(args, dir.path(), None).status.code();
    assert_eq!(code(&["validate", "--config", "cfg.json", "--p", "0.5"]), Some(2));
    assert_eq!(code(&["validate", "--config", "missing.json"]), Some(1));
    let out = gammaspace(&["validate", "--config", "cfg.json"], dir.path(), Some("many"));
    assert_eq!(out.status.code(), Some(2));

    let bad = setup(&CONFIG.replace("\"samples\"", "\"sample\""));
    let out = gammaspace(&["validate", "--config", "cfg.json"], bad.path(), None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sample"));

    let trivial = setup(&CONFIG.replace("\"exp\": 0.5", "\"exp\": 1.5"));
    let out = gammaspace(&["validate", "--config", "cfg.json"], trivial.path(), None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trivial"));

    // CSV needs a sampled series, which `validate` does not produce.
    assert_eq!(code(&["validate", "--config", "cfg.json", "--csv", "x.csv"]), Some(2));
}

#[test]
fn reports_match_the_schema() {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for cfg in common::command_configs() {
        let report = gammaspace::cli::run(&cfg).unwrap();
        let doc: Value = serde_json::from_str(&report.to_json()).unwrap();
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", report.command.name());
        let back = gammaspace::cli::Report::from_json(&report.to_json()).unwrap();
        assert_eq!(back.to_json_untimed(), report.to_json_untimed());
    }
    let mut broken: Value = serde_json::from_str(&gammaspace::cli::run(&common::command_configs()[0]).unwrap().to_json()).unwrap();
    broken.as_object_mut().unwrap().remove("version");
    assert!(!validator.is_valid(&broken));
}
