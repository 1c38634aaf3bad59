//! End-to-end tests of the `qdiv` binary: config parsing, output formats,
//! determinism, and the exit-code contract.

use std::path::{Path, PathBuf};
use std::process::Command;

use qdiv::states::{random_density, DensityMatrix};

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_qdiv")
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("qdiv-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn write_state(path: &Path, state: &DensityMatrix) {
    std::fs::write(path, serde_json::to_string(state).unwrap()).unwrap();
}

fn write_json(path: &Path, value: serde_json::Value) {
    std::fs::write(path, serde_json::to_string_pretty(&value).unwrap()).unwrap();
}

#[test]
fn divergence_identical_states_all_zero() {
    let tmp = TempDir::new("dv-zero");
    let omega = random_density(2, 2, 1).unwrap();
    write_state(&tmp.path("psi.json"), &omega);
    write_state(&tmp.path("omega.json"), &omega);
    write_json(
        &tmp.path("cfg.json"),
        serde_json::json!({
            "command": "divergence",
            "psi": tmp.path("psi.json"),
            "omega": tmp.path("omega.json"),
            "families": ["relative_entropy", "petz", "theta_r", "log_fidelity"],
        }),
    );
    let out = Command::new(exe())
        .args(["divergence", "--config"])
        .arg(tmp.path("cfg.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let value: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!(value.abs() < 1e-9, "identical states must give zero: {line}");
    }
}

#[test]
fn divergence_commuting_pair_matches_classical_column() {
    let tmp = TempDir::new("dv-classical");
    let psi = DensityMatrix::from_probabilities(&[0.7, 0.2, 0.1]).unwrap();
    let omega = DensityMatrix::from_probabilities(&[0.3, 0.4, 0.3]).unwrap();
    write_state(&tmp.path("psi.json"), &psi);
    write_state(&tmp.path("omega.json"), &omega);
    write_json(
        &tmp.path("cfg.json"),
        serde_json::json!({
            "command": "divergence",
            "psi": tmp.path("psi.json"),
            "omega": tmp.path("omega.json"),
            "families": ["relative_entropy", "petz", "theta_r"],
            "thetas": [0.3, 0.6],
            "rs": [1.0, 2.0],
        }),
    );
    let out = Command::new(exe())
        .args(["divergence", "--config"])
        .arg(tmp.path("cfg.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut checked = 0;
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let value: f64 = cells[4].parse().unwrap();
        let classical = cells[6];
        assert!(!classical.is_empty(), "commuting pair must emit the classical column");
        let classical: f64 = classical.parse().unwrap();
        assert!(
            (value - classical).abs() < 1e-9,
            "quantum and classical columns disagree: {line}"
        );
        checked += 1;
    }
    assert!(checked >= 5);
}

#[test]
fn divergence_malformed_json_exits_2_without_output_file() {
    let tmp = TempDir::new("dv-bad");
    std::fs::write(tmp.path("psi.json"), "{not json").unwrap();
    write_state(&tmp.path("omega.json"), &random_density(2, 2, 3).unwrap());
    write_json(
        &tmp.path("cfg.json"),
        serde_json::json!({
            "command": "divergence",
            "psi": tmp.path("psi.json"),
            "omega": tmp.path("omega.json"),
        }),
    );
    let out_path = tmp.path("table.csv");
    let out = Command::new(exe())
        .args(["divergence", "--config"])
        .arg(tmp.path("cfg.json"))
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_path.exists(), "no partial output file may be written");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("psi.json"), "error must name the offending file: {err}");
}

#[test]
fn divergence_rejects_invalid_state_with_measured_defect() {
    let tmp = TempDir::new("dv-defect");
    // trace 1.5 violates the unit-trace invariant
    std::fs::write(
        tmp.path("psi.json"),
        r#"{"dim":2,"re":[1.0,0.0,0.0,0.5],"im":[0.0,0.0,0.0,0.0]}"#,
    )
    .unwrap();
    write_state(&tmp.path("omega.json"), &random_density(2, 2, 4).unwrap());
    write_json(
        &tmp.path("cfg.json"),
        serde_json::json!({
            "command": "divergence",
            "psi": tmp.path("psi.json"),
            "omega": tmp.path("omega.json"),
        }),
    );
    let out = Command::new(exe())
        .args(["divergence", "--config"])
        .arg(tmp.path("cfg.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1.5"), "error must report the measured defect: {err}");
}

#[test]
fn verify_quick_run_is_deterministic_and_exits_zero() {
    let tmp = TempDir::new("verify");
    write_json(
        &tmp.path("cfg.json"),
        serde_json::json!({
            "command": "verify",
            "master_seed": 7,
            "n_trials_override": 12,
        }),
    );
    let run = |out_name: &str| {
        let out_path = tmp.path(out_name);
        let out = Command::new(exe())
            .args(["verify", "--config"])
            .arg(tmp.path("cfg.json"))
            .arg("--out")
            .arg(&out_path)
            .env("QDIV_THREADS", "2")
            .output()
            .unwrap();
        (out.status.code(), std::fs::read(out_path).unwrap())
    };
    let (code1, bytes1) = run("r1.jsonl");
    let (code2, bytes2) = run("r2.jsonl");
    assert_eq!(code1, Some(0));
    assert_eq!(code2, Some(0));
    assert_eq!(bytes1, bytes2, "same seed must give identical bytes");
    // the report ends with a summary object
    let text = String::from_utf8(bytes1).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.contains("\"all_pass\":true"));
}

#[test]
fn verify_zero_tolerance_exits_one() {
    let tmp = TempDir::new("verify-fail");
    write_json(
        &tmp.path("cfg.json"),
        serde_json::json!({
            "command": "verify",
            "master_seed": 7,
            "n_trials_override": 10,
            "tolerance_override": 0.0,
        }),
    );
    let out = Command::new(exe())
        .args(["verify", "--config"])
        .arg(tmp.path("cfg.json"))
        .env("QDIV_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "property failure must exit 1");
}

#[test]
fn discriminate_sweep_has_expected_columns() {
    let tmp = TempDir::new("disc");
    let psi = random_density(2, 2, 11).unwrap().depolarized(0.1);
    let omega = random_density(2, 2, 12).unwrap().depolarized(0.1);
    let third = random_density(2, 2, 13).unwrap();
    write_state(&tmp.path("psi.json"), &psi);
    write_state(&tmp.path("omega.json"), &omega);
    write_state(&tmp.path("third.json"), &third);
    write_json(
        &tmp.path("cfg.json"),
        serde_json::json!({
            "command": "discriminate",
            "psi": tmp.path("psi.json"),
            "omega": tmp.path("omega.json"),
            "hypotheses": [tmp.path("third.json")],
            "n_max": 4,
        }),
    );
    let out = Command::new(exe())
        .args(["discriminate", "--config"])
        .arg(tmp.path("cfg.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("quantity,n,param,value\n"));
    for quantity in [
        "chernoff",
        "relative_entropy",
        "hoeffding",
        "converse_hoeffding",
        "sanov",
        "multi_chernoff",
        "helstrom_error",
        "helstrom_slope",
        "np_alpha",
        "np_beta",
    ] {
        assert!(
            text.lines().any(|l| l.starts_with(quantity)),
            "missing quantity {quantity}"
        );
    }
    // helstrom errors decrease with n
    let errors: Vec<f64> = text
        .lines()
        .filter(|l| l.starts_with("helstrom_error"))
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(errors.len(), 4);
    for w in errors.windows(2) {
        assert!(w[1] <= w[0] + 1e-12);
    }
}

#[test]
fn discriminate_identical_states_zero_exponents() {
    let tmp = TempDir::new("disc-zero");
    let omega = random_density(2, 2, 21).unwrap();
    write_state(&tmp.path("psi.json"), &omega);
    write_state(&tmp.path("omega.json"), &omega);
    write_json(
        &tmp.path("cfg.json"),
        serde_json::json!({
            "command": "discriminate",
            "psi": tmp.path("psi.json"),
            "omega": tmp.path("omega.json"),
            "n_max": 2,
        }),
    );
    let out = Command::new(exe())
        .args(["discriminate", "--config"])
        .arg(tmp.path("cfg.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().filter(|l| l.starts_with("chernoff,") || l.starts_with("relative_entropy,")) {
        let value: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!(value.abs() < 1e-8, "identical states must give zero exponents: {line}");
    }
}

#[test]
fn config_command_mismatch_is_rejected() {
    let tmp = TempDir::new("mismatch");
    write_json(
        &tmp.path("cfg.json"),
        serde_json::json!({
            "command": "verify",
            "psi": "x.json",
            "omega": "y.json",
        }),
    );
    let out = Command::new(exe())
        .args(["divergence", "--config"])
        .arg(tmp.path("cfg.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_format_flag_emits_json() {
    let tmp = TempDir::new("fmt");
    let omega = random_density(2, 2, 31).unwrap();
    write_state(&tmp.path("psi.json"), &omega);
    write_state(&tmp.path("omega.json"), &omega);
    write_json(
        &tmp.path("cfg.json"),
        serde_json::json!({
            "command": "divergence",
            "psi": tmp.path("psi.json"),
            "omega": tmp.path("omega.json"),
            "families": ["relative_entropy"],
        }),
    );
    let out = Command::new(exe())
        .args(["divergence", "--config"])
        .arg(tmp.path("cfg.json"))
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let parsed: Vec<serde_json::Value> =
        serde_json::from_slice(&out.stdout).expect("output must be valid JSON");
    assert_eq!(parsed[0]["family"], "relative_entropy");
}
