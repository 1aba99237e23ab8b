use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wiener-hopf"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str], cfg: &Path) -> Output {
    bin().args(args).arg("-c").arg(cfg).output().unwrap()
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("cfg.json");
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn ar1_unit_rhs_gives_the_inverse_column() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"model": {"type": "arma", "ar": [0.5], "sigma2": 1.0},
            "rhs": {"type": "unit", "k": 0}}"#,
    );
    let out = dir.path().join("h.csv");
    let o = bin().args(["solve", "-c"]).arg(&cfg).arg("-o").arg(&out).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(&rows[..3], ["j,h_j", "0,1", "1,-0.5"]);
    let h2: f64 = rows[3].split(',').nth(1).unwrap().parse().unwrap();
    assert!(h2.abs() < 1e-12, "{h2}");
    assert!(dir.path().join("h.summary.json").exists());
}

#[test]
fn every_shipped_config_runs() {
    let dir = tempfile::tempdir().unwrap();
    for (cfg, cmd) in [
        ("factorize_ar1.json", "factorize"),
        ("solve_ma1_unit.json", "solve"),
        ("solve_arma11_predictor.json", "solve"),
        ("invert_ar2.json", "invert"),
        ("predict_arma11.json", "predict"),
        ("approx_ma1.json", "approx-study"),
    ] {
        let out = dir.path().join(format!("{cmd}.out"));
        let o = bin()
            .arg(cmd)
            .arg("-c")
            .arg(config(cfg))
            .arg("-o")
            .arg(&out)
            .output()
            .unwrap();
        assert!(o.status.success(), "{cfg}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(std::fs::metadata(&out).unwrap().len() > 0, "{cfg}");
        let summary = std::fs::read_to_string(out.with_extension("summary.json")).unwrap();
        serde_json::from_str::<serde_json::Value>(&summary).unwrap();
    }
}

#[test]
fn invalid_sequence_is_a_domain_error() {
    let o = run(&["factorize"], &config("invalid_sequence.json"));
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("omega"), "{err}");
    assert!(err.contains(r#""error":"domain""#), "{err}");
}

#[test]
fn malformed_json_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "{bad");
    assert_eq!(run(&["factorize"], &cfg).status.code(), Some(2));
}

#[test]
fn unknown_numeric_key_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"model": {"type": "arma", "ar": [0.5], "sigma2": 1.0}, "numeric": {"tolerance": 1e-8}}"#,
    );
    assert_eq!(run(&["factorize"], &cfg).status.code(), Some(2));
}

#[test]
fn unattainable_tolerance_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"model": {"type": "arma", "ma": [0.4], "sigma2": 1.0},
            "rhs": {"type": "unit", "k": 0},
            "numeric": {"tol": 1e-300}}"#,
    );
    let o = run(&["solve"], &cfg);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn unreadable_config_is_a_config_error() {
    let o = run(&["factorize"], Path::new("/nonexistent/cfg.json"));
    assert_eq!(o.status.code(), Some(2));
}
