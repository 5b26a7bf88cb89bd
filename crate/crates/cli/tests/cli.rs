use std::path::Path;
use std::process::{Command, Output};

const SMALL_GAUSSIAN: &str = r#"{"z_max": 8, "t_max": 0.25, "nz": 256, "n_saved": 8, "points_per_ray": 6,
  "det_samples": 5, "jump_points": 3, "jump_t": 0.1,
  "tol_det": 1e-5, "tol_jump": 1e-3}"#;

fn fokas(dir: &Path, config: &str, args: &[&str]) -> Output {
    let cfg = dir.join("config.json");
    std::fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_fokas"))
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir)
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn simulated(config: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let o = fokas(dir.path(), config, &["simulate"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    dir
}

#[test]
fn missing_output_directory_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, "{}").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_fokas"))
        .args(["--config", cfg.to_str().unwrap(), "--out", "/no/such/dir", "simulate"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not exist"));
}

#[test]
fn malformed_configs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&fokas(dir.path(), "{not json", &["simulate"])), 2);
    assert_eq!(code(&fokas(dir.path(), r#"{"tol_global": -1}"#, &["verify"])), 2);
    assert_eq!(code(&fokas(dir.path(), "{}", &["no-such-command"])), 2);
}

#[test]
fn zero_preset_pipeline() {
    let cfg = r#"{"preset": "zero", "z_max": 6, "t_max": 0.5, "nz": 64, "n_saved": 4, "points_per_ray": 4,
      "det_samples": 4, "jump_points": 3}"#;
    let dir = simulated(cfg);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("field/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["preset"], "zero");
    for cmd in ["spectral", "verify", "reconstruct", "zeros", "jump"] {
        let o = fokas(dir.path(), cfg, &[cmd]);
        assert_eq!(code(&o), 0, "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let spectral = std::fs::read_to_string(dir.path().join("spectral.csv")).unwrap();
    for line in spectral.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!((f[2], f[3], f[4], f[5]), (1.0, 0.0, 0.0, 0.0));
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    for c in report["checks"].as_array().unwrap() {
        assert_eq!(c["measured"], 0.0, "{}", c["name"]);
    }
    let rec: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("reconstruct.json")).unwrap()).unwrap();
    assert_eq!(rec["sup_abs"], 0.0);
}

#[test]
fn uniform_preset_matches_closed_form() {
    let cfg = r#"{"preset": "uniform", "amp": 0.5, "z_max": 10, "t_max": 1, "nz": 64, "n_saved": 8}"#;
    let dir = simulated(cfg);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("field/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["scheme"]["order"], 4);
    assert_eq!(manifest["preset"], "uniform");
    let text = std::fs::read_to_string(dir.path().join("field/field.csv")).unwrap();
    for line in text.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let phase = 0.25 * f[1];
        assert!((f[2] - 0.5 * phase.cos()).abs() < 1e-6 && (f[3] - 0.5 * phase.sin()).abs() < 1e-6);
    }
}

#[test]
fn corrupted_field_exits_4() {
    let dir = simulated(SMALL_GAUSSIAN);
    let path = dir.path().join("field/field.csv");
    let mut text = std::fs::read_to_string(&path).unwrap();
    let at = text.find("\n0.").unwrap() + 1;
    text.replace_range(at..at + 1, "1");
    std::fs::write(&path, text).unwrap();
    for cmd in ["spectral", "verify"] {
        assert_eq!(code(&fokas(dir.path(), SMALL_GAUSSIAN, &[cmd])), 4);
    }
}

#[test]
fn spectral_is_byte_deterministic() {
    let dir = simulated(SMALL_GAUSSIAN);
    let run = |threads: &str| {
        assert_eq!(code(&fokas(dir.path(), SMALL_GAUSSIAN, &["--threads", threads, "spectral"])), 0);
        (std::fs::read(dir.path().join("spectral.csv")).unwrap(), std::fs::read(dir.path().join("zeros.json")).unwrap())
    };
    let a = run("1");
    let b = run("3");
    assert!(a == b);
    assert!(!a.0.contains(&b'\r'));
}

#[test]
fn failed_invariant_exits_5_with_report() {
    let cfg = SMALL_GAUSSIAN.replace('}', r#", "tol_conservation": 1e-300}"#);
    let dir = simulated(&cfg);
    let o = fokas(dir.path(), &cfg, &["verify"]);
    assert_eq!(code(&o), 5);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], false);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["conservation"]);
}

#[test]
fn ladder_problems() {
    let dir = simulated(SMALL_GAUSSIAN);
    let short = SMALL_GAUSSIAN.replace('}', r#", "ladder": [8, 12, 18]}"#);
    assert_eq!(code(&fokas(dir.path(), &short, &["reconstruct"])), 6);
    let small = SMALL_GAUSSIAN.replace('}', r#", "ladder": [1.5, 2, 2.5, 3, 4]}"#);
    let o = fokas(dir.path(), &small, &["reconstruct"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let small_err = report_field(dir.path(), "interior_sup_rel");
    let o = fokas(dir.path(), SMALL_GAUSSIAN, &["reconstruct"]);
    assert_eq!(code(&o), 0);
    assert!(small_err > 10.0 * report_field(dir.path(), "interior_sup_rel"));
    let header = std::fs::read_to_string(dir.path().join("boundary.csv")).unwrap();
    assert_eq!(header.lines().next().unwrap(), "t,re_s0,im_s0,re_s1,im_s1");
}

fn report_field(dir: &Path, key: &str) -> f64 {
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("reconstruct.json")).unwrap()).unwrap();
    v[key].as_f64().unwrap()
}

#[test]
fn seed_flag_changes_the_samples() {
    let dir = simulated(SMALL_GAUSSIAN);
    let det = |seed: &str| {
        assert_eq!(code(&fokas(dir.path(), SMALL_GAUSSIAN, &["--seed", seed, "verify"])), 0);
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
        (v["seed"].as_u64().unwrap(), v["checks"][0]["measured"].as_f64().unwrap())
    };
    let (a, b) = (det("1"), det("2"));
    assert_eq!((a.0, b.0), (1, 2));
    assert_ne!(a.1, b.1);
}
