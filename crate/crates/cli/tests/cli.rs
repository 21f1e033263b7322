use std::path::Path;
use std::process::{Command, Output};

fn kgwave(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgwave"))
        .args(args)
        .arg("--out-dir")
        .arg(dir)
        .output()
        .unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn superluminal_table_has_group_velocity_above_c() {
    let tmp = tempfile::tempdir().unwrap();
    let out = kgwave(&["dispersion", "--branch", "super", "--q", "2", "--mu", "1", "--kz", "0.1:1000:log"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(tmp.path().join("dispersion.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config: {"));
    assert!(text.lines().any(|l| l == "kz,omega,v_phase,v_group"));
    let rows = csv_rows(&text);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[3] > 1.0));
}

#[test]
fn subluminal_json_report() {
    let tmp = tempfile::tempdir().unwrap();
    let out = kgwave(&["dispersion", "--branch", "sub", "--Q", "1", "--kz", "0:5:6", "--format", "json"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("dispersion.json")).unwrap()).unwrap();
    assert_eq!(doc["schemaVersion"], 1);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["points"].as_array().unwrap().len(), 6);
}

#[test]
fn missing_flag_is_a_precondition_failure_without_files() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    let out = kgwave(&["dispersion", "--branch", "super", "--q", "2"], &dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.exists());
}

#[test]
fn invalid_parameter_names_the_violation() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    let out = kgwave(&["mode-field", "--family", "super", "--q", "2", "--kz", "3", "--rho", "0:1:3", "--z", "0"], &dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rho > 0"));
    assert!(!dir.exists());

    let out = kgwave(&["front-speed", "--n", "1000"], &dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("power of two"));
    assert!(!dir.exists());
}

#[test]
fn propagator_check_passes_on_default_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let out = kgwave(&["propagator-check", "--mu", "1", "--grid", "default"], tmp.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("propagator_check.json")).unwrap()).unwrap();
    assert_eq!(doc["schemaVersion"], 1);
    assert!(doc["spacelike"]["max_rel_error"].as_f64().unwrap() <= 1e-6);
    assert_eq!(doc["spacelike"]["grid"].as_array().unwrap().len(), 25);
    assert_eq!(doc["kernel_constants"].as_array().unwrap().len(), 2);
}

#[test]
fn starved_quadrature_exits_with_diagnostics() {
    let tmp = tempfile::tempdir().unwrap();
    let out = kgwave(&["propagator-check", "--max-panels", "3"], tmp.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(tmp.path().join("diagnostics.json").exists());
    assert!(!tmp.path().join("propagator_check.json").exists());
}

#[test]
fn config_file_is_overridden_by_flags() {
    let tmp = tempfile::tempdir().unwrap();
    let conf = tmp.path().join("run.conf");
    std::fs::write(&conf, "# dispersion run\nbranch = sub\nq = 1\nkz = 1,2\nmu = 3\n").unwrap();
    let out = kgwave(&["dispersion", "--config", conf.to_str().unwrap(), "--mu", "0"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(tmp.path().join("dispersion.csv")).unwrap();
    assert!(text.lines().next().unwrap().contains("\"mu\":0.0"));
    // mu = 0, Q = 1, kz = 1: omega = sqrt(2)
    let rows = csv_rows(&text);
    assert_eq!(rows[0][1], 2f64.sqrt());
}

#[test]
fn unknown_config_key_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let conf = tmp.path().join("bad.conf");
    std::fs::write(&conf, "branch = sub\nq = 1\nkz = 1\nbogus = 3\n").unwrap();
    let out = kgwave(&["dispersion", "--config", conf.to_str().unwrap()], &tmp.path().join("out"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn specfun_table_matches_reference() {
    let tmp = tempfile::tempdir().unwrap();
    let out = kgwave(&["specfun-test"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(tmp.path().join("specfun_test.csv")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1001);
    assert!(text.contains("function,x,reference,value,error"));
}

#[test]
fn front_speed_control_run_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = kgwave(&["front-speed", "--q", "1", "--n", "65536"], tmp.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    for name in ["front_speed.json", "front_reports.csv", "front_psi_z0.csv", "front_psi_z3.csv"] {
        assert!(tmp.path().join(name).exists(), "{name}");
    }
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("front_speed.json")).unwrap()).unwrap();
    let v = doc["summary"]["front_velocity"].as_f64().unwrap();
    assert!((v - 1.0).abs() < 1e-3, "{v}");
}
