//! Command-line behavior: exit codes, outputs, determinism and configuration errors.

use std::path::{Path, PathBuf};
use std::process::Command;

use cmcgk::cli::{run_with, ExitStatus};

fn scenes() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/scenes")
}

fn run(args: &[&str]) -> (ExitStatus, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["cmcgk"];
    full.extend_from_slice(args);
    let status = run_with(full, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Writes the golden scene with a smaller grid and outputs inside `dir`.
fn small_scene(dir: &Path, edit: impl FnOnce(&mut serde_json::Value)) -> PathBuf {
    let text = std::fs::read_to_string(scenes().join("golden.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["grid"] = serde_json::json!({"nu": 81, "nv": 81});
    // The stencil roundtrip error roughly quadruples when the grid is halved.
    v["tolerances"] = serde_json::json!({"roundtrip_max": 1e-4});
    v["outputs"] = serde_json::json!({
        "mesh_path": dir.join("m.obj"),
        "report_path": dir.join("r.json"),
        "samples_path": dir.join("s.csv"),
    });
    edit(&mut v);
    let path = dir.join("scene.json");
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

#[test]
fn reconstruct_writes_mesh_samples_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let scene = small_scene(dir.path(), |_| {});
    let (status, _, err) = run(&["reconstruct", "--config", scene.to_str().unwrap()]);
    assert_eq!(status, ExitStatus::Pass, "{err}");
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["schema"], "cmcgk-report/1");
    assert_eq!(report["status"], "PASS");
    let names: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in [
        "harmonic_residual",
        "integrability_zeta",
        "algebraic_sum_ak",
        "mean_curvature_minus_c",
        "hopf_q_plus_phi",
        "lorentz_agreement",
        "domain_margin",
        "gauss_roundtrip",
    ] {
        assert!(names.contains(&n), "{n} missing");
    }

    let obj = std::fs::read_to_string(dir.path().join("m.obj")).unwrap();
    let vertices: Vec<&str> = obj.lines().filter(|l| l.starts_with("v ")).collect();
    assert_eq!(vertices.len(), 81 * 81);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2 * 80 * 80);
    // basepoint z = 0 is node (40, 40)
    let base: Vec<f64> = vertices[40 * 81 + 40].split(' ').skip(1).map(|x| x.parse().unwrap()).collect();
    assert_eq!(base, vec![0.0, 0.0, 2.0]);

    let samples = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert!(samples.starts_with("i,j,u,v,g_re,g_im,zeta_re,zeta_im,x3\n"));
    assert_eq!(samples.lines().count(), 81 * 81 + 1);
}

#[test]
fn reconstruct_is_deterministic_and_flags_override_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let scene = small_scene(dir.path(), |_| {});
    let s = scene.to_str().unwrap();
    let mut reports = Vec::new();
    let mut meshes = Vec::new();
    for k in 0..2 {
        let mesh = dir.path().join(format!("m{k}.ply"));
        let report = dir.path().join(format!("r{k}.json"));
        let (status, _, _) = run(&["reconstruct", "--config", s, "--out-mesh", mesh.to_str().unwrap(), "--report", report.to_str().unwrap()]);
        assert_eq!(status, ExitStatus::Pass);
        meshes.push(std::fs::read(&mesh).unwrap());
        reports.push(std::fs::read(&report).unwrap());
    }
    assert_eq!(meshes[0], meshes[1]);
    assert_eq!(reports[0], reports[1]);
    assert!(meshes[0].starts_with(b"ply\n"));
    assert!(!String::from_utf8_lossy(&reports[0]).contains("timestamp"));

    let stamped = dir.path().join("stamped.json");
    run(&["reconstruct", "--config", s, "--report", stamped.to_str().unwrap(), "--timestamp"]);
    assert!(std::fs::read_to_string(stamped).unwrap().contains("\"timestamp\""));
}

#[test]
fn non_harmonic_scene_fails_naming_the_residual() {
    let (status, out, _) = run(&["reconstruct", "--config", scenes().join("nonharmonic.json").to_str().unwrap()]);
    assert_eq!(status, ExitStatus::Fail);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    let harmonic = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "harmonic_residual").unwrap();
    assert_eq!(harmonic["status"], "FAIL");
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let scene = small_scene(dir.path(), |v| v["kappa"] = serde_json::json!(0.5));
    let (status, _, err) = run(&["reconstruct", "--config", scene.to_str().unwrap()]);
    assert_eq!(status, ExitStatus::Usage);
    assert!(err.contains("kappa"), "{err}");

    let scene = small_scene(dir.path(), |v| v["colour"] = serde_json::json!("red"));
    let (status, _, err) = run(&["verify", "--config", scene.to_str().unwrap()]);
    assert_eq!(status, ExitStatus::Usage);
    assert!(err.contains("line"), "{err}");

    let (status, _, _) = run(&["reconstruct", "--config", "/nonexistent/scene.json"]);
    assert_eq!(status, ExitStatus::Usage);
    let (status, _, _) = run(&["export", "--config", "x.json", "--format", "stl"]);
    assert_eq!(status, ExitStatus::Usage);
    let (status, _, _) = run(&["frobnicate"]);
    assert_eq!(status, ExitStatus::Usage);
    let (status, _, _) = run(&["verify", "--suite", "bogus"]);
    assert_eq!(status, ExitStatus::Usage);
}

#[test]
fn domain_guard_abort_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let scene = small_scene(dir.path(), |v| {
        v["domain"] = serde_json::json!({"center": [0, 0], "half_width": 0.68, "half_height": 0.68});
        v["tolerances"] = serde_json::json!({"domain_guard": 0.05});
    });
    let (status, _, err) = run(&["reconstruct", "--config", scene.to_str().unwrap()]);
    assert_eq!(status, ExitStatus::Abort);
    assert!(err.contains("domain guard tripped at node"), "{err}");
    let report = std::fs::read_to_string(dir.path().join("r.json")).unwrap();
    assert!(report.contains("\"status\": \"FAIL\""));
    assert!(!report.contains("NaN"));
    assert!(!dir.path().join("m.obj").exists());
}

#[test]
fn verify_suites() {
    for suite in ["equivariance", "negative-controls", "sister"] {
        let (status, out, err) = run(&["verify", "--suite", suite]);
        assert_eq!(status, ExitStatus::Pass, "{suite}: {err}");
        assert!(out.contains("\"schema\": \"cmcgk-report/1\""));
    }
    let (_, out, _) = run(&["verify", "--suite", "negative-controls"]);
    assert!(out.contains("XFAIL"));
}

#[test]
fn sister_check_pass_and_fail() {
    let (status, _, err) = run(&["sister-check", "--config", scenes().join("golden.json").to_str().unwrap()]);
    assert_eq!(status, ExitStatus::Pass, "{err}");
    let (status, out, _) = run(&["sister-check", "--config", scenes().join("tanh.json").to_str().unwrap()]);
    assert_eq!(status, ExitStatus::Pass);
    assert!(out.contains("limit branch"));
    let (status, _, _) = run(&["sister-check", "--config", scenes().join("mismatched_sister.json").to_str().unwrap()]);
    assert_eq!(status, ExitStatus::Fail);
    let (status, _, err) = run(&["sister-check", "--config", scenes().join("nonharmonic.json").to_str().unwrap()]);
    assert_eq!(status, ExitStatus::Usage);
    assert!(err.contains("sister"));
}

#[test]
fn export_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let scene = small_scene(dir.path(), |v| v["grid"] = serde_json::json!({"nu": 33, "nv": 33}));
    let (status, out, _) = run(&["export", "--config", scene.to_str().unwrap(), "--format", "obj"]);
    assert_eq!(status, ExitStatus::Pass);
    assert_eq!(out.lines().filter(|l| l.starts_with("v ")).count(), 33 * 33);
    let (status, _, _) = run(&["export", "--config", scenes().join("nonharmonic.json").to_str().unwrap(), "--format", "ply"]);
    assert_eq!(status, ExitStatus::Abort);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cmcgk");
    let status = Command::new(bin).args(["verify", "--suite", "equivariance"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    let bad = Command::new(bin).args(["verify", "--suite", "equivariance"]).env("CMCGK_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let one = Command::new(bin).args(["verify", "--suite", "equivariance"]).env("CMCGK_THREADS", "1").output().unwrap();
    assert_eq!(one.stdout, status.stdout);
}
