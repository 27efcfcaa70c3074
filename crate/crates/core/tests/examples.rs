//! Every example runs and produces the numbers its doc comment promises.

#[allow(dead_code)]
#[path = "../examples/golden_reconstruction.rs"]
mod golden_reconstruction;
#[allow(dead_code)]
#[path = "../examples/harmonic_maps.rs"]
mod harmonic_maps;
#[allow(dead_code)]
#[path = "../examples/gauss_map.rs"]
mod gauss_map;
#[allow(dead_code)]
#[path = "../examples/isometries.rs"]
mod isometries;
#[allow(dead_code)]
#[path = "../examples/mean_curvature.rs"]
mod mean_curvature;
#[allow(dead_code)]
#[path = "../examples/horocylinder.rs"]
mod horocylinder;
#[allow(dead_code)]
#[path = "../examples/integrability.rs"]
mod integrability;
#[allow(dead_code)]
#[path = "../examples/domain_guard.rs"]
mod domain_guard;
#[allow(dead_code)]
#[path = "../examples/gauss_roundtrip.rs"]
mod gauss_roundtrip;
#[allow(dead_code)]
#[path = "../examples/sister_surfaces.rs"]
mod sister_surfaces;
#[allow(dead_code)]
#[path = "../examples/mesh_export.rs"]
mod mesh_export;
#[allow(dead_code)]
#[path = "../examples/scene_report.rs"]
mod scene_report;

#[test]
fn golden_reconstruction_converges() {
    let coarse = golden_reconstruction::run(41).unwrap();
    let fine = golden_reconstruction::run(81).unwrap();
    assert!(fine.zeta_error < 1e-7 && fine.x3_error < 1e-5);
    assert!(coarse.zeta_error / fine.zeta_error > 8.0);
    assert!(fine.min_disk_margin > 0.1);
}

#[test]
fn harmonic_maps_summary() {
    let s = harmonic_maps::run().unwrap();
    assert!(s.exact_residual < 1e-12);
    assert!(s.stencil_residual < 1e-6);
    assert!(s.q_error < 1e-12);
    assert!(s.csv_roundtrip < 1e-15);
    assert!(s.rejected_antiholomorphic);
}

#[test]
fn gauss_map_summary() {
    let s = gauss_map::run().unwrap();
    assert!(s.normal_roundtrip < 1e-12);
    assert!(s.lorentz_agreement < 1e-12);
}

#[test]
fn isometries_summary() {
    let s = isometries::run().unwrap();
    assert!(s.translation < 1e-14 && s.rotation < 1e-14 && s.lift < 1e-12);
    assert!(s.lift_metric_defect < 1e-8);
    assert!(s.rotation_remark < 1e-12);
}

#[test]
fn mean_curvature_is_critical() {
    let k = mean_curvature::run(1.0, 1.0, 81).unwrap();
    assert!(k.mean_curvature < 1e-8 && k.hopf < 1e-8 && k.algebraic < 1e-12);
}

#[test]
fn horocylinder_summary() {
    let s = horocylinder::run().unwrap();
    assert!(s.horocylinder_h < 1e-6);
    assert!(s.all_horizontal);
    assert!(s.cylinder_equator < 1e-10);
}

#[test]
fn integrability_separates_control() {
    let s = integrability::run().unwrap();
    assert!(s.harmonic < 1e-6);
    assert!(s.control > 1e-3);
    assert!(s.control_rejected);
}

#[test]
fn domain_guard_outcomes() {
    assert!(domain_guard::run(0.636, 1e-6).unwrap().unwrap() > 0.0);
    let err = domain_guard::run(0.68, 0.05).unwrap().unwrap_err();
    assert!(err.to_string().contains("domain guard tripped at node"));
}

#[test]
fn gauss_roundtrip_converges() {
    let e81 = gauss_roundtrip::run(81).unwrap();
    assert!(e81 < 1e-6);
    assert!((gauss_roundtrip::run(41).unwrap() / e81).log2() > 2.0);
}

#[test]
fn sister_surfaces_summary() {
    let s = sister_surfaces::run().unwrap();
    assert!(s.identity.max() < 1e-8);
    assert!(s.tanh.max() < 1e-8);
    assert!(s.mismatched.max() > 1e-2);
    assert!(s.phase_identity < 1e-14);
}

#[test]
fn mesh_export_writes_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let [obj, ply] = mesh_export::run(dir.path()).unwrap();
    let obj = std::fs::read_to_string(obj).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 41 * 41);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2 * 40 * 40);
    assert!(std::fs::read_to_string(ply).unwrap().starts_with("ply\nformat ascii 1.0\n"));
}

#[test]
fn scene_report_passes_on_shipped_scenes() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/scenes");
    assert!(scene_report::run(&dir.join("golden.json")).unwrap().passed());
    assert!(scene_report::run(&dir.join("tanh.json")).unwrap().passed());
    let bad = scene_report::run(&dir.join("nonharmonic.json")).unwrap();
    assert!(!bad.passed());
    assert!(!bad.check("harmonic_residual").unwrap().passed());
}
