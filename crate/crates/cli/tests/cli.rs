use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use stabkit::algebra::{catalog, Module, Side};
use stabkit::functor::{functor_file, FunctorPresentation};
use stabkit::io::module_file;
use stabkit::stab::StabContext;

fn stabkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabkit")).args(args).env_remove("STABKIT_SEED").output().expect("binary runs")
}

fn write(dir: &Path, name: &str, v: &impl serde::Serialize) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn zdecompose_diag_six_zero() {
    let dir = tempfile::tempdir().unwrap();
    let r = write(dir.path(), "r.json", &json!({"ring": "Z", "relations": [[6, 0], [0, 0]]}));
    let out = stabkit(&["zdecompose", "--relations", &r, "--format", "table"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Z/6 + Z");
    let v = json_of(&stabkit(&["zdecompose", "--relations", &r]));
    assert_eq!(v["group"], "Z/6 + Z");
    assert_eq!(v["one_torsion_equal"], true);
}

#[test]
fn torsion_reports_cross_checks() {
    let dir = tempfile::tempdir().unwrap();
    let ring = catalog::ring("kA2").unwrap();
    for (k, m) in [Module::cogenerator(&ring, Side::Right), Module::simple(&ring, Side::Right, 0).unwrap()].iter().enumerate() {
        let path = write(dir.path(), &format!("m{k}.json"), &module_file(m));
        let out = stabkit(&["torsion", "--algebra", "@kA2", "--module", &path]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let v = json_of(&out);
        let ctx = StabContext::new(&ring).unwrap();
        assert_eq!(v["dim_s"], json!(ctx.torsion(m).unwrap().dim()));
        assert_eq!(v["t_equal"], true);
        assert_eq!(v["reject_equal"], true);
        assert!(v["inclusion"].is_array());
    }
}

#[test]
fn cotorsion_and_chain_over_local_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let ring = catalog::ring("kxy").unwrap();
    let m = Module::simple(&ring, Side::Left, 0).unwrap();
    let path = write(dir.path(), "s.json", &module_file(&Module::regular(&ring, Side::Left)));
    let v = json_of(&stabkit(&["cotorsion", "--module", &path]));
    assert_eq!(v["hom_image_equal"], true);
    assert_eq!(v["dim_q"], 1);
    assert_eq!(v["dim_trace"], 2);
    let sp = write(dir.path(), "simple.json", &module_file(&m));
    let v = json_of(&stabkit(&["chain", "--module", &sp, "--kind", "s"]));
    assert!(v["length"].as_u64().unwrap() <= 2);
}

#[test]
fn suite_all_checks_seed_seven_passes_and_is_deterministic() {
    let a = stabkit(&["suite", "--checks", "all", "--seed", "7"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    let v = json_of(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 7);
    let b = stabkit(&["suite", "--checks", "all", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_stabkit"))
        .args(["suite", "--checks", "radical", "--algebras", "kA2", "--count", "3"])
        .env("STABKIT_SEED", "11")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json_of(&out)["seed"], 11);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let bad = bad.to_string_lossy().into_owned();
    assert_eq!(stabkit(&["torsion", "--module", &bad]).status.code(), Some(2));
    assert_eq!(stabkit(&["torsion", "--module", "/nonexistent/m.json"]).status.code(), Some(2));
    assert_eq!(stabkit(&["suite", "--checks", "nope"]).status.code(), Some(2));
    assert_eq!(stabkit(&["suite", "--algebras", "kA9"]).status.code(), Some(2));
    let broken = write(
        dir.path(),
        "broken.json",
        &json!({"algebra": "@kx2", "side": "left", "dim": 1, "action": [[["1"]], [["1"]]]}),
    );
    assert_eq!(stabkit(&["classify", "--module", &broken]).status.code(), Some(2));
}

#[test]
fn dualize_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let ring = catalog::ring("kA2").unwrap();
    let ctx = StabContext::new(&ring).unwrap();
    let q = FunctorPresentation::cotorsion(&ctx.left);
    let qf = write(dir.path(), "q.json", &functor_file(&q));
    let da = dir.path().join("da.json");
    let out = stabkit(&["dualize", "--functor", &qf, "--output", da.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let da_v: Value = serde_json::from_str(&std::fs::read_to_string(&da).unwrap()).unwrap();
    assert_eq!(da_v["functor"]["form"], "tensorKer");
    assert_eq!(da_v["functor"]["side"], "right");
    let inner = write(dir.path(), "da_functor.json", &da_v["functor"]);
    let a = write(dir.path(), "a.json", &module_file(&Module::cogenerator(&ring, Side::Right)));
    let back = json_of(&stabkit(&["dualize", "--functor", &inner]));
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&qf).unwrap()).unwrap();
    assert_eq!(back["functor"]["arrow"], original["arrow"]);
    assert_eq!(back["functor"]["form"], "homCoker");
    let with_value = json_of(&stabkit(&["dualize", "--functor", &qf, "--module", &a]));
    assert_eq!(with_value["value_dim"], json!(ctx.torsion(&Module::cogenerator(&ring, Side::Right)).unwrap().dim()));
}

#[test]
fn reverify_reports_a_standing_failure() {
    let dir = tempfile::tempdir().unwrap();
    let ring = catalog::ring("kA2").unwrap();
    let cx = json!({
        "check": "self-injective",
        "algebra": "kA2",
        "reason": "zero module alone",
        "modules": [module_file(&Module::zero(&ring, Side::Left))],
    });
    let path = write(dir.path(), "cx.json", &cx);
    let out = stabkit(&["suite", "--reverify", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["still_fails"], true);
}

#[test]
fn validate_and_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let ring = catalog::ring("kA3").unwrap();
    let m = write(dir.path(), "p.json", &module_file(&Module::projective(&ring, Side::Left, 0).unwrap()));
    let v = json_of(&stabkit(&["validate", "--algebra", "@kA3", "--module", &m]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["algebra"]["simples"], 3);
    let e = json_of(&stabkit(&["envelope", "--module", &m]));
    assert_eq!(e["is_projective"], true);
    assert!(e["injective_envelope"]["dim"].as_u64().unwrap() >= e["dim_module"].as_u64().unwrap());
}
