use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use torsurg::manifold::standard;
use torsurg::pipeline;
use torsurg::TorusSurgerySpec;

fn torsurg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsurg"))
        .args(args)
        .env_remove("WORKBENCH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn run_cp2k3_prints_ten_distinct_rows() {
    let o = torsurg(&["run", "cp2k3", "--tsv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n\te\tsign\tb1\tH1\tSW\tdistinct?");
    assert_eq!(lines.len(), 11);
    assert!(lines[1..]
        .iter()
        .all(|l| l.ends_with("\tyes") && l.contains("\t6\t-2\t0\t0\t")));
    assert_eq!(lines[3], "3\t6\t-2\t0\t0\t-4[-K] +4[K]\tyes");
}

#[test]
fn run_is_byte_stable() {
    let a = torsurg(&["run", "cp2k3"]);
    let b = torsurg(&["run", "cp2k3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("remaining torus: T(2),0"));
}

#[test]
fn run_family_range_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("table.tsv");
    let o = torsurg(&[
        "run",
        "cp2k3",
        "--family",
        "1..3",
        "--tsv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 4);
    assert_eq!(fs::read_to_string(&out_path).unwrap(), stdout(&o));

    let o = torsurg(&["run", "cp2k3", "--family", "1..3", "--m", "-2", "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["rows"][2]["SW"], "+5[-K] -5[K]");
    assert_eq!(v["all_distinct"], true);
}

#[test]
fn run_unknown_target_is_a_usage_error() {
    let o = torsurg(&["run", "unknown"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    let o = torsurg(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn obstruct_in_hypothesis() {
    let o = torsurg(&["obstruct", "--bminus", "3", "--k", "3,1,1,1", "--bound", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("obstructed; no witness"));
}

#[test]
fn obstruct_out_of_hypothesis_finds_k() {
    let o = torsurg(&["obstruct", "--bminus", "9", "--k", "3,1,1,1,1,1,1,1,1,1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("out of hypothesis"));
    assert!(out.contains("witness 3h-e1-e2-e3-e4-e5-e6-e7-e8-e9"));
}

#[test]
fn obstruct_rejects_bad_input() {
    assert!(!torsurg(&["obstruct", "--bminus", "3", "--k", "3,x,1,1"])
        .status
        .success());
    let o = torsurg(&["obstruct", "--bminus", "3", "--k", "3,1"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("rank"));
}

#[test]
fn genus_values() {
    for (k, g) in [("3", "g = 7"), ("7", "g = 3")] {
        let o = torsurg(&["genus", "--k", k]);
        assert!(o.status.success());
        assert!(stdout(&o).contains(g));
        assert!(stderr(&o).is_empty());
    }
    let o = torsurg(&["genus", "--k", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("g = 10"));
    assert!(stderr(&o).contains("warning"));
    assert!(!torsurg(&["genus", "--k", "2.5"]).status.success());
}

#[test]
fn workbench_seed_is_rejected() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_torsurg"))
            .args(["genus", "--k", "3"])
            .env("WORKBENCH_SEED", v)
            .output()
            .unwrap()
    };
    let o = run("42");
    assert!(!o.status.success());
    assert!(stderr(&o).contains("WORKBENCH_SEED"));
    assert!(run("").status.success());
}

#[test]
fn surgery_recipe_on_sym2() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write(dir.path(), "m.json", &standard::sym2_surface(3).to_json());
    let recipe: Vec<TorusSurgerySpec> = (0..6).map(|_| TorusSurgerySpec::luttinger(1)).collect();
    let recipe = write(dir.path(), "r.json", &serde_json::to_string(&recipe).unwrap());
    let o = torsurg(&["surgery", "--manifest", &manifest, "--recipe", &recipe]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 7);
    assert!(out.lines().last().unwrap().contains("e = 6, sign = -2, b1 = 0, b+ = 1"));

    let o = torsurg(&["surgery", "--manifest", &manifest, "--recipe", &recipe, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["b1"], 0);
}

#[test]
fn surgery_rejects_uncovered_rule() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write(dir.path(), "m.json", &standard::cp2_blown_up(3).to_json());
    let recipe = write(
        dir.path(),
        "r.json",
        &serde_json::to_string(&[TorusSurgerySpec::luttinger(1)]).unwrap(),
    );
    let o = torsurg(&["surgery", "--manifest", &manifest, "--recipe", &recipe]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("recipe step 1"));
}

#[test]
fn family_from_plan_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let mut plan = pipeline::sym2_plan();
    plan.family_range = vec![1, 2, 5];
    plan.sw_x0_scale = 2;
    let manifest = write(dir.path(), "plan.json", &plan.to_json());
    let o = torsurg(&["family", "--manifest", &manifest, "--tsv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let coeffs: Vec<&str> = out.lines().skip(1).map(|l| l.split('\t').nth(5).unwrap()).collect();
    assert_eq!(coeffs, ["-3[-K] +3[K]", "-5[-K] +5[K]", "-11[-K] +11[K]"]);
}

#[test]
fn pinwheel_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let comp = |out: i64| {
        serde_json::json!({
            "name": "B",
            "euler": 1,
            "interface_out": {"genus": 0, "euler_number": out},
            "interface_in": {"genus": 0, "euler_number": 0}
        })
    };
    let good = serde_json::json!({"components": [comp(-1), comp(-1), comp(-1)]});
    let p = write(dir.path(), "good.json", &good.to_string());
    let o = torsurg(&["pinwheel", "--manifest", &p]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("e = 3"));

    let bad = serde_json::json!({"components": [comp(-1), comp(0), comp(-1)]});
    let p = write(dir.path(), "bad.json", &bad.to_string());
    let o = torsurg(&["pinwheel", "--manifest", &p]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("closes: false"));
}
