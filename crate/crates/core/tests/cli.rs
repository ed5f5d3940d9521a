use std::io::Write;
use std::process::Command;

use bvlie::cli::{execute, AlgebraFile, Output};
use bvlie::glie::{standard_bialgebra, standard_for_dims, Bialgebra, GradedLie, Restriction};

fn fixture(b: &Bialgebra) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(AlgebraFile::from_bialgebra(b).pretty_json().as_bytes()).unwrap();
    f
}

fn text_fixture(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    let mut all = vec!["bvlie"];
    all.extend_from_slice(args);
    execute(all)
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn borel() -> Bialgebra {
    standard_for_dims(&[(0, 1), (1, 1)], Restriction::Q1).unwrap()
}

#[test]
fn verify_exit_codes() {
    let f = fixture(&standard_bialgebra(1, 1, Restriction::Full).unwrap());
    let out = run(&["verify", path(&f)]);
    assert_eq!(out.code, 0, "{}", out.stdout);

    let mut file = AlgebraFile::from_bialgebra(&standard_bialgebra(2, 0, Restriction::Full).unwrap());
    file.brackets[0].3 = "2".into();
    let broken = text_fixture(&file.pretty_json());
    let out = run(&["verify", path(&broken)]);
    assert_eq!(out.code, 1);
    let jacobi = out.stdout.lines().find(|l| l.trim_start().starts_with("Jacobi")).unwrap();
    assert!(jacobi.contains("FAIL") && jacobi.contains("witness"), "{jacobi}");

    let bad = text_fixture("{ not json");
    assert_eq!(run(&["verify", path(&bad)]).code, 2);
    assert_eq!(run(&["verify", "/nonexistent/file.json"]).code, 2);
}

#[test]
fn cohomology_tables() {
    let f = fixture(&borel());
    let out = run(&["cohomology", path(&f), "--deg", "0..6", "--s-max", "6"]);
    assert_eq!(out.code, 0);
    let total = out.stdout.split("by total degree").nth(1).unwrap();
    let betti: Vec<&str> = total.lines().skip(2).filter_map(|l| l.split_whitespace().nth(1)).collect();
    assert_eq!(betti, vec!["1"; 7]);

    let rcom = run(&["scenario", "rcom", "--dims", "1,1,1", "--emit"]);
    let g = text_fixture(&rcom.stdout);
    let out = run(&["cohomology", path(&g), "--deg", "-1..0", "--s-max", "3", "--json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let by_deg = v["tables"].as_array().unwrap().iter().find(|t| t["name"] == "Betti numbers by degree").unwrap();
    assert_eq!(by_deg["rows"][0], serde_json::json!(["-1", "0"]));
    assert!(by_deg["truncation"].as_str().unwrap().contains("s <= 3"));

    let empty = fixture(&Bialgebra::trivial("empty", GradedLie::new(Vec::new(), Vec::new()), 0));
    let out = run(&["cohomology", path(&empty), "--deg", "0..0", "--s-max", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let blocks = &v["tables"][0]["rows"];
    assert_eq!(blocks.as_array().unwrap().len(), 1);
    assert_eq!(blocks[0][2], "1");
}

#[test]
fn cohomology_by_weight() {
    let f = fixture(&borel());
    let out = run(&["cohomology", path(&f), "--deg", "0..1", "--weights", "-1,1", "-2,2"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("deg 0, weight [-1, 1]  1      1      f[e12]"), "{}", out.stdout);
    assert!(out.stdout.contains("deg 1, weight [-2, 2]  1      1      f[h]*f[e12]^2"), "{}", out.stdout);
    let gl2 = fixture(&standard_bialgebra(2, 0, Restriction::Full).unwrap());
    let out = run(&["cohomology", path(&gl2), "--deg", "0..1", "--weights", "0,0"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL"));
}

#[test]
fn bv_reports() {
    let f = fixture(&borel());
    let out = run(&["bv-report", path(&f), "--deg", "0..4", "--s-max", "4"]);
    assert_eq!(out.code, 0);
    for needle in ["involutive       yes", "Δ = 0", "differential BV  exact"] {
        assert!(out.stdout.contains(needle), "{needle}\n{}", out.stdout);
    }
    let gl2 = fixture(&standard_bialgebra(2, 0, Restriction::Full).unwrap());
    let out = run(&["bv-report", path(&gl2), "--deg", "0..3", "--s-max", "0", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let eig = v["tables"].as_array().unwrap().iter().find(|t| t["name"] == "Δ eigenvalues").unwrap();
    let values: Vec<&str> = eig["rows"].as_array().unwrap().iter().map(|r| r[0].as_str().unwrap()).collect();
    assert_eq!(values, vec!["-1", "0", "1"]);
    let trivial = fixture(&Bialgebra::trivial("t", borel().algebra, 0));
    let out = run(&["bv-report", path(&trivial), "--deg", "0..2", "--s-max", "2"]);
    assert!(out.stdout.contains("B = 0"));
}

#[test]
fn scenario_commands() {
    let out = run(&["scenario", "rcom", "--dims", "1,1,1", "--emit"]);
    assert_eq!(out.code, 0);
    let file = AlgebraFile::parse(&out.stdout).unwrap();
    assert_eq!(file.basis.len(), 3);
    assert_eq!(file.brackets.len(), 1);
    let b = file.to_bialgebra().unwrap();
    let again = AlgebraFile::from_bialgebra(&b);
    assert_eq!(again, file);
    assert!(b.same_structure(&bvlie::scenarios::rcom(&[(0, 1), (1, 1), (2, 1)]).unwrap().bialgebra));

    let out = run(&["scenario", "rpcom", "--dim", "2", "--trunc", "2", "--run"]);
    let kk = out.stdout.lines().find(|l| l.contains("Kirillov")).unwrap();
    assert!(kk.contains("pass"), "{kk}");

    let out = run(&["scenario", "rcom-theta", "--n", "2", "--theta", "2,1", "--run"]);
    let fac = out.stdout.lines().find(|l| l.contains("θ-factorization")).unwrap();
    assert!(fac.contains("pass"), "{fac}");
    assert_eq!(out.code, 0);

    assert_eq!(run(&["scenario", "rcom-theta", "--n", "2", "--theta", "2,2", "--run"]).code, 2);
    assert_eq!(run(&["scenario", "rpcom", "--dim", "2", "--run"]).code, 2);
    assert_eq!(run(&["scenario", "rpcom", "--dim", "2", "--trunc", "1", "--run"]).code, 2);
    assert_eq!(run(&["scenario", "rcom", "--dims", "1,x", "--emit"]).code, 2);
    assert_eq!(run(&["scenario", "rcom", "--dims", "1,1"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn reports_are_deterministic() {
    let f = fixture(&standard_bialgebra(1, 1, Restriction::Full).unwrap());
    let a = run(&["bv-report", path(&f), "--deg", "-1..3", "--s-max", "2", "--json"]);
    let b = run(&["bv-report", path(&f), "--deg", "-1..3", "--s-max", "2", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_bvlie");
    let st = Command::new(bin).args(["scenario", "rcom", "--dims", "1,1", "--emit"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8(st.stdout).unwrap().contains("\"basis\""));
    let st = Command::new(bin).args(["verify"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
}
