use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

use geoextract_core::document::{canonical_instance, parse_coloring, parse_instance};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_geoextract"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

struct Work(tempfile::TempDir);

impl Work {
    fn new() -> Self {
        Work(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn gen(&self, name: &str, args: &[&str]) -> String {
        let p = self.path(name);
        let mut all = vec!["gen", "--out", p.to_str().unwrap()];
        all.extend_from_slice(args);
        ok_json(&all);
        p.to_str().unwrap().to_string()
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }
}

fn digest_of(path: &str) -> String {
    let inst = parse_instance(&fs::read_to_string(path).unwrap()).unwrap();
    Sha256::digest(canonical_instance(&inst).as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[test]
fn interval_pair_bounds_and_extraction() {
    let w = Work::new();
    let p = w.gen("pair.json", &["--kind", "interval-pair"]);
    let b = ok_json(&["bounds", &p]);
    assert_eq!(b["payload"]["extraction_number"], 2);
    assert_eq!(b["payload"]["chromatic"], 2);
    let e = ok_json(&["extract", &p]);
    assert_eq!(e["payload"]["ratio"], 2);
    assert_eq!(e["payload"]["extracted_weight"], 1);
    let c = ok_json(&["color", &p]);
    assert_eq!(c["payload"]["coloring"]["kappa"], 2);
    assert_eq!(c["payload"]["verified"], true);
}

#[test]
fn rayfan_colors_and_bounds() {
    let w = Work::new();
    let p4 = w.gen("fan4.json", &["--kind", "rayfan", "--k", "4"]);
    let c = ok_json(&["color", &p4]);
    assert_eq!(c["payload"]["coloring"]["kappa"], 3);
    assert_eq!(c["payload"]["guarantee"], 3);
    let p3 = w.gen("fan3.json", &["--kind", "rayfan", "--k", "3"]);
    let b = ok_json(&["bounds", &p3]);
    assert_eq!(b["payload"]["extraction_number"], "9/4");
}

#[test]
fn octant4_colors_with_four_and_extracts_a_quarter() {
    let w = Work::new();
    let p = w.gen("o.json", &["--kind", "octant4"]);
    let c = ok_json(&["color", &p]);
    assert_eq!(c["payload"]["coloring"]["kappa"], 4);
    assert_eq!(c["payload"]["colors_used"], 4);
    let e = ok_json(&["extract", &p]);
    assert_eq!(e["payload"]["ratio"], 4);
}

#[test]
fn kbox_extraction_meets_the_quarter_bound() {
    let w = Work::new();
    let p = w.gen("k3.json", &["--kind", "kbox", "--k", "3"]);
    let e = ok_json(&["extract", &p]);
    assert!(e["payload"]["extracted_weight"].as_i64().unwrap() >= 9);
    assert_eq!(e["payload"]["total_weight"], 36);
}

#[test]
fn gen_kbox_has_sixteen_objects() {
    let out = run(&["gen", "--kind", "kbox", "--k", "2"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["objects"].as_array().unwrap().len(), 16);
}

#[test]
fn generated_documents_keep_their_digest() {
    let w = Work::new();
    let p = w.path("r.json");
    let report = ok_json(&[
        "gen", "--kind", "random", "--class", "segments", "--n", "8", "--seed", "11", "--out",
        p.to_str().unwrap(),
    ]);
    let p = p.to_str().unwrap();
    assert_eq!(report["instance_digest"].as_str().unwrap(), digest_of(p));
    let b = ok_json(&["bounds", p]);
    assert_eq!(b["instance_digest"], report["instance_digest"]);
    let again = w.path("r2.json");
    ok_json(&[
        "gen", "--kind", "random", "--class", "segments", "--n", "8", "--seed", "11", "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(fs::read(p).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn coloring_payload_round_trips_into_extract_and_verify() {
    let w = Work::new();
    let p = w.gen("k2.json", &["--kind", "kbox", "--k", "2"]);
    let c = ok_json(&["color", &p]);
    let doc = serde_json::to_string(&c["payload"]["coloring"]).unwrap();
    let parsed = parse_coloring(&doc).unwrap();
    assert_eq!(serde_json::to_value(&parsed).unwrap(), c["payload"]["coloring"]);
    let cp = w.write("c.json", &doc);
    let v = ok_json(&["verify", &p, "--coloring", &cp]);
    assert_eq!(v["payload"]["verdict"], "proper");
    let e = ok_json(&["extract", &p, "--coloring", &cp]);
    assert_eq!(e["payload"]["coloring_source"], "supplied");
    let sol: Vec<String> = e["payload"]["sol"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let v = ok_json(&["verify", &p, "--cover", &sol.join(",")]);
    assert_eq!(v["payload"]["verdict"], "covered");
}

#[test]
fn verify_reports_witnesses() {
    let w = Work::new();
    let p = w.gen("pair.json", &["--kind", "interval-pair"]);
    let mono = w.write("mono.json", r#"{"kappa":2,"colors":[1,1]}"#);
    let v = ok_json(&["verify", &p, "--coloring", &mono]);
    assert_eq!(v["payload"]["verdict"], "monochromatic");
    assert_eq!(v["payload"]["edge"], serde_json::json!([0, 1]));
    let v = ok_json(&["verify", &p, "--cover", "0"]);
    assert_eq!(v["payload"]["verdict"], "covered");
    let empty = w.write(
        "far.json",
        r#"{"class":"intervals","objects":[{"a":0,"b":2},{"a":1,"b":3}],"points":[[5]]}"#,
    );
    let v = ok_json(&["verify", &empty, "--cover", "0,1"]);
    assert_eq!(v["payload"]["verdict"], "uncovered");
    assert_eq!(v["payload"]["point"], serde_json::json!([5]));
}

#[test]
fn exit_codes() {
    let w = Work::new();
    let pair = w.gen("pair.json", &["--kind", "interval-pair"]);
    let bad = w.write("bad.json", r#"{"class":"intervals","objects":[{"a":2,"b":1}]}"#);
    assert_eq!(code(&["color", &bad]), 2);
    let junk = w.write("junk.json", "not json");
    assert_eq!(code(&["color", &junk]), 2);
    let extra = w.write("extra.json", r#"{"class":"intervals","objects":[],"colour":1}"#);
    assert_eq!(code(&["color", &extra]), 2);
    assert_eq!(code(&["color", &pair, "--class", "octants"]), 2);
    assert_eq!(code(&["bounds", &pair, "--size-cap", "1"]), 3);
    let shallow = w.write(
        "shallow.json",
        r#"{"class":"intervals","objects":[{"a":0,"b":2},{"a":1,"b":3}],"points":[[0]]}"#,
    );
    let out = run(&["extract", &shallow]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0)"));
    let mono = w.write("mono.json", r#"{"kappa":2,"colors":[1,1]}"#);
    let out = run(&["extract", &pair, "--coloring", &mono]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3/2"));
    let octs: Vec<String> = (0..41).map(|i| format!(r#"{{"apex":[{i},{},0]}}"#, -i)).collect();
    let big = w.write("big.json", &format!(r#"{{"class":"octants","objects":[{}]}}"#, octs.join(",")));
    assert_eq!(code(&["color", &big]), 3);
}

#[test]
fn failures_leave_no_output_file() {
    let w = Work::new();
    let pair = w.gen("pair.json", &["--kind", "interval-pair"]);
    let out = w.path("report.json");
    assert_eq!(code(&["bounds", &pair, "--size-cap", "1", "--out", out.to_str().unwrap()]), 3);
    assert!(!out.exists());
    let bad = w.path("gen.json");
    assert_eq!(code(&["gen", "--kind", "kbox", "--k", "1", "--out", bad.to_str().unwrap()]), 2);
    assert!(!bad.exists());
    let leftovers: Vec<_> = fs::read_dir(w.0.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1);
}

#[test]
fn single_orientation_rays_claim_nothing() {
    let w = Work::new();
    let p = w.write(
        "r.json",
        r#"{"class":"rays","objects":[{"orientation":1,"apex":[0,0]},{"orientation":1,"apex":[2,0]}]}"#,
    );
    let out = run(&["color", &p]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not claimed"));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["payload"]["guarantee"], Value::Null);
    assert_eq!(report["payload"]["colorer"], "rays of type 1");
}

#[test]
fn octant_projection_failure_is_reported() {
    let w = Work::new();
    let p = w.write(
        "o.json",
        r#"{"class":"octants","objects":[{"apex":[4,0,0]},{"apex":[3,0,3]},{"apex":[0,3,1]},{"apex":[0,1,2]},{"apex":[0,4,0]},{"apex":[1,1,0]}]}"#,
    );
    let out = run(&["color", &p]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("monochromatic"));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["payload"]["projection_failure"]["edge"].is_array());
    assert_eq!(report["payload"]["verified"], true);
}

fn count(svg: &str, needle: &str) -> usize {
    svg.matches(needle).count()
}

fn render(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn render_counts_and_determinism() {
    let w = Work::new();
    let pair = w.gen("pair.json", &["--kind", "interval-pair"]);
    let svg = render(&["render", &pair]);
    assert_eq!(count(&svg, "<line class=\"object\""), 2);
    assert_eq!(count(&svg, "class=\"target\""), 1);

    let k3 = w.gen("k3.json", &["--kind", "kbox", "--k", "3"]);
    let svg = render(&["render", &k3]);
    assert_eq!(count(&svg, "<line class=\"object\""), 36);
    assert_eq!(count(&svg, "class=\"target\""), 45);
    assert_eq!(svg, render(&["render", &k3]));

    let oct = w.gen("o.json", &["--kind", "octant4"]);
    let svg = render(&["render", &oct]);
    assert_eq!(count(&svg, "<polygon class=\"object\""), 4);
    assert_eq!(count(&svg, "class=\"target\""), 6);

    let fan = w.gen("fan.json", &["--kind", "rayfan", "--k", "2"]);
    let svg = render(&["render", &fan]);
    assert_eq!(count(&svg, "marker-end"), 6);

    let out = w.path("fig.svg");
    ok_json(&["render", &k3, "--out", out.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&out).unwrap(), render(&["render", &k3]));
}

#[test]
fn render_rejects_short_coloring() {
    let w = Work::new();
    let pair = w.gen("pair.json", &["--kind", "interval-pair"]);
    let c = w.write("c.json", r#"{"kappa":2,"colors":[1]}"#);
    assert_eq!(code(&["render", &pair, "--coloring", &c]), 2);
    assert!(Path::new(&pair).exists());
}
