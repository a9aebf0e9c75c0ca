use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_artinv");

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}.toml", env!("CARGO_MANIFEST_DIR"))
}

fn all_fixtures() -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "toml").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    assert!(names.len() >= 10);
    names
}

fn artinv(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("ARTINV_CAP").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = artinv(&all);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str, body: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn without_timing(stdout: &[u8]) -> String {
    String::from_utf8_lossy(stdout)
        .lines()
        .filter(|l| !l.trim_start().starts_with("timing_ms") && !l.trim_start().starts_with("\"timing_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn validator() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, report: &Value) {
    let errors: Vec<String> = v
        .iter_errors(report)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{}: {errors:#?}", report["args"]);
}

#[test]
fn text_reports_are_deterministic() {
    for name in all_fixtures() {
        let f = fixture(&name);
        let a = artinv(&["report", &f]);
        let b = artinv(&["report", &f]);
        assert!(a.status.success(), "{name}");
        assert_eq!(without_timing(&a.stdout), without_timing(&b.stdout), "{name}");
        let c = artinv(&["report", &f, "--sequential"]);
        let strip_args = |s: String| s.replace(", --sequential", "");
        assert_eq!(
            strip_args(without_timing(&c.stdout)),
            without_timing(&a.stdout),
            "{name}"
        );
    }
}

#[test]
fn json_reports_match_the_schema() {
    let v = validator();
    for name in all_fixtures() {
        let f = fixture(&name);
        for cmd in ["report", "hilbert", "rees", "dilworth", "socle", "exactness", "xi"] {
            assert_valid(&v, &json(&[cmd, &f]));
        }
        let r = json(&["hilbert", &f]);
        if r["results"]["homogeneous"] == false {
            continue;
        }
        let var = r["presentation"]["vars"][0].as_str().unwrap().to_owned();
        assert_valid(&v, &json(&["lefschetz", &f, &var]));
        if r["presentation"]["field"] == "Q" {
            assert_valid(&v, &json(&["lefschetz", &f]));
        }
    }
    assert_valid(&v, &json(&["macaulay", "1,3,1,2"]));
    assert_valid(&v, &json(&["fixtures"]));
    assert_valid(&v, &json(&["xi", &fixture("char_sensitive_q"), "--char-compare", "2"]));
    assert_valid(&v, &json(&["mu", &fixture("twelve_q5"), "a"]));
    assert_valid(&v, &json(&["fact-main", &fixture("twelve_q5"), "u", "a"]));
    assert_valid(&v, &json(&["annihilator", &fixture("flagship_f2"), "x"]));
    assert_valid(&v, &json(&["quotient-length", &fixture("plane_truncated"), "y"]));
}

#[test]
fn schema_rejects_malformed_reports() {
    let v = validator();
    let mut r = json(&["report", &fixture("flagship_f2")]);
    assert_valid(&v, &r);
    r["results"]["verdict"]["label"] = Value::from("Maybe");
    assert!(!v.is_valid(&r));
    let mut r = json(&["hilbert", &fixture("flagship_f2")]);
    r.as_object_mut().unwrap().remove("timing_ms");
    assert!(!v.is_valid(&r));
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(artinv(&["report", &fixture("flagship_f2")]).status.code(), Some(0));
    assert_eq!(artinv(&["--help"]).status.code(), Some(0));
    assert_eq!(artinv(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(artinv(&["report", "/no/such/file.toml"]).status.code(), Some(1));

    let bad = scratch(
        "implicit.toml",
        "field = \"Q\"\nvars = [\"x\", \"y\"]\nideal = [\"x^2\", \"x y\", \"y^2\"]\n",
    );
    let out = artinv(&["report", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse"));

    let open = scratch("open.toml", "field = \"Q\"\nvars = [\"x\", \"y\"]\nideal = [\"x^2\"]\n");
    let out = artinv(&["report", &open]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not-artinian"));

    let out = artinv(&["dilworth", &fixture("flagship_f2"), "--cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));

    let out = Command::new(BIN)
        .args(["dilworth", &fixture("flagship_f2")])
        .env("ARTINV_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(artinv(&["mu", &fixture("flagship_f2"), "nope"]).status.code(), Some(1));
    assert_eq!(artinv(&["macaulay", "1,x"]).status.code(), Some(1));
    assert_eq!(
        artinv(&["xi", &fixture("flagship_f2"), "--char-compare", "4"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn flagship_report() {
    let r = json(&["report", &fixture("flagship_f2")]);
    let res = &r["results"];
    assert_eq!(res["length"], 8);
    assert_eq!(res["hilbert_function"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(res["gorenstein"], true);
    assert_eq!(res["complete_intersection"], true);
    assert_eq!(res["dilworth"]["value"], 3);
    assert_eq!(res["rees"]["value"], 4);
    assert_eq!(res["verdict"]["label"], "NotExact");
    assert_eq!(r["presentation"]["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn twelve_dimensional_report_is_exact() {
    let res = &json(&["report", &fixture("twelve_q5")])["results"];
    assert_eq!(res["length"], 12);
    assert_eq!(res["hilbert_function"], serde_json::json!([1, 5, 5, 1]));
    assert_eq!(res["verdict"]["display"], "Exact(6)");
}

#[test]
fn monomial_example_fails_the_criterion() {
    let res = &json(&["report", &fixture("monomial_q4")])["results"];
    assert_eq!(res["gorenstein"], false);
    assert_eq!(res["verdict"]["label"], "NotExact");
    assert_eq!(res["verdict"]["certificate"]["kind"], "monomial_criterion_failure");
}

#[test]
fn single_invariant_commands() {
    let m = json(&["macaulay", "1,3,1,2"]);
    assert_eq!(m["results"]["admissible"], false);

    let l = json(&["lefschetz", &fixture("quadrics_q5"), "x1 - x2 + x3 + x4 + x5"]);
    assert_eq!(l["results"]["holds"], true);
    let rows = l["results"]["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["maximal"] == true));
    let ranks: Vec<u64> = rows.iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [1, 5, 1]);
    let l = json(&["lefschetz", &fixture("quadrics_q5"), "x1 + x2 + x3 + x4 + x5"]);
    assert_eq!(l["results"]["holds"], false);

    let q = json(&["quotient-length", &fixture("plane_truncated"), "y"]);
    assert_eq!(q["results"]["quotient_length"], 2);
}

#[test]
fn char_compare_reports_the_footnote_difference() {
    let r = json(&["xi", &fixture("char_sensitive_q"), "--char-compare", "2"]);
    assert!(r["results"]["witness"].is_string());
    let cc = &r["char_compare"];
    assert_eq!(cc["field"], "F2");
    assert!(cc["results"]["witness"].is_null());
    assert!(cc["differences"].as_array().unwrap().contains(&Value::from("witness")));
}

#[test]
fn mode_flag_changes_the_rees_strategy() {
    let f = fixture("flagship_f2");
    assert_eq!(json(&["rees", &f])["results"]["mode"], "exhaustive");
    let d1 = json(&["rees", &f, "--mode", "degree1"]);
    assert_eq!(d1["results"]["mode"], "degree1");
    assert_eq!(d1["results"]["value"], 4);
    assert_eq!(
        json(&["dilworth", &f, "--mode", "degree1"])["results"]["method"],
        "bounds"
    );
}

#[test]
fn fixture_suite_passes() {
    let out = artinv(&["fixtures"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&["fixtures"]);
    assert_eq!(r["results"]["failed"], 0);
    assert!(r["results"]["first_failure"].is_null());
}
