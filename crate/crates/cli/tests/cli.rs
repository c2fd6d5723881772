use std::process::{Command, Output};

use serde_json::Value;

fn axial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axial")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = axial(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().expect("exit code"), v)
}

const POINT: [&str; 12] = ["--alpha", "1/3", "--beta", "1/5", "--x", "1/2", "--y", "1/2", "--z", "1/2", "--p", "1/4"];

#[test]
fn classify2_reports_both_families() {
    let (code, v) = json(&["classify2"]);
    assert_eq!(code, 0);
    let fams = v["families"].as_array().unwrap();
    assert_eq!(fams.len(), 2);
    assert!(fams[0]["constraints"].as_array().unwrap().is_empty());
    let roots: Vec<&str> = fams[1]["roots"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(roots, vec!["-1", "1/2"]);
}

#[test]
fn gram_latex_has_nine_rows() {
    let out = axial(&["gram", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("\\begin{tabular}"));
    assert_eq!(s.matches("\\\\\\hline").count(), 10);
}

#[test]
fn gram_json_is_symmetric() {
    let (code, v) = json(&["gram"]);
    assert_eq!(code, 0);
    let g = v["gram"].as_array().unwrap();
    assert_eq!(g.len(), 9);
    for i in 0..9 {
        assert_eq!(g[i][i], "(1)");
        for j in 0..9 {
            assert_eq!(g[i][j], g[j][i]);
        }
    }
}

#[test]
fn verify3_at_a_generic_point_fails_with_violations() {
    let (code, v) = json(&[&["verify3"][..], &POINT].concat());
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
    assert_eq!(v["axes"].as_array().unwrap().len(), 3);
    assert_eq!(v["axes"][0]["eigenspace_dims"], serde_json::json!([1, 4, 4]));
}

#[test]
fn verify3_at_beta_one_half_passes() {
    let args = ["verify3", "--alpha", "1/3", "--beta", "1/2", "--x", "2/7", "--y", "-1/3", "--z", "3/5", "--p", "1/4"];
    let (code, v) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["gram_rank"], 9);
}

#[test]
fn verify2_passes_only_at_beta_one_half() {
    assert_eq!(json(&["verify2", "--star", "--beta", "1/2"]).0, 0);
    let (code, v) = json(&["verify2", "--star"]);
    assert_eq!(code, 1);
    let checks: Vec<&str> = v["violations"].as_array().unwrap().iter().map(|x| x["check"].as_str().unwrap()).collect();
    assert!(checks.contains(&"association"));
    let (code, v) = json(&["verify2"]);
    assert_eq!(code, 1);
    assert!(v["violations"].as_array().unwrap().iter().any(|x| x["check"] == "star"));
}

#[test]
fn closure_dimensions() {
    let (code, v) = json(&["closure", "--max-n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["closures"][0]["dims"], serde_json::json!([1, 1]));
    assert_eq!(v["closures"][1]["dims"], serde_json::json!([2, 3, 3]));
    assert_eq!(v["closures"][2]["dims"], serde_json::json!([3, 6, 9, 9]));
}

#[test]
fn specialize_reports_epsilon_and_rank() {
    let (code, v) = json(&["specialize", "--alpha", "2", "--beta", "3", "--x", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["epsilon"]["ab"], "(7)");
    assert_eq!(v["params"]["y"], "(y)");
}

#[test]
fn eigen_flags_the_t1_discrepancy() {
    let (code, v) = json(&["eigen"]);
    assert_eq!(code, 0);
    let axes = v["axes"].as_array().unwrap();
    assert_eq!(axes[0]["t_matches_closed_form"], true);
    assert_eq!(axes[0]["t1_matches_closed_form"], false);
    assert!(axes[1]["t1_matches_closed_form"].is_null());
    assert!(axes.iter().all(|a| a["spans"] == true));
}

#[test]
fn multtable_csv_has_a_header() {
    let out = axial(&[&["multtable", "--format", "csv"][..], &POINT].concat());
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("left,right,word,coefficient\n"));
}

#[test]
fn output_is_deterministic() {
    let a = axial(&["multtable", "--format", "json"]);
    let b = axial(&["multtable", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("axial-cli-test-{}.json", std::process::id()));
    let out = axial(&["classify2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "classify2");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["gram", "--alpha", "0.5"][..],
        &["gram", "--alpha", "1"],
        &["gram", "--beta", "1"],
        &["gram", "--alpha", "1/3", "--beta", "1/3"],
        &["gram", "--q", "1"],
        &["classify2", "--x", "1/2"],
        &["verify2", "--z", "1/2"],
        &["eigen", "--format", "csv"],
        &["frobnicate"],
    ] {
        assert_eq!(axial(args).status.code(), Some(2), "{args:?}");
    }
}
