use std::collections::BTreeSet;
use std::process::{Command, Output};

use qcartan::tcartan::{inverse_via_eta, TildeBTable};
use qcartan::{build_datum, DynkinQuiver};

fn qcartan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcartan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_e8_tables() {
    let o = qcartan(&["verify", "--type", "E8", "--suite", "tables"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS tables E8"));
}

#[test]
fn verify_b3_word() {
    let o = qcartan(&["verify", "--type", "B3", "--suite", "compatible", "--word", "1,2,3,1,2,3,1,2,3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS compatible B3"));
}

#[test]
fn usage_errors() {
    for args in [
        &["verify", "--type", "Z9"][..],
        &["verify", "--type", "B3", "--suite", "nope"],
        &["pair", "--type", "A2", "--word", "1,3"],
    ] {
        let o = qcartan(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_json_report() {
    let o = qcartan(&["verify", "--type", "A3", "--suite", "nnkr,phi", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["outcomes"].as_array().unwrap().len(), 6);
}

#[test]
fn g2_delta_csv() {
    let o = qcartan(&["tables", "--type", "G2", "--what", "delta", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,j,u,coef"));
    let mut entries = vec![vec![0i64; 6]; 4];
    for l in lines {
        let f: Vec<i64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        entries[(2 * (f[0] - 1) + f[1] - 1) as usize][f[2] as usize] = f[3];
    }
    // t^5 + 2t^3 + t, 3(t^4 + t^2), 3(t^5 + 2t^3 + t)
    assert_eq!(entries[0], [0, 1, 0, 2, 0, 1]);
    assert_eq!(entries[1], [0, 0, 3, 0, 3, 0]);
    assert_eq!(entries[2], entries[1]);
    assert_eq!(entries[3], [0, 3, 0, 6, 0, 3]);
    assert_eq!(entries.iter().collect::<BTreeSet<_>>().len(), 3);
}

#[test]
fn a1_tfb_series() {
    let o = qcartan(&["tables", "--type", "A1", "--what", "tfb", "--max-u", "6"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["h"], 2);
    assert_eq!(v["entries"]["1,1"], serde_json::json!([0, 1, 0, -1, 0, 1, 0]));
}

#[test]
fn table_json_round_trip() {
    for ty in ["B3", "D5", "E7", "G2"] {
        let o = qcartan(&["tables", "--type", ty]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let dt = build_datum(ty.parse().unwrap());
        let q = DynkinQuiver::from_spec(dt, "linear").unwrap();
        assert_eq!(TildeBTable::from_json(&v).unwrap(), inverse_via_eta(&q), "{ty}");
    }
}

#[test]
fn b3_ar_dot() {
    let o = qcartan(&["quiver", "--type", "B3", "--height", "3,2,1", "--emit", "ar", "--format", "dot"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    let nodes = text.lines().filter(|l| l.contains("[label=\"(")).count();
    assert_eq!(nodes, 9);
    assert!(text.contains("\"2_0\" [label=\"(2,0): 1,2,2\"]"));
    assert_eq!(text.matches(" -> ").count(), 10);
}

#[test]
fn hasse_matches_ar() {
    let run = |emit| {
        let o = qcartan(&["quiver", "--type", "C3", "--height", "sink-source", "--emit", emit]);
        let mut lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
        lines.sort();
        lines
    };
    assert_eq!(run("ar"), run("hasse"));
}

#[test]
fn pair_json() {
    let o = qcartan(&["pair", "--type", "B3", "--word", "1,2,3,1,2,3,1,2,3", "--check", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["compatible"], true);
    assert_eq!(v["compatible_positive_normalization"], false);
    assert_eq!(v["product_diag"], serde_json::json!([-4, -4, -2, -4, -4, -2]));
    assert_eq!(v["lambda"].as_array().unwrap().len(), 9);
    assert_eq!(v["b"][0].as_array().unwrap().len(), 6);
}

#[test]
fn torus_checks_and_element() {
    for check in ["calN", "nnkr", "ya"] {
        let o = qcartan(&["torus", "--type", "B3", "--height", "3,2,1", "--check", check, "--window", "-12,12"]);
        assert!(o.status.success(), "{check}");
        assert!(stdout(&o).starts_with("PASS"));
    }
    let o = qcartan(&[
        "torus", "--type", "B3", "--height", "3,2,1", "--format", "json",
        "--element", "q*X[1,1] + q*X[2,2]*X[1,3]^-1",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["weights"], serde_json::json!(["0,1,0", "0,1,0"]));
}

#[test]
fn deterministic_output() {
    let args = ["verify", "--type", "D4", "--seed", "7", "--format", "json"];
    let a = qcartan(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_qcartan"))
        .args(args)
        .env("QCARTAN_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("qcartan-cli-{}.csv", std::process::id()));
    let o = qcartan(&["tables", "--type", "A2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 4 * 3);
}
