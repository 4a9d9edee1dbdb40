use assert_cmd::Command;
use serde_json::{json, Value};

fn genfib(args: &[&str]) -> assert_cmd::assert::Assert {
    Command::cargo_bin("genfib").unwrap().args(args).assert()
}

fn stdout(args: &[&str]) -> String {
    let out = genfib(args).success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&v)).unwrap()
}

#[test]
fn seq_row_with_negative_indices() {
    let out = stdout(&["seq", "--k", "2", "--family", "fib", "--from", "-3", "--to", "6"]);
    assert_eq!(out, "5 -2 1 0 1 2 5 12 29 70\n");
}

#[test]
fn hankel_inverse_is_the_integer_matrix() {
    let v = json_of(&["hankel", "--k", "1", "--alpha", "1", "--n", "2", "--family", "fib", "--show", "inverse"]);
    assert_eq!(v["payload"]["inverse"], json!([[4, 12, -30], [12, 18, -60], [-30, -60, 180]]));
    assert_eq!(v["summary"]["all_integer"], json!(true));
}

#[test]
fn determinant_renders_as_exact_rational() {
    let plain = stdout(&["hankel", "--k", "1", "--alpha", "1", "--n", "2"]);
    assert!(plain.lines().any(|l| l == "det: -1/360"), "{plain}");
    let raw = stdout(&["hankel", "--k", "1", "--alpha", "1", "--n", "2", "--format", "json"]);
    assert!(raw.contains("\"det\": \"-1/360\""), "{raw}");
}

#[test]
fn json_schema_keys_in_order() {
    let raw = stdout(&["cf", "--k", "1", "--m", "2", "--t", "3", "--format", "json"]);
    let v: serde_json::Map<String, Value> = serde_json::from_str(&raw).unwrap();
    let keys: Vec<&str> = v.keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "params", "payload", "summary", "elapsed_ms"]);
    assert_eq!(v["elapsed_ms"], Value::Null);
    let timed = json_of(&["cf", "--k", "1", "--m", "2", "--t", "3", "--timing"]);
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn pell_classify_payload() {
    let v = json_of(&["pell", "classify", "--k", "3", "--n", "33"]);
    assert_eq!(
        v["payload"],
        json!({"member": true, "index": 4, "companion": 119, "trace": [[33, 119], [10, 36], [3, 11], [1, 3]]})
    );
    let non = json_of(&["pell", "classify", "--k", "3", "--n", "34"]);
    assert_eq!(non["payload"]["member"], json!(false));
    assert_eq!(non["payload"]["trace"], json!([]));
}

#[test]
fn empty_solution_lists() {
    assert_eq!(stdout(&["pell", "enumerate", "--k", "3", "--bound", "0"]), "no solutions ≤ bound\n\nsolutions: 0\n");
    let v = json_of(&["pell", "enumerate", "--k", "3", "--bound", "0"]);
    assert_eq!(v["payload"], json!([]));
}

#[test]
fn pell_listing_agrees_with_brute_force() {
    let a = json_of(&["pell", "enumerate", "--k", "2", "--bound", "1000"]);
    let b = json_of(&["pell", "brute", "--k", "2", "--bound", "1000"]);
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(a["payload"][0], json!({"x": 1, "y": 2, "n": 1, "sign": -1}));
}

#[test]
fn csv_tables() {
    let out = stdout(&["seq", "--k", "1", "--from", "0", "--to", "3", "--format", "csv"]);
    assert_eq!(out, "n,value\n0,0\n1,1\n2,1\n3,2\n");
    let surf = stdout(&["pell", "surface", "--k", "1", "--bound", "4", "--format", "csv"]);
    assert!(surf.starts_with("x,y,z,kind,pairwise_coprime\n1,1,2,consecutive_fib,true\n"), "{surf}");
}

#[test]
fn usage_and_domain_errors_exit_2() {
    genfib(&["seq", "--n", "3", "--from", "1"]).code(2);
    genfib(&["seq", "--k", "0"]).code(2);
    genfib(&["hankel", "--alpha", "0"]).code(2);
    genfib(&["frobnicate"]).code(2);
    genfib(&["identity", "verify", "--id", "no-such-identity"]).code(2);
    genfib(&["identity", "verify", "--id", "catalan", "--bind", "n=1"]).code(2);
    genfib(&["pell", "brute", "--k", "1", "--bound", "2000000"]).code(2);
    genfib(&["seq", "--format", "yaml"]).code(2);
}

#[test]
fn misprints_are_reported_not_failed() {
    let args = ["identity", "verify", "--id", "shift-product-lucas", "--k", "1", "--bind", "alpha=1,n=1,i=0,j=0"];
    let mut verbatim = args.to_vec();
    verbatim.extend(["--mode", "verbatim", "--format", "json"]);
    let out = genfib(&verbatim).code(0).get_output().stdout.clone();
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["payload"]["lhs"], json!("14"));
    assert_eq!(v["payload"]["rhs"], json!("4"));
    assert_eq!(v["payload"]["holds"], json!(false));
    genfib(&args).code(0);
}

#[test]
fn verbatim_determinant_mismatch_is_not_an_error() {
    let v = json_of(&["hankel", "--k", "1", "--alpha", "1", "--n", "2", "--mode", "verbatim"]);
    assert_eq!(v["payload"]["closed_form"], json!("-1/60"));
    assert_eq!(v["payload"]["matches"], json!(false));
}

#[test]
fn deterministic_output() {
    let args = ["identity", "sweep", "--id", "catalan", "--id", "cassini", "--to", "3", "--n", "20", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn every_operation_is_reachable() {
    let cases: &[&[&str]] = &[
        &["seq", "--view", "terms"],
        &["seq", "--view", "closed", "--n", "-7", "--family", "lucas"],
        &["seq", "--view", "doubling", "--n", "100"],
        &["seq", "--view", "matrix", "--n", "12"],
        &["seq", "--view", "hyperbolic", "--k", "2", "--n", "5"],
        &["seq", "--view", "hyperbolic", "--k", "2", "--n", "5", "--mode", "verbatim"],
        &["seq", "--view", "field", "--k", "3"],
        &["seq", "--view", "arctan", "--k", "2"],
        &["seq", "--view", "reciprocal", "--k", "2"],
        &["binom", "--k", "2", "--n", "6"],
        &["binom", "--family", "lucas", "--n", "5"],
        &["binom", "--family", "lucas", "--odd", "--n", "5"],
        &["hankel", "--family", "lucas", "--n", "1"],
        &["hankel", "--family", "lucas", "--show", "inverse", "--n", "1"],
        &["hankel", "--show", "basis", "--n", "3", "--k", "2", "--alpha", "2"],
        &["hankel", "--show", "gram", "--n", "3"],
        &["orthopoly", "--family", "lucas", "--n", "2"],
        &["identity", "list"],
        &["identity", "fit"],
        &["identity", "sweep", "--id", "owings-congruence", "--to", "2"],
        &["pell", "solve", "--k", "2", "--x", "5", "--y", "12"],
        &["pell", "solve", "--k", "2", "--x", "5", "--y", "13"],
        &["pell", "classify", "--k", "2", "--n", "12", "--experimental"],
        &["pell", "surface", "--k", "2", "--bound", "20"],
        &["convolve", "--k", "2", "--m", "3", "--n", "9"],
        &["convolve", "--k", "2", "--m", "3", "--n", "9", "--mode", "verbatim"],
        &["cf", "--k", "3", "--m", "2", "--t", "4"],
    ];
    for args in cases {
        for format in ["plain", "json", "csv"] {
            let mut v = args.to_vec();
            v.extend(["--format", format]);
            genfib(&v).code(0);
        }
    }
}

#[test]
fn verify_all_emits_the_ledger() {
    let out = stdout(&["verify-all"]);
    let last: Vec<&str> = out.lines().rev().take(2).collect();
    assert_eq!(last[1], "identities: 48 corrected-pass, 18 printed-fail (documented), 0 unexpected");
    assert!(last[0].ends_with("0 unexpected"), "{}", last[0]);
    assert!(out.contains("filbert-determinant"));
}
