use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tracegenus"))
        .args(args)
        .env_remove("TRACEGENUS_WORKERS")
        .output()
        .unwrap();
    let json = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn ok(args: &[&str]) -> Value {
    let (code, json, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}\n{json:#}");
    json
}

fn verdict<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["name"] == name)
        .unwrap_or_else(|| panic!("no verdict {name}"))
}

#[test]
fn report_schema() {
    let r = ok(&["analyze", "G1"]);
    for key in ["schema_version", "command", "argv", "inputs", "exact", "monte_carlo", "verdicts", "passed", "timings"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "analyze");
    assert!(r["timings"]["total_ms"].is_number());
}

#[test]
fn analyze_examples() {
    let s = &ok(&["analyze", "G1 G1* G2 G2* G3 G3*"])["exact"]["spherical_counts"];
    assert_eq!((s["a"].as_u64(), s["b"].as_u64(), s["c"].as_u64()), (Some(1), Some(7), Some(6)));

    let r = ok(&["analyze", "G1 G2"]);
    assert_eq!(r["exact"]["coperiod"], 1);
    assert_eq!(r["exact"]["spherical_counts"]["b"], 1);

    let r = ok(&["analyze", "G1"]);
    let s = &r["exact"]["spherical_counts"];
    assert_eq!((s["a"].as_u64(), s["b"].as_u64(), s["c"].as_u64()), (Some(0), Some(1), Some(0)));
    assert_eq!(r["exact"]["clt"]["var_re"], "1/2");
    assert_eq!(r["exact"]["clt"]["var_im"], "1/2");
}

#[test]
fn expand_examples() {
    for (w, p) in [("G1 G1*", "N"), ("G1 G1* G1 G1*", "2N"), ("G1 G2 G1* G2~", "N^-1")] {
        assert_eq!(ok(&["expand", w])["exact"]["expansion"]["text"], p, "{w}");
    }
}

#[test]
fn expand_several_words_and_oracle() {
    let a = ok(&["expand", "G1, G1*"]);
    let b = ok(&["expand", "G1", "G1*"]);
    assert_eq!(a["exact"]["expansion"], b["exact"]["expansion"]);
    assert_eq!(a["exact"]["expansion"]["text"], "1");

    let r = ok(&["expand", "G1 G1* G1 G1*", "--centered", "--oracle", "3"]);
    assert!(r["exact"]["atom_free_expansion"]["text"].is_string());
    let v = verdict(&r, "oracle");
    assert_eq!(v["passed"], true);
    assert_eq!(v["detail"]["oracle"], "6");
}

#[test]
fn limits_examples() {
    let r = ok(&["limits", "G1 G2", "--fc", "3"]);
    assert_eq!(r["exact"]["fuss_catalan"]["moments"], serde_json::json!([1, 3, 12]));
    assert_eq!(r["exact"]["fuss_catalan"]["closed_form"], serde_json::json!(["1", "3", "12"]));

    let r = ok(&["limits", "G1", "--mixed", "1,1,1,1"]);
    assert_eq!(r["exact"]["mixed_moment"]["limit"], 2);

    let r = ok(&["limits", "G1 G2 G1 G2"]);
    assert_eq!(r["exact"]["joint_variances"], serde_json::json!([2, 4, 6]));
}

#[test]
fn band_examples() {
    let r = ok(&["band", "G1 G1*", "--N", "100", "--b", "10"]);
    assert_eq!(r["exact"]["expectation"]["exact"], "100");

    let r = ok(&["band", "--alpha", "--cycle", "3"]);
    assert!((r["exact"]["alpha_cycle"].as_f64().unwrap() - 0.75).abs() < 1e-6);

    let r = ok(&["band", "G1 G2 G3", "--clt", "--lambda", "0"]);
    assert!((r["exact"]["clt"]["b"].as_f64().unwrap() - 0.75).abs() < 1e-6);
}

#[test]
fn simulate_covariance_check_passes() {
    let r = ok(&["simulate", "G1 G1* G2 G2* G3 G3*", "--N", "32", "--samples", "2000", "--seed", "4", "--check"]);
    assert_eq!(verdict(&r, "covariance")["passed"], true);
    assert_eq!(verdict(&r, "mean")["passed"], true);
    assert_eq!(r["passed"], true);
}

#[test]
fn simulate_band_scaled_variance_is_one() {
    let r = ok(&["simulate", "G1", "--ensemble", "band:b=64", "--N", "512", "--samples", "300", "--check"]);
    let v = verdict(&r, "scaled_variance");
    assert_eq!(v["passed"], true);
    assert!((v["detail"]["target"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn simulate_sparse_fc_check_sees_finite_n_bias() {
    // At N = 64, p = 0.1 the exact E Tr((WW*)^2)/N is 3.6506, not FC_3(2) = 3.
    let (code, r, _) = run(&["simulate", "G1 G2", "--ensemble", "sparse:p=0.1", "--check-fc", "2"]);
    assert_eq!(verdict(&r, "fuss_catalan_k1")["passed"], true);
    let k2 = verdict(&r, "fuss_catalan_k2");
    let est = k2["detail"]["estimate"]["mean_re"].as_f64().unwrap();
    let se = k2["detail"]["estimate"]["stderr"].as_f64().unwrap();
    assert!((est - 3.650634765625).abs() < 5.0 * se, "{est} ± {se}");
    assert_eq!(k2["passed"], false);
    assert_eq!(code, 1);
}

#[test]
fn simulate_is_deterministic_across_workers() {
    let args = ["simulate", "G1 G2*", "--N", "16", "--samples", "50", "--seed", "9"];
    let a = ok(&args);
    let b = ok(&[&args[..], &["--workers", "3"]].concat());
    assert_eq!(a["monte_carlo"], b["monte_carlo"]);
}

#[test]
fn simulate_writes_csv() {
    let path = std::env::temp_dir().join(format!("tracegenus-cli-{}.csv", std::process::id()));
    ok(&["simulate", "G1", "--N", "8", "--samples", "5", "--csv", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "sample,re,im");
    assert_eq!(lines.len(), 6);
}

#[test]
fn parse_error_exits_2_with_position() {
    let (code, r, err) = run(&["analyze", "G1 X"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "syntax");
    assert_eq!(r["error"]["position"], 3);
    assert!(err.contains("     ^"), "{err}");
}

#[test]
fn resource_cap_exits_3() {
    let (code, r, _) = run(&["expand", "G1 G1* G1 G1* G1 G1*", "--max-length", "4"]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], "too_large");
}

#[test]
fn invalid_ensemble_exits_2() {
    let (code, r, _) = run(&["simulate", "G1", "--ensemble", "sparse:p=2"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "invalid_argument");
}
