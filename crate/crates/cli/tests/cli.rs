use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyharm")).args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn poly_file(dir: &Path, name: &str, terms: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, format!(r#"{{"terms":[{terms}]}}"#)).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn beta_curve_csv_for_n2() {
    let out = run(&["beta-curve", "--n", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("curve,p_num,p_den,alpha_num,alpha_den,slope_num,slope_den"));
    let beta: Vec<&str> = lines.filter(|l| l.starts_with("beta,")).collect();
    assert_eq!(
        beta,
        [
            "beta,0,1,-1,1,-3,1",
            "beta,1,4,-7,4,1,1",
            "beta,1,3,-5,3,-2,1",
            "beta,1,2,-2,1,0,1",
            "beta,1,1,-2,1,-1,1",
            "beta,3,1,-4,1,,",
        ]
    );
}

#[test]
fn beta_curve_json() {
    let v = ok_json(&["beta-curve", "--n", "1"]);
    let beta = &v["curves"][0];
    assert_eq!(beta["curve"], "beta");
    assert_eq!(beta["slopes"], serde_json::json!(["-1/1", "1/1", "0/1"]));

    let v = ok_json(&["beta-curve", "--n", "3", "--format", "json"]);
    let ps: Vec<&str> = v["curves"][0]["vertices"].as_array().unwrap().iter().map(|x| x[0].as_str().unwrap()).collect();
    for bp in ["1/6", "1/5", "1/4"] {
        assert!(ps.contains(&bp), "{ps:?}");
    }
    assert_eq!(code(&["beta-curve", "--n", "0"]), 2);
}

#[test]
fn classify_examples() {
    let v = ok_json(&["classify", "--n", "2", "--p", "1/5", "--alpha", "-3/2"]);
    assert_eq!(v["admissible"], true);
    assert_eq!(v["j_set"], serde_json::json!([0]));
    assert_eq!(v["entangled"], true);

    let v = ok_json(&["classify", "--n", "2", "--p", "1", "--alpha", "-2"]);
    assert_eq!(v["admissible"], false);
    assert_eq!(v["cell_id"], "{}");

    let v = ok_json(&["classify", "--n", "1", "--p", "2", "--alpha", "0"]);
    assert_eq!(v["admissible"], true);
    assert_eq!(v["j_set"], serde_json::json!([0]));

    assert_eq!(code(&["classify", "--n", "2", "--p", "0", "--alpha", "0"]), 2);
    assert_eq!(code(&["classify", "--n", "2", "--p", "-1/2", "--alpha", "0"]), 2);
    assert_eq!(code(&["classify", "--n", "2", "--p", "1/0", "--alpha", "0"]), 2);
    assert_eq!(code(&["classify", "--n", "2", "--p", "1", "--alpha", "0", "--format", "svg"]), 2);
}

#[test]
fn cells_json_and_svg() {
    let v = ok_json(&["cells", "--n", "2"]);
    let cells = v.as_array().unwrap();
    let ids: Vec<&str> = cells.iter().map(|c| c["cell_id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["{0}", "{1}", "{0,1}"]);
    assert_eq!(cells[0]["entangled"], true);
    assert_eq!(cells[0]["boundary"], serde_json::json!([["0/1", "-1/1"], ["1/4", "-7/4"], ["1/3", "-5/3"]]));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cells.svg");
    let out = run(&["cells", "--n", "3", "--format", "svg", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"stroke-width="3""#));
    assert_eq!(svg.matches("<polygon").count(), 6);
}

#[test]
fn decompose_modes() {
    let dir = tempfile::tempdir().unwrap();
    let one = poly_file(dir.path(), "one.json", r#"{"a":0,"b":0,"re":"1","im":"0"}"#);
    let v = ok_json(&["decompose", "--input", &one, "--n", "2", "--mode", "cellular"]);
    assert_eq!(v["verification"]["pass"], true);
    assert_eq!(v["verification"]["recomposition_residual"]["terms"], serde_json::json!([]));
    assert_eq!(
        v["pieces"],
        serde_json::json!([
            {"terms": [{"a":0,"b":0,"re":"1/2","im":"0/1"}, {"a":1,"b":1,"re":"1/2","im":"0/1"}]},
            {"terms": [{"a":0,"b":0,"re":"1/2","im":"0/1"}]}
        ])
    );

    let abs_sq = poly_file(dir.path(), "abs.json", r#"{"a":1,"b":1,"re":"1","im":"0"}"#);
    let v = ok_json(&["decompose", "--input", &abs_sq, "--n", "2", "--mode", "almansi"]);
    assert_eq!(v["pieces"][0]["terms"], serde_json::json!([]));
    assert_eq!(v["pieces"][1]["terms"], serde_json::json!([{"a":0,"b":0,"re":"1/1","im":"0/1"}]));

    let mixed = poly_file(dir.path(), "mixed.json", r#"{"a":1,"b":2,"re":"1","im":"0"}"#);
    let v = ok_json(&["decompose", "--input", &mixed, "--n", "2", "--mode", "alternative"]);
    assert_eq!(v["verification"]["pass"], true);
    assert_eq!(v["pieces"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_errors() {
    let dir = tempfile::tempdir().unwrap();
    let high = poly_file(dir.path(), "high.json", r#"{"a":2,"b":2,"re":"1","im":"0"}"#);
    assert_eq!(code(&["decompose", "--input", &high, "--n", "2"]), 3);
    let laurent = poly_file(dir.path(), "laurent.json", r#"{"a":-1,"b":0,"re":"1","im":"0"}"#);
    assert_eq!(code(&["decompose", "--input", &laurent, "--n", "1", "--mode", "almansi"]), 3);
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"terms\":[").unwrap();
    assert_eq!(code(&["decompose", "--input", broken.to_str().unwrap(), "--n", "2"]), 4);
    let zero_den = poly_file(dir.path(), "zero.json", r#"{"a":0,"b":0,"re":"1/0","im":"0"}"#);
    assert_eq!(code(&["decompose", "--input", &zero_den, "--n", "2"]), 4);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&["decompose", "--input", missing.to_str().unwrap(), "--n", "2"]), 2);
}

#[test]
fn verify_suites() {
    for suite in ["identities", "decomposition", "kernels", "curves"] {
        let v = ok_json(&["verify", suite, "--trials", "10", "--seed", "3"]);
        assert_eq!(v["pass"], true, "{suite}");
        assert!(v["properties"].as_array().unwrap().iter().all(|p| p["passed"] == p["trials"]));
    }
    assert_eq!(code(&["verify", "nonsense"]), 2);
    assert_eq!(code(&["verify", "identities", "--trials", "0"]), 2);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["verify", "decomposition", "--trials", "5", "--seed", "11"]);
    let b = run(&["verify", "decomposition", "--trials", "5", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["cells", "--n", "3", "--format", "svg"]);
    let b = run(&["cells", "--n", "3", "--format", "svg"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn kernel_norm_verdicts() {
    let v = ok_json(&["kernel-norm", "--j", "0", "--n", "2", "--p", "1", "--alpha", "0"]);
    assert_eq!(v["finite"], true);
    assert!((v["value"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    assert_eq!(v["cross_check"], true);

    let v = ok_json(&["kernel-norm", "--j", "2", "--n", "2", "--p", "1/4", "--alpha", "-7/4"]);
    assert_eq!(v["finite"], false);
    let trace = v["divergence_trace"].as_array().unwrap();
    assert!(trace.windows(2).all(|w| w[1][1].as_f64() > w[0][1].as_f64()));

    assert_eq!(code(&["kernel-norm", "--j", "3", "--n", "2", "--p", "1", "--alpha", "0"]), 2);
    assert_eq!(code(&["kernel-norm", "--j", "0", "--n", "2", "--p", "1", "--alpha", "0", "--tol", "0"]), 2);
    assert_eq!(code(&["kernel-norm", "--j", "0", "--n", "2", "--p", "1", "--alpha", "0", "--term-cap", "10"]), 2);
}

#[test]
fn annulus_scan_slope() {
    let out = run(&["annulus-scan", "--n", "2", "--p", "2/5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k,r,integral,log_one_minus_r,log_integral\n"));
    let slope: f64 = text.lines().find_map(|l| l.strip_prefix("# fitted_slope,")).unwrap().parse().unwrap();
    assert!((slope - 1.6).abs() < 0.05, "{slope}");
    assert!(text.contains("# predicted_exponent,8/5,"));

    let v = ok_json(&["annulus-scan", "--n", "2", "--p", "1/5", "--k-max", "9", "--format", "json"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["predicted_exponent"], "8/5");
    assert_eq!(code(&["annulus-scan", "--n", "2", "--p", "1/5", "--k-min", "9", "--k-max", "9"]), 2);
}

#[test]
fn extension_check() {
    let dir = tempfile::tempdir().unwrap();
    let u = poly_file(
        dir.path(),
        "u.json",
        r#"{"a":3,"b":1,"re":"2","im":"-1/3"},{"a":0,"b":2,"re":"1/5","im":"0"},{"a":1,"b":0,"re":"0","im":"1"}"#,
    );
    let v = ok_json(&["extension-check", "--input", &u, "--n", "2", "--points", "8"]);
    assert_eq!(v["radii"], serde_json::json!(["1/2", "2/3"]));
    assert_eq!(v["pass"], true);
    assert!(v["max_error"].as_f64().unwrap() < 1e-8);

    let v = ok_json(&["extension-check", "--input", &u, "--n", "3", "--radii", "1/2,5/8,3/4", "--seed", "4"]);
    assert_eq!(v["delta"], "9/64");
    assert_eq!(v["points"].as_array().unwrap().len(), 20);

    assert_eq!(code(&["extension-check", "--input", &u, "--n", "2", "--radii", "3/4,1/2"]), 2);
    assert_eq!(code(&["extension-check", "--input", &u, "--n", "1"]), 3);
}
