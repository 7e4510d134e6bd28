use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_thetaprod")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap() + &String::from_utf8(out.stderr).unwrap();
    (out.status.code().unwrap_or(-1), text)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let (code, text) = run(&all);
    (code, serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{e}: {text}")))
}

fn exps(v: &Value) -> Vec<Value> {
    v["payload"]["coefficients"].as_array().unwrap().iter().map(|t| t[0].clone()).collect()
}

#[test]
fn expand_named_and_explicit() {
    let (code, v) = json(&["expand", "--name", "psi", "--scale", "1", "--order", "10"]);
    assert_eq!(code, 0);
    assert_eq!(exps(&v), [0, 1, 3, 6, 10].map(Value::from));
    assert_eq!(v["status"], "pass");

    let (code, v) = json(&["expand", "--theta", "-1,0,3", "--order", "10"]);
    assert_eq!(code, 0);
    assert!(exps(&v).is_empty());

    let (_, v) = json(&["expand", "--theta", "1,1,2", "--order", "12"]);
    assert_eq!(exps(&v), [0, 1, 2, 5, 7, 12].map(Value::from));
}

#[test]
fn negative_exponents_and_report_fields() {
    let (_, v) = json(&["expand", "--theta", "1,-1,3", "--order", "4"]);
    // f(q^{-1}, q^3) = q^{-1} phi(q): whole exponents only
    assert_eq!(exps(&v)[0], Value::from(-1));
    let (code, text) = run(&[
        "--format", "json", "verify", "thm1", "--k", "2", "--r", "1", "--g", "1", "--h", "0", "--u", "1", "--v", "0",
        "--i", "1", "--j", "1", "--order", "3",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["payload"]["checked_through"], 3);
    assert_eq!(v["payload"]["rhs_term_count"], 4);
}

#[test]
fn verify_targets() {
    let (code, v) = json(&[
        "verify", "thm1", "--k", "2", "--r", "1", "--g", "1", "--h", "0", "--u", "1", "--v", "0", "--i", "1", "--j",
        "1", "--eps", "1,1,1", "--order", "100",
    ]);
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
    assert_eq!(v["cmd"], "verify thm1");

    let (code, v) = json(&[
        "verify", "thm1", "--k", "3", "--r", "1", "--g", "2", "--h", "0", "--u", "2", "--v", "0", "--i", "1", "--j",
        "1",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    assert!(v["payload"]["error"].as_str().unwrap().contains("gcd(2k,k-r)=1 violated"));

    let (code, _) = json(&[
        "verify", "thm2", "--k", "2", "--r", "1", "--s", "1", "--t", "1", "--i", "2", "--j", "0", "--eps", "-1",
    ]);
    assert_eq!(code, 0);

    let (code, v) = json(&["verify", "relation", "--id", "Athm1", "--nmax", "1000"]);
    assert_eq!(code, 0);
    let rels = v["payload"]["relations"].as_array().unwrap();
    // The misprinted remark is reported but does not fail the run.
    let r2 = rels.iter().find(|r| r["id"] == "Athm1.r2").unwrap();
    assert_eq!((r2["passed"].as_bool(), r2["status"].as_str()), (Some(false), Some("empirical")));
    assert_eq!(r2["smallest_counterexample"]["n"], 0);

    let (code, _) = json(&["verify", "corollary", "--id", "clp2.1", "--m", "2", "--order", "60"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["verify", "corollary", "--id", "cor3", "--k", "4", "--r", "1", "--order", "60"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["verify", "corollary", "--id", "cor3", "--m", "1"]);
    assert_eq!(code, 2);
    let (code, _) = json(&["verify", "classical", "--id", "liouville", "--nmax", "500"]);
    assert_eq!(code, 0);
}

#[test]
fn verify_all_small() {
    let (code, v) = json(&["verify", "all", "--order", "40", "--nmax", "100"]);
    assert_eq!(code, 0, "{v}");
    let rows = v["payload"]["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["status"] == "empirical" && r["passed"] == false));
    assert!(rows.iter().all(|r| r["passed"] == true || r["status"] == "empirical"));
}

#[test]
fn counting() {
    let (code, v) = json(&["count", "--form", "rT(1,1,1)", "--n", "5"]);
    assert_eq!((code, v["payload"]["values"][0]["count"].as_i64()), (0, Some(8)));
    let (code, v) = json(&["count", "--form", "T(2,4,4)", "--n", "4", "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["values"][0]["agree"], true);
    assert_eq!(v["payload"]["values"][0]["count"], 2);
    let (_, v) = json(&["count", "--form", "r(1,1,1)", "--n", "7"]);
    assert_eq!(v["payload"]["values"][0]["count"], 0);

    let (code, v) = json(&["count", "--form", "Rt(2,2,2)", "--range", "0..20", "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["values"].as_array().unwrap().len(), 21);

    let (code, _) = json(&["count", "--form", "zz(1,1,1)", "--n", "3"]);
    assert_eq!(code, 2);
    let (code, _) = json(&["count", "--form", "r(1,-1,1)", "--n", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn scanning() {
    let (code, v) = json(&["scan", "--form", "rpg(3,4,1)", "--modulus", "4", "--residue", "2", "--nmax", "2000"]);
    assert_eq!(code, 0);
    assert!(v["payload"]["represented"].as_array().unwrap().is_empty());
    let (code, _) = json(&["scan", "--form", "tG(4,1,1)", "--modulus", "4", "--residue", "3", "--nmax", "2000"]);
    assert_eq!(code, 0);

    let (code, v) = json(&["scan", "--form", "r(1,1,2)", "--modulus", "2", "--residue", "1", "--nmax", "50"]);
    assert_eq!(code, 1);
    let odd: Vec<Value> = (1..=50).step_by(2).map(Value::from).collect();
    assert_eq!(v["payload"]["represented"].as_array().unwrap(), &odd);

    let (code, _) = json(&["scan", "--form", "r(1,1,2)", "--modulus", "2", "--residue", "2", "--nmax", "50"]);
    assert_eq!(code, 2);
}

#[test]
fn records_are_reproducible() {
    let args = ["verify", "relation", "--id", "Athm11", "--nmax", "300"];
    let (_, a) = json(&args);
    // Re-run from the echoed parameters.
    let p = &a["params"];
    let (_, b) = json(&[
        "verify",
        p["target"].as_str().unwrap(),
        "--id",
        p["id"].as_str().unwrap(),
        "--nmax",
        &p["nmax"].to_string(),
    ]);
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(a["cmd"], b["cmd"]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["count", "--form", "r(1,1,1)"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["expand", "--theta", "1,2", "--order", "3"]).0, 2);
}

#[test]
fn extra_catalog_file() {
    let dir = std::env::temp_dir().join(format!("thetaprod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("extra.json");
    std::fs::write(
        &path,
        r#"[{"id":"mine.1","residue":null,"lhs":{"form":"rT","coeffs":[1,1,1],"alpha":2,"beta":0,"scalar":1},
            "rhs":[{"form":"Rt","coeffs":[1,1,1],"alpha":1,"beta":0,"scalar":1}],"citation":"","status":"pinned"}]"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = json(&["--catalog", p, "verify", "relation", "--id", "mine", "--nmax", "200"]);
    assert_eq!(code, 0, "{v}");
    std::fs::write(&path, "[{").unwrap();
    assert_eq!(json(&["--catalog", p, "verify", "relation", "--id", "mine"]).0, 2);
    std::fs::remove_dir_all(&dir).ok();
}
