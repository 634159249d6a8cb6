//! End-to-end tests of the `unitroots` binary: exit codes, report schema,
//! determinism and sweep handling.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_unitroots"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = run(args);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {stdout}{stderr}"));
    (code, v)
}

/// Drops `wall_ms` everywhere so runs can be compared byte for byte.
fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_ms");
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

fn write_jobs(dir: &Path, body: &str) -> String {
    let path = dir.join("jobs.json");
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn report_schema_is_stable() {
    let (_, v) = run_json(&["onevar", "--p", "5", "--f", "x^2+1", "--g", "x"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = vec!["command", "params", "hypotheses", "results", "verdict", "meta"];
    expected.sort();
    let mut got = keys.clone();
    got.sort();
    assert_eq!(got, expected);
    let meta: Vec<&str> = v["meta"]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(meta, ["seed", "truncation", "version"]);
    for r in v["results"].as_array().unwrap() {
        for key in [
            "claim_id",
            "params",
            "hypotheses",
            "lhs",
            "rhs",
            "details",
            "verdict",
            "truncation",
            "wall_ms",
        ] {
            assert!(r.get(key).is_some(), "result lacks {key}");
        }
    }
}

#[test]
fn kloosterman_onevar() {
    let (code, v) = run_json(&["onevar", "--p", "5", "--f", "x^2+1", "--g", "x"]);
    assert_eq!(code, 0);
    let thm = &v["results"][0];
    assert_eq!(thm["claim_id"], "Thm2.1");
    assert_eq!(thm["verdict"]["status"], "Verified");
    assert_eq!(thm["details"]["degree"], 2);
    assert_eq!(thm["details"]["unit_root_count"], 1);
    // Cyclotomic coefficients are exact strings.
    let s1 = &thm["details"]["l_polynomial"]["coeffs"][1];
    assert!(s1["coeffs"][0].is_string());
}

#[test]
fn legendre_exit_zero_with_supersingular_skips() {
    let (code, v) = run_json(&["legendre", "--p", "7"]);
    assert_eq!(code, 0);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 5);
    let skipped: Vec<u64> = results
        .iter()
        .filter(|r| r["verdict"]["status"] == "Skipped")
        .map(|r| r["params"]["lambda"].as_u64().unwrap())
        .collect();
    assert_eq!(skipped, [2, 4, 6]);
}

#[test]
fn toric_p_bound_skip_exits_two() {
    let (code, v) = run_json(&[
        "toric", "--p", "5", "--n", "2", "--f", "x1", "--g", "x1*x2-1", "--d", "2",
    ]);
    assert_eq!(code, 2);
    assert_eq!(
        v["results"][0]["verdict"],
        serde_json::json!({"status": "Skipped", "hypothesis": "pBound"})
    );
}

#[test]
fn force_gives_exploratory() {
    let args = [
        "toric", "--p", "5", "--n", "2", "--f", "x1", "--g", "x1*x2-1", "--d", "2", "--trunc", "3", "--force",
    ];
    let (code, v) = run_json(&args);
    assert_eq!(code, 2);
    assert_eq!(v["results"][0]["verdict"]["status"], "Exploratory");
    assert_eq!(v["params"]["force"], true);
}

#[test]
fn input_errors_exit_three() {
    for args in [
        vec!["toric", "--p", "5", "--bogus"],
        vec!["onevar", "--p", "6", "--f", "x", "--g", "x"],
        vec!["onevar", "--p", "5", "--f", "x^", "--g", "x"],
        vec!["onevar", "--p", "5", "--f", "x^2"],
        vec!["toric", "--p", "3", "--k", "2", "--f", "x", "--g", "x - 1"],
        vec!["frobnicate"],
    ] {
        let (code, _, stderr) = run(&args);
        assert_eq!(code, 3, "{args:?}");
        assert!(!stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("sweep"));
}

#[test]
fn identical_seed_gives_identical_json() {
    let args = [
        "affine",
        "--p",
        "5",
        "--n",
        "2",
        "--f",
        "x1*x2",
        "--g",
        "x1 + x2 + 1",
        "--seed",
        "17",
    ];
    let (_, mut a) = run_json(&args);
    let (_, mut b) = run_json(&args);
    strip_timings(&mut a);
    strip_timings(&mut b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert_eq!(a["meta"]["seed"], 17);
}

#[test]
fn affine_adds_chevalley_warning_when_n_exceeds_degree() {
    let (code, v) = run_json(&[
        "affine",
        "--p",
        "5",
        "--n",
        "2",
        "--f",
        "x1*x2",
        "--g",
        "x1 + x2 + 1",
    ]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["claim_id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["Thm4.1", "Cor4.2"]);
}

#[test]
fn cartier_shows_alt_orientation_failing() {
    let (code, v) = run_json(&["cartier", "--p", "5", "--g", "x - 1", "--d", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["claim_id"], "Eq3");
    assert_eq!(v["results"][0]["details"]["alt_orientation_holds"], false);
    assert_eq!(v["results"][1]["claim_id"], "Eq6");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout, _) = run(&[
        "decomp",
        "--p",
        "3",
        "--n",
        "2",
        "--f",
        "x1 + x2",
        "--g",
        "x1*x2 - 1",
        "--m-max",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"][0]["claim_id"], "ToricDecomp");
    assert_eq!(v["results"][0]["truncation"], 2);
}

#[test]
fn legendre_sweep_row_count() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = write_jobs(
        dir.path(),
        r#"[{"command": "legendre", "p": 5}, {"command": "legendre", "p": 7},
            {"command": "legendre", "p": 11}, {"command": "legendre", "p": 13}]"#,
    );
    let (code, stdout, _) = run(&["sweep", &jobs, "--format", "csv"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(stdout.as_bytes());
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["claim_id", "params", "verdict", "truncation", "wall_ms"]
    );
    assert_eq!(rdr.records().count(), 3 + 5 + 9 + 11);
}

#[test]
fn irreducible_factor_sweep_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = write_jobs(
        dir.path(),
        r#"[{"command": "onevar", "p": 7, "f": "x^4 + 1", "g": "x*(x^2 + 1)"},
            {"command": "onevar", "p": 7, "f": "x^4 + x + 1", "g": "x*(x^2 + 2)"},
            {"command": "onevar", "p": 7, "f": "x^4 + 3", "g": "x*(x^2 + x + 3)"}]"#,
    );
    let summary = dir.path().join("summary.csv");
    let (code, v) = run_json(&[
        "sweep",
        &jobs,
        "--summary",
        summary.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    // Thm2.1 is skipped (g does not split); Thm2.2 verifies.
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_path(&summary).unwrap();
    let verdicts: Vec<(String, String)> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].to_string(), r[2].to_string())
        })
        .collect();
    let thm22: Vec<&str> = verdicts
        .iter()
        .filter(|(c, _)| c == "Thm2.2")
        .map(|(_, v)| v.as_str())
        .collect();
    assert_eq!(thm22, ["Verified"; 3]);
    assert_eq!(v["results"].as_array().unwrap().len(), 3);
    assert_eq!(v["results"][2]["index"], 2);
}

#[test]
fn sweep_records_per_job_errors() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = write_jobs(
        dir.path(),
        r#"[{"command": "legendre", "p": 5}, {"command": "onevar", "p": 5, "f": "x^2+1"}]"#,
    );
    let (code, v) = run_json(&["sweep", &jobs]);
    assert_eq!(code, 3);
    assert!(v["results"][0]["report"].is_object());
    assert!(v["results"][1]["error"].as_str().unwrap().contains("--g"));
    assert_eq!(v["verdict"]["errors"], 1);
}

#[test]
fn malformed_job_file_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    for body in [
        "not json",
        r#"{"command": "legendre", "p": 5}"#,
        r#"[{"command": "legendre"}]"#,
        r#"[{"command": "legendre", "p": 5, "extra": 1}]"#,
    ] {
        let jobs = write_jobs(dir.path(), body);
        let (code, _, stderr) = run(&["sweep", &jobs]);
        assert_eq!(code, 3, "{body}");
        assert!(stderr.contains("malformed"));
    }
    let (code, _, _) = run(&["sweep", "/nonexistent/jobs.json"]);
    assert_eq!(code, 3);
}
