use std::process::{Command, Output};

use serde_json::Value;

fn desparity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_desparity")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn assert_report_schema(r: &Value) {
    let obj = r.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["elapsed_ms", "first_mismatch", "id", "nmax", "qmode", "status"]);
    assert!(obj["id"].is_string() && obj["nmax"].is_u64() && obj["elapsed_ms"].is_u64());
    assert!(["one", "generic"].contains(&obj["qmode"].as_str().unwrap()));
    match obj["status"].as_str().unwrap() {
        "pass" => assert!(obj["first_mismatch"].is_null()),
        "fail" => {
            let m = obj["first_mismatch"].as_object().unwrap();
            assert!(m["n"].is_u64() && m["lhs"].is_string() && m["rhs"].is_string());
        }
        other => panic!("status {other}"),
    }
}

#[test]
fn verify_json() {
    let o = desparity(&["verify", "--id", "B1", "--nmax", "6", "--q", "one", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_report_schema(&reports[0]);
    assert_eq!(reports[0]["status"], "pass");
    assert_eq!(reports[0]["nmax"], 6);
}

#[test]
fn recorded_failures_do_not_change_the_exit_code() {
    let o = desparity(&["verify", "--id", "CS_Q", "--nmax", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let generic = v.as_array().unwrap().iter().find(|r| r["qmode"] == "generic").unwrap();
    assert_report_schema(generic);
    assert_eq!(generic["first_mismatch"]["n"], 2);
    assert_eq!(generic["first_mismatch"]["lhs"], "1*x1 + 1*q*y1");
    assert_eq!(generic["first_mismatch"]["rhs"], "1*y1 + 1*x1");
}

#[test]
fn required_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    assert_eq!(code(&desparity(&["verify", "--id", "TILDE_REL", "--nmax", "3", "--cache", cache])), 0);
    std::fs::write(dir.path().join("A").join("3.poly"), "1 + 5*x\n").unwrap();
    let o = desparity(&["verify", "--id", "TILDE_REL", "--nmax", "3", "--cache", cache]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("fail"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify"][..],
        &["verify", "--id", ""],
        &["verify", "--id", "NOPE"],
        &["verify", "--id", "B1", "--nmax", "20"],
        &["verify", "--id", "B1", "--format", "csv"],
        &["verify", "--id", "B1", "--jobs", "0"],
        &["table", "--family", "A"],
        &["table", "--family", "A", "--kind", "g", "--n", "3"],
        &["table", "--family", "Q", "--n", "3"],
        &["tree", "--word", "5625"],
        &["tree", "--word", "562314", "--apply-psi", "9"],
        &["report", "--id", ""],
        &["frobnicate"],
    ] {
        assert_eq!(code(&desparity(args)), 2, "{args:?}");
    }
    assert_eq!(code(&desparity(&["--help"])), 0);
}

#[test]
fn tables() {
    let o = desparity(&["table", "--family", "A", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1 + 1*q*x"));

    let o = desparity(&["table", "--kind", "g", "--nmax", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,j0,j1\n1,1,0\n2,1,1\n3,1,5\n");

    let o = desparity(&["table", "--family", "B", "--n", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["polynomial"], "1 + 3*y + 3*x + 1*x*y");
}

#[test]
fn gamma_expansions() {
    let o = desparity(&["gamma", "--family", "B_bar", "--n", "4", "--basis", "gamma", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([57, -76, 20]));
    // A_4 carries inversions, so it is not symmetric in x and y
    assert_eq!(code(&desparity(&["gamma", "--family", "A", "--n", "4"])), 1);
}

#[test]
fn tree_golden() {
    let o = desparity(&["tree", "--word", "562314"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("6 [max]\n  L 5\n  R 1 [min]\n    L 2 [min]\n      R 3\n    R 4\n"));

    let o = desparity(&["tree", "--word", "562314", "--apply-psi", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], "513426");
    assert_eq!(v["render"], "1 [min]\n  L 5\n  R 2 [min]\n    L 3 [min]\n      R 4\n    R 6\n");
    assert_eq!(v["andre_first"], true);
}

#[test]
fn report_writes_summary_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("summary.json");
    let o = desparity(&[
        "report",
        "--id",
        "CS_Q,B1,SYM_S,TREE_FIG1",
        "--nmax-a",
        "5",
        "--nmax-b",
        "4",
        "--jobs",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["all_required_passed"], true);
    assert_eq!(v["nmax_a"], 5);
    assert_eq!(v["required"]["passed"], 4);
    assert_eq!(v["recorded"]["failed"], 1);
    for section in ["required", "recorded"] {
        v[section]["reports"].as_array().unwrap().iter().for_each(assert_report_schema);
    }
}

#[test]
fn results_do_not_depend_on_parallelism() {
    let run = |jobs: &str| {
        let o = desparity(&[
            "verify",
            "--id",
            "PZ1,B2,GAMMA_SUN,HR_COMMUTE",
            "--nmax",
            "5",
            "--jobs",
            jobs,
            "--format",
            "json",
        ]);
        let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        for r in v.as_array_mut().unwrap() {
            r["elapsed_ms"] = 0.into();
        }
        v
    };
    assert_eq!(run("1"), run("3"));
}
