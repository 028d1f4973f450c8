use std::process::{Command, Output};

use serde_json::Value;

fn weilpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weilpoly"))
        .args(args)
        .env_remove("WEILPOLY_PREC")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn a_of(v: &Value) -> Vec<i64> {
    v["a"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn enumerate_genus_one() {
    let out = weilpoly(&["enumerate", "--q", "2", "--g", "1"]);
    assert_eq!(code(&out), 0);
    let rows = json_lines(&out);
    let a: Vec<i64> = rows.iter().map(|r| a_of(r)[0]).collect();
    assert_eq!(a, vec![-2, -1, 0, 1, 2]);
    assert!(rows.iter().all(|r| r["member"] == true));
}

#[test]
fn real_root_filter_genus_two() {
    let out = weilpoly(&["enumerate", "--q", "2", "--g", "2", "--filter", "real-roots"]);
    assert_eq!(code(&out), 0);
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!(a_of(&rows[0]), vec![0, -4]);
    assert_eq!(rows[0]["class"]["kind"], "x2-q-factor");
    assert_eq!(rows[0]["real_root"], true);
}

#[test]
fn csv_output_for_q4_genus_two() {
    let out = weilpoly(&["enumerate", "--q", "4", "--g", "2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    let real_col = headers.iter().position(|h| h == "real_root").unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 101);
    assert_eq!(rows.iter().filter(|r| &r[real_col] == "true").count(), 17);
    assert!(rows.iter().any(|r| &r[2] == "-4" && &r[3] == "10"));
}

#[test]
fn cited_instance_is_a_member_without_real_roots() {
    let out = weilpoly(&["check", "--q", "4", "--g", "2", "--a", "-4,10"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["member"], true);
    assert_eq!(v["real_root"], false);
    let coeffs: Vec<i64> = v["coeffs"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(coeffs, vec![1, -4, 10, -16, 16]);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&weilpoly(&["check", "--q", "2", "--g", "1", "--a", "3"])), 1);
    assert_eq!(code(&weilpoly(&["check", "--q", "2", "--g", "2", "--a", "1"])), 2);
    assert_eq!(code(&weilpoly(&["enumerate", "--q", "2", "--g", "7"])), 2);
    assert_eq!(code(&weilpoly(&["enumerate", "--q", "2"])), 2);
    assert_eq!(code(&weilpoly(&["enumerate", "--q", "6", "--g", "2"])), 3);
    assert_eq!(code(&weilpoly(&["check", "--q", "12", "--g", "1", "--a", "0"])), 3);
    assert_eq!(code(&weilpoly(&["crosscheck", "--q", "3", "--g", "3", "--budget", "10"])), 6);
}

#[test]
fn classify_square_q() {
    let out = weilpoly(&["classify", "--q", "9", "--g", "3", "--a", "-18,135,-540"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["kind"], "sqrt-factors");
    assert_eq!(v["k"], 0);
    assert_eq!(v["l"], 3);
}

#[test]
fn enumerated_records_pass_check() {
    let out = weilpoly(&["enumerate", "--q", "3", "--g", "3"]);
    assert_eq!(code(&out), 0);
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 677);
    for r in rows.iter().step_by(23) {
        let a: Vec<String> = a_of(r).iter().map(|x| x.to_string()).collect();
        let out = weilpoly(&["check", "--q", "3", "--g", "3", "--a", &a.join(",")]);
        assert_eq!(code(&out), 0);
        let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_eq!(&v, r);
    }
}

#[test]
fn output_is_independent_of_job_count() {
    let one = weilpoly(&["enumerate", "--q", "2", "--g", "4", "--jobs", "1"]);
    let four = weilpoly(&["enumerate", "--q", "2", "--g", "4", "--jobs", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("weilpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w.jsonl");
    let file = weilpoly(&["enumerate", "--q", "3", "--g", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&file), 0);
    let direct = weilpoly(&["enumerate", "--q", "3", "--g", "2"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn crosscheck_agrees_and_printed_signs_do_not() {
    let ok = weilpoly(&["crosscheck", "--q", "3", "--g", "2"]);
    assert_eq!(code(&ok), 0);
    let v: Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["count_oracle"], v["count_theorem"]);
    let literal = weilpoly(&["crosscheck", "--q", "2", "--g", "2", "--paper-literal"]);
    assert_eq!(code(&literal), 5);
    let v: Value = serde_json::from_str(&stdout(&literal)).unwrap();
    let n = v["missing"].as_array().unwrap().len() + v["spurious"].as_array().unwrap().len();
    assert!(n > 0);
}

#[test]
fn low_precision_either_agrees_or_exits_4() {
    let reference = weilpoly(&["enumerate", "--q", "2", "--g", "5"]);
    assert_eq!(code(&reference), 0);
    let with_fallback = weilpoly(&["enumerate", "--q", "2", "--g", "5", "--prec", "16"]);
    assert_eq!(code(&with_fallback), 0);
    assert_eq!(with_fallback.stdout, reference.stdout);
    let strict = weilpoly(&["enumerate", "--q", "2", "--g", "5", "--prec", "16", "--no-exact-fallback"]);
    match code(&strict) {
        0 => assert_eq!(strict.stdout, reference.stdout),
        4 => {}
        c => panic!("exit {c}"),
    }
    let env = Command::new(env!("CARGO_BIN_EXE_weilpoly"))
        .args(["enumerate", "--q", "2", "--g", "4", "--no-exact-fallback"])
        .env("WEILPOLY_PREC", "16")
        .output()
        .unwrap();
    let default = weilpoly(&["enumerate", "--q", "2", "--g", "4"]);
    match code(&env) {
        0 => assert_eq!(env.stdout, default.stdout),
        4 => {}
        c => panic!("exit {c}"),
    }
}

#[test]
fn selftest_passes_and_detects_unsorted_order() {
    let ok = weilpoly(&["selftest"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    assert!(stdout(&ok).lines().all(|l| l.starts_with("PASS ")));
    let faulty = weilpoly(&["selftest", "--theta-order", "construction"]);
    assert_eq!(code(&faulty), 7);
    assert!(stdout(&faulty).lines().any(|l| l.starts_with("FAIL theta-sorting")));
    let low = weilpoly(&["selftest", "--prec", "16", "--no-exact-fallback"]);
    assert!(matches!(code(&low), 0 | 4), "exit {:?}", low.status);
}
