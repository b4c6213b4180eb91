use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_lexdepth");

fn lexdepth(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("STAIRCASE_SEED").output().expect("spawn lexdepth")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn binomial(n: u32, k: u32) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

#[test]
fn help_and_usage_errors() {
    let o = lexdepth(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify-paper"));
    assert_eq!(lexdepth(&["--bogus"]).status.code(), Some(1));
    assert_eq!(lexdepth(&["classify"]).status.code(), Some(1));
    assert_eq!(lexdepth(&["--jobs", "0", "survey"]).status.code(), Some(1));

    let o = lexdepth(&["classify", "lex(2; 1, )"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 1, column"), "{}", stderr(&o));

    let o = lexdepth(&["eval", "mono(x) + sgid(2,3; 2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("K[x,y]"));

    let o = lexdepth(&["--format", "csv", "classify", "lex(2; 1)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_matches_golden() {
    let o = lexdepth(&["--format", "json", "classify", "lex(2; 1,3)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), golden("classify_lex_2_13.json"));
}

#[test]
fn classify_rejects_non_lex() {
    let o = lexdepth(&["classify", "mono(x^5, x^3*y^3, x*y^7, y^9)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not lex-segment"));
}

#[test]
fn depths_of_non_lex_ideal() {
    let o = lexdepth(&["--format", "json", "depths", "mono(x^5,x^3*y^3,x*y^7,y^9)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["gr"]["status"], "zero");
    assert_eq!(v["gr"]["witness"]["n"], 1);
    assert_eq!(v["gr"]["witness"]["monomial"], "x^2*y^6");
    assert_eq!(v["fiber"]["status"], "positive-up-to-horizon");
}

#[test]
fn non_cm_lex_ideal() {
    // (x^3, x^2 y^2, x y^5, y^6): Newton e0 = 18, colength 13
    let o = lexdepth(&["--format", "json", "classify", "lex(3; 2,5,6)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["e0"].as_i64(), v["colength"].as_i64()), (Some(18), Some(13)));
    assert!(v["e1"].as_i64().unwrap() > 18 - 13);
    assert_eq!(v["cm_gr"], false);
    assert_eq!(v["r_leq_1"], "no");
    assert_eq!(v["depth_gr"], v["depth_fiber"]);
    assert_eq!(v["flags"], serde_json::json!([]));
}

#[test]
fn inputs_from_stdin_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ideal.txt");
    fs::write(&path, "I = lex(2; 1,3)\nI\n").unwrap();
    let from_file = lexdepth(&["--format", "json", "classify", &format!("@{}", path.display())]);
    assert_eq!(from_file.status.code(), Some(0));

    let mut child = Command::new(BIN)
        .args(["--format", "json", "classify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"lex(2; 1,3)\n").unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    assert_eq!(from_stdin.status.code(), Some(0));

    let a: Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    let b: Value = serde_json::from_str(&stdout(&from_stdin)).unwrap();
    assert_eq!(a["canonical"], b["canonical"]);
    assert_eq!(a["e1"], b["e1"]);

    let missing = lexdepth(&["classify", "@/nonexistent/ideal.txt"]);
    assert_eq!(missing.status.code(), Some(4));
}

#[test]
fn seed_from_environment_and_flag() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(BIN);
        c.env_remove("STAIRCASE_SEED");
        if let Some(s) = env {
            c.env("STAIRCASE_SEED", s);
        }
        if let Some(s) = flag {
            c.args(["--seed", s]);
        }
        let o = c.args(["--format", "json", "reduction", "lex(3; 1,2,6)"]).output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        serde_json::from_str::<Value>(&stdout(&o)).unwrap()
    };
    let env7 = run(Some("7"), None);
    let flag7 = run(None, Some("7"));
    assert_eq!(env7, flag7);
    assert_eq!(env7["seed"], 7);
    assert_eq!(run(Some("7"), Some("8"))["seed"], 8);
    assert_ne!(run(None, Some("8"))["pairs"], flag7["pairs"]);
}

#[test]
fn eval_prints_expression_values() {
    let o = lexdepth(&["eval", "I = mono(x^3, x^2*y); I^2 : mono(x^3); I"]);
    assert_eq!(stdout(&o), "mono(x^3, x^2*y, x*y^2)\nmono(x^3, x^2*y)\n");
    let o = lexdepth(&["--format", "json", "eval", "J = sgid(6,11,15,31; 6)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"][0], "sgid(6, 11, 15, 31; 6)");
}

#[test]
fn survey_rows_and_worker_independence() {
    let one = lexdepth(&["survey", "--dmax", "3", "--amax", "4", "--jobs", "1"]);
    let four = lexdepth(&["survey", "--dmax", "3", "--amax", "4", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(four.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let expected: usize = (1..=3).map(|d| (0..=d).map(|k| binomial(4, k)).sum::<usize>()).sum();
    assert_eq!(stdout(&one).lines().count(), expected + 1);

    assert_eq!(stdout(&lexdepth(&["survey", "--dmax", "2", "--amax", "3"])), golden("survey_2_3.csv"));
    let text = lexdepth(&["--format", "text", "survey", "--dmax", "2", "--amax", "3"]);
    assert_eq!(stdout(&text).lines().count(), 12);
}

#[test]
fn survey_output_file_and_io_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let o = lexdepth(&["survey", "--dmax", "2", "--amax", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), golden("survey_2_3.csv"));

    let bad = dir.path().join("missing/rows.csv");
    let o = lexdepth(&["survey", "--dmax", "2", "--amax", "3", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn cache_replays_stored_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache", cache, "--format", "json", "classify", "lex(4; 1,2,3,8)"];
    let first = lexdepth(&args);
    let second = lexdepth(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let file = dir.path().join("cache.jsonl");
    assert_eq!(fs::read_to_string(&file).unwrap().lines().count(), 1);

    // a different horizon is a different entry
    let other = lexdepth(&["--cache", cache, "--horizon", "9", "classify", "lex(4; 1,2,3,8)"]);
    assert_eq!(other.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&file).unwrap().lines().count(), 2);

    // a hit is served from the file, not recomputed
    let text = fs::read_to_string(&file).unwrap();
    let first_line = text.lines().next().unwrap();
    let mut entry: Value = serde_json::from_str(first_line).unwrap();
    let mut value: Value = serde_json::from_str(entry["value"].as_str().unwrap()).unwrap();
    value["mu"] = 999.into();
    entry["value"] = value.to_string().into();
    fs::write(&file, text.replacen(first_line, &entry.to_string(), 1)).unwrap();
    let replay = lexdepth(&args);
    let v: Value = serde_json::from_str(&stdout(&replay)).unwrap();
    assert_eq!(v["mu"], 999);

    // a torn final line is tolerated
    let mut f = fs::OpenOptions::new().append(true).open(&file).unwrap();
    f.write_all(b"{\"key\":\"half").unwrap();
    drop(f);
    let again = lexdepth(&args);
    assert_eq!(again.status.code(), Some(0));
    assert!(stderr(&again).is_empty(), "{}", stderr(&again));
}

#[test]
fn survey_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache", cache, "--jobs", "2", "survey", "--dmax", "2", "--amax", "3"];
    let cold = lexdepth(&args);
    let warm = lexdepth(&args);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(stdout(&cold), golden("survey_2_3.csv"));
    let lines = fs::read_to_string(dir.path().join("cache.jsonl")).unwrap().lines().count();
    assert_eq!(lines, 11);
}

/// A cheap fixture: full default values, with the survey-scale sections
/// shrunk so the whole suite runs in a moment.
fn small_fixture() -> Value {
    let mut fx: Value = serde_json::from_str(lexdepth::verify::DEFAULT_FIXTURES).unwrap();
    fx["survey"] = serde_json::json!({ "dmax": 3, "amax": 4, "horizon": 6, "ideals": 28 });
    fx["lemmas"]["samples"] = 5.into();
    fx["concordance"]["samples"] = 5.into();
    fx["oracles"]["samples"] = 20.into();
    fx["transfer"]["samples"] = 10.into();
    fx
}

#[test]
fn tampered_fixture_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fx.json");

    fs::write(&path, small_fixture().to_string()).unwrap();
    let ok = lexdepth(&["verify-paper", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).lines().filter(|l| l.starts_with("PASS ")).count() >= 30);

    let mut fx = small_fixture();
    fx["semigroup"]["length_i2_over_ji"] = 2.into();
    fs::write(&path, fx.to_string()).unwrap();
    let bad = lexdepth(&["--format", "json", "verify-paper", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&bad)).unwrap();
    assert_eq!(v["failed"], 1);
    let failing: Vec<&Value> = v["assertions"].as_array().unwrap().iter().filter(|a| a["pass"] == false).collect();
    assert_eq!(failing[0]["id"], "F3.length");

    fs::write(&path, "{ not json").unwrap();
    assert_eq!(lexdepth(&["verify-paper", "--fixtures", path.to_str().unwrap()]).status.code(), Some(1));
}
