use std::process::{Command, Output};

fn steiner6(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steiner6"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn check_reports_highest_failure() {
    let o = steiner6(&["check", "6", "12", "7", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["admissible"], false);
    assert_eq!(v["first_failure"], "5");
    assert_eq!(v["b"], "132");
}

#[test]
fn check_equality_triple_passes() {
    let o = steiner6(&["check", "5", "24", "8", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("cameron equality (known triple)"));
    assert!(text.trim_end().ends_with("\nadmissible"));
}

#[test]
fn check_trivial_still_counts() {
    let o = steiner6(&["check", "6", "8", "8", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["trivial"], true);
    assert_eq!(v["b"], "1");
    assert_eq!(v["r"], "1");
}

#[test]
fn check_usage_errors() {
    for args in [
        &["check", "6", "7", "8", "1"][..],
        &["check", "6", "12", "7.5", "1"],
        &["check", "6", "12", "-7", "1"],
        &["check", "6", "12", "7"],
        &["check", "0", "12", "7", "1"],
        &["check", "6", "12", "7", "0"],
    ] {
        assert_eq!(steiner6(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn eliminate_text_row() {
    let o = steiner6(&["eliminate", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "affine.1.v32 k=7 eliminated divisor 29"));
}

#[test]
fn eliminate_count_matches_golden() {
    let golden = include_str!("../../core/tests/golden/suite.jsonl");
    let o = steiner6(&["eliminate"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden);
}

#[test]
fn eliminate_fault_injection_exits_1() {
    let o = steiner6(&["eliminate", "--skip-filter", "divisibility"]);
    assert_eq!(o.status.code(), Some(1));
    let o = steiner6(&["eliminate", "--skip-filter", "divisibility", "--self-check"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eliminate_writes_file_and_self_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certs.jsonl");
    let o = steiner6(&["eliminate", "--self-check", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 106);
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("certs.jsonl");
    let o = steiner6(&["eliminate", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unknown_flags_exit_2() {
    assert_eq!(steiner6(&["eliminate", "--bogus"]).status.code(), Some(2));
    assert_eq!(steiner6(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(steiner6(&["eliminate", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(steiner6(&["eliminate", "--skip-filter", "nope"]).status.code(), Some(2));
}

#[test]
fn search_open_s7_c1() {
    let o = steiner6(&["search-open", "--s-max", "7", "--c", "1", "--u-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    let cells: Vec<(String, String)> = lines
        .iter()
        .filter(|v| v["kind"] == "cell")
        .map(|v| (v["cell"]["p"].as_str().unwrap().into(), v["cell"]["s"].as_str().unwrap().into()))
        .collect();
    assert_eq!(cells, [("2".into(), "7".into()), ("3".into(), "7".into())]);
    let q_bits: Vec<&str> = lines
        .iter()
        .filter(|v| v["kind"] == "cell")
        .map(|v| v["outcome"]["q_bits"].as_str().unwrap())
        .collect();
    // 2^7 has 8 bits, 3^7 = 2187 has 12
    assert_eq!(q_bits, ["8", "12"]);
}

#[test]
fn search_open_bit_limit_skips() {
    let o = steiner6(&["search-open", "--q-bit-limit", "64", "--s-max", "1000", "--u-max", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("cell p=2 s=997 u=1 c=1 skipped"));
    assert!(text.contains("cell p=2 s=61 u=1 c=1 searched"));
    let summary = text.lines().last().unwrap();
    assert!(summary.starts_with("summary cells=2580 searched=67 skipped=2513"), "{summary}");
}

#[test]
fn search_open_free_c() {
    let o = steiner6(&["search-open", "--s-max", "50", "--u-max", "1", "--c-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let last = json_lines(&o).pop().unwrap();
    assert_eq!(last["kind"], "summary");
    assert_eq!(last["bounds"]["c_set"].as_array().unwrap().len(), 8);
    assert_eq!(last["summary"]["hits"], "0");
}

#[test]
fn search_open_bad_bounds_exit_2() {
    for args in [
        &["search-open", "--s-max", "6"][..],
        &["search-open", "--u-max", "0"],
        &["search-open", "--p", "5"],
        &["search-open", "--c", "0"],
        &["search-open", "--c", "1", "--c-max", "3"],
        &["search-open", "--s-max", "ten"],
    ] {
        assert_eq!(steiner6(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn groups_commands() {
    let o = steiner6(&["groups", "order", "PSL2", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["order"], "660");
    let o = steiner6(&["groups", "order", "Mathieu", "23", "--format", "text"]);
    assert_eq!(stdout(&o).trim(), "10200960");
    let o = steiner6(&["groups", "list", "--degree", "32"]);
    let fams: Vec<String> = json_lines(&o)
        .iter()
        .map(|v| v["family"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(fams, ["AGammaL1", "SLd2", "Alt", "PSL2", "PGL2"]);
    let o = steiner6(&["groups", "list"]);
    assert!(stdout(&o).lines().any(|l| l == "PGammaL2"));
    assert_eq!(steiner6(&["groups", "order", "PSL2", "12"]).status.code(), Some(2));
    assert_eq!(steiner6(&["groups", "order", "Nope", "12"]).status.code(), Some(2));
}
