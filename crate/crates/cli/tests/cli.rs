use std::process::{Command, Output};

use serde_json::Value;
use simplest_thue::solver::VerifyReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simplest-thue")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_json_round_trips() {
    let o = run(&["solve", "--family", "quartic", "--t", "4", "--m", "1", "--mode", "cited", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    let report: VerifyReport = serde_json::from_value(v["report"].clone()).unwrap();
    let cell = &report.cells[0];
    assert!(cell.passed());
    let sols: Vec<String> = cell.report.as_ref().unwrap().solutions.iter().map(|p| p.to_string()).collect();
    for want in ["(2, 3)", "(-3, 2)", "(2*w, 3*w)", "(-3*w, 2*w)"] {
        assert!(sols.iter().any(|s| s == want), "{want} missing from {sols:?}");
    }
    let again = serde_json::to_value(&report).unwrap();
    assert_eq!(again, v["report"]);
}

#[test]
fn output_does_not_depend_on_jobs() {
    let args = ["verify", "--family", "sextic", "--t", "-2..2", "--m", "1,2,3", "--format", "json"];
    let one = run(&[&args[..], &["--jobs", "1"]].concat());
    let four = run(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn excluded_t_is_skipped_in_ranges_and_rejected_alone() {
    let o = run(&["verify", "--family", "quartic", "--t", "-4..-2", "--m", "2", "--format", "csv"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipping reducible t = [-3]"));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "t,m,solved_t,preset,solutions,completeness,mismatches,error");
    assert_eq!(lines.count(), 2);

    let o = run(&["solve", "--family", "quartic", "--t", "3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_cells_set_the_exit_status() {
    // without the box search the small-t Eisenstein case cannot be closed
    let o = run(&["solve", "--family", "sextic", "--t", "2", "--m", "3", "--mode", "cited"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("neither covered by a cited lemma nor searched"));
}

#[test]
fn non_square_free_m_is_rejected() {
    let o = run(&["solve", "--family", "quartic", "--t", "2", "--m", "12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("square-free"));
}

#[test]
fn bounds_and_presets() {
    let o = run(&["bounds", "--family", "sextic", "--scenario", "m1", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rules = v["results"][0]["rules"].as_array().unwrap();
    assert_eq!(rules.len(), 4);
    assert_eq!(rules[1]["id"], "IIA2");

    let o = run(&["presets", "--format", "csv"]);
    assert!(stdout(&o).contains("quartic,m3_small_t,0.0348,0.0005,0.8284,4.6114"));

    let o = run(&["bounds", "--audit", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let flagged = stdout(&o).lines().filter(|l| l.ends_with(",true")).count();
    assert_eq!(flagged, 3);
}

#[test]
fn roots_and_oracle() {
    let o = run(&["roots", "--family", "quartic", "--t", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"][0]["roots"].as_array().unwrap().len(), 4);

    let o = run(&["oracle", "--family", "sextic", "--t", "7", "--d-max", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"][0]["search"]["completeness"], "box_bounded");
    assert_eq!(v["results"][0]["agrees_with_cited"], true);
    assert_eq!(v["results"][0]["search"]["pairs"].as_array().unwrap().len(), 6);
}
