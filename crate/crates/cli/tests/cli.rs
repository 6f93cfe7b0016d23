use std::process::{Command, Output};

use dn_core::solver::DnResultJson;
use dn_core::verifier::{CsvRow, Report};
use serde_json::Value;

fn dn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dn"))
        .args(args)
        .env_remove("DN_BUDGET_MS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exact_emits_one_json_line_that_round_trips() {
    let o = dn(&["exact", "--case", "d", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    let parsed: DnResultJson = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(parsed.value, Some(3));
    assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim());
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["evidence"], "exhaustive");
    assert_eq!(v["case"], "d");
}

#[test]
fn construct_lists_classes_in_order() {
    let o = dn(&["construct", "--case", "e", "--n", "5", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let classes: Vec<&str> = text.lines().filter(|l| l.starts_with('P')).collect();
    assert_eq!(classes.len(), 2, "{text}");
    assert!(classes[0].starts_with("P1 = {v"));
}

#[test]
fn construct_json_reports_distinguishing() {
    let o = dn(&["construct", "--case", "h", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classes"], 3);
    assert_eq!(v["distinguishing"], true);
    assert_eq!(
        v["partition"]["classes"][0],
        serde_json::json!(["v1", "v2", "u1"])
    );
}

#[test]
fn verify_table_sweep_passes() {
    let o = dn(&["verify", "--table1", "--n", "3..5", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("case e line 2 n=5"));
}

#[test]
fn verify_csv_has_header_and_sorted_rows() {
    let o = dn(&[
        "verify",
        "--table1",
        "--n",
        "3..4",
        "--mode",
        "construction",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("case,line,n,expected,computed,evidence,pass,ms")
    );
    let rows: Vec<CsvRow> = csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert!(rows
        .iter()
        .all(|r| r.pass && r.evidence == "construction_only"));
    let keys: Vec<(String, String, usize)> = rows
        .iter()
        .map(|r| (r.case.clone(), r.line.clone(), r.n.parse().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(rows.len(), 17);
}

#[test]
fn verify_json_lines_round_trip() {
    let o = dn(&["verify", "--case", "i", "--n", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let reports: Vec<Report> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(reports.len(), 2);
    for (r, line) in reports.iter().zip(text.lines()) {
        assert_eq!(serde_json::to_string(r).unwrap(), line);
        assert_eq!(r.computed, "3");
    }
}

#[test]
fn verify_lemmas_and_probe() {
    let o = dn(&[
        "verify",
        "--lemmas",
        "--classify",
        "--n",
        "2..3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let subjects: Vec<String> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<Report>(l).unwrap().subject)
        .collect();
    for s in [
        "partition_lemma",
        "diag_conjugacy",
        "remark",
        "classification",
        "classification_probe",
    ] {
        assert!(subjects.iter().any(|x| x == s), "{s}");
    }
}

#[test]
fn exists_query() {
    let o = dn(&["exact", "--case", "d", "--n", "4", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v["result"].as_str(), v["nodes"].as_u64()),
        (Some("refuted"), Some(128))
    );
    let o = dn(&["exact", "--case", "d", "--n", "4", "--k", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], "found");
}

#[test]
fn budget_exhaustion_exits_one() {
    let o = dn(&["exact", "--case", "a", "--n", "5", "--budget-nodes", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["evidence"], "construction_only");
    assert_eq!(v["value"], Value::Null);
    assert_eq!(v["hi"], 6);

    let o = Command::new(env!("CARGO_BIN_EXE_dn"))
        .args(["exact", "--case", "a", "--n", "6"])
        .env("DN_BUDGET_MS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn use_theory_gives_the_same_value() {
    let o = dn(&[
        "exact",
        "--case",
        "e",
        "--line",
        "2",
        "--n",
        "6",
        "--use-theory",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 3);
}

#[test]
fn group_info_reports_order() {
    let o = dn(&["group-info", "--case", "f", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], "1440");
    assert_eq!(v["edge_transitive"], true);
    let o = dn(&[
        "group-info",
        "--case",
        "c",
        "--line",
        "2",
        "--n",
        "3",
        "--format",
        "text",
    ]);
    assert!(stdout(&o).contains("|G| = 36"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    let o = dn(&["exact", "--case", "f", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("case f requires n=6"));
    for args in [
        &["exact", "--case", "z", "--n", "5"][..],
        &["exact", "--case", "a", "--line", "3", "--n", "5"],
        &["exact", "--case", "a", "--line", "2", "--n", "5"],
        &["verify", "--n", "7..3"],
        &["verify", "--case", "h", "--n", "5..6"],
        &["exact", "--case", "a", "--n", "4", "--k", "0"],
        &[],
    ] {
        assert_eq!(dn(args).status.code(), Some(2), "{args:?}");
    }
}
