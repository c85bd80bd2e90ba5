use std::path::PathBuf;
use std::process::{Command, Output};

fn knodel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knodel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("knodel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gen_graph6_matches_reference_encoder() {
    // string produced by networkx for KG_8
    let o = knodel(&["gen", "8", "--format", "graph6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "GkCilO");
}

#[test]
fn gen_edge_list_header() {
    let o = knodel(&["gen", "20"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("20 40"));
    assert_eq!(text.lines().count(), 41);
}

#[test]
fn construct_then_verify_file() {
    let o = knodel(&["construct", "1152"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with(r#"{"schema":"knodel-records","version":1}"#));
    assert_eq!(text.lines().count(), 3);
    let path = scratch("certs.jsonl");
    std::fs::write(&path, &text).unwrap();
    let v = knodel(&["verify", "--set", path.to_str().unwrap()]);
    assert!(v.status.success(), "{}", String::from_utf8_lossy(&v.stderr));
    assert_eq!(stdout(&v).matches(r#""dominating":true"#).count(), 2);
}

#[test]
fn construct_rejects_bad_witness() {
    let o = knodel(&["construct", "20", "--p", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_inline_sets() {
    let ok = knodel(&["verify", "8", "--set", "0,5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains(r#""efficient":true"#));
    let bad = knodel(&["verify", "8", "--set", "0 1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains(r#""vertices":[4,5]"#));
    let out_of_range = knodel(&["verify", "8", "--set", "0,9"]);
    assert_eq!(out_of_range.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(knodel(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(knodel(&["gen", "7"]).status.code(), Some(2));
    assert_eq!(knodel(&["scan", "--from", "9", "--to", "20"]).status.code(), Some(2));
    assert_eq!(knodel(&["exact"]).status.code(), Some(2));
}

#[test]
fn exact_knodel_and_edge_file() {
    let o = knodel(&["exact", "30"]);
    assert!(stdout(&o).contains(r#""gamma":6"#));
    let ex = knodel(&["exact", "16", "--method", "exhaustive"]);
    assert!(stdout(&ex).contains(r#""gamma":4"#));

    // Petersen graph, γ = 3
    let mut dimacs = String::from("c petersen\np edge 10 15\n");
    for (u, v) in [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
        (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
        (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
    ] {
        dimacs.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    let path = scratch("petersen.dimacs");
    std::fs::write(&path, dimacs).unwrap();
    let o = knodel(&["exact", "--edges", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(r#""gamma":3"#));
}

#[test]
fn exact_reports_inconclusive_on_tiny_budget() {
    let o = knodel(&["exact", "96", "--max-nodes", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(r#""lower""#));
}

#[test]
fn scan_table_and_breach_exit_code() {
    let o = knodel(&["scan", "--from", "14", "--to", "20", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# knodel-scan-table v1"));
    assert_eq!(
        lines.next(),
        Some("n\tdegree\twitness\tlb_berge\tlb_prop2\tub_best\tub_src\tgamma\tconj1\tconj2\tslack")
    );
    assert_eq!(lines.count(), 4);

    // γ(KG_12) = 4 exceeds ⌈12/4⌉
    let o = knodel(&["scan", "--from", "10", "--to", "12"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scan_merge_prefers_solved_records() {
    let first = scratch("first.jsonl");
    let o = knodel(&[
        "scan", "--from", "14", "--to", "20", "--oracle-max", "0",
        "--output", first.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(!std::fs::read_to_string(&first).unwrap().contains(r#""gamma":4"#));
    let o = knodel(&[
        "scan", "--from", "16", "--to", "22", "--conjectures", "--merge",
        first.to_str().unwrap(), "--summary",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 5);
    assert!(text.contains(r#""n":14"#) && text.contains(r#""n":22"#));
    assert!(String::from_utf8_lossy(&o.stderr).contains("conj1 refuted        n=22 q=5"));
}

#[test]
fn heuristic_sum_at_three() {
    let o = knodel(&["heuristic-sum", "--limit", "3"]);
    assert_eq!(stdout(&o).lines().next(), Some("0.500000000000"));
}
