//! End-to-end checks of the command line: schemas, anchored values, exit
//! classes, and byte determinism of repeated runs.

use clap::Parser;
use satfarey::cli::{run, Cli};
use std::fs;
use std::path::Path;

fn run_args(args: &[&str]) -> Result<(), satfarey::cli::CliError> {
    let mut full = vec!["satfarey"];
    full.extend_from_slice(args);
    run(Cli::parse_from(full))
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn generate_writes_the_level_and_cross_checks_builders() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sf100.csv");
    run_args(&[
        "generate",
        "--q",
        "100",
        "--method",
        "both",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    let text = read(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("Q,idx,a,q,inv,h"));
    let first = lines.next().unwrap();
    assert_eq!(first, "100,1,1,98,1,100"); // gamma_1 = 1/(Q-2)
    let last = text.lines().last().unwrap();
    assert!(last.ends_with(",1,1,1,3"), "last row is 1/1: {last}");
}

#[test]
fn generate_small_level_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sf5.csv");
    run_args(&["generate", "--q", "5", "--out", out.to_str().unwrap()]).unwrap();
    assert_eq!(
        read(&out),
        "Q,idx,a,q,inv,h\n5,1,1,3,1,5\n5,2,1,2,1,4\n5,3,1,1,1,3\n"
    );
}

#[test]
fn phi_table_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phi.csv");
    run_args(&[
        "phi",
        "--from",
        "3",
        "--to",
        "20",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    let text = read(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 19);
    assert_eq!(rows[0], "Q,phi,S");
    assert_eq!(rows[1], "3,1,1");
    let phis: Vec<&str> = rows[1..]
        .iter()
        .map(|r| r.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(
        phis,
        [
            "1", "1", "1", "1", "2", "1", "1", "4", "1", "1", "4", "2", "3", "4", "1", "4", "4",
            "5"
        ]
    );
    assert_eq!(rows[18], "20,5,41");
}

#[test]
fn pairs_csv_row_count_and_known_chain() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pairs.csv");
    run_args(&["pairs", "--q", "100", "--out", out.to_str().unwrap()]).unwrap();
    let text = read(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "Q,q1,q2,r,mediant_pos,cell,wcell");
    let level = satfarey::core::level::build_filter(100).unwrap();
    assert_eq!(rows.len() as u64 - 1, level.s() - 1);
    assert!(
        rows.contains(&"100,27,14,9,4,V3,W9_4"),
        "the long chain row"
    );
    // r = 1 rows leave the mediant position empty and sit in V1.
    assert!(rows.iter().any(|r| {
        let mut cols = r.split(',');
        cols.nth(3) == Some("1") && cols.next() == Some("") && cols.next() == Some("V1")
    }));
}

#[test]
fn delta_csv_matches_insertion_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("delta.csv");
    run_args(&["delta", "--q", "16", "--out", out.to_str().unwrap()]).unwrap();
    let text = read(&out);
    assert!(text.starts_with("Q,kind,a,q\n"));
    let inserted: Vec<&str> = text.lines().filter(|l| l.contains(",inserted,")).collect();
    assert_eq!(inserted.len(), 4); // phi(16) = 4
    assert!(inserted.contains(&"16,inserted,5,9"));
    let left: Vec<&str> = text
        .lines()
        .filter(|l| l.contains(",vanished_left,"))
        .collect();
    let right: Vec<&str> = text
        .lines()
        .filter(|l| l.contains(",vanished_right,"))
        .collect();
    assert_eq!(left.len(), 4);
    assert_eq!(right.len(), 4);
}

#[test]
fn index_sum_and_count_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("index.csv");
    run_args(&["index-sum", "--q", "20", "--out", out.to_str().unwrap()]).unwrap();
    assert_eq!(
        read(&out),
        "Q,index_sum,S,three_s_minus_one\n20,122,41,122\n"
    );

    let out = dir.path().join("count.csv");
    run_args(&[
        "count",
        "--q",
        "300",
        "--beta",
        "0.25,1/2,1",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    let text = read(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "Q,beta,count,predicted,ratio");
    assert_eq!(rows.len(), 4);
    let level = satfarey::core::level::build_filter(300).unwrap();
    let half = satfarey::ratio(1, 2);
    let expect = level.count_interval(half);
    assert!(rows[2].starts_with(&format!("300,0.5,{expect},")));
}

#[test]
fn regions_row_for_the_known_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("regions.csv");
    run_args(&[
        "regions",
        "--q",
        "100",
        "--q1",
        "27",
        "--q2",
        "14",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    let text = read(&out);
    assert_eq!(text.lines().next(), Some("Q,q1,q2,in_v,cells,wcells"));
    assert_eq!(text.lines().nth(1), Some("100,27,14,true,V3,W9_4"));
}

#[test]
fn density_report_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("density.json");
    run_args(&["density", "--q", "400", "--out", out.to_str().unwrap()]).unwrap();
    let text = read(&out);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["q"], 400);
    assert_eq!(value["entries"].as_array().unwrap().len(), 6);
    assert!(value["fitted_constant"].as_f64().unwrap() > 0.0);
    for e in value["entries"].as_array().unwrap() {
        assert!(e["cell"].as_u64().unwrap() >= 1 && e["cell"].as_u64().unwrap() <= 3);
        assert!(e["theoretical"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn density_accepts_box_files() {
    let dir = tempfile::tempdir().unwrap();
    let boxes = dir.path().join("boxes.json");
    fs::write(
        &boxes,
        r#"[["0.6", "0.7", "0.5", "0.55"], [0.25, 0.35, 0.55, 0.6]]"#,
    )
    .unwrap();
    let out = dir.path().join("density.json");
    run_args(&[
        "density",
        "--q",
        "300",
        "--boxes-file",
        boxes.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    let value: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(value["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn farey_baseline_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("baseline.csv");
    run_args(&[
        "farey-baseline",
        "--q",
        "500",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    let text = read(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(
        rows[0],
        "Q,x0,x1,y0,y1,inside,total,fraction,area,fraction_over_area"
    );
    assert_eq!(rows.len(), 5);
    for row in &rows[1..] {
        let c: Vec<&str> = row.split(',').collect();
        let ratio: f64 = c[9].parse().unwrap();
        assert!((ratio - 2.0).abs() < 0.25, "fraction/area = {ratio}");
    }
}

#[test]
fn verify_command_passes_on_small_ranges() {
    run_args(&["verify", "--q-max", "60"]).unwrap();
}

#[test]
fn exit_classes() {
    // Usage errors: order below 3, malformed box, bad beta.
    assert_eq!(
        run_args(&["generate", "--q", "2"]).unwrap_err().exit_code(),
        2
    );
    assert_eq!(
        run_args(&["density", "--q", "100", "--box", "0.5,0.6"])
            .unwrap_err()
            .exit_code(),
        2
    );
    assert_eq!(
        run_args(&["count", "--q", "100", "--beta", "1.5"])
            .unwrap_err()
            .exit_code(),
        2
    );
    // A straddling box is unusable input.
    assert_eq!(
        run_args(&[
            "density",
            "--q",
            "100",
            "--box",
            "0.4,0.6,0.45,0.55",
            "--box",
            "0.6,0.7,0.5,0.55"
        ])
        .unwrap_err()
        .exit_code(),
        2
    );
}

#[test]
fn outputs_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (cmd, out) in [("pairs", &a), ("pairs", &b)] {
        run_args(&[cmd, "--q", "250", "--out", out.to_str().unwrap()]).unwrap();
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let c = dir.path().join("c.json");
    let d = dir.path().join("d.json");
    for out in [&c, &d] {
        run_args(&["density", "--q", "350", "--out", out.to_str().unwrap()]).unwrap();
    }
    assert_eq!(fs::read(&c).unwrap(), fs::read(&d).unwrap());
}
