use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use nacount::cli::{check_cover_dump, CliError, RunReport, Rows};
use nacount::field_tower::TadicBase;

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn nacount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nacount")).args(args).output().expect("binary runs")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nacount-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn unit_ideal_cannot_be_normalized() {
    let out = nacount(&["normalize", "--problem", problem("unit_ideal_p5.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unit_ideal_counts_nothing() {
    let out = nacount(&["count", "--problem", problem("unit_ideal_p5.json").to_str().unwrap()]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.split(',').nth(2) == Some("0")), "{csv}");
}

#[test]
fn low_ceiling_exits_2() {
    let p = problem("geometric_f2.json");
    let out = nacount(&["count", "--problem", p.to_str().unwrap(), "--prec-ceiling", "4", "--heights", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precision ceiling"));
}

#[test]
fn bad_input_exits_1() {
    let out = nacount(&["count", "--problem", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(1));
    let p = problem("graph_f2.json");
    let out = nacount(&["count", "--problem", p.to_str().unwrap(), "--epsilon", "half"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(CliError::Invariant("x".into()).exit_code(), 4);
    assert_eq!(CliError::Unsupported("x".into()).exit_code(), 3);
    assert_eq!(CliError::PrecisionCeiling { height: "2".into(), ceiling: 8, ambiguous: 1 }.exit_code(), 2);
}

#[test]
fn cover_dumps_audit_every_point() {
    let dir = scratch("cover");
    let p = problem("parabola_f3.json");
    let out = nacount(&["cover", "--problem", p.to_str().unwrap(), "--out", dir.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: RunReport = serde_json::from_value(read_json(&dir.join("report.json"))).unwrap();
    let rows = report.count_rows().unwrap();
    assert!(!rows.is_empty());
    let b = TadicBase::new(3).unwrap();
    for row in rows {
        let dump = read_json(&dir.join(format!("cover_H{}.json", row.height)));
        assert_eq!(check_cover_dump(&b, &dump).unwrap(), row.points);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_and_json_agree() {
    let p = problem("sqrt_tx_f2.json");
    let csv = nacount(&["count", "--problem", p.to_str().unwrap()]);
    let json = nacount(&["count", "--problem", p.to_str().unwrap(), "--format", "json"]);
    let report: RunReport = serde_json::from_slice(&json.stdout).unwrap();
    let mut rd = csv::Reader::from_reader(csv.stdout.as_slice());
    let points: Vec<usize> = rd.records().map(|r| r.unwrap()[2].parse().unwrap()).collect();
    let expected: Vec<usize> = report.count_rows().unwrap().iter().map(|r| r.points).collect();
    assert_eq!(points, expected);
}

#[test]
fn worker_count_does_not_change_results() {
    let p = problem("geometric_f2.json");
    let run = |w: &str| {
        let out = nacount(&["count", "--problem", p.to_str().unwrap(), "--format", "json", "--workers", w, "--heights", "2,4,8,16"]);
        assert!(out.status.success());
        serde_json::from_slice::<RunReport>(&out.stdout).unwrap().fingerprint()
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn normalize_reports_witness_rows() {
    let p = problem("parabola_f3.json");
    let out = nacount(&["normalize", "--problem", p.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let report: RunReport = serde_json::from_slice(&out.stdout).unwrap();
    let Rows::Normalize(rows) = report.rows else { panic!("wrong kind") };
    assert!(rows.iter().all(|r| r.exact_monic && r.degree >= 1));
}

#[test]
fn bench_is_deterministic() {
    let p = problem("parabola_f3.json");
    let out = nacount(&["bench", "--problem", p.to_str().unwrap(), "--format", "json", "--heights", "3,9"]);
    assert!(out.status.success());
    let report: RunReport = serde_json::from_slice(&out.stdout).unwrap();
    let Rows::Bench(rows) = report.rows else { panic!("wrong kind") };
    assert!(rows.iter().all(|r| r.deterministic));
}
