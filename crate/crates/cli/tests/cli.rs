use std::process::{Command, Output};

use serde_json::Value;
use somos_cli::{dispatch, parse, Report};

fn somos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_somos"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = somos(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_of(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    v["error"].clone()
}

const UNIT4: [&str; 8] = [
    "--k", "4", "--alpha", "1", "--beta", "1", "--init", "1,1,1,1",
];

#[test]
fn seq_window_ends_with_8209() {
    let mut args = vec!["seq"];
    args.extend(UNIT4);
    args.extend(["--from", "1", "--to", "12"]);
    let v = json_ok(&args);
    let terms = v["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 12);
    assert_eq!(terms.last().unwrap(), "8209");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["config"]["command"], "seq");
}

#[test]
fn gaps_of_two() {
    let mut args = vec!["gaps"];
    args.extend(UNIT4);
    args.extend(["--p", "2", "--rmax", "2", "--from", "-50", "--to", "120"]);
    let v = json_ok(&args);
    let reports = v["result"]["reports"].as_array().unwrap();
    assert_eq!(reports[0]["gap"], 5);
    assert_eq!(reports[0]["is_ap"], true);
    assert!(reports[1]["occurrences"].as_array().unwrap().is_empty());
}

#[test]
fn printed_curve_point_has_order_seven() {
    let v = json_ok(&[
        "curve-order",
        "--p",
        "5",
        "--c",
        "4,0,-12428112196/19683,1385503884676628/14348907",
        "--x",
        "55750/243",
        "--y",
        "2",
    ]);
    assert_eq!(v["result"]["order"], 7);
}

#[test]
fn absent_prime_gives_empty_occurrences() {
    let v = json_ok(&[
        "gaps", "--p", "5", "--rmax", "1", "--from", "1", "--to", "40",
    ]);
    let r = &v["result"]["reports"][0];
    assert_eq!(r["occurrences"], Value::Array(vec![]));
    assert_eq!(r["verdict"], "inconclusive");
}

#[test]
fn robinson_csv_has_one_row_per_prime() {
    let out = somos(&["robinson", "--format", "csv", "--primes", "2,3,5,7,11"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert!(rdr.headers().unwrap().iter().any(|h| h == "gap_1"));
    assert_eq!(rdr.records().count(), 5);
}

#[test]
fn config_errors_name_the_field() {
    let out = somos(&["gaps", "--p", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let e = error_of(&out);
    assert_eq!(e["kind"], "config");
    assert_eq!(e["field"], "p");

    let out = somos(&["seq", "--alpha", "1/0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["field"], "alpha");

    let out = somos(&["seq", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["field"], "bogus");
}

#[test]
fn math_errors_carry_kind_and_index() {
    let out = somos(&[
        "seq", "--alpha", "-1", "--beta", "2", "--init", "1,1,2,3", "--from", "-5", "--to", "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let e = error_of(&out);
    assert_eq!(e["kind"], "zero_divisor");
    assert!(e["index"].is_i64());

    let v = json_ok(&[
        "seq",
        "--alpha",
        "-1",
        "--beta",
        "2",
        "--init",
        "1,1,2,3",
        "--from",
        "-5",
        "--to",
        "5",
        "--through-zeros",
    ]);
    let terms: Vec<&str> = v["result"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_str().unwrap())
        .collect();
    assert_eq!(
        terms,
        ["5", "-3", "2", "-1", "1", "0", "1", "1", "2", "3", "5"]
    );

    let out = somos(&["laurent", "--to", "30", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["kind"], "budget_exceeded");
}

#[test]
fn csv_only_for_tables() {
    let out = somos(&["eds", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["kind"], "unsupported_format");
}

#[test]
fn reports_round_trip() {
    let cases: [&[&str]; 6] = [
        &["somos", "seq", "--to", "30"],
        &["somos", "gaps", "--p", "3"],
        &["somos", "transform", "--kind", "mgs"],
        &["somos", "invariants", "--k", "5", "--symbolic", "--to", "2"],
        &["somos", "closure", "--seed", "-3,7,19"],
        &["somos", "cavachi"],
    ];
    for argv in cases {
        let cli = parse(argv).unwrap();
        let report = dispatch(&cli.command).unwrap();
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report, "{argv:?}");
        // The echo alone reproduces the run.
        assert_eq!(dispatch(&back.config).unwrap(), report);
    }
}

#[test]
fn identical_configs_give_identical_bytes() {
    for args in [
        &["robinson", "--from", "-30", "--to", "150"][..],
        &["eds", "--format", "text"],
        &["polydiv", "--format", "csv", "--n", "5,6"],
        &["companion", "--k", "5", "--alpha", "2", "--beta", "3"],
    ] {
        let a = somos(args);
        let b = somos(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_file_is_written_whole() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.json");
    let out = somos(&["seq", "--to", "20", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["terms"].as_array().unwrap().len(), 41);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn batch_runs_independently() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("runs.toml");
    std::fs::write(
        &config,
        r#"
[[run]]
command = "gaps"
name = "two"
p = 2
rmax = 2
from = -50
to = 120
format = "csv"
output = "two.csv"

[[run]]
command = "seq"
init = ["1", "1", "1", "1"]
from = 1
to = 12

[[run]]
command = "gaps"
p = 9
"#,
    )
    .unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_somos"))
            .args(["batch", config.to_str().unwrap()])
            .env("SOMOS_JOBS", "2")
            .output()
            .unwrap()
    };
    let out = run();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let runs = v["result"]["runs"].as_array().unwrap();
    assert_eq!(v["result"]["failed"], 1);
    assert_eq!(runs[0]["name"], "two");
    assert_eq!(runs[1]["report"]["result"]["terms"][11], "8209");
    assert_eq!(runs[2]["error"]["field"], "p");
    let csv = std::fs::read_to_string(dir.path().join("two.csv")).unwrap();
    assert!(csv.starts_with("p,r,"));
    assert_eq!(run().stdout, out.stdout);
}
