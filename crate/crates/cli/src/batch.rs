//! Batch files: a TOML list of `[[run]]` tables, each an independent run.
//!
//! ```toml
//! [[run]]
//! command = "gaps"      # any subcommand except batch
//! name = "two"          # optional label in the summary
//! output = "two.csv"    # optional, relative to the batch file
//! format = "csv"        # optional, json by default
//! p = 2
//! init = ["1", "1", "1", "1"]
//! ```
//!
//! Other keys are the subcommand's flags with `_` or `-`. Runs execute in
//! parallel; `SOMOS_JOBS` sets the thread count.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::{BatchArgs, Command, Format};
use crate::error::{CliError, CliResult};
use crate::report::{render, write_atomic, Report};

#[derive(Debug, Deserialize)]
struct BatchFile {
    #[serde(default)]
    run: Vec<toml::Table>,
}

/// One run, resolved into argv before dispatch.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSpec {
    pub name: String,
    pub argv: Vec<String>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn scalar(field: &str, v: &toml::Value) -> CliResult<String> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Boolean(b) => Ok(b.to_string()),
        _ => Err(CliError::config(
            field,
            "expected a string, integer or boolean",
        )),
    }
}

fn run_spec(i: usize, table: &toml::Table, base: &Path) -> CliResult<RunSpec> {
    let field = |k: &str| format!("run[{i}].{k}");
    let command = match table.get("command") {
        Some(toml::Value::String(s)) => s.clone(),
        _ => return Err(CliError::config(&field("command"), "missing command")),
    };
    if command == "batch" {
        return Err(CliError::config(
            &field("command"),
            "batch runs cannot nest",
        ));
    }
    let mut argv = vec!["somos".to_string(), command.clone()];
    let mut name = format!("{i}-{command}");
    let mut format = Format::Json;
    let mut output = None;
    for (k, v) in table {
        match k.as_str() {
            "command" => {}
            "name" => name = scalar(&field(k), v)?,
            "output" => output = Some(base.join(scalar(&field(k), v)?)),
            "format" => {
                let f = scalar(&field(k), v)?;
                format = match f.as_str() {
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    "text" => Format::Text,
                    _ => return Err(CliError::config(&field(k), format!("unknown format {f}"))),
                };
            }
            _ => {
                let flag = format!("--{}", k.replace('_', "-"));
                match v {
                    toml::Value::Boolean(true) => argv.push(flag),
                    toml::Value::Boolean(false) => {}
                    toml::Value::Array(xs) => {
                        let parts = xs
                            .iter()
                            .map(|x| scalar(&field(k), x))
                            .collect::<CliResult<Vec<_>>>()?;
                        argv.push(format!("{flag}={}", parts.join(",")));
                    }
                    other => argv.push(format!("{flag}={}", scalar(&field(k), other)?)),
                }
            }
        }
    }
    Ok(RunSpec {
        name,
        argv,
        format,
        output,
    })
}

/// Parses a batch file into runs; paths resolve against its directory.
pub fn load(path: &Path) -> CliResult<Vec<RunSpec>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let file: BatchFile =
        toml::from_str(&text).map_err(|e| CliError::config("config", e.to_string()))?;
    if file.run.is_empty() {
        return Err(CliError::config("run", "no [[run]] tables"));
    }
    let base = path.parent().unwrap_or(Path::new("."));
    file.run
        .iter()
        .enumerate()
        .map(|(i, t)| run_spec(i, t, base))
        .collect()
}

fn execute(spec: &RunSpec) -> CliResult<Value> {
    let cli = crate::parse(&spec.argv)?;
    if matches!(cli.command, Command::Batch(_)) {
        return Err(CliError::config("command", "batch runs cannot nest"));
    }
    let report = crate::dispatch(&cli.command)?;
    match &spec.output {
        Some(path) => {
            let bytes = render(&report, spec.format)?;
            write_atomic(path, &bytes)?;
            Ok(json!({ "output": path.display().to_string(), "bytes": bytes.len() }))
        }
        None => Ok(json!({ "report": report })),
    }
}

fn jobs() -> usize {
    std::env::var("SOMOS_JOBS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

/// Runs every entry independently; one failure does not stop the others.
pub fn run_batch(args: &BatchArgs) -> CliResult<Value> {
    let specs = load(&args.config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs())
        .build()
        .map_err(|e| CliError::io(e.to_string()))?;
    let outcomes: Vec<(RunSpec, CliResult<Value>)> = pool.install(|| {
        specs
            .into_par_iter()
            .map(|s| {
                let r = execute(&s);
                (s, r)
            })
            .collect()
    });
    let failed = outcomes.iter().filter(|(_, r)| r.is_err()).count();
    let runs: Vec<Value> = outcomes
        .into_iter()
        .map(|(s, r)| {
            let mut v = json!({ "name": s.name, "argv": s.argv[1..] });
            match r {
                Ok(Value::Object(m)) => v.as_object_mut().expect("object").extend(m),
                Ok(other) => v["result"] = other,
                Err(e) => v["error"] = json!(e),
            }
            v
        })
        .collect();
    Ok(json!({ "runs": runs, "failed": failed }))
}

/// Failed runs recorded in a batch summary.
pub fn failures(report: &Report) -> usize {
    if report.command != "batch" {
        return 0;
    }
    report.result["failed"].as_u64().unwrap_or(0) as usize
}
