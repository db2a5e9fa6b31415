use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::{Command, Format};
use crate::error::{CliError, CliResult};

/// Bumped when the report layout changes.
pub const SCHEMA_VERSION: u32 = 1;

/// One run: the config echo reproduces it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub command: String,
    pub config: Command,
    pub result: Value,
}

impl Report {
    pub fn new(config: Command, result: Value) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            tool: format!("somos {}", env!("CARGO_PKG_VERSION")),
            command: config.name().into(),
            config,
            result,
        }
    }
}

/// Header and rows of a tabular result.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn array<'a>(v: &'a Value, key: &str) -> &'a [Value] {
    v[key].as_array().map(Vec::as_slice).unwrap_or(&[])
}

fn table_of(header: &[&str], rows: &[Value], keys: &[&str]) -> Table {
    Table {
        header: header.iter().map(|s| s.to_string()).collect(),
        rows: rows
            .iter()
            .map(|r| keys.iter().map(|k| cell(&r[*k])).collect())
            .collect(),
    }
}

/// The CSV view of a report, for commands with tabular results.
pub fn table(report: &Report) -> Option<Table> {
    let r = &report.result;
    match report.command.as_str() {
        "seq" => {
            let lo = r["lo"].as_i64()?;
            Some(Table {
                header: vec!["n".into(), "term".into()],
                rows: array(r, "terms")
                    .iter()
                    .enumerate()
                    .map(|(i, t)| vec![(lo + i as i64).to_string(), cell(t)])
                    .collect(),
            })
        }
        "gaps" => {
            let keys = [
                "p",
                "r",
                "lo",
                "hi",
                "first",
                "gap",
                "verdict",
                "is_ap",
                "occurrences",
            ];
            Some(table_of(&keys, array(r, "reports"), &keys))
        }
        "robinson" => {
            let r_max = r["r_max"].as_u64()? as usize;
            let mut header: Vec<String> = ["p", "classification", "w"].map(String::from).to_vec();
            header.extend((1..=r_max).map(|i| format!("gap_{i}")));
            let obs = ["equally_spaced", "gap_bound", "square_gap", "power_gaps"];
            header.extend(obs.map(String::from));
            let rows = array(r, "rows")
                .iter()
                .map(|row| {
                    let mut out = vec![
                        cell(&row["p"]),
                        cell(&row["classification"]),
                        cell(&row["w"]),
                    ];
                    out.extend((0..r_max).map(|i| {
                        let rep = &row["reports"][i];
                        if rep["is_ap"] == Value::Bool(true) {
                            cell(&rep["gap"])
                        } else {
                            String::new()
                        }
                    }));
                    out.extend(obs.iter().map(|o| cell(&row["observations"][*o]["holds"])));
                    out
                })
                .collect();
            Some(Table { header, rows })
        }
        "polydiv" => {
            let keys = ["k", "n", "l", "d", "m", "divides", "n_terms", "m_terms"];
            Some(table_of(&keys, array(r, "checks"), &keys))
        }
        "laurent" => {
            let keys = ["n", "denominator", "numerator_terms"];
            Some(table_of(&keys, array(r, "terms"), &keys))
        }
        _ => None,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&p, x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push(format!("{prefix} = {}", cell(other))),
    }
}

/// Serializes a report; JSON key order is fixed, so equal reports give
/// equal bytes.
pub fn render(report: &Report, format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(report).map_err(|e| CliError::io(e.to_string()))?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let t = table(report)
                .ok_or_else(|| CliError::unsupported_format(&report.command, "csv"))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::io(e.to_string());
            w.write_record(&t.header).map_err(io)?;
            for row in &t.rows {
                w.write_record(row).map_err(io)?;
            }
            w.into_inner().map_err(|e| CliError::io(e.to_string()))
        }
        Format::Text => {
            let mut lines = vec![
                format!("command = {}", report.command),
                format!("tool = {}", report.tool),
            ];
            flatten("", &report.result, &mut lines);
            let mut s = lines.join("\n");
            s.push('\n');
            Ok(s.into_bytes())
        }
    }
}

/// Replaces `path` in one rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Writes to `path`, or stdout without one; returns the byte count.
pub fn emit(report: &Report, format: Format, path: Option<&Path>) -> CliResult<usize> {
    let bytes = render(report, format)?;
    match path {
        Some(p) => write_atomic(p, &bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(e.to_string()))?;
        }
    }
    Ok(bytes.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(argv: &[&str]) -> Report {
        crate::dispatch(&crate::parse(argv).unwrap().command).unwrap()
    }

    #[test]
    fn seq_table_is_indexed() {
        let t = table(&report(&["somos", "seq", "--from", "-1", "--to", "1"])).unwrap();
        assert_eq!(t.header, ["n", "term"]);
        assert_eq!(t.rows, [["-1", "3"], ["0", "2"], ["1", "1"]]);
    }

    #[test]
    fn text_flattens_nested_values() {
        let r = report(&[
            "somos",
            "period",
            "--modulus",
            "2",
            "--from",
            "1",
            "--to",
            "12",
        ]);
        let text = String::from_utf8(render(&r, Format::Text).unwrap()).unwrap();
        assert!(text.starts_with("command = period\n"));
        assert!(text.contains("period = 5\n"));
        assert!(text.contains("residues = 1 1 1 1 0 1 1 1 1 0 1 1\n"));
    }

    #[test]
    fn csv_needs_a_table() {
        let r = report(&[
            "somos",
            "cavachi",
            "--n",
            "4",
            "--m",
            "1",
            "--exceptional-m",
            "1",
        ]);
        assert_eq!(
            render(&r, Format::Csv).unwrap_err().kind,
            "unsupported_format"
        );
    }
}
