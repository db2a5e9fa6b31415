//! Command-line front end for `somos-core`: subcommands, batch files and
//! deterministic JSON, CSV or text reports.

pub mod args;
pub mod batch;
pub mod error;
pub mod report;
pub mod run;
pub mod window;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::Parser;

pub use args::{Cli, Command, Format};
pub use error::{CliError, CliResult};
pub use report::{emit, render, Report};

/// Runs one command into a report.
pub fn dispatch(cmd: &Command) -> CliResult<Report> {
    let result = match cmd {
        Command::Batch(b) => batch::run_batch(b)?,
        other => run::run(other)?,
    };
    Ok(Report::new(cmd.clone(), result))
}

/// Flag name, without dashes or value placeholder, from a clap context.
fn offending_field(e: &clap::Error) -> Option<String> {
    match e.get(ContextKind::InvalidArg)? {
        ContextValue::String(s) => {
            let flag = s.split_whitespace().next()?;
            Some(flag.trim_start_matches('-').replace('-', "_"))
        }
        ContextValue::Strings(v) => v
            .first()
            .map(|s| s.trim_start_matches('-').replace('-', "_")),
        _ => None,
    }
}

/// Parses argv, mapping clap failures onto config errors.
pub fn parse<I, T>(argv: I) -> CliResult<Cli>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv).map_err(|e| {
        let field = offending_field(&e).unwrap_or_else(|| "command".into());
        let message = e.kind().to_string();
        let detail = e.to_string();
        let first = detail
            .lines()
            .next()
            .unwrap_or(&message)
            .trim_start_matches("error: ");
        CliError::config(&field, first.to_string())
    })
}

/// Help and version requests, which are not errors.
pub fn is_display_request(e: &clap::Error) -> bool {
    matches!(
        e.kind(),
        ErrorKind::DisplayHelp
            | ErrorKind::DisplayVersion
            | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
    )
}
