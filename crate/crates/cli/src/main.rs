use std::process::ExitCode;

use clap::Parser;
use somos_cli::{batch, dispatch, emit, is_display_request, parse, Cli, CliError};

fn fail(e: &CliError) -> ExitCode {
    let json = serde_json::to_string(&serde_json::json!({ "error": e })).expect("error serializes");
    eprintln!("{json}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    if let Err(e) = Cli::try_parse_from(&argv) {
        if is_display_request(&e) {
            e.exit();
        }
    }
    let cli = match parse(&argv) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(&report, cli.format, cli.output.as_deref()) {
        return fail(&e);
    }
    match batch::failures(&report) {
        0 => ExitCode::SUCCESS,
        n => fail(&CliError {
            kind: "batch_failed".into(),
            message: format!("{n} batch runs failed"),
            field: None,
            index: None,
        }),
    }
}
