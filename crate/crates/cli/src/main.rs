use std::fs;
use std::io::Write;
use std::process::ExitCode;

use blockpoly_cli::{error_report, execute, Cli};
use clap::Parser;

fn emit(cli: &Cli, body: &str) -> std::io::Result<()> {
    match &cli.global.output {
        Some(path) => fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match execute(&cli) {
        Ok(out) => {
            let body = if cli.global.json {
                serde_json::to_string_pretty(&out.report).expect("serializable") + "\n"
            } else {
                out.text.clone()
            };
            (body, out.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let body = if cli.global.json {
                serde_json::to_string_pretty(&error_report(cli.command.name(), &e)).expect("serializable") + "\n"
            } else {
                String::new()
            };
            (body, 2)
        }
    };
    if let Err(e) = emit(&cli, &body) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
