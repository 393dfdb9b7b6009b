mod args;
mod check;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Command, Format};
use commands::Failure;

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.precision_bits < 64 {
        eprintln!("error: --precision-bits must be at least 64");
        return ExitCode::from(2);
    }
    let bits = cli.precision_bits;
    let outcome = match &cli.command {
        Command::Coeffs(a) => commands::coeffs(a, bits),
        Command::Enumerate(a) => commands::enumerate_cmd(a, bits),
        Command::Radius(a) => commands::radius(a, bits, cli.jobs),
        Command::Puiseux(a) => commands::puiseux(a, bits),
        Command::Observables(a) => commands::observables(a, bits),
        Command::ExponentFit(a) => commands::exponent_fit_cmd(a, bits),
        Command::Check => Ok(check::check(bits)),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Compute(e)) => {
            let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            println!("{}", serde_json::to_string_pretty(&body).expect("json"));
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("json") + "\n",
        Format::Csv => match report.csv() {
            Some(t) => t,
            None => {
                eprintln!("error: CSV output is available for coeffs, radius and check");
                return ExitCode::from(2);
            }
        },
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
