mod args;
mod run;
mod selftest;

use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use run::{execute, CliError};

fn emit(cli: &Cli, json: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, format!("{json}\n")).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => match writeln!(std::io::stdout().lock(), "{json}") {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(CliError::Io {
                path: "<stdout>".into(),
                source: e,
            }),
            _ => Ok(()),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = execute(&cli).and_then(|outcome| {
        let json = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
        emit(&cli, &json)?;
        outcome.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
