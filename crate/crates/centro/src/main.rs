use std::io::{self, Write};
use std::process::ExitCode;

use centro::cli::{execute, Cli};
use centro::CliError;
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli.command, &mut io::stdin().lock()).and_then(|out| {
        match &cli.output {
            Some(path) => std::fs::write(path, &out.json).map_err(|source| CliError::Write {
                path: path.display().to_string(),
                source,
            })?,
            None => io::stdout().write_all(out.json.as_bytes()).map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            })?,
        }
        Ok(out)
    });
    match result {
        Ok(out) if out.success => ExitCode::SUCCESS,
        Ok(out) => {
            if let Some(d) = out.diagnostic {
                eprintln!("centro: {d}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("centro: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
