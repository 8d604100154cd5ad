use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use ncgraded_cli::{dispatch, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(record) => {
            let doc = if cli.payload_only {
                record.payload.clone()
            } else {
                record.to_json()
            };
            let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
            // a closed pipe downstream is not an error
            match writeln!(io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
                _ => {}
            }
            eprintln!("{}", record.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
