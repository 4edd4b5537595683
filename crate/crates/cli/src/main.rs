use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use chordsieve_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let write_result = match &cli.out {
                Some(path) => std::fs::write(path, output.text.as_bytes()),
                None => std::io::stdout().write_all(output.text.as_bytes()),
            };
            if let Err(e) = write_result {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(output.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
