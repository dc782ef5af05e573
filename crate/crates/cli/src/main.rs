use std::process::ExitCode;

use clap::Parser;
use hopset_cli::{commands, exit, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    match commands::run(&cli.command, &mut std::io::stdout().lock()) {
        Ok(()) => ExitCode::from(exit::PASS as u8),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code() as u8)
        }
    }
}
