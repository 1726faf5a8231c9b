use std::process::ExitCode;

use clap::Parser;

use zetaint_cli::args::{Cli, Command};
use zetaint_cli::{run, EXIT_USAGE};

fn out_path(cli: &Cli) -> Option<&std::path::Path> {
    let common = match &cli.command {
        Command::Verify { common, .. }
        | Command::Table { common, .. }
        | Command::Discover { common, .. }
        | Command::Zeta { common, .. } => common,
    };
    common.out.as_deref()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(outcome) => {
            let written = match out_path(&cli) {
                Some(path) => std::fs::write(path, &outcome.output),
                None => {
                    print!("{}", outcome.output);
                    Ok(())
                }
            };
            match written {
                Ok(()) => outcome.exit_code(),
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
