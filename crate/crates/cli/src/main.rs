mod args;
mod commands;
mod error;
mod formats;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliResult;

fn dispatch(cli: &Cli) -> CliResult<commands::Outcome> {
    match &cli.command {
        Command::Homology(a) => commands::homology(a),
        Command::CheckTwist(a) => commands::check_twist(a),
        Command::CheckReduction(a) => commands::check_reduction(a),
        Command::VfCheckStar(a) => commands::vf_check_star(a),
        Command::Transport(a) => commands::transport(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            println!("{}", out.text);
            match out.failure {
                None => ExitCode::SUCCESS,
                Some(e) => ExitCode::from(e.exit_code() as u8),
            }
        }
        Err(e) => {
            eprintln!("tcp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
