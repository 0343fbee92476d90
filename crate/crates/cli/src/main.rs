use std::process::ExitCode;

use clap::Parser;

use oam_mzi_cli::output::{emit, json_document};
use oam_mzi_cli::{cmd_budget, cmd_modes, cmd_shots, cmd_sweep, cmd_verify, Cli, CliResult, Command};

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Sweep(args) => emit(args.out.as_deref(), &cmd_sweep(&args)?),
        Command::Budget(args) => emit(args.out.as_deref(), &json_document(&cmd_budget(&args)?)?),
        Command::Shots(args) => emit(args.out.as_deref(), &cmd_shots(&args)?),
        Command::Modes(args) => {
            let out = cmd_modes(&args)?;
            emit(args.out.as_deref(), &out.csv)?;
            eprintln!("{}", out.summary());
            Ok(())
        }
        Command::Verify(args) => {
            let outcome = cmd_verify(&args);
            emit(None, &outcome.table())?;
            outcome.into_result().map(|_| ())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
