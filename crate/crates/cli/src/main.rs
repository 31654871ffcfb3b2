mod cli;
mod commands;
mod config;
mod error;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command};
use commands::Output;
use error::CliError;

const EXIT_VERIFY: u8 = 1;
const EXIT_INVALID: u8 = 2;

fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Capacity(a) => commands::capacity_cmd(a),
        Command::SweepEps(a) => commands::sweep_eps_cmd(a),
        Command::SweepL(a) => commands::sweep_l_cmd(a),
        Command::Tradeoff(a) => commands::tradeoff_cmd(a),
        Command::BetacCurve(a) => commands::betac_cmd(a),
        Command::MsrMbr(a) => commands::msr_mbr_cmd(a),
        Command::LrcCheck(a) => commands::lrc_cmd(a),
        Command::Verify(a) => commands::verify_cmd(a, cli.seed),
    }
}

fn emit(cli: &Cli, output: &Output) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: cli.out.clone(),
        source,
    };
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(io_err)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let written = output.write(&mut sink, cli.format).and_then(|()| sink.flush());
    match written {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other.map_err(io_err),
    }
}

fn run() -> Result<bool, CliError> {
    let args = config::expand(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            std::process::exit(EXIT_INVALID.into());
        }
        Err(e) => {
            let _ = e.print();
            std::process::exit(0);
        }
    };
    let output = execute(&cli)?;
    emit(&cli, &output)?;
    Ok(output.passed())
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
