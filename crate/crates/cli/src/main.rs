//! `socc`: JSON front end for classification, projection calculus, normal-cone
//! membership, sampling and oracle verification on the second-order cone.

mod commands;
mod output;
mod query;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::CalcOp;
use query::{CliError, CliResult, Flags};

#[derive(Debug, Parser)]
#[command(name = "socc", version, about = "Second-order cone complementarity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Set all three tolerances at once
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for sampling and oracles
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Indent the output
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Debug, clap::Args)]
struct Input {
    /// Query document; standard input when absent or `-`
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Region of a point or case of a complementary pair
    Classify(Input),
    /// Normal-cone membership with a certificate
    Member(Input),
    /// Projection, directional derivative, Jacobian or calmness report
    Calculus {
        #[command(subcommand)]
        op: Calculus,
    },
    /// Equivalence sweep or single-candidate oracle run
    Verify(Input),
    /// Normal-cone elements or nearby complementary pairs
    Sample(Input),
}

#[derive(Debug, Subcommand)]
enum Calculus {
    Project(Input),
    Ddir(Input),
    Jacobian(Input),
    Calmness(Input),
}

fn read_input(input: &Input) -> CliResult<String> {
    let io_err = |e: std::io::Error| CliError {
        code: "IoError",
        exit: query::EXIT_SCHEMA,
        message: e.to_string(),
    };
    match &input.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(io_err),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
            Ok(s)
        }
    }
}

fn run(cli: &Cli) -> CliResult<commands::Outcome> {
    let flags = Flags {
        tol: cli.tol,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Classify(i) => commands::classify(&read_input(i)?, flags),
        Command::Member(i) => commands::member(&read_input(i)?, flags),
        Command::Verify(i) => commands::verify(&read_input(i)?, flags),
        Command::Sample(i) => commands::sample(&read_input(i)?, flags),
        Command::Calculus { op } => {
            let (op, i) = match op {
                Calculus::Project(i) => (CalcOp::Project, i),
                Calculus::Ddir(i) => (CalcOp::Ddir, i),
                Calculus::Jacobian(i) => (CalcOp::Jacobian, i),
                Calculus::Calmness(i) => (CalcOp::Calmness, i),
            };
            commands::calculus(op, &read_input(i)?, flags)
        }
    }
}

fn fail(e: &CliError, pretty: bool) -> ExitCode {
    eprintln!("error: {e}");
    println!("{}", output::to_string(&output::error(e.code, &e.message), pretty));
    ExitCode::from(e.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let pretty = std::env::args().any(|a| a == "--pretty");
            return fail(&CliError::schema(e.to_string()), pretty);
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{}", output::to_string(&output::ok(out.payload), cli.pretty));
            ExitCode::from(out.exit)
        }
        Err(e) => fail(&e, cli.pretty),
    }
}
