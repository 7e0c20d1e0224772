//! Library surface of the command-line front end, exposed for integration
//! tests.

pub mod cli;
pub mod commands;
pub mod config;
pub mod manifest;
pub mod output;

use clap::Parser;

use commands::{CmdError, Context};

/// Parse and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match cli::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return code;
        }
    };

    let ctx = match Context::from_cli(&cli) {
        Ok(ctx) => ctx,
        Err(e) => return report(e),
    };
    let result = match &cli.command {
        cli::Command::Steady(args) => commands::steady(&ctx, args),
        cli::Command::Eigs(args) => commands::eigs(&ctx, args),
        cli::Command::Table1 => commands::table1(&ctx),
        cli::Command::Corr(args) => commands::corr(&ctx, args),
        cli::Command::Fig(args) => commands::fig(&ctx, args),
        cli::Command::Sweep(args) => commands::sweep(&ctx, args),
        cli::Command::DumpGenerator(args) => commands::dump_generator(&ctx, args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => report(e),
    }
}

fn report(e: CmdError) -> i32 {
    match e {
        CmdError::Parameter(msg) => {
            eprintln!("parameter error: {msg}");
            3
        }
        CmdError::Validation(msg) => {
            eprintln!("validation failure: {msg}");
            2
        }
        CmdError::Other(err) => {
            eprintln!("error: {err:#}");
            1
        }
    }
}
