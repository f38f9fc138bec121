//! Command-line front end for `hss-core`.

pub mod args;
pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or parameters outside the supported range.
    Usage(String),
    /// A computation failed.
    Failure(String),
}

impl From<hss_core::Error> for CliError {
    fn from(e: hss_core::Error) -> Self {
        match e {
            hss_core::Error::Oracle(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Spaces(a) => commands::spaces(a),
        Command::Classify(a) => commands::classify_cmd(a),
        Command::Contact(a) => commands::contact(a),
        Command::Sasaki(a) => commands::sasaki(a),
        Command::Einstein(a) => commands::einstein(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(outcome) => {
            let _ = out.write_all(outcome.output.render(cli.format).as_bytes());
            if outcome.ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_FAILED_CHECK
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(CliError::Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILED_CHECK
        }
    }
}
