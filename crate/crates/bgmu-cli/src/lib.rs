//! Library surface of the `bgmu` command-line tool.
//!
//! [`run`] is the whole program: argv plus optional stdin in, exit code
//! plus byte-deterministic stdout/stderr out. `main` is a thin wrapper, so
//! tests drive the exact production path in process.
//!
//! Exit codes: 0 success (one JSON document on stdout), 2 malformed input
//! (machine-readable error object on stderr), 1 domain error (the library
//! error name, verbatim).

pub mod commands;
mod parse;

use commands::registry;
use serde_json::{json, Value};

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Errors split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unparseable input: exit 2.
    Malformed(String),
    /// A well-formed request the library rejects: exit 1.
    Domain(bgmu::Error),
}

impl From<bgmu::Error> for CliError {
    fn from(e: bgmu::Error) -> Self {
        CliError::Domain(e)
    }
}

pub fn run(argv: &[String], stdin: Option<&str>) -> RunOutput {
    let mut root = clap::Command::new("bgmu")
        .about("exact combinatorics of isocrystals, twisted Kottwitz sets and bundle modifications")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .color(clap::ColorChoice::Never)
        .term_width(100);
    let cmds = registry();
    for c in &cmds {
        root = root.subcommand(c.clap_command());
    }
    let matches = match root.try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return RunOutput {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            return fail(2, "MalformedInput", &e.to_string());
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let cmd = cmds
        .iter()
        .find(|c| c.name() == name)
        .expect("registry covers every subcommand");
    match cmd.execute(sub, stdin) {
        Ok(value) => RunOutput {
            code: 0,
            stdout: format!("{value}\n"),
            stderr: String::new(),
        },
        Err(CliError::Malformed(msg)) => fail(2, "MalformedInput", &msg),
        Err(CliError::Domain(e)) => fail(1, e.name(), &e.to_string()),
    }
}

fn fail(code: i32, name: &str, message: &str) -> RunOutput {
    let err: Value = json!({"error": name, "message": message});
    RunOutput {
        code,
        stdout: String::new(),
        stderr: format!("{err}\n"),
    }
}
