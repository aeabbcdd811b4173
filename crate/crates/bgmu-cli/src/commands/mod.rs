//! The subcommand registry: each operation lives behind the [`Command`]
//! trait and is selected by name at dispatch time. Adding a command means
//! adding one impl and one line in [`registry`].

mod dvr;
mod heckestack;
mod twisted;

use crate::CliError;
use serde_json::Value;

pub trait Command {
    fn name(&self) -> &'static str;
    fn clap_command(&self) -> clap::Command;
    fn execute(&self, matches: &clap::ArgMatches, stdin: Option<&str>)
        -> Result<Value, CliError>;
}

pub fn registry() -> Vec<Box<dyn Command>> {
    vec![
        Box::new(twisted::Bmu),
        Box::new(twisted::Member),
        Box::new(twisted::HnRed),
        Box::new(twisted::ISet),
        Box::new(twisted::Dim),
        Box::new(twisted::IcShift),
        Box::new(twisted::Slopes),
        Box::new(heckestack::ModClass2),
        Box::new(heckestack::LubinTate),
        Box::new(dvr::MatType),
        Box::new(dvr::Glg),
        Box::new(dvr::DvrQ),
    ]
}

pub(crate) fn arg(name: &'static str, help: &'static str) -> clap::Arg {
    clap::Arg::new(name)
        .long(name)
        .value_name(name)
        .help(help.to_owned())
        .required(true)
}

pub(crate) fn opt_arg(name: &'static str, help: &'static str) -> clap::Arg {
    arg(name, help).required(false)
}

pub(crate) fn flag(name: &'static str, help: &'static str) -> clap::Arg {
    clap::Arg::new(name)
        .long(name)
        .help(help.to_owned())
        .action(clap::ArgAction::SetTrue)
}

pub(crate) fn get<'a>(m: &'a clap::ArgMatches, name: &str) -> &'a str {
    m.get_one::<String>(name).expect("required arg").as_str()
}
