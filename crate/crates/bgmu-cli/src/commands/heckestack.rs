//! Subcommands for bundle-modification bookkeeping.

use super::{arg, get, Command};
use crate::parse;
use crate::CliError;
use bgmu::json::{bundle_from_json, bundle_to_json, rat_to_json};
use bgmu::modifications::{classify_rank2, lubin_tate_target};
use bgmu::newton::FFBundle;
use serde_json::{json, Value};

pub struct ModClass2;

impl Command for ModClass2 {
    fn name(&self) -> &'static str {
        "modclass2"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("modclass2")
            .about("semistable degree-one modification target of a non-semistable rank-2 bundle")
            .arg(arg(
                "bundle",
                "bundle as JSON, e.g. '[{\"d\":0,\"h\":1,\"mult\":1},{\"d\":-1,\"h\":1,\"mult\":1}]'",
            ))
    }

    fn execute(&self, m: &clap::ArgMatches, _stdin: Option<&str>) -> Result<Value, CliError> {
        let doc: Value = serde_json::from_str(get(m, "bundle"))
            .map_err(|e| parse::bad(format!("invalid bundle JSON: {e}")))?;
        let summands =
            bundle_from_json(&doc).ok_or_else(|| parse::bad("bundle JSON has a bad summand"))?;
        let e = FFBundle::new(summands)?;
        let c = classify_rank2(&e)?;
        Ok(json!({
            "m": c.m,
            "target": c.target.as_ref().map(bundle_to_json),
        }))
    }
}

pub struct LubinTate;

impl Command for LubinTate {
    fn name(&self) -> &'static str {
        "lt"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("lt")
            .about("Lubin-Tate modification bookkeeping: source, target and degree identity")
            .arg(arg("n", "rank"))
            .arg(arg("m", "twist"))
    }

    fn execute(&self, m: &clap::ArgMatches, _stdin: Option<&str>) -> Result<Value, CliError> {
        let n: usize = get(m, "n")
            .parse()
            .ok()
            .filter(|&n| n > 0 && n <= 64)
            .ok_or_else(|| parse::bad("--n must be a positive integer at most 64"))?;
        let twist: i64 = get(m, "m")
            .parse()
            .ok()
            .filter(|m: &i64| m.abs() <= 1 << 40)
            .ok_or_else(|| parse::bad("--m must be a small integer"))?;
        let lt = lubin_tate_target(n, twist);
        Ok(json!({
            "source": bundle_to_json(&lt.source),
            "target": bundle_to_json(&lt.target),
            "source_degree": lt.source_degree,
            "target_degree": lt.target_degree,
            "degree_identity": lt.degree_identity,
            "target_semistable": lt.target_semistable,
            "target_slope": rat_to_json(&lt.target_slope),
        }))
    }
}
