//! Subcommands over Newton points: the twisted set, membership,
//! HN-reducibility, and the induction numerology.

use super::{arg, flag, get, Command};
use crate::parse;
use crate::CliError;
use bgmu::json::{newton_to_json, rat_to_json, rats_to_json};
use bgmu::kottwitz;
use bgmu::rational::is_integer;
use serde_json::{json, Map, Value};

pub struct Bmu;

impl Command for Bmu {
    fn name(&self) -> &'static str {
        "bmu"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("bmu")
            .about("enumerate the twisted Kottwitz set B(G, mu, [b'])")
            .arg(arg("n", "rank"))
            .arg(arg("mu", "dominant cocharacter, comma-separated integers"))
            .arg(arg("bprime", "base Newton point, comma-separated rationals"))
    }

    fn execute(&self, m: &clap::ArgMatches, _stdin: Option<&str>) -> Result<Value, CliError> {
        let n: usize = get(m, "n")
            .parse()
            .map_err(|_| parse::bad("--n must be a positive integer"))?;
        let mu = parse::int_list(get(m, "mu"))?;
        let bp = parse::newton(get(m, "bprime"))?;
        if mu.len() != n || bp.rank() != n {
            return Err(parse::bad("--n disagrees with the vector lengths"));
        }
        let set = kottwitz::enumerate_bmu(&bp, &mu)?;
        Ok(Value::Array(set.iter().map(newton_to_json).collect()))
    }
}

pub struct Member;

impl Command for Member {
    fn name(&self) -> &'static str {
        "member"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("member")
            .about("acceptability and neutrality of b for (mu, [b'])")
            .arg(arg("b", "Newton point"))
            .arg(arg("bprime", "base Newton point"))
            .arg(arg("mu", "dominant cocharacter"))
    }

    fn execute(&self, m: &clap::ArgMatches, _stdin: Option<&str>) -> Result<Value, CliError> {
        let b = parse::newton(get(m, "b"))?;
        let bp = parse::newton(get(m, "bprime"))?;
        let mu = parse::int_list(get(m, "mu"))?;
        let v = kottwitz::membership(&b, &bp, &mu)?;
        Ok(json!({"acceptable": v.acceptable, "neutral": v.neutral}))
    }
}

pub struct HnRed;

impl Command for HnRed {
    fn name(&self) -> &'static str {
        "hnred"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("hnred")
            .about("search for an HN-reducibility witness")
            .arg(arg("b", "Newton point"))
            .arg(arg("bprime", "base Newton point"))
            .arg(arg("mu", "dominant cocharacter"))
            .arg(flag("proper-levi", "only accept proper Levi subgroups"))
            .arg(flag(
                "strict-mu",
                "require blockwise membership for mu itself, not a conjugate",
            ))
    }

    fn execute(&self, m: &clap::ArgMatches, _stdin: Option<&str>) -> Result<Value, CliError> {
        let b = parse::newton(get(m, "b"))?;
        let bp = parse::newton(get(m, "bprime"))?;
        let mu = parse::int_list(get(m, "mu"))?;
        let opts = kottwitz::HnSearchOptions {
            proper_only: m.get_flag("proper-levi"),
            strict_mu: m.get_flag("strict-mu"),
        };
        let witness = kottwitz::hn_reducible_with(&b, &bp, &mu, opts)?;
        Ok(match witness {
            None => json!({"found": false}),
            Some(w) => json!({
                "found": true,
                "levi": w.levi.parts(),
                "b0": w.b0.blocks.iter().map(newton_to_json).collect::<Vec<_>>(),
                "b0p": w.b0p.blocks.iter().map(newton_to_json).collect::<Vec<_>>(),
                "mu_prime": w.mu_prime,
                "proper": w.proper,
            }),
        })
    }
}

pub struct ISet;

impl Command for ISet {
    fn name(&self) -> &'static str {
        "iset"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("iset")
            .about("L-dominant conjugates of mu with blockwise membership")
            .arg(arg("b0", "Levi Newton point, blocks separated by ';'"))
            .arg(arg("b0p", "base Levi Newton point, blocks separated by ';'"))
            .arg(arg("mu", "dominant cocharacter"))
            .arg(arg("levi", "composition, comma-separated block sizes"))
    }

    fn execute(&self, m: &clap::ArgMatches, _stdin: Option<&str>) -> Result<Value, CliError> {
        let b0 = parse::levi_newton(get(m, "b0"))?;
        let b0p = parse::levi_newton(get(m, "b0p"))?;
        let mu = parse::int_list(get(m, "mu"))?;
        let levi = parse::levi(get(m, "levi"))?;
        let set = kottwitz::i_set(&b0, &b0p, &mu, &levi)?;
        Ok(json!(set))
    }
}

pub struct Dim;

impl Command for Dim {
    fn name(&self) -> &'static str {
        "dim"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("dim")
            .about("dimension <2 rho_U, nu> with its degree shift and Tate twist")
            .arg(arg("nu", "L-central rational vector"))
            .arg(arg("levi", "composition, comma-separated block sizes"))
    }

    fn execute(&self, m: &clap::ArgMatches, _stdin: Option<&str>) -> Result<Value, CliError> {
        let nu = parse::rat_list(get(m, "nu"))?;
        let levi = parse::levi(get(m, "levi"))?;
        let dim = kottwitz::dimension_n_ub(&nu, &levi)?;
        let (shift, twist) = if is_integer(&dim) {
            let n = kottwitz::induction_numerology(&nu, &levi)?;
            (json!(n.degree_shift), json!(n.tate_twist))
        } else {
            (Value::Null, Value::Null)
        };
        Ok(json!({
            "dimension": rat_to_json(&dim),
            "degree_shift": shift,
            "tate_twist": twist,
        }))
    }
}

pub struct IcShift;

impl Command for IcShift {
    fn name(&self) -> &'static str {
        "icshift"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("icshift")
            .about("Tate twist <rho, mu> and degree shift <2 rho, mu>")
            .arg(arg("mu", "dominant cocharacter"))
    }

    fn execute(&self, m: &clap::ArgMatches, _stdin: Option<&str>) -> Result<Value, CliError> {
        let mu = parse::int_list(get(m, "mu"))?;
        let s = kottwitz::ic_shift(&mu)?;
        Ok(json!({"twist": rat_to_json(&s.twist), "shift": s.shift}))
    }
}

pub struct Slopes;

impl Command for Slopes {
    fn name(&self) -> &'static str {
        "slopes"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("slopes")
            .about("graded slope decomposition of the unipotent radical")
            .arg(arg("b0", "Levi Newton point, blocks separated by ';'"))
            .arg(arg("levi", "composition, comma-separated block sizes"))
    }

    fn execute(&self, m: &clap::ArgMatches, _stdin: Option<&str>) -> Result<Value, CliError> {
        let b0 = parse::levi_newton(get(m, "b0"))?;
        let levi = parse::levi(get(m, "levi"))?;
        let levels = kottwitz::graded_slopes(&b0, &levi)?;
        let mut out = Map::new();
        for (level, data) in &levels {
            out.insert(
                level.to_string(),
                json!({
                    "slopes": rats_to_json(&data.slopes),
                    "bundle": bgmu::json::bundle_to_json(&data.bundle),
                    "degree": data.degree,
                }),
            );
        }
        Ok(Value::Object(out))
    }
}
