//! Subcommands over the discrete valuation ring: matrix types, the
//! Levi-projection integrality check, and the quotient-length suite.

use super::{arg, get, opt_arg, Command};
use crate::parse;
use crate::CliError;
use bgmu::dvr::{
    glg_check, matrix_type, verify_quotient_lemma, DvrMatrix, MatrixType, ModuleShape,
    VerifyBudget,
};
use serde_json::{json, Value};

fn matrix_from(m: &clap::ArgMatches, stdin: Option<&str>) -> Result<DvrMatrix, CliError> {
    let (entries, p) = parse::matrix_input(get(m, "in"), stdin)?;
    Ok(DvrMatrix::new(entries, p)?)
}

pub struct MatType;

impl Command for MatType {
    fn name(&self) -> &'static str {
        "mattype"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("mattype")
            .about("elementary-divisor exponents of a matrix over Z_(p)")
            .arg(arg("in", "matrix JSON file, or '-' for stdin"))
    }

    fn execute(&self, m: &clap::ArgMatches, stdin: Option<&str>) -> Result<Value, CliError> {
        let g = matrix_from(m, stdin)?;
        let ty = matrix_type(&g)?;
        Ok(json!(ty.exponents()))
    }
}

pub struct Glg;

impl Command for Glg {
    fn name(&self) -> &'static str {
        "glg"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("glg")
            .about("trailing-type hypothesis and Levi-projection integrality of g in P(F)")
            .arg(arg("in", "matrix JSON file, or '-' for stdin"))
            .arg(arg("levi", "composition, comma-separated block sizes"))
            .arg(arg("type", "expected type, comma-separated integers"))
    }

    fn execute(&self, m: &clap::ArgMatches, stdin: Option<&str>) -> Result<Value, CliError> {
        let g = matrix_from(m, stdin)?;
        let levi = parse::levi(get(m, "levi"))?;
        let ty = MatrixType::new(parse::int_list(get(m, "type"))?)?;
        let v = glg_check(&g, &levi, &ty)?;
        Ok(json!({
            "hypothesis_holds": v.hypothesis_holds,
            "conclusion_holds": v.conclusion_holds,
        }))
    }
}

pub struct DvrQ;

impl Command for DvrQ {
    fn name(&self) -> &'static str {
        "dvrq"
    }

    fn clap_command(&self) -> clap::Command {
        clap::Command::new("dvrq")
            .about("exhaustively verify the quotient-length bound for a module shape")
            .arg(arg("shape", "module shape, comma-separated weakly decreasing integers"))
            .arg(arg("j", "generator bound"))
            .arg(arg("p", "prime"))
            .arg(opt_arg("max-total", "budget: maximum total length (default 8)"))
            .arg(opt_arg("max-prime", "budget: maximum prime (default 3)"))
            .arg(opt_arg("max-visited", "budget: maximum visited submodules"))
    }

    fn execute(&self, m: &clap::ArgMatches, _stdin: Option<&str>) -> Result<Value, CliError> {
        let raw = parse::int_list(get(m, "shape"))?;
        let exps: Vec<u32> = raw
            .iter()
            .map(|&k| u32::try_from(k).map_err(|_| parse::bad("shape entries must be >= 0")))
            .collect::<Result<_, _>>()?;
        let shape = ModuleShape::new(exps)?;
        let j: i64 = get(m, "j")
            .parse()
            .map_err(|_| parse::bad("--j must be an integer"))?;
        let p: u64 = get(m, "p")
            .parse()
            .map_err(|_| parse::bad("--p must be a positive integer"))?;
        let mut budget = VerifyBudget::default();
        if let Some(v) = m.get_one::<String>("max-total") {
            budget.max_total_length = v
                .parse()
                .map_err(|_| parse::bad("--max-total must be an integer"))?;
        }
        if let Some(v) = m.get_one::<String>("max-prime") {
            budget.max_prime = v
                .parse()
                .map_err(|_| parse::bad("--max-prime must be an integer"))?;
        }
        if let Some(v) = m.get_one::<String>("max-visited") {
            budget.max_visited = v
                .parse()
                .map_err(|_| parse::bad("--max-visited must be an integer"))?;
        }
        let r = verify_quotient_lemma(&shape, j, p, &budget)?;
        Ok(json!({
            "shape": r.shape,
            "p": r.prime,
            "j": j,
            "bound": r.bound,
            "examined": r.examined,
            "max_length": r.max_length,
            "violations": r.violations,
            "equality_cases": r.equality_cases,
            "equality_summands": r.equality_summands,
            "pass": r.pass,
        }))
    }
}
