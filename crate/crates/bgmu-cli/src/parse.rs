//! Flag-value parsing shared by the subcommands.

use crate::CliError;
use bgmu::newton::{make_newton, LeviNewtonPoint, NewtonPoint};
use bgmu::rational::{parse_rat_list, Rat};
use bgmu::LeviDatum;

pub fn bad(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

pub fn int_list(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad(format!("expected comma-separated integers, got {s:?}")))
}

pub fn rat_list(s: &str) -> Result<Vec<Rat>, CliError> {
    parse_rat_list(s).ok_or_else(|| bad(format!("expected comma-separated rationals, got {s:?}")))
}

pub fn newton(s: &str) -> Result<NewtonPoint, CliError> {
    Ok(make_newton(rat_list(s)?)?)
}

/// Semicolon-separated blocks of comma-separated rationals.
pub fn levi_newton(s: &str) -> Result<LeviNewtonPoint, CliError> {
    let blocks: Vec<NewtonPoint> = s
        .split(';')
        .map(newton)
        .collect::<Result<_, _>>()?;
    Ok(LeviNewtonPoint::new(blocks))
}

pub fn levi(s: &str) -> Result<LeviDatum, CliError> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad(format!("expected comma-separated block sizes, got {s:?}")))?;
    Ok(LeviDatum::new(parts)?)
}

/// Matrix input: a JSON object with `entries` (rows of rational strings)
/// and the prime `p`, from a file or stdin (`-`).
pub fn matrix_input(
    path: &str,
    stdin: Option<&str>,
) -> Result<(Vec<Vec<Rat>>, u64), CliError> {
    let text = if path == "-" {
        stdin
            .ok_or_else(|| bad("no stdin available for '-'"))?
            .to_string()
    } else {
        std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {path}: {e}")))?
    };
    let doc: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let entries = doc
        .get("entries")
        .and_then(|v| v.as_array())
        .ok_or_else(|| bad("matrix JSON needs an \"entries\" array"))?;
    let rows: Vec<Vec<Rat>> = entries
        .iter()
        .map(|row| {
            row.as_array()
                .and_then(|r| {
                    r.iter()
                        .map(bgmu::json::rat_from_json)
                        .collect::<Option<Vec<_>>>()
                })
                .ok_or_else(|| bad("matrix rows must be arrays of rational strings"))
        })
        .collect::<Result<_, _>>()?;
    let p = doc
        .get("p")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| bad("matrix JSON needs a positive integer \"p\""))?;
    Ok((rows, p))
}
