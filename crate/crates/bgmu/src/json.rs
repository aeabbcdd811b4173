//! Shared JSON encodings: rationals as canonical strings, vectors as
//! arrays, bundles as summand objects, matrices as arrays of string rows.

use crate::newton::{FFBundle, NewtonPoint, Summand};
use crate::rational::{format_rat, parse_rat, Rat};
use serde_json::{json, Value};

pub fn rat_to_json(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

pub fn rats_to_json(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(rat_to_json).collect())
}

pub fn newton_to_json(b: &NewtonPoint) -> Value {
    rats_to_json(b.slopes())
}

pub fn bundle_to_json(e: &FFBundle) -> Value {
    Value::Array(
        e.summands()
            .iter()
            .map(|s| json!({"d": s.d, "h": s.h, "mult": s.mult}))
            .collect(),
    )
}

pub fn rat_from_json(v: &Value) -> Option<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n.as_i64().map(crate::rational::rat_int),
        _ => None,
    }
}

pub fn rats_from_json(v: &Value) -> Option<Vec<Rat>> {
    v.as_array()?.iter().map(rat_from_json).collect()
}

pub fn bundle_from_json(v: &Value) -> Option<Vec<Summand>> {
    v.as_array()?
        .iter()
        .map(|s| {
            Some(Summand {
                d: s.get("d")?.as_i64()?,
                h: s.get("h")?.as_i64()?,
                mult: s.get("mult")?.as_i64()?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::line;
    use crate::rational::rat;

    #[test]
    fn round_trips() {
        let xs = vec![rat(1, 2), rat(-3, 1), rat(0, 5)];
        let v = rats_to_json(&xs);
        assert_eq!(v, json!(["1/2", "-3", "0"]));
        assert_eq!(rats_from_json(&v).unwrap(), xs);

        let e = FFBundle::new(vec![line(0, 1, 1), line(-1, 2, 3)]).unwrap();
        let v = bundle_to_json(&e);
        let back = FFBundle::new(bundle_from_json(&v).unwrap()).unwrap();
        assert_eq!(back, e);
    }
}
