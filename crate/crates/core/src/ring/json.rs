use serde_json::{json, Value};

use super::{Kind, Monomial, Polynomial, Var};
use crate::error::{Error, Result};
use crate::int::Int;

pub fn monomial_to_json(m: &Monomial) -> Value {
    Value::Array(
        m.factors()
            .iter()
            .map(|(v, e)| {
                json!({
                    "kind": v.kind.letter().to_string(),
                    "i": v.first,
                    "j": v.second,
                    "k": v.level,
                    "exp": e,
                })
            })
            .collect(),
    )
}

/// Terms in canonical order, coefficients as decimal strings.
pub fn poly_to_json(p: &Polynomial) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| json!({ "coeff": c.to_string(), "vars": monomial_to_json(m) }))
            .collect(),
    )
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::usage(format!("missing field `{name}`")))
}

fn small(v: &Value, name: &str, max: u64) -> Result<u64> {
    field(v, name)?
        .as_u64()
        .filter(|n| *n <= max)
        .ok_or_else(|| Error::usage(format!("field `{name}` must be an integer in 0..={max}")))
}

pub fn monomial_from_json(v: &Value) -> Result<Monomial> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::usage("monomial must be an array"))?;
    let mut factors = Vec::with_capacity(arr.len());
    for f in arr {
        let kind = match field(f, "kind")?.as_str() {
            Some("x") => Kind::X,
            Some("a") => Kind::A,
            Some("b") => Kind::B,
            _ => return Err(Error::usage("variable kind must be \"x\", \"a\" or \"b\"")),
        };
        let i = small(f, "i", u8::MAX as u64)? as u8;
        let j = small(f, "j", u8::MAX as u64)? as u8;
        if i == 0 || j == 0 {
            return Err(Error::usage("variable indices start at 1"));
        }
        let k = small(f, "k", u16::MAX as u64)? as u16;
        let e = small(f, "exp", u16::MAX as u64)? as u16;
        factors.push((Var::new(kind, i, j, k), e));
    }
    let m = Monomial::from_factors(factors);
    let kinds_mixed = m.factors().iter().any(|(v, _)| v.kind == Kind::X)
        && m.factors().iter().any(|(v, _)| v.kind != Kind::X);
    if kinds_mixed {
        return Err(Error::usage("a monomial cannot mix x with a/b variables"));
    }
    Ok(m)
}

pub fn poly_from_json(v: &Value) -> Result<Polynomial> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::usage("polynomial must be an array of terms"))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let coeff: Int = field(t, "coeff")?
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::usage("coefficient must be a decimal string"))?;
        terms.push((monomial_from_json(field(t, "vars")?)?, coeff));
    }
    let p = Polynomial::from_terms(terms);
    let rings: Vec<_> = p.terms().iter().filter_map(|(m, _)| m.ring()).collect();
    if rings.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::usage("a polynomial cannot mix x with a/b variables"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = Polynomial::var(Var::x(1, 2, 3))
            .pow(2)
            .scale(&Int::from(-7))
            .add(&Polynomial::constant(Int::from(5)));
        let v = poly_to_json(&p);
        assert_eq!(poly_from_json(&v).unwrap(), p);
        assert_eq!(
            v.to_string(),
            r#"[{"coeff":"5","vars":[]},{"coeff":"-7","vars":[{"exp":2,"i":1,"j":2,"k":3,"kind":"x"}]}]"#
        );
    }

    #[test]
    fn rejects_bad_input() {
        let bad = serde_json::json!([{"coeff": "1", "vars": [{"kind": "y", "i": 1, "j": 1, "k": 0, "exp": 1}]}]);
        assert!(poly_from_json(&bad).is_err());
        let mixed = serde_json::json!([{"coeff": "1", "vars": [
            {"kind": "x", "i": 1, "j": 1, "k": 0, "exp": 1},
            {"kind": "a", "i": 1, "j": 1, "k": 0, "exp": 1}]}]);
        assert!(poly_from_json(&mixed).is_err());
    }
}
