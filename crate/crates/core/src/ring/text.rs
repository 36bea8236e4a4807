//! Canonical text and JSON forms of ring values.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value as Json;

use super::descriptor::RingDescriptor;
use super::value::{int_payload, is_zero_payload, Payload, RingValue};
use crate::error::{Error, Result};

fn coeff_text(base: &RingDescriptor, c: &Payload) -> String {
    match c {
        Payload::Rat(r) if !r.is_integer() => format!("({r})"),
        Payload::Rat(r) => r.numer().to_string(),
        Payload::Res(x) => x.to_string(),
        other => format_payload(base, other),
    }
}

fn format_payload(desc: &RingDescriptor, p: &Payload) -> String {
    match (desc, p) {
        (_, Payload::Int(n)) => n.to_string(),
        (_, Payload::Rat(r)) => r.to_string(),
        (_, Payload::Res(x)) => x.to_string(),
        (_, Payload::Token) => "0".into(),
        (RingDescriptor::Product(fs), Payload::Tuple(xs)) => {
            let parts: Vec<String> = fs
                .iter()
                .zip(xs)
                .map(|(f, x)| format_payload(f, x))
                .collect();
            format!("({})", parts.join(", "))
        }
        (RingDescriptor::Poly { base, var }, Payload::Poly(cs)) => {
            if cs.is_empty() {
                return "0".into();
            }
            let one = int_payload(base, &BigInt::one());
            let mut out = String::new();
            for (k, c) in cs.iter().enumerate() {
                if is_zero_payload(base, c) {
                    continue;
                }
                let mono = match k {
                    0 => String::new(),
                    1 => var.clone(),
                    _ => format!("{var}^{k}"),
                };
                let term = if k == 0 {
                    coeff_text(base, c)
                } else if *c == one {
                    mono
                } else {
                    format!("{}{mono}", coeff_text(base, c))
                };
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                out.push_str(&term);
            }
            out
        }
        (_, other) => format!("{other:?}"),
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_payload(self.descriptor(), self.payload()))
    }
}

fn parse_err(text: &str, desc: &RingDescriptor) -> Error {
    Error::Parse(format!("`{text}` is not an element of {desc}"))
}

fn parse_bigint(s: &str) -> Option<BigInt> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    s.parse::<BigInt>().ok()
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_bigint(d)?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(parse_bigint(n)?, d))
        }
        None => parse_bigint(s).map(BigRational::from_integer),
    }
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_constant(base: &RingDescriptor, s: &str) -> Option<Payload> {
    match base {
        RingDescriptor::Rationals => parse_rational(s).map(Payload::Rat),
        RingDescriptor::Mod(_) => parse_bigint(s.trim_start_matches('(').trim_end_matches(')'))
            .map(|n| int_payload(base, &n)),
        _ => None,
    }
}

fn parse_poly(base: &RingDescriptor, var: &str, text: &str) -> Option<Vec<Payload>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    // split into signed terms, keeping signs that sit inside parentheses
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    let mut negative = false;
    for ch in compact.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && !cur.ends_with('^') => {
                if !cur.is_empty() {
                    terms.push((negative, std::mem::take(&mut cur)));
                }
                negative = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return None;
    }
    terms.push((negative, cur));

    let zero = int_payload(base, &BigInt::zero());
    let one = int_payload(base, &BigInt::one());
    let mut coeffs: Vec<Payload> = Vec::new();
    for (neg, term) in terms {
        let (coef, degree) = match term.find(var) {
            None => (parse_constant(base, &term)?, 0usize),
            Some(pos) => {
                let (c, rest) = term.split_at(pos);
                let c = c.trim_end_matches('*');
                let coef = if c.is_empty() {
                    one.clone()
                } else {
                    parse_constant(base, c)?
                };
                let rest = &rest[var.len()..];
                let degree = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')?.parse::<usize>().ok()?
                };
                (coef, degree)
            }
        };
        let coef = if neg {
            super::value::neg_payload(base, &coef)
        } else {
            coef
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, zero.clone());
        }
        coeffs[degree] = super::value::add_payload(base, &coeffs[degree], &coef);
    }
    while coeffs.last().is_some_and(|c| is_zero_payload(base, c)) {
        coeffs.pop();
    }
    Some(coeffs)
}

fn parse_payload(desc: &RingDescriptor, text: &str) -> Option<Payload> {
    let t = text.trim();
    match desc {
        RingDescriptor::Integers => parse_bigint(t).map(Payload::Int),
        RingDescriptor::Rationals => parse_rational(t).map(Payload::Rat),
        RingDescriptor::Mod(_) => parse_bigint(t).map(|n| int_payload(desc, &n)),
        RingDescriptor::Zero => Some(Payload::Token),
        RingDescriptor::Poly { base, var } => parse_poly(base, var, t).map(Payload::Poly),
        RingDescriptor::Product(fs) => {
            let inner = t.strip_prefix('(')?.strip_suffix(')')?;
            let parts = split_top_level(inner);
            if parts.len() != fs.len() {
                return None;
            }
            fs.iter()
                .zip(parts)
                .map(|(f, p)| parse_payload(f, p))
                .collect::<Option<Vec<_>>>()
                .map(Payload::Tuple)
        }
    }
}

/// Parses the canonical text form; integers are accepted in every ring and
/// mean `n·1`.
pub fn parse_value(desc: &Arc<RingDescriptor>, text: &str) -> Result<RingValue> {
    let p = parse_payload(desc, text).ok_or_else(|| parse_err(text, desc))?;
    RingValue::new(desc.clone(), p)
}

/// Reads a value from JSON: a number, a string in text form, or an array for
/// tuples.
pub fn value_from_json(desc: &Arc<RingDescriptor>, v: &Json) -> Result<RingValue> {
    match v {
        Json::Number(n) => {
            let n = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("{n} is not an integer")))?;
            Ok(RingValue::from_int(desc, n))
        }
        Json::String(s) => parse_value(desc, s),
        Json::Array(items) => {
            let RingDescriptor::Product(fs) = desc.as_ref() else {
                return Err(Error::Parse(format!(
                    "array given for non-product ring {desc}"
                )));
            };
            if items.len() != fs.len() {
                return Err(Error::Parse(format!(
                    "{desc} needs {} components, got {}",
                    fs.len(),
                    items.len()
                )));
            }
            let parts = fs
                .iter()
                .zip(items)
                .map(|(f, item)| value_from_json(&Arc::new(f.clone()), item))
                .collect::<Result<Vec<_>>>()?;
            RingValue::tuple(desc, parts)
        }
        other => Err(Error::Parse(format!(
            "cannot read a ring value from {other}"
        ))),
    }
}

/// Writes a value as JSON, preferring plain numbers where they are exact.
pub fn value_to_json(v: &RingValue) -> Json {
    match v.payload() {
        Payload::Int(n) => small_int(n).unwrap_or_else(|| Json::String(n.to_string())),
        Payload::Res(x) => Json::from(*x),
        Payload::Token => Json::from(0),
        Payload::Rat(r) if r.is_integer() => {
            small_int(r.numer()).unwrap_or_else(|| Json::String(r.to_string()))
        }
        Payload::Tuple(_) => {
            let n = match v.descriptor() {
                RingDescriptor::Product(fs) => fs.len(),
                _ => 0,
            };
            Json::Array(
                (0..n)
                    .filter_map(|k| v.component(k).ok())
                    .map(|c| value_to_json(&c))
                    .collect(),
            )
        }
        _ => Json::String(v.to_string()),
    }
}

fn small_int(n: &BigInt) -> Option<Json> {
    if n.abs() < BigInt::from(1i64 << 53) {
        i64::try_from(n).ok().map(Json::from)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(d: RingDescriptor) -> Arc<RingDescriptor> {
        Arc::new(d)
    }

    #[test]
    fn polynomial_round_trip() {
        let qx = arc(RingDescriptor::poly(RingDescriptor::Rationals, "x").unwrap());
        for text in ["3 + 2x", "0", "x", "-1 + x^2", "(1/2)x + x^3", "(-2/3)"] {
            let v = parse_value(&qx, text).unwrap();
            let again = parse_value(&qx, &v.to_string()).unwrap();
            assert_eq!(v, again, "{text}");
        }
        assert_eq!(parse_value(&qx, "3 + 2x").unwrap().to_string(), "3 + 2x");
        assert_eq!(parse_value(&qx, "2x - x").unwrap().to_string(), "x");
        assert!(parse_value(&qx, "3 + 2y").is_err());
    }

    #[test]
    fn residues_and_tuples() {
        let z6 = arc(RingDescriptor::Mod(6));
        assert_eq!(parse_value(&z6, "-1").unwrap().to_string(), "5");
        let p = arc(RingDescriptor::Product(vec![
            RingDescriptor::Mod(2),
            RingDescriptor::Rationals,
        ]));
        let v = parse_value(&p, "(1, -1/2)").unwrap();
        assert_eq!(v.to_string(), "(1, -1/2)");
        assert_eq!(value_from_json(&p, &value_to_json(&v)).unwrap(), v);
        assert!(parse_value(&p, "(1)").is_err());
    }

    #[test]
    fn rationals_and_integers() {
        let q = arc(RingDescriptor::Rationals);
        assert_eq!(parse_value(&q, "4/6").unwrap().to_string(), "2/3");
        assert!(parse_value(&q, "1/0").is_err());
        let z = arc(RingDescriptor::Integers);
        assert!(parse_value(&z, "1/2").is_err());
        assert_eq!(
            value_to_json(&parse_value(&z, "-7").unwrap()),
            Json::from(-7)
        );
    }
}
