use indexmap::IndexMap;

use super::ast::Term;
use crate::error::{Error, Result};
use crate::meadow::{Meadow, MeadowElement};
use crate::signature::MeadowSignature;

/// Variable bindings for evaluation.
#[derive(Debug, Clone, Default)]
pub struct Environment {
    bindings: IndexMap<String, MeadowElement>,
}

impl Environment {
    pub fn new() -> Self {
        Environment::default()
    }

    /// Binds `name`; `a` is reserved for the absorbing element.
    pub fn bind(&mut self, name: &str, x: MeadowElement) -> Result<()> {
        if name == "a" {
            return Err(Error::ReservedIdentifier);
        }
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::Parse(format!("`{name}` is not a variable name")));
        }
        self.bindings.insert(name.to_string(), x);
        Ok(())
    }

    /// Reads `name=value@node` (or `name=a`) against `m`.
    pub fn bind_text(&mut self, m: &Meadow, binding: &str) -> Result<()> {
        let (name, value) = binding
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("binding `{binding}` has no `=`")))?;
        let x = m.parse_element(value)?;
        self.bind(name.trim(), x)
    }

    pub fn get(&self, name: &str) -> Option<&MeadowElement> {
        self.bindings.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &MeadowElement)> {
        self.bindings.iter()
    }
}

/// Evaluates `t` in any structure with the meadow signature. Subtraction and
/// division are `x + (-y)` and `x · y⁻¹`; `t^0` is `1 + 0·t`.
pub fn eval_in<S: MeadowSignature>(
    alg: &S,
    t: &Term,
    lookup: &dyn Fn(&str) -> Option<S::Elem>,
) -> Result<S::Elem> {
    Ok(match t {
        Term::Numeral(n) => alg.numeral(n)?,
        Term::ErrorConst => alg.error_elem(),
        Term::Var(v) => lookup(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        Term::Add(l, r) => alg.add(&eval_in(alg, l, lookup)?, &eval_in(alg, r, lookup)?)?,
        Term::Sub(l, r) => {
            let y = alg.neg(&eval_in(alg, r, lookup)?)?;
            alg.add(&eval_in(alg, l, lookup)?, &y)?
        }
        Term::Mul(l, r) => alg.mul(&eval_in(alg, l, lookup)?, &eval_in(alg, r, lookup)?)?,
        Term::Div(l, r) => {
            let y = alg.inv(&eval_in(alg, r, lookup)?)?;
            alg.mul(&eval_in(alg, l, lookup)?, &y)?
        }
        Term::Neg(x) => alg.neg(&eval_in(alg, x, lookup)?)?,
        Term::Inv(x) => alg.inv(&eval_in(alg, x, lookup)?)?,
        Term::Pow(x, k) => {
            let base = eval_in(alg, x, lookup)?;
            power(alg, &base, *k)?
        }
    })
}

fn power<S: MeadowSignature>(alg: &S, x: &S::Elem, k: i64) -> Result<S::Elem> {
    let zero_x = alg.mul(&alg.zero(), x)?;
    let unit = alg.add(&alg.one(), &zero_x)?;
    if k == 0 {
        return Ok(unit);
    }
    if k < 0 {
        let p = power(alg, x, k.checked_neg().unwrap_or(i64::MAX))?;
        return alg.inv(&p);
    }
    // square and multiply, starting from the unit of x's component
    let mut acc = unit;
    let mut base = x.clone();
    let mut e = k as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = alg.mul(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = alg.mul(&base, &base)?;
        }
    }
    Ok(acc)
}

/// Evaluates `t` in `m` under `env`. Every binding must belong to `m`.
pub fn eval_term(t: &Term, m: &Meadow, env: &Environment) -> Result<MeadowElement> {
    if let Some((_, x)) = env.iter().find(|(_, x)| !m.contains(x)) {
        return Err(Error::ForeignElement(x.to_string()));
    }
    eval_in(m, t, &|v| env.get(v).cloned())
}
