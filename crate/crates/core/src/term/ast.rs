use std::fmt;

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Numeral(BigInt),
    /// The constant `a`.
    ErrorConst,
    Var(String),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Div(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Inv(Box<Term>),
    /// Exponent is never `1` or negative after parsing: `t^1` is `t` and
    /// `t^-k` is `Inv(t^k)`.
    Pow(Box<Term>, i64),
}

impl Term {
    pub fn num(n: i64) -> Term {
        Term::Numeral(BigInt::from(n))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn add(l: Term, r: Term) -> Term {
        Term::Add(Box::new(l), Box::new(r))
    }

    pub fn sub(l: Term, r: Term) -> Term {
        Term::Sub(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    pub fn div(l: Term, r: Term) -> Term {
        Term::Div(Box::new(l), Box::new(r))
    }

    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn inv(t: Term) -> Term {
        Term::Inv(Box::new(t))
    }

    /// `t^k` in normal form.
    pub fn pow(t: Term, k: i64) -> Term {
        match k {
            1 => t,
            -1 => Term::inv(t),
            k if k < 0 => Term::inv(Term::Pow(Box::new(t), k.checked_neg().unwrap_or(i64::MAX))),
            k => Term::Pow(Box::new(t), k),
        }
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Numeral(_) | Term::ErrorConst => {}
            Term::Add(l, r) | Term::Sub(l, r) | Term::Mul(l, r) | Term::Div(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Neg(t) | Term::Inv(t) | Term::Pow(t, _) => t.collect_vars(out),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Numeral(_) | Term::ErrorConst | Term::Var(_) => 1,
            Term::Add(l, r) | Term::Sub(l, r) | Term::Mul(l, r) | Term::Div(l, r) => {
                1 + l.size() + r.size()
            }
            Term::Neg(t) | Term::Inv(t) | Term::Pow(t, _) => 1 + t.size(),
        }
    }
}

/// Fully parenthesized, so that printing and re-parsing is the identity on
/// parsed terms.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Numeral(n) if n.sign() == num_bigint::Sign::Minus => write!(f, "(-{})", -n),
            Term::Numeral(n) => write!(f, "{n}"),
            Term::ErrorConst => write!(f, "a"),
            Term::Var(v) => write!(f, "{v}"),
            Term::Add(l, r) => write!(f, "({l} + {r})"),
            Term::Sub(l, r) => write!(f, "({l} - {r})"),
            Term::Mul(l, r) => write!(f, "({l} * {r})"),
            Term::Div(l, r) => write!(f, "({l} / {r})"),
            Term::Neg(t) => write!(f, "(-{t})"),
            Term::Inv(t) => write!(f, "({t})^-1"),
            Term::Pow(t, k) => write!(f, "({t})^{k}"),
        }
    }
}
