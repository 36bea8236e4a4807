//! Laws as data: premises, and a disjunction of conclusions, over terms.

use std::fmt;

use crate::error::{Error, Result};
use crate::term::{parse, Term};

/// `lhs = rhs` or `lhs != rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub lhs: Term,
    pub rhs: Term,
    pub equal: bool,
}

impl Atom {
    fn parse(text: &str) -> Result<Atom> {
        let (l, r, equal) = if let Some((l, r)) = text.split_once("!=") {
            (l, r, false)
        } else if let Some((l, r)) = text.split_once('=') {
            (l, r, true)
        } else {
            return Err(Error::Parse(format!("`{text}` is not an equation")));
        };
        Ok(Atom {
            lhs: parse(l)?,
            rhs: parse(r)?,
            equal,
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.equal { "=" } else { "!=" };
        write!(f, "{} {op} {}", self.lhs, self.rhs)
    }
}

/// A universally quantified implication `p1 & ... & pn => c1 | ... | cm`.
/// Plain equations have no premises and one conclusion.
#[derive(Debug, Clone, PartialEq)]
pub struct Law {
    pub name: String,
    pub source: String,
    pub vars: Vec<String>,
    pub premises: Vec<Atom>,
    pub conclusions: Vec<Atom>,
}

impl Law {
    pub fn parse(name: &str, text: &str) -> Result<Law> {
        let (prem, concl) = match text.split_once("=>") {
            Some((p, c)) => (Some(p), c),
            None => (None, text),
        };
        let premises = match prem {
            Some(p) => p.split('&').map(Atom::parse).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        let conclusions = concl
            .split('|')
            .map(Atom::parse)
            .collect::<Result<Vec<_>>>()?;
        let mut vars = Vec::new();
        for a in premises.iter().chain(&conclusions) {
            for v in a.lhs.variables().into_iter().chain(a.rhs.variables()) {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        Ok(Law {
            name: name.to_string(),
            source: text.trim().to_string(),
            vars,
            premises,
            conclusions,
        })
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn uses_inverse(&self) -> bool {
        fn has_inv(t: &Term) -> bool {
            match t {
                Term::Inv(_) | Term::Div(..) => true,
                Term::Pow(_, _) => true,
                Term::Numeral(_) | Term::ErrorConst | Term::Var(_) => false,
                Term::Add(l, r) | Term::Sub(l, r) | Term::Mul(l, r) => has_inv(l) || has_inv(r),
                Term::Neg(x) => has_inv(x),
            }
        }
        self.premises
            .iter()
            .chain(&self.conclusions)
            .any(|a| has_inv(&a.lhs) || has_inv(&a.rhs))
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.source)
    }
}

/// The law collections that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Pre-meadow axioms.
    PM,
    /// Common meadow axioms.
    CM,
    /// Derived identities of pre-meadows and of meadows.
    Identities,
    /// `(M, +, 0·x, -x)` is an assembly.
    AssemblyAdd,
    /// `(U(M), ·, 1 + 0·x, x⁻¹)` is an assembly, where
    /// `U(M) = {x | 0·x = 0·x⁻¹}`.
    AssemblyMul,
    /// The additive assembly is strong.
    StrongAssembly,
    NVL,
    AVL,
    CIL,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::PM,
        Suite::CM,
        Suite::Identities,
        Suite::AssemblyAdd,
        Suite::AssemblyMul,
        Suite::StrongAssembly,
        Suite::NVL,
        Suite::AVL,
        Suite::CIL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PM => "PM",
            Suite::CM => "CM",
            Suite::Identities => "Identities",
            Suite::AssemblyAdd => "AssemblyAdd",
            Suite::AssemblyMul => "AssemblyMul",
            Suite::StrongAssembly => "StrongAssembly",
            Suite::NVL => "NVL",
            Suite::AVL => "AVL",
            Suite::CIL => "CIL",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
    }

    /// The laws of the suite, in a fixed order.
    pub fn laws(self) -> Vec<Law> {
        let table: &[(&str, &str)] = match self {
            Suite::PM => PM,
            Suite::CM => CM,
            Suite::Identities => IDENTITIES,
            Suite::AssemblyAdd => ASSEMBLY_ADD,
            Suite::AssemblyMul => ASSEMBLY_MUL,
            Suite::StrongAssembly => STRONG,
            Suite::NVL => NVL,
            Suite::AVL => AVL,
            Suite::CIL => CIL,
        };
        table
            .iter()
            .map(|(n, t)| Law::parse(n, t).expect("built-in law parses"))
            .collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const PM: &[(&str, &str)] = &[
    ("PM1", "(x + y) + z = x + (y + z)"),
    ("PM2", "x + y = y + x"),
    ("PM3", "x + 0 = x"),
    ("PM4", "x + (-x) = 0 * x"),
    ("PM5", "(x * y) * z = x * (y * z)"),
    ("PM6", "x * y = y * x"),
    ("PM7", "1 * x = x"),
    ("PM8", "x * (y + z) = x * y + x * z"),
    ("PM9", "-(-x) = x"),
    ("PM10", "0 * (x + y) = 0 * x * y"),
];

const CM: &[(&str, &str)] = &[
    ("M1", "(x + y) + z = x + (y + z)"),
    ("M2", "x + y = y + x"),
    ("M3", "x + 0 = x"),
    ("M4", "x + (-x) = 0 * x"),
    ("M5", "(x * y) * z = x * (y * z)"),
    ("M6", "x * y = y * x"),
    ("M7", "1 * x = x"),
    ("M8", "x * (y + z) = x * y + x * z"),
    ("M9", "-(-x) = x"),
    ("M10", "x * x^-1 = 1 + 0 * x^-1"),
    ("M11", "(x * y)^-1 = x^-1 * y^-1"),
    ("M12", "(1 + 0 * x)^-1 = 1 + 0 * x"),
    ("M13", "0^-1 = a"),
    ("M14", "x + a = a"),
];

const IDENTITIES: &[(&str, &str)] = &[
    ("zero-times-zero", "0 * 0 = 0"),
    ("negated-zero", "-0 = 0"),
    ("zero-of-negation", "0 * x = 0 * (-x)"),
    ("negation-moves", "-(x * y) = x * (-y)"),
    ("negations-cancel", "(-x) * (-y) = x * y"),
    ("minus-one-times", "(-1) * x = -x"),
    ("zero-of-square", "0 * (x * x) = 0 * x"),
    ("inverse-idempotent-product", "(x * x^-1) * x^-1 = x^-1"),
    ("inverse-of-negation", "(-x)^-1 = -(x^-1)"),
    ("inverse-of-local-unit", "(x * x^-1)^-1 = x * x^-1"),
    ("double-inverse", "(x^-1)^-1 = x + 0 * x^-1"),
    ("a-absorbs-product", "x * a = -a"),
    ("a-negation", "-a = a^-1"),
    ("a-inverse", "a^-1 = a"),
    ("zero-is-a-only-at-a", "0 * x = a => x = a"),
    ("zero-of-product-top", "0 * x * y = 0 => 0 * x = 0"),
];

const ASSEMBLY_ADD: &[(&str, &str)] = &[
    ("associative", "(x + y) + z = x + (y + z)"),
    ("A1-identity", "(0 * x) + x = x"),
    ("A1-identity-right", "x + (0 * x) = x"),
    ("A1-unique", "x + f = x => (0 * x) + f = 0 * x"),
    ("A1-unique-left", "f + x = x => f + (0 * x) = 0 * x"),
    ("A2-inverse", "x + (-x) = 0 * x"),
    ("A2-inverse-left", "(-x) + x = 0 * x"),
    ("A2-local", "0 * (-x) = 0 * x"),
    ("A3", "0 * (x + y) = (0 * x) + (0 * y)"),
];

const ASSEMBLY_MUL: &[(&str, &str)] = &[
    (
        "closed",
        "0 * x = 0 * x^-1 & 0 * y = 0 * y^-1 => 0 * (x * y) = 0 * (x * y)^-1",
    ),
    (
        "associative",
        "0 * x = 0 * x^-1 & 0 * y = 0 * y^-1 & 0 * z = 0 * z^-1 => (x * y) * z = x * (y * z)",
    ),
    ("A1-identity", "0 * x = 0 * x^-1 => (1 + 0 * x) * x = x"),
    (
        "A1-unique",
        "0 * x = 0 * x^-1 & 0 * f = 0 * f^-1 & f * x = x => f * (1 + 0 * x) = 1 + 0 * x",
    ),
    ("A2-inverse", "0 * x = 0 * x^-1 => x * x^-1 = 1 + 0 * x"),
    (
        "A2-inverse-in-set",
        "0 * x = 0 * x^-1 => 0 * x^-1 = 0 * (x^-1)^-1",
    ),
    ("A2-local", "0 * x = 0 * x^-1 => 1 + 0 * x^-1 = 1 + 0 * x"),
    (
        "A3",
        "0 * x = 0 * x^-1 & 0 * y = 0 * y^-1 => 1 + 0 * (x * y) = (1 + 0 * x) * (1 + 0 * y)",
    ),
];

const STRONG: &[(&str, &str)] = &[("A3-strong", "0 * (x + y) = 0 * x | 0 * (x + y) = 0 * y")];

const NVL: &[(&str, &str)] = &[("NVL", "x != a => 0 * x = 0")];

const AVL: &[(&str, &str)] = &[("AVL", "x^-1 = a => 0 * x = x")];

const CIL: &[(&str, &str)] = &[("CIL", "x != 0 & x != a => x * x^-1 = 1")];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_in_laws_parse() {
        for s in Suite::ALL {
            assert!(!s.laws().is_empty(), "{s}");
        }
        assert_eq!(Suite::PM.laws().len(), 10);
        assert_eq!(Suite::CM.laws().len(), 14);
        let cil = &Suite::CIL.laws()[0];
        assert_eq!(cil.vars, vec!["x"]);
        assert_eq!(cil.premises.len(), 2);
        assert!(!cil.premises[0].equal);
        assert_eq!(Suite::StrongAssembly.laws()[0].conclusions.len(), 2);
        assert!(Suite::CM.laws()[9].uses_inverse());
        assert!(!Suite::PM.laws()[0].uses_inverse());
        assert_eq!(Suite::from_name("cm"), Some(Suite::CM));
    }
}
