use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// One member of the closed family of unital commutative rings the crate
/// computes in, plus the zero ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    /// `Z/nZ` with `n >= 2`.
    Mod(u64),
    /// Univariate polynomials over a field (`Rationals` or `Mod(p)`, `p` prime).
    Poly {
        base: Box<RingDescriptor>,
        var: String,
    },
    /// Direct product; factors are never `Zero`.
    Product(Vec<RingDescriptor>),
    Zero,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl RingDescriptor {
    pub fn modular(n: u64) -> Result<Self> {
        let d = RingDescriptor::Mod(n);
        d.validate()?;
        Ok(d)
    }

    pub fn poly(base: RingDescriptor, var: impl Into<String>) -> Result<Self> {
        let d = RingDescriptor::Poly {
            base: Box::new(base),
            var: var.into(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn product(factors: Vec<RingDescriptor>) -> Result<Self> {
        let d = RingDescriptor::Product(factors);
        d.validate()?;
        Ok(d)
    }

    /// Checks the shape invariants of the descriptor family.
    pub fn validate(&self) -> Result<()> {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals | RingDescriptor::Zero => Ok(()),
            RingDescriptor::Mod(n) if *n >= 2 => Ok(()),
            RingDescriptor::Mod(n) => Err(Error::InvalidDescriptor(format!(
                "Z/{n} needs a modulus of at least 2; the one-element ring is Zero"
            ))),
            RingDescriptor::Poly { base, var } => {
                if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) {
                    return Err(Error::InvalidDescriptor(format!(
                        "polynomial variable `{var}` must be alphabetic"
                    )));
                }
                match base.as_ref() {
                    RingDescriptor::Rationals => Ok(()),
                    RingDescriptor::Mod(p) if is_prime(*p) => Ok(()),
                    other => Err(Error::InvalidDescriptor(format!(
                        "polynomial base {other} is not a field"
                    ))),
                }
            }
            RingDescriptor::Product(fs) => {
                if fs.is_empty() {
                    return Err(Error::InvalidDescriptor("empty product".into()));
                }
                for f in fs {
                    if *f == RingDescriptor::Zero {
                        return Err(Error::InvalidDescriptor(
                            "product factors cannot be the zero ring".into(),
                        ));
                    }
                    f.validate()?;
                }
                Ok(())
            }
        }
    }

    pub fn is_zero_ring(&self) -> bool {
        matches!(self, RingDescriptor::Zero)
    }

    pub fn is_finite(&self) -> bool {
        match self {
            RingDescriptor::Zero | RingDescriptor::Mod(_) => true,
            RingDescriptor::Product(fs) => fs.iter().all(|f| f.is_finite()),
            _ => false,
        }
    }

    /// Number of elements, when finite and representable.
    pub fn cardinality(&self) -> Option<usize> {
        match self {
            RingDescriptor::Zero => Some(1),
            RingDescriptor::Mod(n) => usize::try_from(*n).ok(),
            RingDescriptor::Product(fs) => fs
                .iter()
                .try_fold(1usize, |acc, f| acc.checked_mul(f.cardinality()?)),
            _ => None,
        }
    }

    /// Field test read off the descriptor.
    pub fn is_field(&self) -> bool {
        match self {
            RingDescriptor::Rationals => true,
            RingDescriptor::Mod(p) => is_prime(*p),
            RingDescriptor::Product(fs) => fs.len() == 1 && fs[0].is_field(),
            _ => false,
        }
    }

    /// The characteristic, with 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => 0,
            RingDescriptor::Mod(n) => *n,
            RingDescriptor::Poly { base, .. } => base.characteristic(),
            RingDescriptor::Product(fs) => {
                let mut acc = 1u64;
                for f in fs {
                    let c = f.characteristic();
                    if c == 0 {
                        return 0;
                    }
                    acc = acc.lcm(&c);
                }
                acc
            }
            RingDescriptor::Zero => 1,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::Mod(n) => write!(f, "Z_{n}"),
            RingDescriptor::Poly { base, var } => write!(f, "{base}[{var}]"),
            RingDescriptor::Product(fs) => {
                write!(f, "(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            RingDescriptor::Zero => write!(f, "0"),
        }
    }
}
