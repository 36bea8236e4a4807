use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::descriptor::RingDescriptor;
use crate::error::{Error, Result};

/// Raw element data; its meaning depends on the descriptor it is paired with.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Payload {
    Int(BigInt),
    Rat(BigRational),
    Res(u64),
    /// Dense coefficients, constant term first, no trailing zeros.
    Poly(Vec<Payload>),
    Tuple(Vec<Payload>),
    Token,
}

/// An element of one of the descriptor rings, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingValue {
    ring: Arc<RingDescriptor>,
    payload: Payload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
    Neg,
}

fn mismatch(expected: &RingDescriptor, found: &RingDescriptor) -> Error {
    Error::DescriptorMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

fn bad_payload(desc: &RingDescriptor, p: &Payload) -> Error {
    Error::InvalidDescriptor(format!("payload {p:?} does not fit {desc}"))
}

pub(crate) fn mod_reduce(v: &BigInt, n: u64) -> u64 {
    let m = BigInt::from(n);
    v.mod_floor(&m).to_u64().expect("residue fits in u64")
}

fn mod_mul(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(n as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n as i128) as u64)
}

pub(crate) fn zero_payload(desc: &RingDescriptor) -> Payload {
    match desc {
        RingDescriptor::Integers => Payload::Int(BigInt::zero()),
        RingDescriptor::Rationals => Payload::Rat(BigRational::zero()),
        RingDescriptor::Mod(_) => Payload::Res(0),
        RingDescriptor::Poly { .. } => Payload::Poly(Vec::new()),
        RingDescriptor::Product(fs) => Payload::Tuple(fs.iter().map(zero_payload).collect()),
        RingDescriptor::Zero => Payload::Token,
    }
}

/// `n·1` in the ring.
pub(crate) fn int_payload(desc: &RingDescriptor, n: &BigInt) -> Payload {
    match desc {
        RingDescriptor::Integers => Payload::Int(n.clone()),
        RingDescriptor::Rationals => Payload::Rat(BigRational::from_integer(n.clone())),
        RingDescriptor::Mod(m) => Payload::Res(mod_reduce(n, *m)),
        RingDescriptor::Poly { base, .. } => {
            let c = int_payload(base, n);
            if is_zero_payload(base, &c) {
                Payload::Poly(Vec::new())
            } else {
                Payload::Poly(vec![c])
            }
        }
        RingDescriptor::Product(fs) => {
            Payload::Tuple(fs.iter().map(|f| int_payload(f, n)).collect())
        }
        RingDescriptor::Zero => Payload::Token,
    }
}

pub(crate) fn is_zero_payload(desc: &RingDescriptor, p: &Payload) -> bool {
    *p == zero_payload(desc)
}

fn trim(mut cs: Vec<Payload>, base: &RingDescriptor) -> Vec<Payload> {
    while cs.last().is_some_and(|c| is_zero_payload(base, c)) {
        cs.pop();
    }
    cs
}

pub(crate) fn add_payload(desc: &RingDescriptor, a: &Payload, b: &Payload) -> Payload {
    match (desc, a, b) {
        (RingDescriptor::Integers, Payload::Int(x), Payload::Int(y)) => Payload::Int(x + y),
        (RingDescriptor::Rationals, Payload::Rat(x), Payload::Rat(y)) => Payload::Rat(x + y),
        (RingDescriptor::Mod(n), Payload::Res(x), Payload::Res(y)) => {
            Payload::Res(((*x as u128 + *y as u128) % *n as u128) as u64)
        }
        (RingDescriptor::Poly { base, .. }, Payload::Poly(x), Payload::Poly(y)) => {
            let len = x.len().max(y.len());
            let zero = zero_payload(base);
            let cs = (0..len)
                .map(|i| add_payload(base, x.get(i).unwrap_or(&zero), y.get(i).unwrap_or(&zero)))
                .collect();
            Payload::Poly(trim(cs, base))
        }
        (RingDescriptor::Product(fs), Payload::Tuple(x), Payload::Tuple(y)) => Payload::Tuple(
            fs.iter()
                .zip(x.iter().zip(y))
                .map(|(f, (p, q))| add_payload(f, p, q))
                .collect(),
        ),
        _ => Payload::Token,
    }
}

pub(crate) fn mul_payload(desc: &RingDescriptor, a: &Payload, b: &Payload) -> Payload {
    match (desc, a, b) {
        (RingDescriptor::Integers, Payload::Int(x), Payload::Int(y)) => Payload::Int(x * y),
        (RingDescriptor::Rationals, Payload::Rat(x), Payload::Rat(y)) => Payload::Rat(x * y),
        (RingDescriptor::Mod(n), Payload::Res(x), Payload::Res(y)) => {
            Payload::Res(mod_mul(*x, *y, *n))
        }
        (RingDescriptor::Poly { base, .. }, Payload::Poly(x), Payload::Poly(y)) => {
            if x.is_empty() || y.is_empty() {
                return Payload::Poly(Vec::new());
            }
            let mut cs = vec![zero_payload(base); x.len() + y.len() - 1];
            for (i, p) in x.iter().enumerate() {
                for (j, q) in y.iter().enumerate() {
                    cs[i + j] = add_payload(base, &cs[i + j], &mul_payload(base, p, q));
                }
            }
            Payload::Poly(trim(cs, base))
        }
        (RingDescriptor::Product(fs), Payload::Tuple(x), Payload::Tuple(y)) => Payload::Tuple(
            fs.iter()
                .zip(x.iter().zip(y))
                .map(|(f, (p, q))| mul_payload(f, p, q))
                .collect(),
        ),
        _ => Payload::Token,
    }
}

pub(crate) fn neg_payload(desc: &RingDescriptor, a: &Payload) -> Payload {
    match (desc, a) {
        (RingDescriptor::Integers, Payload::Int(x)) => Payload::Int(-x),
        (RingDescriptor::Rationals, Payload::Rat(x)) => Payload::Rat(-x),
        (RingDescriptor::Mod(n), Payload::Res(x)) => Payload::Res((n - x) % n),
        (RingDescriptor::Poly { base, .. }, Payload::Poly(x)) => {
            Payload::Poly(x.iter().map(|c| neg_payload(base, c)).collect())
        }
        (RingDescriptor::Product(fs), Payload::Tuple(x)) => {
            Payload::Tuple(fs.iter().zip(x).map(|(f, p)| neg_payload(f, p)).collect())
        }
        _ => Payload::Token,
    }
}

pub(crate) fn inverse_payload(desc: &RingDescriptor, a: &Payload) -> Option<Payload> {
    match (desc, a) {
        (RingDescriptor::Integers, Payload::Int(x)) => {
            (x.abs() == BigInt::one()).then(|| Payload::Int(x.clone()))
        }
        (RingDescriptor::Rationals, Payload::Rat(x)) => {
            (!x.is_zero()).then(|| Payload::Rat(x.recip()))
        }
        (RingDescriptor::Mod(n), Payload::Res(x)) => mod_inverse(*x, *n).map(Payload::Res),
        (RingDescriptor::Poly { base, .. }, Payload::Poly(x)) => {
            if x.len() != 1 {
                return None;
            }
            inverse_payload(base, &x[0]).map(|c| Payload::Poly(vec![c]))
        }
        (RingDescriptor::Product(fs), Payload::Tuple(x)) => fs
            .iter()
            .zip(x)
            .map(|(f, p)| inverse_payload(f, p))
            .collect::<Option<Vec<_>>>()
            .map(Payload::Tuple),
        (RingDescriptor::Zero, Payload::Token) => Some(Payload::Token),
        _ => None,
    }
}

/// Checks that `p` is a canonical payload for `desc`.
pub(crate) fn check_payload(desc: &RingDescriptor, p: &Payload) -> Result<()> {
    let ok = match (desc, p) {
        (RingDescriptor::Integers, Payload::Int(_)) => true,
        (RingDescriptor::Rationals, Payload::Rat(r)) => {
            r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
        }
        (RingDescriptor::Mod(n), Payload::Res(x)) => x < n,
        (RingDescriptor::Poly { base, .. }, Payload::Poly(cs)) => {
            for c in cs {
                check_payload(base, c)?;
            }
            cs.last().is_none_or(|c| !is_zero_payload(base, c))
        }
        (RingDescriptor::Product(fs), Payload::Tuple(xs)) => {
            if fs.len() != xs.len() {
                false
            } else {
                for (f, x) in fs.iter().zip(xs) {
                    check_payload(f, x)?;
                }
                true
            }
        }
        (RingDescriptor::Zero, Payload::Token) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(bad_payload(desc, p))
    }
}

fn enumerate_payloads(desc: &RingDescriptor) -> Result<Vec<Payload>> {
    match desc {
        RingDescriptor::Zero => Ok(vec![Payload::Token]),
        RingDescriptor::Mod(n) => Ok((0..*n).map(Payload::Res).collect()),
        RingDescriptor::Product(fs) => {
            let mut acc: Vec<Vec<Payload>> = vec![Vec::new()];
            for f in fs {
                let elems = enumerate_payloads(f)?;
                let mut next = Vec::with_capacity(acc.len() * elems.len());
                for prefix in &acc {
                    for e in &elems {
                        let mut t = prefix.clone();
                        t.push(e.clone());
                        next.push(t);
                    }
                }
                acc = next;
            }
            Ok(acc.into_iter().map(Payload::Tuple).collect())
        }
        other => Err(Error::InfiniteCarrier(other.to_string())),
    }
}

/// Position of `p` in the enumeration order of a finite ring.
pub(crate) fn payload_index(desc: &RingDescriptor, p: &Payload) -> Option<usize> {
    match (desc, p) {
        (RingDescriptor::Zero, Payload::Token) => Some(0),
        (RingDescriptor::Mod(_), Payload::Res(x)) => usize::try_from(*x).ok(),
        (RingDescriptor::Product(fs), Payload::Tuple(xs)) => {
            let mut idx = 0usize;
            for (f, x) in fs.iter().zip(xs) {
                idx = idx * f.cardinality()? + payload_index(f, x)?;
            }
            Some(idx)
        }
        _ => None,
    }
}

impl RingValue {
    /// Wraps a payload after checking it is canonical for `ring`.
    pub fn new(ring: Arc<RingDescriptor>, payload: Payload) -> Result<Self> {
        check_payload(&ring, &payload)?;
        Ok(RingValue { ring, payload })
    }

    pub(crate) fn raw(ring: Arc<RingDescriptor>, payload: Payload) -> Self {
        RingValue { ring, payload }
    }

    pub fn zero(ring: &Arc<RingDescriptor>) -> Self {
        RingValue::raw(ring.clone(), zero_payload(ring))
    }

    pub fn one(ring: &Arc<RingDescriptor>) -> Self {
        RingValue::raw(ring.clone(), int_payload(ring, &BigInt::one()))
    }

    /// The image of the integer `n` under the unique map from the integers.
    pub fn from_int(ring: &Arc<RingDescriptor>, n: impl Into<BigInt>) -> Self {
        RingValue::raw(ring.clone(), int_payload(ring, &n.into()))
    }

    /// A rational number; fails unless the ring is `Q`.
    pub fn rational(ring: &Arc<RingDescriptor>, num: i64, den: i64) -> Result<Self> {
        if **ring != RingDescriptor::Rationals || den == 0 {
            return Err(mismatch(&RingDescriptor::Rationals, ring));
        }
        Ok(RingValue::raw(
            ring.clone(),
            Payload::Rat(BigRational::new(num.into(), den.into())),
        ))
    }

    /// A polynomial from its coefficients, constant term first.
    pub fn polynomial(ring: &Arc<RingDescriptor>, coeffs: Vec<RingValue>) -> Result<Self> {
        let RingDescriptor::Poly { base, .. } = ring.as_ref() else {
            return Err(Error::InvalidDescriptor(format!(
                "{ring} is not a polynomial ring"
            )));
        };
        let mut cs = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if *c.ring != **base {
                return Err(mismatch(base, &c.ring));
            }
            cs.push(c.payload);
        }
        Ok(RingValue::raw(ring.clone(), Payload::Poly(trim(cs, base))))
    }

    /// A tuple in a product ring.
    pub fn tuple(ring: &Arc<RingDescriptor>, parts: Vec<RingValue>) -> Result<Self> {
        let RingDescriptor::Product(fs) = ring.as_ref() else {
            return Err(Error::InvalidDescriptor(format!("{ring} is not a product")));
        };
        if fs.len() != parts.len() {
            return Err(Error::InvalidDescriptor(format!(
                "{ring} has {} factors, got {} components",
                fs.len(),
                parts.len()
            )));
        }
        let mut ps = Vec::with_capacity(parts.len());
        for (f, p) in fs.iter().zip(parts) {
            if *p.ring != *f {
                return Err(mismatch(f, &p.ring));
            }
            ps.push(p.payload);
        }
        Ok(RingValue::raw(ring.clone(), Payload::Tuple(ps)))
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn into_payload(self) -> Payload {
        self.payload
    }

    pub fn is_zero(&self) -> bool {
        is_zero_payload(&self.ring, &self.payload)
    }

    pub fn is_one(&self) -> bool {
        self.payload == int_payload(&self.ring, &BigInt::one())
    }

    fn same_ring(&self, other: &RingValue) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(mismatch(&self.ring, &other.ring))
        }
    }

    pub fn add(&self, other: &RingValue) -> Result<RingValue> {
        self.same_ring(other)?;
        Ok(RingValue::raw(
            self.ring.clone(),
            add_payload(&self.ring, &self.payload, &other.payload),
        ))
    }

    pub fn mul(&self, other: &RingValue) -> Result<RingValue> {
        self.same_ring(other)?;
        Ok(RingValue::raw(
            self.ring.clone(),
            mul_payload(&self.ring, &self.payload, &other.payload),
        ))
    }

    pub fn sub(&self, other: &RingValue) -> Result<RingValue> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingValue {
        RingValue::raw(self.ring.clone(), neg_payload(&self.ring, &self.payload))
    }

    pub fn is_unit(&self) -> bool {
        inverse_payload(&self.ring, &self.payload).is_some()
    }

    pub fn inverse(&self) -> Result<RingValue> {
        inverse_payload(&self.ring, &self.payload)
            .map(|p| RingValue::raw(self.ring.clone(), p))
            .ok_or_else(|| Error::NotAUnit {
                ring: self.ring.to_string(),
                value: self.to_string(),
            })
    }

    /// Integer payload, when the ring is `Z`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        match &self.payload {
            Payload::Int(n) => Some(n),
            _ => None,
        }
    }

    /// Component `k` of a tuple.
    pub fn component(&self, k: usize) -> Result<RingValue> {
        match (self.ring.as_ref(), &self.payload) {
            (RingDescriptor::Product(fs), Payload::Tuple(xs)) if k < fs.len() => {
                Ok(RingValue::raw(Arc::new(fs[k].clone()), xs[k].clone()))
            }
            _ => Err(Error::InvalidDescriptor(format!(
                "{} has no component {k}",
                self.ring
            ))),
        }
    }

    /// Polynomial coefficients, constant term first.
    pub fn coefficients(&self) -> Result<Vec<RingValue>> {
        match (self.ring.as_ref(), &self.payload) {
            (RingDescriptor::Poly { base, .. }, Payload::Poly(cs)) => {
                let base = Arc::new(base.as_ref().clone());
                Ok(cs
                    .iter()
                    .map(|c| RingValue::raw(base.clone(), c.clone()))
                    .collect())
            }
            _ => Err(Error::InvalidDescriptor(format!(
                "{} is not a polynomial ring",
                self.ring
            ))),
        }
    }

    /// Index in [`ring_enumerate`] order, for finite rings.
    pub fn index(&self) -> Option<usize> {
        payload_index(&self.ring, &self.payload)
    }

    /// Moves the value onto a structurally equal descriptor handle.
    pub(crate) fn rehome(self, ring: &Arc<RingDescriptor>) -> Result<RingValue> {
        self.ring_check(ring)?;
        Ok(RingValue::raw(ring.clone(), self.payload))
    }

    pub(crate) fn ring_check(&self, ring: &RingDescriptor) -> Result<()> {
        if *self.ring == *ring {
            Ok(())
        } else {
            Err(mismatch(ring, &self.ring))
        }
    }
}

fn check_args(desc: &RingDescriptor, args: &[RingValue]) -> Result<()> {
    for a in args {
        a.ring_check(desc)?;
    }
    Ok(())
}

/// Applies a ring operation to values of `desc`.
pub fn ring_arith(desc: &RingDescriptor, op: RingOp, args: &[RingValue]) -> Result<RingValue> {
    check_args(desc, args)?;
    match (op, args) {
        (RingOp::Add, [x, y]) => x.add(y),
        (RingOp::Mul, [x, y]) => x.mul(y),
        (RingOp::Neg, [x]) => Ok(x.neg()),
        _ => Err(Error::InvalidDescriptor(format!(
            "{op:?} does not take {} arguments",
            args.len()
        ))),
    }
}

pub fn ring_is_unit(desc: &RingDescriptor, v: &RingValue) -> Result<bool> {
    v.ring_check(desc)?;
    Ok(v.is_unit())
}

pub fn ring_unit_inverse(desc: &RingDescriptor, v: &RingValue) -> Result<RingValue> {
    v.ring_check(desc)?;
    v.inverse()
}

/// All elements of a finite ring; tuples vary their last coordinate fastest.
pub fn ring_enumerate(desc: &Arc<RingDescriptor>) -> Result<Vec<RingValue>> {
    Ok(enumerate_payloads(desc)?
        .into_iter()
        .map(|p| RingValue::raw(desc.clone(), p))
        .collect())
}

fn sample_payloads(desc: &RingDescriptor) -> Vec<Payload> {
    match desc {
        RingDescriptor::Integers => (-3..=3).map(|n| Payload::Int(BigInt::from(n))).collect(),
        RingDescriptor::Rationals => {
            let mut v: Vec<Payload> = (-3..=3)
                .map(|n| Payload::Rat(BigRational::from_integer(BigInt::from(n))))
                .collect();
            for (p, q) in [(1, 2), (-1, 2), (2, 3), (-2, 3)] {
                v.push(Payload::Rat(BigRational::new(p.into(), q.into())));
            }
            v
        }
        RingDescriptor::Mod(n) => (0..(*n).min(16)).map(Payload::Res).collect(),
        RingDescriptor::Poly { base, .. } => {
            let consts = sample_payloads(base);
            let one = int_payload(base, &BigInt::one());
            let two = int_payload(base, &BigInt::from(2));
            let mut v: Vec<Payload> = consts
                .into_iter()
                .map(|c| Payload::Poly(trim(vec![c], base)))
                .collect();
            let zero = zero_payload(base);
            for cs in [
                vec![zero.clone(), one.clone()],
                vec![one.clone(), one.clone()],
                vec![zero.clone(), two.clone()],
                vec![neg_payload(base, &one), zero.clone(), one.clone()],
                vec![two, zero, neg_payload(base, &one)],
            ] {
                v.push(Payload::Poly(trim(cs, base)));
            }
            v.dedup();
            v
        }
        RingDescriptor::Product(fs) => {
            let pools: Vec<Vec<Payload>> = fs.iter().map(sample_payloads).collect();
            let longest = pools.iter().map(Vec::len).max().unwrap_or(0);
            // diagonal walk plus the all-zero and all-one tuples keeps the pool small
            let mut v = Vec::new();
            for i in 0..longest {
                v.push(Payload::Tuple(
                    pools.iter().map(|p| p[i % p.len()].clone()).collect(),
                ));
                v.push(Payload::Tuple(
                    pools
                        .iter()
                        .enumerate()
                        .map(|(k, p)| p[(i + k) % p.len()].clone())
                        .collect(),
                ));
            }
            v.push(zero_payload(desc));
            v.push(int_payload(desc, &BigInt::one()));
            let mut seen = std::collections::HashSet::new();
            v.retain(|p| seen.insert(p.clone()));
            v
        }
        RingDescriptor::Zero => vec![Payload::Token],
    }
}

/// A fixed, deterministic pool of small elements: every element of a finite
/// ring, or `-3..=3` (plus `±1/2`, `±2/3` over `Q`, plus a few low-degree
/// polynomials) otherwise.
pub fn sample_pool(desc: &Arc<RingDescriptor>) -> Vec<RingValue> {
    let payloads = match desc.cardinality() {
        Some(n) if n <= 256 => enumerate_payloads(desc).unwrap_or_default(),
        _ => sample_payloads(desc),
    };
    payloads
        .into_iter()
        .map(|p| RingValue::raw(desc.clone(), p))
        .collect()
}

fn random_payload<R: Rng + ?Sized>(desc: &RingDescriptor, rng: &mut R) -> Payload {
    match desc {
        RingDescriptor::Integers => Payload::Int(BigInt::from(rng.gen_range(-1000i64..=1000))),
        RingDescriptor::Rationals => {
            let num = rng.gen_range(-200i64..=200);
            let den = rng.gen_range(1i64..=60);
            Payload::Rat(BigRational::new(num.into(), den.into()))
        }
        RingDescriptor::Mod(n) => Payload::Res(rng.gen_range(0..*n)),
        RingDescriptor::Poly { base, .. } => {
            let deg = rng.gen_range(0..4usize);
            let cs = (0..=deg).map(|_| random_payload(base, rng)).collect();
            Payload::Poly(trim(cs, base))
        }
        RingDescriptor::Product(fs) => {
            Payload::Tuple(fs.iter().map(|f| random_payload(f, rng)).collect())
        }
        RingDescriptor::Zero => Payload::Token,
    }
}

/// A pseudo-random element; the caller owns the seed.
pub fn random_value<R: Rng + ?Sized>(desc: &Arc<RingDescriptor>, rng: &mut R) -> RingValue {
    RingValue::raw(desc.clone(), random_payload(desc, rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(d: RingDescriptor) -> Arc<RingDescriptor> {
        Arc::new(d)
    }

    #[test]
    fn rational_sum_is_exact() {
        let q = arc(RingDescriptor::Rationals);
        let a = RingValue::rational(&q, 1, 2).unwrap();
        let b = RingValue::rational(&q, 1, 3).unwrap();
        let s = ring_arith(&q, RingOp::Add, &[a, b]).unwrap();
        assert_eq!(s, RingValue::rational(&q, 5, 6).unwrap());
    }

    #[test]
    fn residues_multiply_mod_n() {
        let z6 = arc(RingDescriptor::Mod(6));
        let p = ring_arith(
            &z6,
            RingOp::Mul,
            &[RingValue::from_int(&z6, 4), RingValue::from_int(&z6, 3)],
        )
        .unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn zero_ring_token() {
        let z = arc(RingDescriptor::Zero);
        let t = RingValue::zero(&z);
        assert_eq!(
            ring_arith(&z, RingOp::Add, &[t.clone(), t.clone()]).unwrap(),
            t
        );
        assert!(ring_is_unit(&z, &t).unwrap());
        assert_eq!(RingValue::one(&z), t);
    }

    #[test]
    fn units_and_inverses() {
        let zz = arc(RingDescriptor::Integers);
        assert!(!ring_is_unit(&zz, &RingValue::from_int(&zz, 5)).unwrap());
        let m1 = RingValue::from_int(&zz, -1);
        assert_eq!(ring_unit_inverse(&zz, &m1).unwrap(), m1);

        let z6 = arc(RingDescriptor::Mod(6));
        assert!(ring_is_unit(&z6, &RingValue::from_int(&z6, 5)).unwrap());

        let z5 = arc(RingDescriptor::Mod(5));
        let inv = ring_unit_inverse(&z5, &RingValue::from_int(&z5, 3)).unwrap();
        assert_eq!(inv, RingValue::from_int(&z5, 2));

        let q = arc(RingDescriptor::Rationals);
        let half = ring_unit_inverse(&q, &RingValue::from_int(&q, 2)).unwrap();
        assert_eq!(half, RingValue::rational(&q, 1, 2).unwrap());

        assert!(matches!(
            ring_unit_inverse(&zz, &RingValue::from_int(&zz, 2)),
            Err(Error::NotAUnit { .. })
        ));
    }

    #[test]
    fn mismatched_rings_rejected() {
        let z5 = arc(RingDescriptor::Mod(5));
        let z6 = arc(RingDescriptor::Mod(6));
        let r = RingValue::one(&z5).add(&RingValue::one(&z6));
        assert!(matches!(r, Err(Error::DescriptorMismatch { .. })));
        assert!(ring_is_unit(&z6, &RingValue::one(&z5)).is_err());
    }

    #[test]
    fn enumeration_order() {
        let z = arc(RingDescriptor::Zero);
        assert_eq!(ring_enumerate(&z).unwrap().len(), 1);
        let z3 = arc(RingDescriptor::Mod(3));
        let e: Vec<_> = ring_enumerate(&z3)
            .unwrap()
            .into_iter()
            .map(|v| v.into_payload())
            .collect();
        assert_eq!(e, vec![Payload::Res(0), Payload::Res(1), Payload::Res(2)]);
        let p = arc(RingDescriptor::Product(vec![
            RingDescriptor::Mod(2),
            RingDescriptor::Mod(2),
        ]));
        let e = ring_enumerate(&p).unwrap();
        let shown: Vec<_> = e.iter().map(|v| v.to_string()).collect();
        assert_eq!(shown, ["(0, 0)", "(0, 1)", "(1, 0)", "(1, 1)"]);
        for (i, v) in e.iter().enumerate() {
            assert_eq!(v.index(), Some(i));
        }
        assert!(matches!(
            ring_enumerate(&arc(RingDescriptor::Integers)),
            Err(Error::InfiniteCarrier(_))
        ));
    }

    #[test]
    fn polynomial_arithmetic() {
        let q = arc(RingDescriptor::Rationals);
        let qx = arc(RingDescriptor::poly(RingDescriptor::Rationals, "x").unwrap());
        let x = RingValue::polynomial(&qx, vec![RingValue::zero(&q), RingValue::one(&q)]).unwrap();
        let one = RingValue::one(&qx);
        let a = x.add(&one).unwrap();
        let b = x.sub(&one).unwrap();
        let prod = a.mul(&b).unwrap();
        let expect = RingValue::polynomial(
            &qx,
            vec![
                RingValue::from_int(&q, -1),
                RingValue::zero(&q),
                RingValue::one(&q),
            ],
        )
        .unwrap();
        assert_eq!(prod, expect);
        assert!(!x.is_unit());
        assert!(RingValue::from_int(&qx, 3).is_unit());
        assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn canonical_payloads_checked() {
        let z4 = arc(RingDescriptor::Mod(4));
        assert!(RingValue::new(z4.clone(), Payload::Res(4)).is_err());
        assert!(RingValue::new(z4, Payload::Res(3)).is_ok());
        let q = arc(RingDescriptor::Rationals);
        assert!(RingValue::new(q, Payload::Int(BigInt::from(1))).is_err());
    }
}
