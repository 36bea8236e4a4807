//! The operations terms and laws are interpreted in.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::meadow::{Meadow, MeadowElement};

/// Constants `0`, `1`, `a` and the operations `+`, `·`, `-`, `⁻¹`.
pub trait MeadowSignature {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn error_elem(&self) -> Self::Elem;
    fn numeral(&self, n: &BigInt) -> Result<Self::Elem>;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, x: &Self::Elem) -> Result<Self::Elem>;
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem>;
    fn show(&self, x: &Self::Elem) -> String;
}

impl MeadowSignature for Meadow {
    type Elem = MeadowElement;

    fn zero(&self) -> MeadowElement {
        Meadow::zero(self)
    }

    fn one(&self) -> MeadowElement {
        Meadow::one(self)
    }

    fn error_elem(&self) -> MeadowElement {
        Meadow::error_elem(self)
    }

    fn numeral(&self, n: &BigInt) -> Result<MeadowElement> {
        Ok(Meadow::numeral(self, n.clone()))
    }

    fn add(&self, x: &MeadowElement, y: &MeadowElement) -> Result<MeadowElement> {
        Meadow::add(self, x, y)
    }

    fn mul(&self, x: &MeadowElement, y: &MeadowElement) -> Result<MeadowElement> {
        Meadow::mul(self, x, y)
    }

    fn neg(&self, x: &MeadowElement) -> Result<MeadowElement> {
        Meadow::neg(self, x)
    }

    fn inv(&self, x: &MeadowElement) -> Result<MeadowElement> {
        Meadow::inverse(self, x)
    }

    fn show(&self, x: &MeadowElement) -> String {
        x.to_string()
    }
}

/// A finite structure given by operation tables over element indices.
///
/// Inverse entries may be errors, so pre-meadows whose inverse is not
/// defined everywhere can still be tabulated.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    labels: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    inv: Vec<Result<usize, Error>>,
    zero: usize,
    one: usize,
    error: usize,
}

impl FiniteAlgebra {
    /// Builds the algebra from explicit tables; `add` and `mul` are row-major
    /// `n × n`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        labels: Vec<String>,
        add: Vec<usize>,
        mul: Vec<usize>,
        neg: Vec<usize>,
        inv: Vec<Result<usize, Error>>,
        zero: usize,
        one: usize,
        error: usize,
    ) -> Self {
        let n = labels.len();
        assert_eq!(add.len(), n * n);
        assert_eq!(mul.len(), n * n);
        assert_eq!(neg.len(), n);
        assert_eq!(inv.len(), n);
        FiniteAlgebra {
            labels,
            add,
            mul,
            neg,
            inv,
            zero,
            one,
            error,
        }
    }

    /// Tabulates a finite meadow. Element `i` is `m.elements()[i]`.
    pub fn from_meadow(m: &Meadow) -> Result<Self> {
        let elems = m.elements()?;
        let index: HashMap<&MeadowElement, usize> =
            elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let look = |x: &MeadowElement| -> Result<usize> {
            index
                .get(x)
                .copied()
                .ok_or_else(|| Error::ForeignElement(x.to_string()))
        };
        let n = elems.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in &elems {
            for y in &elems {
                add.push(look(&m.add(x, y)?)?);
                mul.push(look(&m.mul(x, y)?)?);
            }
        }
        let neg = elems
            .iter()
            .map(|x| look(&m.neg(x)?))
            .collect::<Result<Vec<_>>>()?;
        let inv = elems
            .iter()
            .map(|x| m.inverse(x).and_then(|y| look(&y)))
            .collect();
        Ok(FiniteAlgebra {
            labels: elems.iter().map(|x| x.to_string()).collect(),
            add,
            mul,
            neg,
            inv,
            zero: look(&m.zero())?,
            one: look(&m.one())?,
            error: look(&m.error_elem())?,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn inverse_table(&self) -> &[Result<usize, Error>] {
        &self.inv
    }

    pub fn add_ix(&self, x: usize, y: usize) -> usize {
        self.add[x * self.len() + y]
    }

    pub fn mul_ix(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.len() + y]
    }

    pub fn neg_ix(&self, x: usize) -> usize {
        self.neg[x]
    }
}

impl MeadowSignature for FiniteAlgebra {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn error_elem(&self) -> usize {
        self.error
    }

    fn numeral(&self, n: &BigInt) -> Result<usize> {
        // double and add over the table
        let mut k = n
            .abs()
            .to_u64()
            .ok_or_else(|| Error::Parse(format!("numeral {n} is too large")))?;
        let mut acc = self.zero;
        let mut base = self.one;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_ix(acc, base);
            }
            base = self.add_ix(base, base);
            k >>= 1;
        }
        // n·1 lives where 1 lives even when n = 0
        if n.is_zero() {
            acc = self.mul_ix(self.zero, self.one);
        }
        Ok(if n.is_negative() { self.neg[acc] } else { acc })
    }

    fn add(&self, x: &usize, y: &usize) -> Result<usize> {
        Ok(self.add_ix(*x, *y))
    }

    fn mul(&self, x: &usize, y: &usize) -> Result<usize> {
        Ok(self.mul_ix(*x, *y))
    }

    fn neg(&self, x: &usize) -> Result<usize> {
        Ok(self.neg[*x])
    }

    fn inv(&self, x: &usize) -> Result<usize> {
        self.inv[*x].clone()
    }

    fn show(&self, x: &usize) -> String {
        self.labels[*x].clone()
    }
}
