//! Common meadows built from directed lattices of rings.
//!
//! The carrier is the disjoint union of the rings, each element tagged with
//! its node. Sums and products of elements at nodes `i` and `j` are taken in
//! the ring at the meet `i ∧ j` after moving both arguments down along the
//! transition maps. The inverse of `x` at node `i` lives at the unique
//! maximal node `j <= i` where the image of `x` is a unit.

mod decompose;

pub use decompose::{decompose, Component, Decomposition};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::directed::{dl_validate, DirectedLattice};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::ring::{check_inputs, parse_value, ring_enumerate, RingDescriptor, RingHom, RingValue};

/// A node-tagged ring element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeadowElement {
    node: usize,
    label: Arc<str>,
    value: RingValue,
}

impl MeadowElement {
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn node_name(&self) -> &str {
        &self.label
    }

    pub fn value(&self) -> &RingValue {
        &self.value
    }

    /// True for the absorbing element, the only element of the zero ring.
    pub fn is_error(&self) -> bool {
        self.value.descriptor().is_zero_ring()
    }
}

impl fmt::Display for MeadowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_error() {
            write!(f, "a")
        } else {
            write!(f, "{} @ {}", self.value, self.label)
        }
    }
}

/// Canonical text of an element: `value @ node`, or `a`.
pub fn format_element(x: &MeadowElement) -> String {
    x.to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMode {
    /// Check every inverse up front; finite carriers, or infinite ones over a
    /// chain where uniqueness is automatic.
    VerifyInvertibility,
    /// Defer inverse checks to each call.
    Lazy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvertibilityStatus {
    /// Every element has a unique maximal unit node.
    Verified,
    /// Inverses are checked when requested.
    Lazy,
}

/// The data behind an inverse: the nodes where the image of `x` is a unit,
/// and the maximal ones among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseWitness {
    pub element: MeadowElement,
    pub j_set: Vec<usize>,
    pub maximal: Vec<usize>,
}

#[derive(Debug)]
struct Inner {
    dl: DirectedLattice,
    status: InvertibilityStatus,
    labels: Vec<Arc<str>>,
    meets: Vec<Vec<usize>>,
}

/// A common meadow (or, when built unchecked, a pre-meadow with `a`).
#[derive(Debug, Clone)]
pub struct Meadow {
    inner: Arc<Inner>,
}

/// Sample budget used when validating an infinite directed lattice during a
/// build.
const BUILD_BUDGET: usize = 32;

/// Builds the meadow of a directed lattice after validating it.
pub fn build_meadow(dl: DirectedLattice, mode: BuildMode) -> Result<Meadow> {
    let report = dl_validate(&dl, BUILD_BUDGET);
    if !report.passed() {
        return Err(Error::ValidationFailed(report));
    }
    let m = Meadow::assemble(dl, InvertibilityStatus::Lazy);
    match mode {
        BuildMode::Lazy => Ok(m),
        BuildMode::VerifyInvertibility => {
            m.verify_inverses()?;
            Ok(m.with_status(InvertibilityStatus::Verified))
        }
    }
}

impl Meadow {
    fn assemble(dl: DirectedLattice, status: InvertibilityStatus) -> Self {
        let l = dl.lattice();
        let n = l.len();
        let labels = l.names().iter().map(|s| Arc::from(s.as_str())).collect();
        let meets = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| l.meet(i, j).expect("validated lattice"))
                    .collect()
            })
            .collect();
        Meadow {
            inner: Arc::new(Inner {
                dl,
                status,
                labels,
                meets,
            }),
        }
    }

    fn with_status(self, status: InvertibilityStatus) -> Self {
        let inner = Arc::try_unwrap(self.inner).unwrap_or_else(|arc| Inner {
            dl: arc.dl.clone(),
            status: arc.status,
            labels: arc.labels.clone(),
            meets: arc.meets.clone(),
        });
        Meadow {
            inner: Arc::new(Inner { status, ..inner }),
        }
    }

    /// The structure of a directed lattice without validating its homs or
    /// inverses. Operations are still total; laws may fail. Used to look for
    /// counterexamples in defective inputs.
    pub fn unchecked(dl: DirectedLattice) -> Self {
        Meadow::assemble(dl, InvertibilityStatus::Lazy)
    }

    /// Certifies a unique maximal invertibility node for every element.
    /// Elements of finite rings are tried one by one. Elements of an
    /// infinite ring are safe when the ring is a field (non-zero elements
    /// invert where they are) or when the nodes below form a chain; other
    /// infinite rings are probed and reported as uncertifiable.
    fn verify_inverses(&self) -> Result<()> {
        let dl = &self.inner.dl;
        let l = dl.lattice();
        let mut uncertain = Vec::new();
        for i in 0..dl.len() {
            let ring = dl.ring_at(i);
            if ring.is_finite() {
                for v in ring_enumerate(ring)? {
                    self.inverse(&self.at(i, v)?)?;
                }
                continue;
            }
            let down = l.down_set(i);
            let chain = down
                .iter()
                .all(|&p| down.iter().all(|&q| l.comparable(p, q)));
            if ring.is_field() || chain {
                continue;
            }
            let (probes, _) = check_inputs(ring, 0, 0);
            for v in probes {
                self.inverse(&self.at(i, v)?)?;
            }
            uncertain.push(format!("{} at `{}`", ring, l.name(i)));
        }
        if uncertain.is_empty() {
            return Ok(());
        }
        Err(Error::InfiniteCarrier(format!(
            "cannot certify inverses of {}",
            uncertain.join(", ")
        )))
    }

    pub fn status(&self) -> InvertibilityStatus {
        self.inner.status
    }

    pub fn directed(&self) -> &DirectedLattice {
        &self.inner.dl
    }

    pub fn lattice(&self) -> &Lattice {
        self.inner.dl.lattice()
    }

    pub fn top(&self) -> usize {
        self.inner.dl.top()
    }

    pub fn bottom(&self) -> usize {
        self.inner.dl.bottom()
    }

    pub fn ring_at(&self, i: usize) -> &Arc<RingDescriptor> {
        self.inner.dl.ring_at(i)
    }

    pub fn node_name(&self, i: usize) -> &str {
        &self.inner.labels[i]
    }

    pub fn node_id(&self, name: &str) -> Result<usize> {
        self.lattice().id(name)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.inner.meets[i][j]
    }

    pub fn transition(&self, upper: usize, lower: usize) -> Result<&RingHom> {
        self.inner.dl.transition(upper, lower)
    }

    /// Wraps `value` as an element at node `i`.
    pub fn at(&self, i: usize, value: RingValue) -> Result<MeadowElement> {
        if i >= self.inner.labels.len() {
            return Err(Error::UnknownNode(format!("#{i}")));
        }
        let value = value.rehome(self.ring_at(i))?;
        Ok(MeadowElement {
            node: i,
            label: self.inner.labels[i].clone(),
            value,
        })
    }

    /// Wraps `value` as an element at the named node.
    pub fn element(&self, node: &str, value: RingValue) -> Result<MeadowElement> {
        self.at(self.node_id(node)?, value)
    }

    /// Parses `value @ node` or `a`; a bare value is placed at the top node.
    pub fn parse_element(&self, text: &str) -> Result<MeadowElement> {
        let t = text.trim();
        if t == "a" {
            return Ok(self.error_elem());
        }
        let (value, node) = match t.rsplit_once('@') {
            Some((v, n)) => (v.trim(), self.node_id(n.trim())?),
            None => (t, self.top()),
        };
        let v = parse_value(self.ring_at(node), value)?;
        self.at(node, v)
    }

    fn check(&self, x: &MeadowElement) -> Result<()> {
        let ok = x.node < self.inner.labels.len()
            && *x.label == *self.inner.labels[x.node]
            && **x.value.ring() == **self.ring_at(x.node);
        if ok {
            Ok(())
        } else {
            Err(Error::ForeignElement(x.to_string()))
        }
    }

    /// Whether `x` is an element of this meadow.
    pub fn contains(&self, x: &MeadowElement) -> bool {
        self.check(x).is_ok()
    }

    fn make(&self, node: usize, value: RingValue) -> MeadowElement {
        MeadowElement {
            node,
            label: self.inner.labels[node].clone(),
            value,
        }
    }

    /// The image of `x` at node `j <= node(x)`.
    pub fn image_at(&self, x: &MeadowElement, j: usize) -> Result<RingValue> {
        self.transition(x.node, j)?.apply(&x.value)
    }

    pub fn zero(&self) -> MeadowElement {
        let t = self.top();
        self.make(t, RingValue::zero(self.ring_at(t)))
    }

    pub fn one(&self) -> MeadowElement {
        let t = self.top();
        self.make(t, RingValue::one(self.ring_at(t)))
    }

    /// The absorbing element `a`.
    pub fn error_elem(&self) -> MeadowElement {
        let b = self.bottom();
        self.make(b, RingValue::zero(self.ring_at(b)))
    }

    /// `n·1` at the top node.
    pub fn numeral(&self, n: impl Into<BigInt>) -> MeadowElement {
        let t = self.top();
        self.make(t, RingValue::from_int(self.ring_at(t), n))
    }

    fn binary(
        &self,
        x: &MeadowElement,
        y: &MeadowElement,
        op: fn(&RingValue, &RingValue) -> Result<RingValue>,
    ) -> Result<MeadowElement> {
        self.check(x)?;
        self.check(y)?;
        let m = self.meet(x.node, y.node);
        let xv = self.image_at(x, m)?;
        let yv = self.image_at(y, m)?;
        Ok(self.make(m, op(&xv, &yv)?))
    }

    pub fn add(&self, x: &MeadowElement, y: &MeadowElement) -> Result<MeadowElement> {
        self.binary(x, y, RingValue::add)
    }

    pub fn mul(&self, x: &MeadowElement, y: &MeadowElement) -> Result<MeadowElement> {
        self.binary(x, y, RingValue::mul)
    }

    pub fn neg(&self, x: &MeadowElement) -> Result<MeadowElement> {
        self.check(x)?;
        Ok(self.make(x.node, x.value.neg()))
    }

    pub fn sub(&self, x: &MeadowElement, y: &MeadowElement) -> Result<MeadowElement> {
        self.add(x, &self.neg(y)?)
    }

    /// `0·x`: the zero of the ring holding `x`.
    pub fn zero_of(&self, x: &MeadowElement) -> Result<MeadowElement> {
        self.check(x)?;
        Ok(self.make(x.node, RingValue::zero(self.ring_at(x.node))))
    }

    /// `1 + 0·x`: the unit of the ring holding `x`.
    pub fn one_of(&self, x: &MeadowElement) -> Result<MeadowElement> {
        self.check(x)?;
        Ok(self.make(x.node, RingValue::one(self.ring_at(x.node))))
    }

    /// Nodes below `x` where its image is a unit, with the maximal ones.
    pub fn j_set(&self, x: &MeadowElement) -> Result<InverseWitness> {
        self.check(x)?;
        let l = self.lattice();
        let mut js = Vec::new();
        for j in l.down_set(x.node) {
            if self.image_at(x, j)?.is_unit() {
                js.push(j);
            }
        }
        let maximal = l.maximal_subset(&js);
        Ok(InverseWitness {
            element: x.clone(),
            j_set: js,
            maximal,
        })
    }

    pub fn inverse(&self, x: &MeadowElement) -> Result<MeadowElement> {
        let w = self.j_set(x)?;
        match w.maximal.as_slice() {
            [j] => {
                let img = self.image_at(x, *j)?;
                Ok(self.make(*j, img.inverse()?))
            }
            many => Err(Error::AmbiguousInverse {
                element: x.to_string(),
                maximal: many
                    .iter()
                    .map(|&j| self.node_name(j).to_string())
                    .collect(),
            }),
        }
    }

    pub fn div(&self, x: &MeadowElement, y: &MeadowElement) -> Result<MeadowElement> {
        self.mul(x, &self.inverse(y)?)
    }

    /// Whether `z` is the zero of its component.
    pub fn is_component_zero(&self, z: &MeadowElement) -> bool {
        self.contains(z) && z.value.is_zero()
    }

    /// The order on component zeros: `z <= z'` iff `z·z' = z`.
    pub fn zero_order_leq(&self, z: &MeadowElement, z2: &MeadowElement) -> Result<bool> {
        for w in [z, z2] {
            self.check(w)?;
            if !w.value.is_zero() {
                return Err(Error::NotAZero(w.to_string()));
            }
        }
        Ok(self.mul(z, z2)? == *z)
    }

    /// All component zeros, one per node.
    pub fn component_zeros(&self) -> Vec<MeadowElement> {
        (0..self.lattice().len())
            .map(|i| self.make(i, RingValue::zero(self.ring_at(i))))
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.inner.dl.is_finite()
    }

    /// Number of elements, when finite.
    pub fn carrier_size(&self) -> Option<usize> {
        self.inner
            .dl
            .rings()
            .iter()
            .try_fold(0usize, |acc, r| acc.checked_add(r.cardinality()?))
    }

    /// Every element, grouped by node in node order.
    pub fn elements(&self) -> Result<Vec<MeadowElement>> {
        let mut out = Vec::new();
        for i in 0..self.lattice().len() {
            for v in ring_enumerate(self.ring_at(i))? {
                out.push(self.make(i, v));
            }
        }
        Ok(out)
    }

    /// Elements to probe when the carrier is infinite: every element of
    /// finite rings, and the fixed sample pool plus generators of the others.
    pub fn probe_elements(&self) -> Vec<MeadowElement> {
        let mut out = Vec::new();
        for i in 0..self.lattice().len() {
            let (vals, _) = check_inputs(self.ring_at(i), 0, 0);
            out.extend(vals.into_iter().map(|v| self.make(i, v)));
        }
        out
    }

    /// Position of each element in [`Meadow::elements`].
    pub fn element_index(&self) -> Result<HashMap<MeadowElement, usize>> {
        Ok(self
            .elements()?
            .into_iter()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_z_q() -> Meadow {
        let l = Lattice::chain(&["a", "q", "z"]).unwrap();
        let dl = DirectedLattice::new(
            l,
            vec![
                RingDescriptor::Zero,
                RingDescriptor::Rationals,
                RingDescriptor::Integers,
            ],
            vec![("z".into(), "q".into(), RingHom::include_rationals())],
        )
        .unwrap();
        build_meadow(dl, BuildMode::VerifyInvertibility).unwrap()
    }

    #[test]
    fn chain_operations() {
        let m = chain_z_q();
        assert_eq!(m.status(), InvertibilityStatus::Verified);
        let two = m.numeral(2);
        let third = m.parse_element("1/3 @ q").unwrap();
        assert_eq!(m.add(&two, &third).unwrap().to_string(), "7/3 @ q");
        assert_eq!(m.inverse(&two).unwrap().to_string(), "1/2 @ q");
        assert_eq!(m.inverse(&m.zero()).unwrap(), m.error_elem());
        let five = m.numeral(5);
        assert!(m.add(&five, &m.error_elem()).unwrap().is_error());
        assert_eq!(m.neg(&m.error_elem()).unwrap(), m.error_elem());
        assert_eq!(m.neg(&m.numeral(3)).unwrap().to_string(), "-3 @ z");
        let w = m.j_set(&two).unwrap();
        let names: Vec<&str> = w.j_set.iter().map(|&j| m.node_name(j)).collect();
        assert_eq!(names, ["a", "q"]);
        assert_eq!(w.maximal, vec![m.node_id("q").unwrap()]);
        let w0 = m.j_set(&m.zero()).unwrap();
        assert_eq!(w0.maximal, vec![m.bottom()]);
    }

    #[test]
    fn zeros_and_order() {
        let m = chain_z_q();
        let half = m.parse_element("1/2 @ q").unwrap();
        assert_eq!(m.zero_of(&half).unwrap().to_string(), "0 @ q");
        assert_eq!(m.zero_of(&m.error_elem()).unwrap(), m.error_elem());
        let zz = m.zero();
        let zq = m.zero_of(&half).unwrap();
        assert!(m.zero_order_leq(&m.error_elem(), &zz).unwrap());
        assert!(m.zero_order_leq(&zz, &zz).unwrap());
        assert!(!m.zero_order_leq(&zz, &zq).unwrap());
        assert!(m.zero_order_leq(&zq, &zz).unwrap());
        assert!(matches!(
            m.zero_order_leq(&half, &zz),
            Err(Error::NotAZero(_))
        ));
    }

    #[test]
    fn foreign_elements_rejected() {
        let m = chain_z_q();
        let z5 = Arc::new(RingDescriptor::Mod(5));
        let stray = MeadowElement {
            node: 2,
            label: Arc::from("z"),
            value: RingValue::one(&z5),
        };
        assert!(matches!(
            m.add(&stray, &m.one()),
            Err(Error::ForeignElement(_))
        ));
    }
}
