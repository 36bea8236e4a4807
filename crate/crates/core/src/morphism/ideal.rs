//! Ideals of meadows, described node by node.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::meadow::{Meadow, MeadowElement};
use crate::report::{Confidence, ValidationReport, ViolationKind};
use crate::ring::{check_inputs, ring_enumerate, RingDescriptor, RingValue};

/// An ideal of one component ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealDesc {
    ZeroIdeal,
    WholeRing,
    /// An explicit list of members of a finite ring.
    FiniteSubset(Vec<RingValue>),
    /// `nZ` inside `Z`.
    Multiples(u64),
}

impl fmt::Display for IdealDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealDesc::ZeroIdeal => f.write_str("zero"),
            IdealDesc::WholeRing => f.write_str("whole"),
            IdealDesc::Multiples(n) => write!(f, "{n}Z"),
            IdealDesc::FiniteSubset(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

/// Membership of `v` in the ideal `d` of `ring`.
pub fn ideal_contains(ring: &RingDescriptor, d: &IdealDesc, v: &RingValue) -> Result<bool> {
    v.ring_check(ring)?;
    Ok(match d {
        IdealDesc::ZeroIdeal => v.is_zero(),
        IdealDesc::WholeRing => true,
        IdealDesc::FiniteSubset(xs) => xs.contains(v),
        IdealDesc::Multiples(n) => match v.as_integer() {
            Some(k) if *ring == RingDescriptor::Integers => {
                *n != 0 && k.is_multiple_of(&(*n).into()) || (*n == 0 && k.is_zero())
            }
            _ => false,
        },
    })
}

/// Elements generating `d` as an ideal.
pub fn ideal_generators(ring: &Arc<RingDescriptor>, d: &IdealDesc) -> Vec<RingValue> {
    match d {
        IdealDesc::ZeroIdeal => vec![RingValue::zero(ring)],
        IdealDesc::WholeRing => vec![RingValue::one(ring)],
        IdealDesc::FiniteSubset(xs) => xs.clone(),
        IdealDesc::Multiples(n) => vec![RingValue::from_int(ring, *n)],
    }
}

/// Members of `d` in a finite ring, in enumeration order.
pub fn ideal_elements(ring: &Arc<RingDescriptor>, d: &IdealDesc) -> Result<Vec<RingValue>> {
    let mut out = Vec::new();
    for v in ring_enumerate(ring)? {
        if ideal_contains(ring, d, &v)? {
            out.push(v);
        }
    }
    Ok(out)
}

/// Whether `d` is all of `ring`.
pub fn ideal_is_whole(ring: &Arc<RingDescriptor>, d: &IdealDesc) -> Result<bool> {
    if ring.is_zero_ring() {
        return Ok(true);
    }
    ideal_contains(ring, d, &RingValue::one(ring))
}

/// Canonical form: `{0}` becomes `ZeroIdeal`, the whole ring `WholeRing`,
/// subsets are listed in enumeration order.
pub fn normalize_ideal(ring: &Arc<RingDescriptor>, d: &IdealDesc) -> Result<IdealDesc> {
    if ideal_is_whole(ring, d)? {
        return Ok(IdealDesc::WholeRing);
    }
    Ok(match d {
        IdealDesc::Multiples(0) => IdealDesc::ZeroIdeal,
        IdealDesc::FiniteSubset(_) if ring.is_finite() => {
            let xs = ideal_elements(ring, d)?;
            if xs.len() == 1 {
                IdealDesc::ZeroIdeal
            } else {
                IdealDesc::FiniteSubset(xs)
            }
        }
        other => other.clone(),
    })
}

/// Every ideal of a finite ring, as sums of principal ideals, smallest
/// first.
pub fn ring_ideals(ring: &Arc<RingDescriptor>) -> Result<Vec<IdealDesc>> {
    let xs = ring_enumerate(ring)?;
    let n = xs.len();
    let index = |v: &RingValue| v.index().expect("finite ring element has an index");
    let mut found: BTreeSet<Vec<bool>> = BTreeSet::new();
    for x in &xs {
        let mut bits = vec![false; n];
        for r in &xs {
            bits[index(&x.mul(r)?)] = true;
        }
        found.insert(bits);
    }
    // close under sums
    loop {
        let current: Vec<Vec<bool>> = found.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &current {
                let mut bits = vec![false; n];
                let left = xs.iter().zip(a).filter(|(_, &t)| t).map(|(x, _)| x);
                for x in left {
                    for y in xs.iter().zip(b).filter(|(_, &t)| t).map(|(y, _)| y) {
                        bits[index(&x.add(y)?)] = true;
                    }
                }
                grew |= found.insert(bits);
            }
        }
        if !grew {
            break;
        }
    }
    let mut ideals: Vec<Vec<bool>> = found.into_iter().collect();
    ideals.sort_by_key(|b| {
        (
            b.iter().filter(|&&t| t).count(),
            b.iter().map(|&t| !t).collect::<Vec<_>>(),
        )
    });
    ideals
        .into_iter()
        .map(|bits| {
            let members = xs
                .iter()
                .zip(&bits)
                .filter(|(_, &t)| t)
                .map(|(x, _)| x.clone())
                .collect();
            normalize_ideal(ring, &IdealDesc::FiniteSubset(members))
        })
        .collect()
}

/// An ideal of a meadow: one ring ideal per node.
#[derive(Debug, Clone)]
pub struct MeadowIdeal {
    meadow: Meadow,
    at: Vec<IdealDesc>,
}

impl MeadowIdeal {
    /// Wraps per-node descriptors without checking them; see
    /// [`ideal_validate`].
    pub fn new(meadow: &Meadow, at: Vec<IdealDesc>) -> Result<Self> {
        if at.len() != meadow.lattice().len() {
            return Err(Error::InvalidHom(format!(
                "ideal lists {} nodes, the meadow has {}",
                at.len(),
                meadow.lattice().len()
            )));
        }
        Ok(MeadowIdeal {
            meadow: meadow.clone(),
            at,
        })
    }

    /// Unlisted nodes default to the zero ideal, except the bottom which is
    /// whole.
    pub fn from_named(meadow: &Meadow, entries: &[(&str, IdealDesc)]) -> Result<Self> {
        let n = meadow.lattice().len();
        let mut at = vec![IdealDesc::ZeroIdeal; n];
        at[meadow.bottom()] = IdealDesc::WholeRing;
        for (name, d) in entries {
            at[meadow.node_id(name)?] = d.clone();
        }
        MeadowIdeal::new(meadow, at)
    }

    /// The ideal `0·M` plus `a`: zero everywhere except the bottom.
    pub fn zero(meadow: &Meadow) -> Self {
        MeadowIdeal::from_named(meadow, &[]).expect("no entries")
    }

    pub fn meadow(&self) -> &Meadow {
        &self.meadow
    }

    pub fn at(&self, z: usize) -> &IdealDesc {
        &self.at[z]
    }

    pub fn descriptors(&self) -> &[IdealDesc] {
        &self.at
    }

    pub fn contains(&self, x: &MeadowElement) -> Result<bool> {
        if !self.meadow.contains(x) {
            return Err(Error::ForeignElement(x.to_string()));
        }
        ideal_contains(self.meadow.ring_at(x.node()), &self.at[x.node()], x.value())
    }

    /// Nodes where the ideal is the whole component, in node order.
    pub fn collapsed(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for z in 0..self.at.len() {
            if ideal_is_whole(self.meadow.ring_at(z), &self.at[z])? {
                out.push(z);
            }
        }
        Ok(out)
    }

    pub fn is_whole(&self) -> Result<bool> {
        Ok(self.collapsed()?.len() == self.at.len())
    }

    /// Members, in meadow element order.
    pub fn elements(&self) -> Result<Vec<MeadowElement>> {
        let mut out = Vec::new();
        for x in self.meadow.elements()? {
            if self.contains(&x)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Inclusion, decided elementwise on finite meadows.
    pub fn is_subset_of(&self, other: &MeadowIdeal) -> Result<bool> {
        for x in self.elements()? {
            if !other.contains(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same members, decided elementwise on finite meadows.
    pub fn same_members(&self, other: &MeadowIdeal) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }
}

impl fmt::Display for MeadowIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .at
            .iter()
            .enumerate()
            .map(|(z, d)| format!("{}: {d}", self.meadow.node_name(z)))
            .collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

/// Checks the ideal clauses at every node, closure under transitions, and
/// that `a` belongs to the ideal.
pub fn ideal_validate(ideal: &MeadowIdeal) -> ValidationReport {
    let mut report = ValidationReport::new(format!("ideal {ideal}"));
    if let Err(e) = validate_into(ideal, &mut report) {
        report.violate(ViolationKind::IdealShape, e.to_string());
    }
    report
}

fn validate_into(ideal: &MeadowIdeal, report: &mut ValidationReport) -> Result<()> {
    let m = &ideal.meadow;
    for z in 0..ideal.at.len() {
        let ring = m.ring_at(z);
        let name = m.node_name(z);
        let d = &ideal.at[z];
        match d {
            IdealDesc::Multiples(_) if **ring != RingDescriptor::Integers => {
                report.violate(
                    ViolationKind::IdealShape,
                    format!("`{name}`: multiples ideal in {ring}"),
                );
                continue;
            }
            IdealDesc::FiniteSubset(xs) => {
                if let Some(bad) = xs.iter().find(|x| x.ring_check(ring).is_err()) {
                    report.violate(
                        ViolationKind::IdealShape,
                        format!("`{name}`: {bad} is not an element of {ring}"),
                    );
                    continue;
                }
            }
            _ => {}
        }
        let zero = RingValue::zero(ring);
        report.checked += 1;
        if !ideal_contains(ring, d, &zero)? {
            report.violate(
                ViolationKind::MissingZero,
                format!("`{name}`: 0 is missing"),
            );
        }
        // only explicit subsets can fail the closure clauses
        if let IdealDesc::FiniteSubset(xs) = d {
            let (rs, conf) = check_inputs(ring, 16, 0);
            if conf == Confidence::Sampled {
                report.confidence = Confidence::Sampled;
            }
            for x in xs {
                report.checked += 1;
                if !ideal_contains(ring, d, &x.neg())? {
                    report.violate(
                        ViolationKind::NotClosedNeg,
                        format!("`{name}`: -({x}) is missing"),
                    );
                }
                for y in xs {
                    report.checked += 1;
                    let s = x.add(y)?;
                    if !ideal_contains(ring, d, &s)? {
                        report.violate(
                            ViolationKind::NotClosedAdd,
                            format!("`{name}`: {x} + {y} = {s} is missing"),
                        );
                    }
                }
                for r in &rs {
                    report.checked += 1;
                    let p = x.mul(r)?;
                    if !ideal_contains(ring, d, &p)? {
                        report.violate(
                            ViolationKind::NotAbsorbing,
                            format!("`{name}`: {x} · {r} = {p} is missing"),
                        );
                    }
                }
            }
        }
    }
    let l = m.lattice();
    for upper in 0..l.len() {
        for lower in l.down_set(upper) {
            if lower == upper {
                continue;
            }
            let t = m.transition(upper, lower)?;
            for g in ideal_generators(m.ring_at(upper), &ideal.at[upper]) {
                report.checked += 1;
                let img = t.apply(&g)?;
                if !ideal_contains(m.ring_at(lower), &ideal.at[lower], &img)? {
                    report.violate(
                        ViolationKind::TransitionClosure,
                        format!(
                            "{g} @ {} lands on {img} @ {} outside the ideal",
                            m.node_name(upper),
                            m.node_name(lower)
                        ),
                    );
                }
            }
        }
    }
    report.checked += 1;
    if !ideal.contains(&m.error_elem())? {
        report.violate(ViolationKind::BottomNotWhole, "a is not in the ideal");
    }
    Ok(())
}

/// The elements whose zero is not the top zero, together with `0`: whole at
/// every node below the top, zero at the top.
pub fn rad(m: &Meadow) -> MeadowIdeal {
    let at = (0..m.lattice().len())
        .map(|z| {
            if z == m.top() {
                IdealDesc::ZeroIdeal
            } else {
                IdealDesc::WholeRing
            }
        })
        .collect();
    MeadowIdeal::new(m, at).expect("one descriptor per node")
}

/// Every ideal of a finite meadow, including the whole meadow.
pub fn all_ideals(m: &Meadow) -> Result<Vec<MeadowIdeal>> {
    if !m.is_finite() {
        return Err(Error::InfiniteCarrier(
            "ideal enumeration needs a finite carrier".into(),
        ));
    }
    let n = m.lattice().len();
    let per_node = (0..n)
        .map(|z| {
            if z == m.bottom() {
                Ok(vec![IdealDesc::WholeRing])
            } else {
                ring_ideals(m.ring_at(z))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let at = choice
            .iter()
            .enumerate()
            .map(|(z, &k)| per_node[z][k].clone())
            .collect();
        let ideal = MeadowIdeal::new(m, at)?;
        if ideal_validate(&ideal).passed() {
            out.push(ideal);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < per_node[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Proper ideals of a finite meadow not strictly contained in another
/// proper ideal, found by comparing all ideals pairwise.
pub fn maximal_ideals(m: &Meadow) -> Result<Vec<MeadowIdeal>> {
    let mut proper = Vec::new();
    for i in all_ideals(m)? {
        if !i.is_whole()? {
            proper.push(i);
        }
    }
    let mut out = Vec::new();
    for (k, i) in proper.iter().enumerate() {
        let mut maximal = true;
        for (j, other) in proper.iter().enumerate() {
            if j != k && i.is_subset_of(other)? && !other.is_subset_of(i)? {
                maximal = false;
                break;
            }
        }
        if maximal {
            out.push(i.clone());
        }
    }
    Ok(out)
}

/// `{x | f(x) = 0·f(x)}` as an ideal of the finite source of `f`.
pub fn kernel_ideal(f: &super::hom::MeadowHom) -> Result<MeadowIdeal> {
    let m = f.source();
    let members = super::hom::kernel(f, &super::hom::KernelKind::R)?;
    let at = (0..m.lattice().len())
        .map(|z| {
            let xs = members
                .iter()
                .filter(|x| x.node() == z)
                .map(|x| x.value().clone())
                .collect();
            normalize_ideal(m.ring_at(z), &IdealDesc::FiniteSubset(xs))
        })
        .collect::<Result<Vec<_>>>()?;
    MeadowIdeal::new(m, at)
}
