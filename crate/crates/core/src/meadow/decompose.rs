//! Recovering the directed lattice of a finite meadow from its operations.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Meadow, MeadowElement};
use crate::directed::DirectedLattice;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::ring::{RingDescriptor, RingHom};

/// One ring `{x | 0·x = z}` of the disjoint-union decomposition.
#[derive(Debug, Clone)]
pub struct Component {
    pub zero: MeadowElement,
    pub ring: Arc<RingDescriptor>,
    pub carrier: Vec<MeadowElement>,
}

/// Components indexed by their zeros, with the maps `x ↦ x + z` between them.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub components: Vec<Component>,
    /// `(lower, upper)` component indices with `z_lower · z_upper = z_lower`.
    pub order: Vec<(usize, usize)>,
    /// `(upper, lower, map)` for every strictly comparable pair.
    pub transitions: Vec<(usize, usize, RingHom)>,
}

/// Splits a finite meadow into its components using only `+`, `·` and `0`.
pub fn decompose(m: &Meadow) -> Result<Decomposition> {
    if !m.is_finite() {
        return Err(Error::InfiniteCarrier(
            "decomposition needs a finite carrier".into(),
        ));
    }
    let zero = m.zero();
    let mut zeros: Vec<MeadowElement> = Vec::new();
    let mut members: Vec<Vec<MeadowElement>> = Vec::new();
    let mut slot: HashMap<MeadowElement, usize> = HashMap::new();
    for x in m.elements()? {
        let z = m.mul(&zero, &x)?;
        let k = *slot.entry(z.clone()).or_insert_with(|| {
            zeros.push(z.clone());
            members.push(Vec::new());
            zeros.len() - 1
        });
        members[k].push(x);
    }

    let mut components = Vec::with_capacity(zeros.len());
    for (z, carrier) in zeros.iter().zip(members) {
        if !carrier.contains(z) {
            return Err(Error::NotAZero(z.to_string()));
        }
        // the component carries the ring of its zero's node; every member
        // must live there and the sizes must agree
        let ring = m.ring_at(z.node()).clone();
        if carrier.iter().any(|x| x.node() != z.node()) || ring.cardinality() != Some(carrier.len())
        {
            return Err(Error::InvalidDescriptor(format!(
                "component of {z} does not match the ring {ring}"
            )));
        }
        components.push(Component {
            zero: z.clone(),
            ring,
            carrier,
        });
    }

    let n = components.len();
    let mut order = Vec::new();
    let mut transitions = Vec::new();
    for lo in 0..n {
        for hi in 0..n {
            let (zl, zh) = (&components[lo].zero, &components[hi].zero);
            if m.mul(zl, zh)? != *zl {
                continue;
            }
            order.push((lo, hi));
            if lo == hi {
                continue;
            }
            let entries = components[hi]
                .carrier
                .iter()
                .map(|x| Ok((x.value().clone(), m.add(x, zl)?.value().clone())))
                .collect::<Result<Vec<_>>>()?;
            let h = RingHom::table(&components[hi].ring, &components[lo].ring, entries)?;
            transitions.push((hi, lo, h));
        }
    }
    Ok(Decomposition {
        components,
        order,
        transitions,
    })
}

impl Decomposition {
    /// The zero order as a lattice, nodes named after the zeros' nodes.
    pub fn lattice(&self) -> Lattice {
        let names = self
            .components
            .iter()
            .map(|c| c.zero.node_name().to_string())
            .collect();
        Lattice::from_indices(names, &self.order)
    }

    /// Rebuilds a directed lattice from the components and their covering
    /// transitions.
    pub fn to_directed_lattice(&self) -> Result<DirectedLattice> {
        let lattice = self.lattice();
        let covers = lattice.covers();
        let homs = self
            .transitions
            .iter()
            .filter(|(hi, lo, _)| covers.contains(&(*hi, *lo)))
            .map(|(hi, lo, h)| {
                (
                    lattice.name(*hi).to_string(),
                    lattice.name(*lo).to_string(),
                    h.clone(),
                )
            })
            .collect();
        let rings = self.components.iter().map(|c| (*c.ring).clone()).collect();
        DirectedLattice::new(lattice, rings, homs)
    }
}
