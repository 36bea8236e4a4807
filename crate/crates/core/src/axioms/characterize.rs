//! Syntactic laws compared against the lattice shape they describe, and
//! counterexample search on unvalidated structures.

use std::fmt;

use serde_json::{json, Value};

use super::check::{check_axioms, check_laws, witness_of, CheckMode, Witness};
use super::laws::{Law, Suite};
use crate::directed::DirectedLattice;
use crate::error::{Error, Result};
use crate::meadow::Meadow;
use crate::ring::{ring_enumerate, RingDescriptor};

/// The equivalences between extra laws and lattice shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Characterization {
    /// NVL holds iff the zero lattice has exactly two elements.
    Nvl,
    /// AVL implies every atom of the zero lattice carries a field.
    Avl,
    /// NVL and AVL together hold iff the meadow is a field plus `a`.
    NvlAvl,
    /// CIL holds iff the meadow is a field plus `a`.
    Cil,
    /// The additive assembly is strong iff the zero order is total.
    StrongAssembly,
}

impl Characterization {
    pub const ALL: [Characterization; 5] = [
        Characterization::Nvl,
        Characterization::Avl,
        Characterization::NvlAvl,
        Characterization::Cil,
        Characterization::StrongAssembly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Characterization::Nvl => "NVL_struct",
            Characterization::Avl => "AVL_struct",
            Characterization::NvlAvl => "NVL_AVL_struct",
            Characterization::Cil => "CIL_struct",
            Characterization::StrongAssembly => "StrongAssembly_struct",
        }
    }

    /// Only the syntactic-to-structural direction is claimed.
    pub fn implication_only(self) -> bool {
        self == Characterization::Avl
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterizationReport {
    pub which: Characterization,
    pub syntactic: bool,
    pub structural: bool,
    /// The claimed biconditional (or implication) holds on this meadow.
    pub consistent: bool,
    pub detail: String,
}

impl CharacterizationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "which": self.which.name(),
            "syntactic": self.syntactic,
            "structural": self.structural,
            "consistent": self.consistent,
            "detail": self.detail,
        })
    }
}

impl fmt::Display for CharacterizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: syntactic {} structural {} -> {} ({})",
            self.which.name(),
            self.syntactic,
            self.structural,
            if self.consistent {
                "consistent"
            } else {
                "MISMATCH"
            },
            self.detail
        )
    }
}

/// A finite ring is a field when it is non-zero and every non-zero element
/// has a multiplicative inverse, found by trying every candidate.
pub fn is_field_by_search(ring: &std::sync::Arc<RingDescriptor>) -> Result<bool> {
    let elems = ring_enumerate(ring)?;
    if ring.is_zero_ring() {
        return Ok(false);
    }
    for x in elems.iter().filter(|x| !x.is_zero()) {
        let mut found = false;
        for y in &elems {
            if x.mul(y)?.is_one() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

fn suite_holds(m: &Meadow, suite: Suite) -> Result<bool> {
    Ok(check_axioms(m, suite, CheckMode::Exhaustive)?.passed())
}

/// Computes both sides of a characterization on a finite meadow.
pub fn check_characterizations(
    m: &Meadow,
    which: Characterization,
) -> Result<CharacterizationReport> {
    if !m.is_finite() {
        return Err(Error::InfiniteCarrier(
            "characterizations need a finite carrier".into(),
        ));
    }
    let l = m.lattice();
    let nodes = l.len();
    let top_field = is_field_by_search(m.ring_at(m.top()))?;
    let (syntactic, structural, detail) = match which {
        Characterization::Nvl => {
            let zeros = m.component_zeros().len();
            (
                suite_holds(m, Suite::NVL)?,
                zeros == 2,
                format!("|0·M| = {zeros}"),
            )
        }
        Characterization::Avl => {
            let atoms: Vec<usize> = (0..nodes)
                .filter(|&i| l.lower_covers(i) == vec![m.bottom()])
                .collect();
            let mut all = true;
            for &i in &atoms {
                all &= is_field_by_search(m.ring_at(i))?;
            }
            let names: Vec<&str> = atoms.iter().map(|&i| m.node_name(i)).collect();
            (
                suite_holds(m, Suite::AVL)?,
                all,
                format!("atoms {names:?} all fields: {all}"),
            )
        }
        Characterization::NvlAvl => (
            suite_holds(m, Suite::NVL)? && suite_holds(m, Suite::AVL)?,
            nodes == 2 && top_field,
            format!("{nodes} nodes, top field: {top_field}"),
        ),
        Characterization::Cil => (
            suite_holds(m, Suite::CIL)?,
            nodes == 2 && top_field,
            format!("{nodes} nodes, top field: {top_field}"),
        ),
        Characterization::StrongAssembly => {
            let zeros = m.component_zeros();
            let mut total = true;
            for z in &zeros {
                for w in &zeros {
                    total &= m.zero_order_leq(z, w)? || m.zero_order_leq(w, z)?;
                }
            }
            (
                suite_holds(m, Suite::StrongAssembly)?,
                total,
                format!("zero order total: {total}"),
            )
        }
    };
    let consistent = if which.implication_only() {
        !syntactic || structural
    } else {
        syntactic == structural
    };
    Ok(CharacterizationReport {
        which,
        syntactic,
        structural,
        consistent,
        detail,
    })
}

/// What [`find_counterexample`] looks for.
#[derive(Debug, Clone, PartialEq)]
pub enum Property {
    Law(Law),
    /// Every element's set of invertibility nodes has one maximal element.
    UniqueMaximalInverse,
}

/// Builds the operations of `g` without validating it and returns the first
/// refuting assignment in enumeration order, if any.
pub fn find_counterexample(g: &DirectedLattice, prop: &Property) -> Result<Option<Witness>> {
    if !g.is_finite() {
        return Err(Error::InfiniteCarrier(
            "counterexample search needs a finite carrier".into(),
        ));
    }
    let m = Meadow::unchecked(g.clone());
    match prop {
        Property::UniqueMaximalInverse => {
            for x in m.elements()? {
                if m.j_set(&x)?.maximal.len() != 1 {
                    return Ok(Some(witness_of(&["x".to_string()], &[x])));
                }
            }
            Ok(None)
        }
        Property::Law(law) => {
            let r = check_laws(
                &m,
                &law.name,
                std::slice::from_ref(law),
                CheckMode::Exhaustive,
            )?;
            Ok(r.laws
                .into_iter()
                .next()
                .filter(|l| !l.passed)
                .map(|l| l.witness))
        }
    }
}
