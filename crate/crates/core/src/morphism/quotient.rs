//! Quotients of meadows by ideals and the homs they induce.

use std::sync::Arc;

use num_integer::Integer;

use super::hom::{hom_build, MeadowHom};
use super::ideal::{
    ideal_elements, ideal_generators, ideal_is_whole, ideal_validate, IdealDesc, MeadowIdeal,
};
use crate::directed::DirectedLattice;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::meadow::{build_meadow, BuildMode, Meadow};
use crate::ring::{ring_enumerate, Payload, RingDescriptor, RingHom, RingValue};

/// `R/I` together with the projection `R -> R/I`.
pub fn quotient_ring(ring: &Arc<RingDescriptor>, d: &IdealDesc) -> Result<RingHom> {
    if ideal_is_whole(ring, d)? {
        return Ok(RingHom::collapse(ring));
    }
    let unsupported = || Error::UnsupportedDescriptor(format!("quotient of {ring} by {d}"));
    match (ring.as_ref(), d) {
        (_, IdealDesc::ZeroIdeal) | (_, IdealDesc::Multiples(0)) => Ok(RingHom::identity(ring)),
        (RingDescriptor::Integers, IdealDesc::Multiples(n)) => RingHom::reduce_mod(*n),
        (RingDescriptor::Mod(n), IdealDesc::FiniteSubset(xs)) => {
            let mut g = *n;
            for x in xs {
                match x.payload() {
                    Payload::Res(r) => g = g.gcd(r),
                    _ => return Err(unsupported()),
                }
            }
            if g == *n {
                Ok(RingHom::identity(ring))
            } else {
                RingHom::reduce_mod_div(*n, g)
            }
        }
        (RingDescriptor::Product(fs), IdealDesc::FiniteSubset(_)) => {
            // an ideal of a unital product is the product of its projections
            let members = ideal_elements(ring, d)?;
            let mut parts = Vec::new();
            let mut expected = 1usize;
            for k in 0..fs.len() {
                let proj = RingHom::project(ring, k)?;
                let mut comp: Vec<RingValue> = Vec::new();
                for x in &members {
                    let c = proj.apply(x)?;
                    if !comp.contains(&c) {
                        comp.push(c);
                    }
                }
                expected *= comp.len();
                let q = quotient_ring(proj.target(), &IdealDesc::FiniteSubset(comp))?;
                if !q.target().is_zero_ring() {
                    parts.push(proj.then(&q)?);
                }
            }
            if expected != members.len() {
                return Err(unsupported());
            }
            match parts.len() {
                0 => Ok(RingHom::collapse(ring)),
                1 => Ok(parts.pop().expect("one part")),
                _ => RingHom::pair(parts),
            }
        }
        _ => Err(unsupported()),
    }
}

/// A preimage for every element of a finite `q.target()`.
fn section(q: &RingHom) -> Result<Vec<(RingValue, RingValue)>> {
    let source = q.source();
    let mut out: Vec<(RingValue, RingValue)> = Vec::new();
    if source.is_finite() {
        for x in ring_enumerate(source)? {
            let c = q.apply(&x)?;
            if !out.iter().any(|(k, _)| *k == c) {
                out.push((c, x));
            }
        }
        return Ok(out);
    }
    if let (RingDescriptor::Integers, RingDescriptor::Mod(n)) =
        (source.as_ref(), q.target().as_ref())
    {
        for r in 0..*n {
            out.push((
                RingValue::from_int(q.target(), r),
                RingValue::from_int(source, r),
            ));
        }
        return Ok(out);
    }
    Err(Error::UnsupportedDescriptor(format!("no section for {q}")))
}

/// The map `R/I -> S` induced by `f: R -> S` through the projection `q`.
fn descend(q: &RingHom, f: &RingHom) -> Result<RingHom> {
    if q.is_identity() {
        return Ok(f.clone());
    }
    if q.target().is_zero_ring() {
        if f.target().is_zero_ring() {
            return Ok(RingHom::identity(q.target()));
        }
        return Err(Error::IdealNotKilled(format!("1 of {}", q.source())));
    }
    let entries = section(q)?
        .into_iter()
        .map(|(c, rep)| Ok((c, f.apply(&rep)?)))
        .collect::<Result<Vec<_>>>()?;
    RingHom::table(q.target(), f.target(), entries)
}

/// Whether the quotient's inverse could be certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientKind {
    Meadow,
    /// A pre-meadow with `a` whose inverse is ambiguous somewhere, or could
    /// not be certified on an infinite non-chain lattice.
    PreMeadowWithA,
}

#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: Meadow,
    pub kind: QuotientKind,
    /// Source nodes where the ideal is the whole component, all sent to `a`.
    pub collapsed: Vec<usize>,
    pub projection: MeadowHom,
    /// Per source node, the projection of its ring onto the quotient ring.
    pub ring_projections: Vec<RingHom>,
}

impl QuotientResult {
    /// The quotient as a meadow, or the first ambiguous inverse.
    pub fn into_meadow(self) -> Result<Meadow> {
        match self.kind {
            QuotientKind::Meadow => Ok(self.quotient),
            QuotientKind::PreMeadowWithA => {
                let m = &self.quotient;
                let pool = if m.is_finite() {
                    m.elements()?
                } else {
                    m.probe_elements()
                };
                for x in pool {
                    m.inverse(&x)?;
                }
                Err(Error::Undecidable("inverse could not be certified".into()))
            }
        }
    }
}

/// `M/I`: component rings are divided by the ideal, components where it is
/// whole collapse into `a`.
pub fn quotient(m: &Meadow, ideal: &MeadowIdeal) -> Result<QuotientResult> {
    let report = ideal_validate(ideal);
    if !report.passed() {
        return Err(Error::ValidationFailed(report));
    }
    if ideal.is_whole()? {
        return Err(Error::IdealIsWhole);
    }
    let collapsed = ideal.collapsed()?;
    let l = m.lattice();
    let survivors: Vec<usize> = (0..l.len())
        .filter(|z| !collapsed.contains(z) || *z == m.bottom())
        .collect();
    let new_id = |z: usize| survivors.iter().position(|&s| s == z);
    let new_bottom = new_id(m.bottom()).expect("bottom survives");

    let ring_projections = (0..l.len())
        .map(|z| quotient_ring(m.ring_at(z), ideal.at(z)))
        .collect::<Result<Vec<_>>>()?;

    let names: Vec<String> = survivors.iter().map(|&z| l.name(z).to_string()).collect();
    let mut order = Vec::new();
    for (i, &zi) in survivors.iter().enumerate() {
        for (j, &zj) in survivors.iter().enumerate() {
            if l.leq(zi, zj) {
                order.push((i, j));
            }
        }
    }
    let ql = Lattice::from_indices(names, &order);
    let rings: Vec<RingDescriptor> = survivors
        .iter()
        .map(|&z| (**ring_projections[z].target()).clone())
        .collect();
    let mut homs = Vec::new();
    for (hi, lo) in ql.covers() {
        if lo == new_bottom {
            continue;
        }
        let (zh, zl) = (survivors[hi], survivors[lo]);
        let down = m.transition(zh, zl)?.then(&ring_projections[zl])?;
        let edge = descend(&ring_projections[zh], &down)?;
        homs.push((ql.name(hi).to_string(), ql.name(lo).to_string(), edge));
    }
    let dl = DirectedLattice::new(ql, rings, homs)?;
    let (quotient, kind) = match build_meadow(dl.clone(), BuildMode::VerifyInvertibility) {
        Ok(q) => (q, QuotientKind::Meadow),
        Err(Error::AmbiguousInverse { .. }) | Err(Error::InfiniteCarrier(_)) => (
            build_meadow(dl, BuildMode::Lazy)?,
            QuotientKind::PreMeadowWithA,
        ),
        Err(e) => return Err(e),
    };
    let lattice_map = (0..l.len())
        .map(|z| {
            new_id(z)
                .filter(|_| !collapsed.contains(&z))
                .unwrap_or(new_bottom)
        })
        .collect();
    let projection = hom_build(m, &quotient, lattice_map, ring_projections.clone())?;
    Ok(QuotientResult {
        quotient,
        kind,
        collapsed,
        projection,
        ring_projections,
    })
}

/// Given `f: M -> N` sending the ideal to zeros, the unique hom
/// `M/I -> N` whose composite with the projection is `f`.
pub fn induced_hom(f: &MeadowHom, ideal: &MeadowIdeal) -> Result<(QuotientResult, MeadowHom)> {
    let m = f.source();
    if m.lattice().names() != ideal.meadow().lattice().names() {
        return Err(Error::TargetMismatch(
            "the ideal lives in another meadow".into(),
        ));
    }
    if m.is_finite() {
        for x in ideal.elements()? {
            if !f.apply(&x)?.value().is_zero() {
                return Err(Error::IdealNotKilled(x.to_string()));
            }
        }
    } else {
        for z in 0..m.lattice().len() {
            for g in ideal_generators(m.ring_at(z), ideal.at(z)) {
                let x = m.at(z, g)?;
                if !f.apply(&x)?.value().is_zero() {
                    return Err(Error::IdealNotKilled(x.to_string()));
                }
            }
        }
    }
    let q = quotient(m, ideal)?;
    let qm = &q.quotient;
    let n = qm.lattice().len();
    let mut lattice_map = vec![0; n];
    let mut ring_maps = Vec::with_capacity(n);
    for k in 0..n {
        let z = m.node_id(qm.node_name(k))?;
        lattice_map[k] = f.lattice_map()[z];
        ring_maps.push(descend(&q.ring_projections[z], f.ring_map(z))?);
    }
    let g = hom_build(qm, f.target(), lattice_map, ring_maps)?;
    if m.is_finite() {
        for x in m.elements()? {
            if g.apply(&q.projection.apply(&x)?)? != f.apply(&x)? {
                return Err(Error::HomLawViolated {
                    law: "induced hom after projection equals f".into(),
                    witness: x.to_string(),
                });
            }
        }
    }
    Ok((q, g))
}
