//! Meadow homs given by a lattice map and one ring hom per node.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::meadow::{Meadow, MeadowElement};
use crate::report::{Confidence, ViolationKind};
use crate::ring::{check_inputs, hom_collision, hom_validate, RingHom};

/// Elements per side above which elementwise checks fall back to probes.
const ELEMENTWISE_LIMIT: usize = 64;

/// A hom of meadows: `x` at node `z` goes to `ring_maps[z](x)` at
/// `lattice_map[z]`.
#[derive(Debug, Clone)]
pub struct MeadowHom {
    source: Meadow,
    target: Meadow,
    lattice_map: Vec<usize>,
    ring_maps: Vec<RingHom>,
    confidence: Confidence,
}

pub(crate) fn check_lattice_map(src: &Meadow, dst: &Meadow, phi: &[usize]) -> Result<()> {
    let (ls, lt) = (src.lattice(), dst.lattice());
    if phi.len() != ls.len() {
        return Err(Error::NotLatticeHom(format!(
            "map covers {} of {} nodes",
            phi.len(),
            ls.len()
        )));
    }
    if let Some(&bad) = phi.iter().find(|&&w| w >= lt.len()) {
        return Err(Error::NotLatticeHom(format!(
            "node index {bad} is out of range"
        )));
    }
    let name = |i: usize| src.node_name(i).to_string();
    if phi[src.top()] != dst.top() {
        return Err(Error::NotLatticeHom(format!(
            "top `{}` is not sent to top",
            name(src.top())
        )));
    }
    if phi[src.bottom()] != dst.bottom() {
        return Err(Error::NotLatticeHom(format!(
            "bottom `{}` is not sent to bottom",
            name(src.bottom())
        )));
    }
    for i in 0..ls.len() {
        for j in 0..ls.len() {
            if ls.leq(i, j) && !lt.leq(phi[i], phi[j]) {
                return Err(Error::NotLatticeHom(format!(
                    "`{}` <= `{}` is not preserved",
                    name(i),
                    name(j)
                )));
            }
            if phi[src.meet(i, j)] != dst.meet(phi[i], phi[j]) {
                return Err(Error::NotLatticeHom(format!(
                    "meet of `{}` and `{}` is not preserved",
                    name(i),
                    name(j)
                )));
            }
        }
    }
    Ok(())
}

/// Validates and assembles a meadow hom.
///
/// Checks that the lattice map preserves order, meets, top and bottom, that
/// every ring map is a ring hom between the right rings, and that every
/// covering square commutes. Finally checks additivity, multiplicativity and
/// `f(1) = 1` elementwise, exhaustively on small finite sources.
pub fn hom_build(
    src: &Meadow,
    dst: &Meadow,
    lattice_map: Vec<usize>,
    ring_maps: Vec<RingHom>,
) -> Result<MeadowHom> {
    check_lattice_map(src, dst, &lattice_map)?;
    if ring_maps.len() != lattice_map.len() {
        return Err(Error::InvalidHom(format!(
            "{} ring maps for {} nodes",
            ring_maps.len(),
            lattice_map.len()
        )));
    }
    let mut confidence = Confidence::Exhaustive;
    for (z, h) in ring_maps.iter().enumerate() {
        let node = src.node_name(z).to_string();
        let want_src = src.ring_at(z);
        let want_tgt = dst.ring_at(lattice_map[z]);
        if **h.source() != **want_src || **h.target() != **want_tgt {
            return Err(Error::NotRingHom {
                node,
                detail: format!(
                    "expected {want_src} -> {want_tgt}, found {} -> {}",
                    h.source(),
                    h.target()
                ),
            });
        }
        let report = hom_validate(h, 16);
        if report.confidence == Confidence::Sampled {
            confidence = Confidence::Sampled;
        }
        if !report.passed() {
            if report
                .violations
                .iter()
                .all(|v| v.kind == ViolationKind::HomOne)
            {
                return Err(Error::UnitNotPreserved(format!("at `{node}`: {report}")));
            }
            return Err(Error::NotRingHom {
                node,
                detail: report.to_string(),
            });
        }
    }
    for (upper, lower) in src.lattice().covers() {
        let (pu, pl) = (lattice_map[upper], lattice_map[lower]);
        let down_src = src.transition(upper, lower)?;
        let down_dst = dst.transition(pu, pl)?;
        let (inputs, conf) = check_inputs(src.ring_at(upper), 16, 0);
        if conf == Confidence::Sampled {
            confidence = Confidence::Sampled;
        }
        for x in inputs {
            let left = ring_maps[lower].apply(&down_src.apply(&x)?)?;
            let right = down_dst.apply(&ring_maps[upper].apply(&x)?)?;
            if left != right {
                return Err(Error::SquareDoesNotCommute {
                    upper: src.node_name(upper).to_string(),
                    lower: src.node_name(lower).to_string(),
                    witness: x.to_string(),
                });
            }
        }
    }
    let f = MeadowHom {
        source: src.clone(),
        target: dst.clone(),
        lattice_map,
        ring_maps,
        confidence,
    };
    f.check_elementwise()?;
    Ok(f)
}

/// Looks nodes up by name and builds the hom.
pub fn hom_build_named(
    src: &Meadow,
    dst: &Meadow,
    maps: &[(&str, &str, RingHom)],
) -> Result<MeadowHom> {
    let n = src.lattice().len();
    let mut lattice_map = vec![None; n];
    let mut ring_maps = vec![None; n];
    for (from, to, h) in maps {
        let z = src.node_id(from)?;
        lattice_map[z] = Some(dst.node_id(to)?);
        ring_maps[z] = Some(h.clone());
    }
    let missing =
        |i: usize| Error::NotLatticeHom(format!("node `{}` is not mapped", src.node_name(i)));
    let lattice_map = lattice_map
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| missing(i)))
        .collect::<Result<Vec<_>>>()?;
    let ring_maps = ring_maps
        .into_iter()
        .enumerate()
        .map(|(i, h)| h.ok_or_else(|| missing(i)))
        .collect::<Result<Vec<_>>>()?;
    hom_build(src, dst, lattice_map, ring_maps)
}

impl MeadowHom {
    pub fn source(&self) -> &Meadow {
        &self.source
    }

    pub fn target(&self) -> &Meadow {
        &self.target
    }

    pub fn lattice_map(&self) -> &[usize] {
        &self.lattice_map
    }

    pub fn ring_map(&self, z: usize) -> &RingHom {
        &self.ring_maps[z]
    }

    pub fn ring_maps(&self) -> &[RingHom] {
        &self.ring_maps
    }

    /// Whether the ring-hom and square checks covered every input.
    pub fn confidence(&self) -> Confidence {
        self.confidence
    }

    pub fn apply(&self, x: &MeadowElement) -> Result<MeadowElement> {
        if !self.source.contains(x) {
            return Err(Error::ForeignElement(x.to_string()));
        }
        let z = x.node();
        let v = self.ring_maps[z].apply(x.value())?;
        self.target.at(self.lattice_map[z], v)
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &MeadowHom) -> Result<MeadowHom> {
        let lattice_map = self.lattice_map.iter().map(|&w| g.lattice_map[w]).collect();
        let ring_maps = self
            .ring_maps
            .iter()
            .zip(&self.lattice_map)
            .map(|(h, &w)| h.then(&g.ring_maps[w]))
            .collect::<Result<Vec<_>>>()?;
        hom_build(&self.source, &g.target, lattice_map, ring_maps)
    }

    fn check_elementwise(&self) -> Result<()> {
        let src = &self.source;
        let pool = match src.carrier_size() {
            Some(n) if n <= ELEMENTWISE_LIMIT => src.elements()?,
            _ => {
                let mut p = src.probe_elements();
                p.truncate(ELEMENTWISE_LIMIT);
                p
            }
        };
        let dst = &self.target;
        if self.apply(&src.one())? != dst.one() {
            return Err(Error::UnitNotPreserved(format!(
                "f(1) = {}",
                self.apply(&src.one())?
            )));
        }
        let images = pool
            .iter()
            .map(|x| self.apply(x))
            .collect::<Result<Vec<_>>>()?;
        for (x, fx) in pool.iter().zip(&images) {
            for (y, fy) in pool.iter().zip(&images) {
                if self.apply(&src.add(x, y)?)? != dst.add(fx, fy)? {
                    return Err(Error::HomLawViolated {
                        law: "f(x + y) = f(x) + f(y)".into(),
                        witness: format!("x = {x}, y = {y}"),
                    });
                }
                if self.apply(&src.mul(x, y)?)? != dst.mul(fx, fy)? {
                    return Err(Error::HomLawViolated {
                        law: "f(x · y) = f(x) · f(y)".into(),
                        witness: format!("x = {x}, y = {y}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether `f(x⁻¹) = f(x)⁻¹` on every element (finite) or probe.
    pub fn preserves_inverse(&self) -> Result<Option<MeadowElement>> {
        let src = &self.source;
        let pool = if src.is_finite() {
            src.elements()?
        } else {
            src.probe_elements()
        };
        for x in pool {
            if self.apply(&src.inverse(&x)?)? != self.target.inverse(&self.apply(&x)?)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

pub fn hom_apply(f: &MeadowHom, x: &MeadowElement) -> Result<MeadowElement> {
    f.apply(x)
}

/// Result of an injectivity test with its witness.
#[derive(Debug, Clone, PartialEq)]
pub enum Injectivity {
    Injective,
    /// Two source nodes with the same image node.
    Nodes(String, String),
    /// Two source elements of one component with the same image.
    Elements(MeadowElement, MeadowElement),
}

impl Injectivity {
    pub fn is_injective(&self) -> bool {
        *self == Injectivity::Injective
    }
}

/// Injective iff the lattice map and every ring map are injective.
pub fn hom_is_injective(f: &MeadowHom) -> Result<Injectivity> {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (z, &w) in f.lattice_map.iter().enumerate() {
        if let Some(&prev) = seen.get(&w) {
            return Ok(Injectivity::Nodes(
                f.source.node_name(prev).to_string(),
                f.source.node_name(z).to_string(),
            ));
        }
        seen.insert(w, z);
    }
    for (z, h) in f.ring_maps.iter().enumerate() {
        if let Some((x, y)) = hom_collision(h)? {
            return Ok(Injectivity::Elements(
                f.source.at(z, x)?,
                f.source.at(z, y)?,
            ));
        }
    }
    Ok(Injectivity::Injective)
}

/// Which kernel to take.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelKind {
    /// `{x | f(x) = 0·f(x)}`.
    R,
    /// Preimage of `a`.
    A,
    /// Preimage of a target component zero.
    At(MeadowElement),
}

/// The kernel of `f` as an explicit set, in source element order.
pub fn kernel(f: &MeadowHom, kind: &KernelKind) -> Result<Vec<MeadowElement>> {
    if !f.source.is_finite() {
        return Err(Error::InfiniteCarrier(
            "explicit kernels need a finite source".into(),
        ));
    }
    let target_zero = match kind {
        KernelKind::R => None,
        KernelKind::A => Some(f.target.error_elem()),
        KernelKind::At(z) => {
            if !f.target.is_component_zero(z) {
                return Err(Error::NotAZero(z.to_string()));
            }
            Some(z.clone())
        }
    };
    let mut out = Vec::new();
    for x in f.source.elements()? {
        let fx = f.apply(&x)?;
        let keep = match &target_zero {
            None => fx.value().is_zero(),
            Some(z) => fx == *z,
        };
        if keep {
            out.push(x);
        }
    }
    Ok(out)
}
