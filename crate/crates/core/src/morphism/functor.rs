//! Adjoining `a` to a ring, taking the top ring of a meadow, products,
//! gluing over a prime field, and the homs these constructions provide.

use std::sync::Arc;

use super::hom::{hom_build, MeadowHom};
use crate::directed::DirectedLattice;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::meadow::{build_meadow, BuildMode, Meadow, MeadowElement};
use crate::ring::{is_prime, RingDescriptor, RingHom, RingValue};

/// Node names used by [`adjoin_a`].
pub const TOP_NAME: &str = "top";
pub const BOTTOM_NAME: &str = "a";

/// `R ⊔ {a}`: the two-node meadow with `R` on top.
pub fn adjoin_a(ring: &RingDescriptor) -> Result<Meadow> {
    if ring.is_zero_ring() {
        return Err(Error::ZeroRingInput);
    }
    ring.validate()?;
    let l = Lattice::chain(&[BOTTOM_NAME, TOP_NAME])?;
    let dl = DirectedLattice::new(l, vec![RingDescriptor::Zero, ring.clone()], vec![])?;
    build_meadow(dl, BuildMode::VerifyInvertibility)
}

/// The ring at the top node.
pub fn base_ring(m: &Meadow) -> RingDescriptor {
    (**m.ring_at(m.top())).clone()
}

/// The ring hom between top rings underlying a meadow hom.
pub fn base_ring_hom(f: &MeadowHom) -> RingHom {
    f.ring_map(f.source().top()).clone()
}

fn bottom_map(m: &Meadow) -> RingHom {
    RingHom::identity(m.ring_at(m.bottom()))
}

/// `h ⊔ {a}`: the meadow hom `R ⊔ {a} -> S ⊔ {a}` extending a ring hom.
pub fn adjoin_a_hom(h: &RingHom) -> Result<MeadowHom> {
    adjoint_transpose(h, &adjoin_a(h.target())?)
}

/// The meadow hom `R ⊔ {a} -> M` that sends `R` into the top ring by `f`
/// and `a` to `a`.
pub fn adjoint_transpose(f: &RingHom, m: &Meadow) -> Result<MeadowHom> {
    if **f.target() != **m.ring_at(m.top()) {
        return Err(Error::TargetMismatch(format!(
            "{} lands in {}, the top ring is {}",
            f,
            f.target(),
            m.ring_at(m.top())
        )));
    }
    let src = adjoin_a(f.source())?;
    let mut lattice_map = vec![0; 2];
    let mut ring_maps = vec![bottom_map(m), f.clone()];
    lattice_map[src.bottom()] = m.bottom();
    lattice_map[src.top()] = m.top();
    if src.top() == 0 {
        ring_maps.swap(0, 1);
    }
    hom_build(&src, m, lattice_map, ring_maps)
}

/// The ring hom a meadow hom out of `R ⊔ {a}` restricts to.
pub fn adjoint_untranspose(g: &MeadowHom) -> RingHom {
    base_ring_hom(g)
}

/// The hom `Z ⊔ {a} -> M` with `n ↦ n·1` and `a ↦ a`.
pub fn initial_hom(m: &Meadow) -> Result<MeadowHom> {
    let z = Arc::new(RingDescriptor::Integers);
    let f = RingHom::unit_map(&z, m.ring_at(m.top()))?;
    adjoint_transpose(&f, m)
}

/// `M × N` with its two projections.
#[derive(Debug, Clone)]
pub struct ProductMeadow {
    pub meadow: Meadow,
    pub left: Meadow,
    pub right: Meadow,
    /// Product node `k` is the pair `nodes[k]`.
    pub nodes: Vec<(usize, usize)>,
}

/// How the ring at a product node is stored.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Both,
    LeftOnly,
    RightOnly,
    Neither,
}

fn shape(m: &Meadow, n: &Meadow, z: usize, w: usize) -> Shape {
    match (z == m.bottom(), w == n.bottom()) {
        (false, false) => Shape::Both,
        (false, true) => Shape::LeftOnly,
        (true, false) => Shape::RightOnly,
        (true, true) => Shape::Neither,
    }
}

/// The componentwise product. The node `(z, w)` carries `M_z × N_w`, where
/// a factor at a bottom node is the one-element ring and is dropped from
/// the descriptor; such nodes stay distinct above the shared bottom.
pub fn meadow_product(m: &Meadow, n: &Meadow) -> Result<ProductMeadow> {
    let (lm, ln) = (m.lattice(), n.lattice());
    let mut nodes = Vec::new();
    for z in 0..lm.len() {
        for w in 0..ln.len() {
            nodes.push((z, w));
        }
    }
    let names: Vec<String> = nodes
        .iter()
        .map(|&(z, w)| {
            if z == m.bottom() && w == n.bottom() {
                BOTTOM_NAME.to_string()
            } else {
                format!("({},{})", lm.name(z), ln.name(w))
            }
        })
        .collect();
    let mut order = Vec::new();
    for (i, &(z, w)) in nodes.iter().enumerate() {
        for (j, &(z2, w2)) in nodes.iter().enumerate() {
            if lm.leq(z, z2) && ln.leq(w, w2) {
                order.push((i, j));
            }
        }
    }
    let l = Lattice::from_indices(names, &order);
    let rings = nodes
        .iter()
        .map(|&(z, w)| {
            let (rz, rw) = ((**m.ring_at(z)).clone(), (**n.ring_at(w)).clone());
            Ok(match shape(m, n, z, w) {
                Shape::Both => RingDescriptor::product(vec![rz, rw])?,
                Shape::LeftOnly => rz,
                Shape::RightOnly => rw,
                Shape::Neither => RingDescriptor::Zero,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rings_arc: Vec<Arc<RingDescriptor>> = rings.iter().cloned().map(Arc::new).collect();
    let mut homs = Vec::new();
    for (hi, lo) in l.covers() {
        let ((z, w), (z2, w2)) = (nodes[hi], nodes[lo]);
        let (src_shape, dst_shape) = (shape(m, n, z, w), shape(m, n, z2, w2));
        if dst_shape == Shape::Neither {
            continue;
        }
        let tz = m.transition(z, z2)?;
        let tw = n.transition(w, w2)?;
        let part = |k: usize, t: &RingHom| -> Result<RingHom> {
            if src_shape == Shape::Both {
                RingHom::project(&rings_arc[hi], k)?.then(t)
            } else {
                Ok(t.clone())
            }
        };
        let h = match dst_shape {
            Shape::Both => RingHom::pair(vec![part(0, tz)?, part(1, tw)?])?,
            Shape::LeftOnly => part(0, tz)?,
            Shape::RightOnly => part(1, tw)?,
            Shape::Neither => unreachable!("skipped above"),
        };
        homs.push((l.name(hi).to_string(), l.name(lo).to_string(), h));
    }
    let dl = DirectedLattice::new(l, rings, homs)?;
    let meadow = build_meadow(dl, BuildMode::VerifyInvertibility)?;
    Ok(ProductMeadow {
        meadow,
        left: m.clone(),
        right: n.clone(),
        nodes,
    })
}

impl ProductMeadow {
    /// The element `(x, y)`.
    pub fn pair(&self, x: &MeadowElement, y: &MeadowElement) -> Result<MeadowElement> {
        let (m, n) = (&self.left, &self.right);
        let k = self
            .nodes
            .iter()
            .position(|&p| p == (x.node(), y.node()))
            .ok_or_else(|| Error::ForeignElement(format!("({x}, {y})")))?;
        let ring = self.meadow.ring_at(k);
        let v = match shape(m, n, x.node(), y.node()) {
            Shape::Both => RingValue::tuple(ring, vec![x.value().clone(), y.value().clone()])?,
            Shape::LeftOnly => x.value().clone(),
            Shape::RightOnly => y.value().clone(),
            Shape::Neither => RingValue::zero(ring),
        };
        self.meadow.at(k, v)
    }

    /// The projection onto the left (`k = 0`) or right (`k = 1`) factor.
    pub fn projection(&self, k: usize) -> Result<MeadowHom> {
        let (m, n) = (&self.left, &self.right);
        let target = if k == 0 { m } else { n };
        let mut lattice_map = Vec::new();
        let mut ring_maps = Vec::new();
        for (i, &(z, w)) in self.nodes.iter().enumerate() {
            let ring = self.meadow.ring_at(i);
            let keep = if k == 0 { z } else { w };
            lattice_map.push(keep);
            let h = match (shape(m, n, z, w), k) {
                (Shape::Both, _) => RingHom::project(ring, k)?,
                (Shape::LeftOnly, 0) | (Shape::RightOnly, 1) | (Shape::Neither, _) => {
                    RingHom::identity(ring)
                }
                _ => RingHom::collapse(ring),
            };
            ring_maps.push(h);
        }
        hom_build(&self.meadow, target, lattice_map, ring_maps)
    }
}

/// Name of the new top node added by [`glue_over_zp`].
pub const GLUE_TOP: &str = "zp";

/// Places `Z/p` above the tops of `M` and `N` and identifies their bottoms.
/// Nodes of `M` are prefixed `l.`, nodes of `N` `r.`.
pub fn glue_over_zp(m: &Meadow, n: &Meadow, p: u64) -> Result<Meadow> {
    if !is_prime(p) {
        return Err(Error::CharacteristicMismatch(format!("{p} is not prime")));
    }
    for (side, x) in [("left", m), ("right", n)] {
        let c = x.ring_at(x.top()).characteristic();
        if c != p {
            return Err(Error::CharacteristicMismatch(format!(
                "{side} top ring {} has characteristic {c}, not {p}",
                x.ring_at(x.top())
            )));
        }
    }
    let mut names = vec![GLUE_TOP.to_string(), BOTTOM_NAME.to_string()];
    let mut rings = vec![RingDescriptor::modular(p)?, RingDescriptor::Zero];
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut homs = Vec::new();
    let mut place = |x: &Meadow, prefix: &str| -> Result<()> {
        let l = x.lattice();
        let ids: Vec<usize> = (0..l.len())
            .map(|z| {
                if z == x.bottom() {
                    1
                } else {
                    names.push(format!("{prefix}.{}", l.name(z)));
                    rings.push((**x.ring_at(z)).clone());
                    names.len() - 1
                }
            })
            .collect();
        order.push((ids[x.top()], 0));
        for i in 0..l.len() {
            for j in 0..l.len() {
                if l.leq(i, j) {
                    order.push((ids[i], ids[j]));
                }
            }
        }
        for (hi, lo) in l.covers() {
            if lo != x.bottom() {
                homs.push((
                    names[ids[hi]].clone(),
                    names[ids[lo]].clone(),
                    x.transition(hi, lo)?.clone(),
                ));
            }
        }
        let zp = Arc::new(RingDescriptor::modular(p)?);
        homs.push((
            GLUE_TOP.to_string(),
            names[ids[x.top()]].clone(),
            RingHom::unit_map(&zp, x.ring_at(x.top()))?,
        ));
        Ok(())
    };
    place(m, "l")?;
    place(n, "r")?;
    let l = Lattice::from_indices(names, &order);
    let dl = DirectedLattice::new(l, rings, homs)?;
    build_meadow(dl, BuildMode::VerifyInvertibility)
}
