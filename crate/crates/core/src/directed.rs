//! Finite lattices of rings with transition homomorphisms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::report::{ValidationReport, ViolationKind};
use crate::ring::{hom_agree, hom_validate, RingDescriptor, RingHom};

/// Rings indexed by a finite lattice, with a hom `upper -> lower` for every
/// covering pair. Transitions between arbitrary comparable nodes are
/// composites along covering paths.
#[derive(Debug, Clone)]
pub struct DirectedLattice {
    lattice: Lattice,
    top: usize,
    bottom: usize,
    rings: Vec<Arc<RingDescriptor>>,
    /// Keyed by `(upper, lower)` covering pair.
    cover_homs: HashMap<(usize, usize), RingHom>,
    /// User-supplied homs between non-covering comparable pairs; checked
    /// against the composite transition by [`dl_validate`].
    extra_homs: HashMap<(usize, usize), RingHom>,
    /// `transitions[upper][lower]`.
    transitions: Vec<Vec<Option<RingHom>>>,
}

impl DirectedLattice {
    /// Assembles a directed lattice. `homs` holds `(upper, lower, hom)`
    /// entries. Covers into a zero-ring bottom may be omitted; they are filled
    /// with the collapse map. Structural problems (unknown nodes, invalid
    /// lattice, missing covers, endpoint mismatches) are errors; algebraic
    /// ones are left to [`dl_validate`].
    pub fn new(
        lattice: Lattice,
        rings: Vec<RingDescriptor>,
        homs: Vec<(String, String, RingHom)>,
    ) -> Result<Self> {
        let report = lattice.validate();
        if !report.passed() {
            return Err(Error::InvalidLattice(report));
        }
        if rings.len() != lattice.len() {
            return Err(Error::InvalidDescriptor(format!(
                "{} rings for {} nodes",
                rings.len(),
                lattice.len()
            )));
        }
        let top = lattice.top().expect("validated lattice has a top");
        let bottom = lattice.bottom().expect("validated lattice has a bottom");
        let rings: Vec<Arc<RingDescriptor>> = rings.into_iter().map(Arc::new).collect();

        let covers: Vec<(usize, usize)> = lattice.covers();
        let mut cover_homs = HashMap::new();
        let mut extra_homs = HashMap::new();
        for (hi, lo, h) in homs {
            let (i, j) = (lattice.id(&hi)?, lattice.id(&lo)?);
            if !lattice.lt(j, i) {
                return Err(Error::NotComparable {
                    upper: hi,
                    lower: lo,
                });
            }
            if *h.source() != rings[i] || *h.target() != rings[j] {
                return Err(Error::DescriptorMismatch {
                    expected: format!("{} -> {}", rings[i], rings[j]),
                    found: format!("{} -> {}", h.source(), h.target()),
                });
            }
            let slot = if covers.contains(&(i, j)) {
                &mut cover_homs
            } else {
                &mut extra_homs
            };
            if slot.insert((i, j), h).is_some() {
                return Err(Error::InvalidHom(format!(
                    "two homs given for {hi} -> {lo}"
                )));
            }
        }
        for &(i, j) in &covers {
            if cover_homs.contains_key(&(i, j)) {
                continue;
            }
            if rings[j].is_zero_ring() {
                cover_homs.insert((i, j), RingHom::collapse(&rings[i]));
            } else {
                return Err(Error::MissingEdge {
                    upper: lattice.name(i).to_string(),
                    lower: lattice.name(j).to_string(),
                });
            }
        }

        let n = lattice.len();
        let mut transitions: Vec<Vec<Option<RingHom>>> = vec![vec![None; n]; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| lattice.height(i));
        for &i in &order {
            transitions[i][i] = Some(RingHom::identity(&rings[i]));
            let below = lattice.lower_covers(i);
            for j in lattice.down_set(i) {
                if j == i {
                    continue;
                }
                let c = *below
                    .iter()
                    .find(|&&c| lattice.leq(j, c))
                    .expect("some cover of i lies above j");
                let step = &cover_homs[&(i, c)];
                let rest = transitions[c][j]
                    .as_ref()
                    .expect("lower node processed first");
                transitions[i][j] = Some(step.then(rest)?);
            }
        }

        Ok(DirectedLattice {
            lattice,
            top,
            bottom,
            rings,
            cover_homs,
            extra_homs,
            transitions,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn ring_at(&self, i: usize) -> &Arc<RingDescriptor> {
        &self.rings[i]
    }

    pub fn rings(&self) -> &[Arc<RingDescriptor>] {
        &self.rings
    }

    pub fn ring_named(&self, name: &str) -> Result<&Arc<RingDescriptor>> {
        Ok(&self.rings[self.lattice.id(name)?])
    }

    /// The hom on a covering pair `(upper, lower)`.
    pub fn edge(&self, upper: usize, lower: usize) -> Option<&RingHom> {
        self.cover_homs.get(&(upper, lower))
    }

    /// Covering pairs with their homs, in a stable order.
    pub fn edges(&self) -> Vec<(usize, usize, &RingHom)> {
        let mut out: Vec<_> = self
            .cover_homs
            .iter()
            .map(|(&(i, j), h)| (i, j, h))
            .collect();
        out.sort_by_key(|&(i, j, _)| (i, j));
        out
    }

    /// The composite map from node `upper` down to node `lower`.
    pub fn transition(&self, upper: usize, lower: usize) -> Result<&RingHom> {
        self.transitions
            .get(upper)
            .and_then(|row| row.get(lower))
            .and_then(Option::as_ref)
            .ok_or_else(|| Error::NotComparable {
                upper: self.node_label(upper),
                lower: self.node_label(lower),
            })
    }

    /// [`DirectedLattice::transition`] by node names.
    pub fn transition_named(&self, upper: &str, lower: &str) -> Result<&RingHom> {
        self.transition(self.lattice.id(upper)?, self.lattice.id(lower)?)
    }

    fn node_label(&self, i: usize) -> String {
        self.lattice
            .names()
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("#{i}"))
    }

    /// Whether every ring is finite.
    pub fn is_finite(&self) -> bool {
        self.rings.iter().all(|r| r.is_finite())
    }
}

/// Checks the ring at each node, every covering hom, and path independence.
/// Path independence is checked by comparing, for every comparable pair
/// `i > k` and every cover `c` of `i` above `k`, the stored transition
/// `i -> k` with the route through `c`; together these force all covering
/// paths to agree.
pub fn dl_validate(g: &DirectedLattice, budget: usize) -> ValidationReport {
    let mut r = ValidationReport::new("directed lattice");
    r.absorb(g.lattice.validate());
    let l = &g.lattice;
    for (i, ring) in g.rings.iter().enumerate() {
        r.checked += 1;
        if let Err(e) = ring.validate() {
            r.violate(
                ViolationKind::InvalidDescriptor,
                format!("{}: {e}", l.name(i)),
            );
        }
        if i == g.bottom && !ring.is_zero_ring() {
            r.violate(
                ViolationKind::BottomNotZeroRing,
                format!("bottom {} carries {ring}", l.name(i)),
            );
        }
        if i != g.bottom && ring.is_zero_ring() {
            r.violate(
                ViolationKind::ZeroRingAboveBottom,
                format!("{} carries the zero ring", l.name(i)),
            );
        }
    }
    for (i, j, h) in g.edges() {
        let hr = hom_validate(h, budget);
        if !hr.passed() {
            r.violate(
                ViolationKind::EdgeNotHom,
                format!("{} -> {}", l.name(i), l.name(j)),
            );
        }
        let mut hr = hr;
        hr.subject = format!("edge {} -> {}", l.name(i), l.name(j));
        r.absorb(hr);
    }
    let n = l.len();
    for i in 0..n {
        let covers = l.lower_covers(i);
        for k in 0..n {
            if !l.lt(k, i) {
                continue;
            }
            let direct = g.transition(i, k).expect("comparable");
            for &c in covers.iter().filter(|&&c| l.leq(k, c)) {
                let via = match g.cover_homs[&(i, c)].then(g.transition(c, k).expect("comparable"))
                {
                    Ok(h) => h,
                    Err(e) => {
                        r.violate(ViolationKind::PathDependence, e.to_string());
                        continue;
                    }
                };
                let mut ar = hom_agree(direct, &via, budget);
                if !ar.passed() {
                    r.violate(
                        ViolationKind::PathDependence,
                        format!(
                            "{} -> {} differs through {}: {}",
                            l.name(i),
                            l.name(k),
                            l.name(c),
                            ar.violations[0].detail
                        ),
                    );
                }
                ar.violations.clear();
                r.absorb(ar);
            }
            if let Some(h) = g.extra_homs.get(&(i, k)) {
                let mut ar = hom_agree(direct, h, budget);
                if !ar.passed() {
                    r.violate(
                        ViolationKind::PathDependence,
                        format!(
                            "declared {} -> {} disagrees with the covering path: {}",
                            l.name(i),
                            l.name(k),
                            ar.violations[0].detail
                        ),
                    );
                }
                ar.violations.clear();
                r.absorb(ar);
            }
        }
    }
    r
}
