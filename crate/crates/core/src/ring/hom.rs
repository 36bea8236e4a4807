use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::descriptor::RingDescriptor;
use super::value::{random_value, ring_enumerate, sample_pool, Payload, RingValue};
use crate::error::{Error, Result};
use crate::report::{Confidence, ValidationReport, ViolationKind};

/// Explicit finite graph of a map.
#[derive(Debug, Clone)]
pub struct HomTable {
    entries: Vec<(RingValue, RingValue)>,
    index: HashMap<Payload, usize>,
}

impl HomTable {
    pub fn entries(&self) -> &[(RingValue, RingValue)] {
        &self.entries
    }
}

impl PartialEq for HomTable {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HomRule {
    Identity,
    /// `Z -> Q`.
    IncludeIntoRationals,
    /// `Z -> Z/n`.
    ReduceMod(u64),
    /// `Z/n -> Z/m` with `m | n`.
    ReduceModDiv,
    /// `n ↦ n·1` out of `Z` or out of `Z/n` when `n·1 = 0` in the target.
    UnitMap,
    /// `R[x] -> R`, substituting the given constant.
    PolyEvalAt(RingValue),
    /// `R -> R[x]`.
    ConstantEmbed,
    /// Product onto factor `k`.
    Project(usize),
    /// Into a product, one hom per factor.
    Pair(Vec<RingHom>),
    Table(HomTable),
    /// Applied first to last.
    Compose(Vec<RingHom>),
    /// The unique map into the zero ring.
    Collapse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RingHom {
    source: Arc<RingDescriptor>,
    target: Arc<RingDescriptor>,
    rule: HomRule,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidHom(msg.into())
}

impl RingHom {
    pub fn source(&self) -> &Arc<RingDescriptor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingDescriptor> {
        &self.target
    }

    pub fn rule(&self) -> &HomRule {
        &self.rule
    }

    pub fn identity(ring: &Arc<RingDescriptor>) -> Self {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            rule: HomRule::Identity,
        }
    }

    pub fn include_rationals() -> Self {
        RingHom {
            source: Arc::new(RingDescriptor::Integers),
            target: Arc::new(RingDescriptor::Rationals),
            rule: HomRule::IncludeIntoRationals,
        }
    }

    pub fn reduce_mod(n: u64) -> Result<Self> {
        Ok(RingHom {
            source: Arc::new(RingDescriptor::Integers),
            target: Arc::new(RingDescriptor::modular(n)?),
            rule: HomRule::ReduceMod(n),
        })
    }

    /// `Z/n -> Z/m`; requires `m | n`.
    pub fn reduce_mod_div(n: u64, m: u64) -> Result<Self> {
        let source = RingDescriptor::modular(n)?;
        let target = RingDescriptor::modular(m)?;
        if n % m != 0 {
            return Err(invalid(format!("{m} does not divide {n}")));
        }
        Ok(RingHom {
            source: Arc::new(source),
            target: Arc::new(target),
            rule: HomRule::ReduceModDiv,
        })
    }

    /// The canonical map `n ↦ n·1`.
    pub fn unit_map(source: &Arc<RingDescriptor>, target: &Arc<RingDescriptor>) -> Result<Self> {
        match source.as_ref() {
            RingDescriptor::Integers => {}
            RingDescriptor::Mod(n) => {
                if !RingValue::from_int(target, *n).is_zero() {
                    return Err(invalid(format!("{n}·1 is not zero in {target}")));
                }
            }
            other => return Err(invalid(format!("no unit map out of {other}"))),
        }
        Ok(RingHom {
            source: source.clone(),
            target: target.clone(),
            rule: HomRule::UnitMap,
        })
    }

    /// Evaluation `R[x] -> R` at `c`.
    pub fn eval_at(poly: &Arc<RingDescriptor>, c: RingValue) -> Result<Self> {
        let RingDescriptor::Poly { base, .. } = poly.as_ref() else {
            return Err(invalid(format!("{poly} is not a polynomial ring")));
        };
        c.ring_check(base)?;
        Ok(RingHom {
            source: poly.clone(),
            target: c.ring().clone(),
            rule: HomRule::PolyEvalAt(c),
        })
    }

    pub fn constant_embed(poly: &Arc<RingDescriptor>) -> Result<Self> {
        let RingDescriptor::Poly { base, .. } = poly.as_ref() else {
            return Err(invalid(format!("{poly} is not a polynomial ring")));
        };
        Ok(RingHom {
            source: Arc::new(base.as_ref().clone()),
            target: poly.clone(),
            rule: HomRule::ConstantEmbed,
        })
    }

    pub fn project(product: &Arc<RingDescriptor>, k: usize) -> Result<Self> {
        match product.as_ref() {
            RingDescriptor::Product(fs) if k < fs.len() => Ok(RingHom {
                source: product.clone(),
                target: Arc::new(fs[k].clone()),
                rule: HomRule::Project(k),
            }),
            other => Err(invalid(format!("{other} has no factor {k}"))),
        }
    }

    /// Into `Product(targets of parts)`.
    pub fn pair(parts: Vec<RingHom>) -> Result<Self> {
        let first = parts.first().ok_or_else(|| invalid("empty pair"))?;
        let source = first.source.clone();
        for p in &parts {
            if *p.source != *source {
                return Err(invalid(format!(
                    "pair components start at {} and {}",
                    source, p.source
                )));
            }
        }
        let target = RingDescriptor::product(parts.iter().map(|p| (*p.target).clone()).collect())?;
        Ok(RingHom {
            source,
            target: Arc::new(target),
            rule: HomRule::Pair(parts),
        })
    }

    /// A map given by its graph. Entries must belong to the named rings and
    /// inputs must be distinct.
    pub fn table(
        source: &Arc<RingDescriptor>,
        target: &Arc<RingDescriptor>,
        entries: Vec<(RingValue, RingValue)>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(entries.len());
        for (i, (x, y)) in entries.iter().enumerate() {
            x.ring_check(source)?;
            y.ring_check(target)?;
            if index.insert(x.payload().clone(), i).is_some() {
                return Err(invalid(format!("table lists {x} twice")));
            }
        }
        Ok(RingHom {
            source: source.clone(),
            target: target.clone(),
            rule: HomRule::Table(HomTable { entries, index }),
        })
    }

    /// Tabulates a function over a finite source.
    pub fn tabulate(
        source: &Arc<RingDescriptor>,
        target: &Arc<RingDescriptor>,
        f: impl Fn(&RingValue) -> Result<RingValue>,
    ) -> Result<Self> {
        let entries = ring_enumerate(source)?
            .into_iter()
            .map(|x| {
                let y = f(&x)?;
                Ok((x, y))
            })
            .collect::<Result<Vec<_>>>()?;
        RingHom::table(source, target, entries)
    }

    /// `homs[0]` first, then `homs[1]`, and so on. Nested compositions are
    /// flattened and identities dropped.
    pub fn compose(homs: Vec<RingHom>) -> Result<Self> {
        let first = homs.first().ok_or_else(|| invalid("empty composition"))?;
        let source = first.source.clone();
        let mut target = source.clone();
        let mut flat = Vec::new();
        for h in homs {
            if *h.source != *target {
                return Err(invalid(format!(
                    "composition breaks: {} then a map out of {}",
                    target, h.source
                )));
            }
            target = h.target.clone();
            match h.rule {
                HomRule::Identity => {}
                HomRule::Compose(inner) => flat.extend(inner),
                _ => flat.push(h),
            }
        }
        Ok(match flat.len() {
            0 => RingHom::identity(&source),
            1 => flat.pop().expect("one element"),
            _ => RingHom {
                source,
                target,
                rule: HomRule::Compose(flat),
            },
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &RingHom) -> Result<RingHom> {
        RingHom::compose(vec![self.clone(), next.clone()])
    }

    pub fn collapse(source: &Arc<RingDescriptor>) -> Self {
        RingHom {
            source: source.clone(),
            target: Arc::new(RingDescriptor::Zero),
            rule: HomRule::Collapse,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.rule, HomRule::Identity)
    }

    /// Applies the map to `v`.
    pub fn apply(&self, v: &RingValue) -> Result<RingValue> {
        v.ring_check(&self.source)?;
        let t = &self.target;
        Ok(match &self.rule {
            HomRule::Identity => RingValue::raw(t.clone(), v.payload().clone()),
            HomRule::IncludeIntoRationals | HomRule::UnitMap | HomRule::ReduceMod(_) => {
                RingValue::from_int(t, integer_of(v)?)
            }
            HomRule::ReduceModDiv => match (v.payload(), t.as_ref()) {
                (Payload::Res(x), RingDescriptor::Mod(m)) => {
                    RingValue::raw(t.clone(), Payload::Res(x % m))
                }
                _ => return Err(invalid("malformed reduction")),
            },
            HomRule::PolyEvalAt(c) => {
                let mut acc = RingValue::zero(t);
                for coef in v.coefficients()?.iter().rev() {
                    acc = acc.mul(c)?.add(&coef.clone().rehome(t)?)?;
                }
                acc
            }
            HomRule::ConstantEmbed => RingValue::polynomial(t, vec![v.clone()])?,
            HomRule::Project(k) => v.component(*k)?.rehome(t)?,
            HomRule::Pair(parts) => {
                let images = parts
                    .iter()
                    .map(|p| p.apply(v))
                    .collect::<Result<Vec<_>>>()?;
                RingValue::tuple(t, images)?
            }
            HomRule::Table(table) => {
                let i = table
                    .index
                    .get(v.payload())
                    .ok_or_else(|| Error::TableIncomplete(v.to_string()))?;
                table.entries[*i].1.clone()
            }
            HomRule::Compose(hs) => {
                let mut cur = v.clone();
                for h in hs {
                    cur = h.apply(&cur)?;
                }
                cur.rehome(t)?
            }
            HomRule::Collapse => RingValue::zero(t),
        })
    }

    /// Inputs that generate the source as a ring, or a few representative
    /// elements when no small generating set is known.
    pub fn generators(&self) -> Vec<RingValue> {
        generators_of(&self.source)
    }
}

/// The integer a value of `Z` or `Z/n` stands for.
fn integer_of(v: &RingValue) -> Result<BigInt> {
    match v.payload() {
        Payload::Int(n) => Ok(n.clone()),
        Payload::Res(x) => Ok(BigInt::from(*x)),
        _ => Err(invalid(format!(
            "{} is not an integer residue",
            v.descriptor()
        ))),
    }
}

pub(crate) fn generators_of(ring: &Arc<RingDescriptor>) -> Vec<RingValue> {
    let mut gens = vec![
        RingValue::zero(ring),
        RingValue::one(ring),
        RingValue::from_int(ring, -1),
    ];
    if let RingDescriptor::Poly { base, .. } = ring.as_ref() {
        let b = Arc::new(base.as_ref().clone());
        if let Ok(x) = RingValue::polynomial(ring, vec![RingValue::zero(&b), RingValue::one(&b)]) {
            gens.push(x);
        }
    }
    if let RingDescriptor::Product(fs) = ring.as_ref() {
        // idempotents picking out each factor
        for k in 0..fs.len() {
            let parts = fs
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let f = Arc::new(f.clone());
                    if i == k {
                        RingValue::one(&f)
                    } else {
                        RingValue::zero(&f)
                    }
                })
                .collect();
            if let Ok(e) = RingValue::tuple(ring, parts) {
                gens.push(e);
            }
        }
    }
    gens.dedup();
    gens
}

impl fmt::Display for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rule = match &self.rule {
            HomRule::Identity => "identity".to_string(),
            HomRule::IncludeIntoRationals => "inclusion".to_string(),
            HomRule::ReduceMod(n) => format!("reduce mod {n}"),
            HomRule::ReduceModDiv => "reduce".to_string(),
            HomRule::UnitMap => "unit map".to_string(),
            HomRule::PolyEvalAt(c) => format!("eval at {c}"),
            HomRule::ConstantEmbed => "constants".to_string(),
            HomRule::Project(k) => format!("project {k}"),
            HomRule::Pair(ps) => format!("pair of {}", ps.len()),
            HomRule::Table(t) => format!("table of {}", t.entries.len()),
            HomRule::Compose(hs) => format!("composite of {}", hs.len()),
            HomRule::Collapse => "collapse".to_string(),
        };
        write!(f, "{} -> {} ({rule})", self.source, self.target)
    }
}

/// The inputs a check should run over: the whole ring when finite, otherwise
/// generators, the small pool, and `budget` seeded random elements.
pub(crate) fn check_inputs(
    ring: &Arc<RingDescriptor>,
    budget: usize,
    seed: u64,
) -> (Vec<RingValue>, Confidence) {
    if ring.is_finite() {
        if let Ok(all) = ring_enumerate(ring) {
            return (all, Confidence::Exhaustive);
        }
    }
    let mut xs = generators_of(ring);
    xs.extend(sample_pool(ring));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        xs.push(random_value(ring, &mut rng));
    }
    let mut seen = std::collections::HashSet::new();
    xs.retain(|x| seen.insert(x.clone()));
    (xs, Confidence::Sampled)
}

fn pairs_to_check(h: &RingHom, budget: usize) -> (Vec<(RingValue, RingValue)>, Confidence) {
    let source = &h.source;
    if source.is_finite() {
        if let Ok(all) = ring_enumerate(source) {
            let mut pairs = Vec::with_capacity(all.len() * all.len());
            for x in &all {
                for y in &all {
                    pairs.push((x.clone(), y.clone()));
                }
            }
            return (pairs, Confidence::Exhaustive);
        }
    }
    let gens = generators_of(source);
    let mut pairs = Vec::new();
    for x in &gens {
        for y in &gens {
            pairs.push((x.clone(), y.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d65_6164);
    for _ in 0..budget {
        pairs.push((
            random_value(source, &mut rng),
            random_value(source, &mut rng),
        ));
    }
    (pairs, Confidence::Sampled)
}

/// Checks that `h` preserves `0`, `1`, `+` and `·`.
pub fn hom_validate(h: &RingHom, budget: usize) -> ValidationReport {
    let mut report = ValidationReport::new(h.to_string());
    let zero = RingValue::zero(&h.source);
    let one = RingValue::one(&h.source);
    match h.apply(&zero) {
        Ok(z) if z.is_zero() => {}
        Ok(z) => report.violate(ViolationKind::HomZero, format!("h(0) = {z}, not 0")),
        Err(e) => report.violate(ViolationKind::HomApply, format!("h(0): {e}")),
    }
    match h.apply(&one) {
        Ok(u) if u.is_one() => {}
        Ok(u) => report.violate(ViolationKind::HomOne, format!("h(1) = {u}, not 1")),
        Err(e) => report.violate(ViolationKind::HomApply, format!("h(1): {e}")),
    }

    let (pairs, confidence) = pairs_to_check(h, budget);
    report.confidence = confidence;
    report.checked = pairs.len();
    let mut add_bad = false;
    let mut mul_bad = false;
    let mut apply_bad = report.has(ViolationKind::HomApply);
    for (x, y) in &pairs {
        if add_bad && mul_bad {
            break;
        }
        let images = (|| -> Result<_> {
            let hx = h.apply(x)?;
            let hy = h.apply(y)?;
            let hs = h.apply(&x.add(y)?)?;
            let hp = h.apply(&x.mul(y)?)?;
            Ok((hx, hy, hs, hp))
        })();
        let (hx, hy, hs, hp) = match images {
            Ok(v) => v,
            Err(e) => {
                if !apply_bad {
                    report.violate(ViolationKind::HomApply, format!("at ({x}, {y}): {e}"));
                    apply_bad = true;
                }
                continue;
            }
        };
        if !add_bad && hx.add(&hy).ok().as_ref() != Some(&hs) {
            report.violate(
                ViolationKind::HomAdd,
                format!("h({x} + {y}) = {hs}, but h({x}) + h({y}) = {hx} + {hy}"),
            );
            add_bad = true;
        }
        if !mul_bad && hx.mul(&hy).ok().as_ref() != Some(&hp) {
            report.violate(
                ViolationKind::HomMul,
                format!("h({x} · {y}) = {hp}, but h({x}) · h({y}) = {hx} · {hy}"),
            );
            mul_bad = true;
        }
    }
    report
}

/// Compares two maps with the same endpoints on the whole source when it is
/// finite, otherwise on generators, the sample pool and `budget` random
/// elements.
pub fn hom_agree(a: &RingHom, b: &RingHom, budget: usize) -> ValidationReport {
    let mut report = ValidationReport::new(format!("{a} vs {b}"));
    if *a.source != *b.source || *a.target != *b.target {
        report.violate(
            ViolationKind::HomDisagree,
            format!("endpoints differ: {a} and {b}"),
        );
        return report;
    }
    let (xs, confidence) = check_inputs(&a.source, budget, 0x7061_7468);
    report.confidence = confidence;
    report.checked = xs.len();
    for x in &xs {
        match (a.apply(x), b.apply(x)) {
            (Ok(p), Ok(q)) if p == q => {}
            (Ok(p), Ok(q)) => {
                report.violate(ViolationKind::HomDisagree, format!("at {x}: {p} vs {q}"));
                break;
            }
            (Err(e), _) | (_, Err(e)) => {
                report.violate(ViolationKind::HomApply, format!("at {x}: {e}"));
                break;
            }
        }
    }
    report
}

/// Decides injectivity. `Ok(None)` means injective, `Ok(Some((x, y)))` gives
/// two distinct inputs with the same image.
pub fn hom_collision(h: &RingHom) -> Result<Option<(RingValue, RingValue)>> {
    if h.source.is_finite() {
        let mut seen: HashMap<RingValue, RingValue> = HashMap::new();
        for x in ring_enumerate(&h.source)? {
            let y = h.apply(&x)?;
            if let Some(prev) = seen.get(&y) {
                return Ok(Some((prev.clone(), x)));
            }
            seen.insert(y, x);
        }
        return Ok(None);
    }
    // an infinite source is injective iff the kernel is zero
    match kernel_generator(h)? {
        KernelShape::Zero => Ok(None),
        KernelShape::Whole => Ok(Some((
            RingValue::zero(&h.source),
            RingValue::one(&h.source),
        ))),
        KernelShape::Multiples(n) => Ok(Some((
            RingValue::zero(&h.source),
            RingValue::from_int(&h.source, n),
        ))),
    }
}

/// Kernel of a map out of an infinite ring, when it is decidable here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelShape {
    Zero,
    Whole,
    /// `nZ` inside `Z`, with `n >= 2`.
    Multiples(u64),
}

/// Additive order of an element; `None` for infinite order.
fn additive_order(v: &RingValue) -> Option<u64> {
    if v.is_zero() {
        return Some(1);
    }
    match v.payload() {
        Payload::Res(x) => {
            let RingDescriptor::Mod(n) = v.descriptor() else {
                return None;
            };
            Some(n / num_integer::gcd(*x, *n))
        }
        Payload::Tuple(_) => {
            let RingDescriptor::Product(fs) = v.descriptor() else {
                return None;
            };
            let mut acc = 1u64;
            for k in 0..fs.len() {
                let o = additive_order(&v.component(k).ok()?)?;
                acc = num_integer::lcm(acc, o);
            }
            Some(acc)
        }
        Payload::Poly(_) => {
            let c = v.descriptor().characteristic();
            (c != 0).then_some(c)
        }
        _ => None,
    }
}

/// Computes the kernel of `h` for sources `Z` and `Q`; polynomial and other
/// infinite sources are undecidable here unless the rule is evidently
/// injective.
pub fn kernel_generator(h: &RingHom) -> Result<KernelShape> {
    match &h.rule {
        HomRule::Identity | HomRule::IncludeIntoRationals | HomRule::ConstantEmbed => {
            return Ok(KernelShape::Zero)
        }
        HomRule::Collapse => return Ok(KernelShape::Whole),
        _ => {}
    }
    match h.source.as_ref() {
        RingDescriptor::Integers => {
            let img = h.apply(&RingValue::one(&h.source))?;
            Ok(match additive_order(&img) {
                None => KernelShape::Zero,
                Some(1) => KernelShape::Whole,
                Some(n) => KernelShape::Multiples(n),
            })
        }
        RingDescriptor::Rationals => {
            if h.apply(&RingValue::one(&h.source))?.is_zero() {
                Ok(KernelShape::Whole)
            } else {
                Ok(KernelShape::Zero)
            }
        }
        other => Err(Error::Undecidable(format!(
            "kernel of a map out of {other}"
        ))),
    }
}

/// All ring homs between two finite rings, by brute force over all maps that
/// fix `0` and `1`. Meant for small test instances.
pub fn enumerate_ring_homs(
    source: &Arc<RingDescriptor>,
    target: &Arc<RingDescriptor>,
) -> Result<Vec<RingHom>> {
    let xs = ring_enumerate(source)?;
    let ys = ring_enumerate(target)?;
    let mut found = Vec::new();
    let mut assignment: Vec<usize> = vec![0; xs.len()];
    search_homs(&xs, &ys, 0, &mut assignment, &mut found, source, target)?;
    Ok(found)
}

fn search_homs(
    xs: &[RingValue],
    ys: &[RingValue],
    pos: usize,
    assignment: &mut Vec<usize>,
    found: &mut Vec<RingHom>,
    source: &Arc<RingDescriptor>,
    target: &Arc<RingDescriptor>,
) -> Result<()> {
    if pos == xs.len() {
        if !respects_laws(xs, ys, assignment)? {
            return Ok(());
        }
        let entries = xs
            .iter()
            .zip(assignment.iter())
            .map(|(x, &j)| (x.clone(), ys[j].clone()))
            .collect();
        found.push(RingHom::table(source, target, entries)?);
        return Ok(());
    }
    for j in 0..ys.len() {
        assignment[pos] = j;
        if consistent(xs, ys, pos, assignment)? {
            search_homs(xs, ys, pos + 1, assignment, found, source, target)?;
        }
    }
    Ok(())
}

/// Checks every law whose inputs and outputs are all among the first
/// `pos + 1` assigned elements.
fn consistent(xs: &[RingValue], ys: &[RingValue], pos: usize, a: &[usize]) -> Result<bool> {
    let x = &xs[pos];
    let y = &ys[a[pos]];
    if x.is_zero() && !y.is_zero() {
        return Ok(false);
    }
    if x.is_one() && !y.is_one() {
        return Ok(false);
    }
    let lookup = |v: &RingValue| v.index().filter(|&i| i <= pos);
    for i in 0..=pos {
        let (u, hu) = (&xs[i], &ys[a[i]]);
        if let Some(k) = lookup(&x.add(u)?) {
            if ys[a[k]] != y.add(hu)? {
                return Ok(false);
            }
        }
        if let Some(k) = lookup(&x.mul(u)?) {
            if ys[a[k]] != y.mul(hu)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn respects_laws(xs: &[RingValue], ys: &[RingValue], a: &[usize]) -> Result<bool> {
    for (i, x) in xs.iter().enumerate() {
        for (j, u) in xs.iter().enumerate() {
            let (hx, hu) = (&ys[a[i]], &ys[a[j]]);
            let s = x.add(u)?.index().expect("finite ring");
            let p = x.mul(u)?.index().expect("finite ring");
            if ys[a[s]] != hx.add(hu)? || ys[a[p]] != hx.mul(hu)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
