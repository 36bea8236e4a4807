//! The JSON lattice file and ideal file formats.
//!
//! A lattice file names its nodes with their rings, the generating order as
//! `[lower, upper]` pairs, and one hom per covering edge:
//!
//! ```json
//! { "nodes": { "z": { "ring": "Z" }, "q": { "ring": "Q" }, "a": { "ring": "zero" } },
//!   "order": [["a", "q"], ["q", "z"]],
//!   "homs": [{ "from": "z", "to": "q", "map": "include_q" }] }
//! ```
//!
//! Rings are `"Z"`, `"Q"`, `"zero"`, `{"mod": n}`,
//! `{"poly": {"base": ring, "var": "x"}}` or `{"product": [ring, ...]}`.
//! Maps are `"identity"`, `"include_q"`, `{"reduce_mod": n}`, `"unit_map"`,
//! `{"eval_at": value}`, `{"project": k}`, `{"table": [[in, out], ...]}`,
//! and additionally `"constant_embed"`, `"collapse"` and
//! `{"pair": [map, ...]}` into a product.

use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::directed::{dl_validate, DirectedLattice};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::meadow::{build_meadow, BuildMode, Meadow};
use crate::morphism::{IdealDesc, MeadowIdeal};
use crate::ring::{value_from_json, value_to_json, HomRule, RingDescriptor, RingHom};

/// Budget for validating homs out of infinite rings while loading.
const LOAD_BUDGET: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSpec {
    pub ring: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomSpec {
    pub from: String,
    pub to: String,
    pub map: Value,
}

/// The parsed form of a lattice file, before any semantic checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub nodes: IndexMap<String, NodeSpec>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    #[serde(default)]
    pub homs: Vec<HomSpec>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn ring_from_json(v: &Value) -> Result<RingDescriptor> {
    match v {
        Value::String(s) => match s.as_str() {
            "Z" => Ok(RingDescriptor::Integers),
            "Q" => Ok(RingDescriptor::Rationals),
            "zero" => Ok(RingDescriptor::Zero),
            other => Err(parse_err(format!("unknown ring `{other}`"))),
        },
        Value::Object(o) if o.len() == 1 => {
            let (k, body) = o.iter().next().expect("one entry");
            match k.as_str() {
                "mod" => {
                    let n = body.as_u64().ok_or_else(|| {
                        parse_err(format!("modulus {body} is not a natural number"))
                    })?;
                    RingDescriptor::modular(n)
                }
                "poly" => {
                    let base = body
                        .get("base")
                        .ok_or_else(|| parse_err("poly needs a base"))?;
                    let var = body
                        .get("var")
                        .and_then(Value::as_str)
                        .ok_or_else(|| parse_err("poly needs a var"))?;
                    RingDescriptor::poly(ring_from_json(base)?, var)
                }
                "product" => {
                    let fs = body
                        .as_array()
                        .ok_or_else(|| parse_err("product needs a list of rings"))?;
                    RingDescriptor::product(fs.iter().map(ring_from_json).collect::<Result<_>>()?)
                }
                other => Err(parse_err(format!("unknown ring constructor `{other}`"))),
            }
        }
        other => Err(parse_err(format!("cannot read a ring from {other}"))),
    }
}

pub fn ring_to_json(r: &RingDescriptor) -> Value {
    match r {
        RingDescriptor::Integers => json!("Z"),
        RingDescriptor::Rationals => json!("Q"),
        RingDescriptor::Zero => json!("zero"),
        RingDescriptor::Mod(n) => json!({ "mod": n }),
        RingDescriptor::Poly { base, var } => {
            json!({ "poly": { "base": ring_to_json(base), "var": var } })
        }
        RingDescriptor::Product(fs) => {
            json!({ "product": fs.iter().map(ring_to_json).collect::<Vec<_>>() })
        }
    }
}

fn expect_ends(h: RingHom, source: &RingDescriptor, target: &RingDescriptor) -> Result<RingHom> {
    for (want, got) in [(source, h.source()), (target, h.target())] {
        if *want != **got {
            return Err(Error::DescriptorMismatch {
                expected: want.to_string(),
                found: got.to_string(),
            });
        }
    }
    Ok(h)
}

/// Reads a map between the given rings.
pub fn hom_from_json(
    v: &Value,
    source: &Arc<RingDescriptor>,
    target: &Arc<RingDescriptor>,
) -> Result<RingHom> {
    let h = match v {
        Value::String(s) => match s.as_str() {
            "identity" => RingHom::identity(source),
            "include_q" => RingHom::include_rationals(),
            "unit_map" => RingHom::unit_map(source, target)?,
            "constant_embed" => RingHom::constant_embed(target)?,
            "collapse" => RingHom::collapse(source),
            other => return Err(parse_err(format!("unknown map `{other}`"))),
        },
        Value::Object(o) if o.len() == 1 => {
            let (k, body) = o.iter().next().expect("one entry");
            match k.as_str() {
                "reduce_mod" => {
                    let n = body.as_u64().ok_or_else(|| {
                        parse_err(format!("modulus {body} is not a natural number"))
                    })?;
                    match source.as_ref() {
                        RingDescriptor::Mod(m) => RingHom::reduce_mod_div(*m, n)?,
                        _ => RingHom::reduce_mod(n)?,
                    }
                }
                "eval_at" => {
                    let RingDescriptor::Poly { base, .. } = source.as_ref() else {
                        return Err(parse_err(format!(
                            "eval_at needs a polynomial source, not {source}"
                        )));
                    };
                    let c = value_from_json(&Arc::new(base.as_ref().clone()), body)?;
                    RingHom::eval_at(source, c)?
                }
                "project" => {
                    let k = body.as_u64().ok_or_else(|| {
                        parse_err(format!("factor index {body} is not a natural number"))
                    })?;
                    RingHom::project(source, k as usize)?
                }
                "pair" => {
                    let RingDescriptor::Product(fs) = target.as_ref() else {
                        return Err(parse_err(format!(
                            "pair needs a product target, not {target}"
                        )));
                    };
                    let parts = body
                        .as_array()
                        .ok_or_else(|| parse_err("pair needs a list of maps"))?;
                    if parts.len() != fs.len() {
                        return Err(parse_err(format!(
                            "pair into {target} needs {} maps",
                            fs.len()
                        )));
                    }
                    let parts = parts
                        .iter()
                        .zip(fs)
                        .map(|(p, f)| hom_from_json(p, source, &Arc::new(f.clone())))
                        .collect::<Result<Vec<_>>>()?;
                    RingHom::pair(parts)?
                }
                "table" => {
                    let rows = body
                        .as_array()
                        .ok_or_else(|| parse_err("table needs a list of [in, out] pairs"))?;
                    let entries = rows
                        .iter()
                        .map(|row| match row.as_array().map(Vec::as_slice) {
                            Some([x, y]) => {
                                Ok((value_from_json(source, x)?, value_from_json(target, y)?))
                            }
                            _ => Err(parse_err(format!("table row {row} is not a pair"))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    RingHom::table(source, target, entries)?
                }
                other => return Err(parse_err(format!("unknown map constructor `{other}`"))),
            }
        }
        other => return Err(parse_err(format!("cannot read a map from {other}"))),
    };
    expect_ends(h, source, target)
}

/// Writes a map. Composites are written as tables when their source is
/// finite and as `"unit_map"` when it is `Z`.
pub fn hom_to_json(h: &RingHom) -> Result<Value> {
    Ok(match h.rule() {
        HomRule::Identity => json!("identity"),
        HomRule::IncludeIntoRationals => json!("include_q"),
        HomRule::ReduceMod(n) => json!({ "reduce_mod": n }),
        HomRule::ReduceModDiv => match h.target().as_ref() {
            RingDescriptor::Mod(m) => json!({ "reduce_mod": m }),
            other => return Err(Error::UnsupportedDescriptor(other.to_string())),
        },
        HomRule::UnitMap => json!("unit_map"),
        HomRule::PolyEvalAt(c) => json!({ "eval_at": value_to_json(c) }),
        HomRule::ConstantEmbed => json!("constant_embed"),
        HomRule::Project(k) => json!({ "project": k }),
        HomRule::Collapse => json!("collapse"),
        HomRule::Pair(ps) => {
            json!({ "pair": ps.iter().map(hom_to_json).collect::<Result<Vec<_>>>()? })
        }
        HomRule::Table(t) => table_json(t.entries()),
        HomRule::Compose(_) => {
            if h.source().is_finite() {
                let t = RingHom::tabulate(h.source(), h.target(), |x| h.apply(x))?;
                return hom_to_json(&t);
            }
            if **h.source() == RingDescriptor::Integers {
                return Ok(json!("unit_map"));
            }
            return Err(Error::UnsupportedDescriptor(format!(
                "cannot write the composite {h}"
            )));
        }
    })
}

fn table_json(entries: &[(crate::ring::RingValue, crate::ring::RingValue)]) -> Value {
    json!({
        "table": entries
            .iter()
            .map(|(x, y)| json!([value_to_json(x), value_to_json(y)]))
            .collect::<Vec<_>>()
    })
}

impl LatticeFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
    }

    /// Structural checks and construction; homs are not validated here.
    pub fn to_directed_lattice(&self) -> Result<DirectedLattice> {
        let names: Vec<&str> = self.nodes.keys().map(String::as_str).collect();
        let rings = self
            .nodes
            .iter()
            .map(|(name, spec)| {
                ring_from_json(&spec.ring).map_err(|e| parse_err(format!("node `{name}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let zeros: Vec<&str> = names
            .iter()
            .zip(&rings)
            .filter(|(_, r)| r.is_zero_ring())
            .map(|(n, _)| *n)
            .collect();
        if zeros.len() != 1 {
            return Err(parse_err(format!(
                "exactly one node must carry the zero ring, found {}",
                zeros.len()
            )));
        }
        let order: Vec<(&str, &str)> = self
            .order
            .iter()
            .map(|(lo, hi)| (lo.as_str(), hi.as_str()))
            .collect();
        let lattice = Lattice::new(&names, &order)?;
        let zero_id = lattice.id(zeros[0])?;
        if lattice.bottom() != Some(zero_id) {
            return Err(parse_err(format!(
                "the zero-ring node `{}` must be the unique minimum",
                zeros[0]
            )));
        }
        let arcs: Vec<Arc<RingDescriptor>> = rings.iter().cloned().map(Arc::new).collect();
        let homs = self
            .homs
            .iter()
            .map(|h| {
                let (u, l) = (lattice.id(&h.from)?, lattice.id(&h.to)?);
                let map = hom_from_json(&h.map, &arcs[u], &arcs[l])
                    .map_err(|e| parse_err(format!("hom {} -> {}: {e}", h.from, h.to)))?;
                Ok((h.from.clone(), h.to.clone(), map))
            })
            .collect::<Result<Vec<_>>>()?;
        DirectedLattice::new(lattice, rings, homs)
    }

    /// Cover relations and cover homs of `g`.
    pub fn from_directed_lattice(g: &DirectedLattice) -> Result<Self> {
        let l = g.lattice();
        let nodes = (0..l.len())
            .map(|i| {
                (
                    l.name(i).to_string(),
                    NodeSpec {
                        ring: ring_to_json(g.ring_at(i)),
                    },
                )
            })
            .collect();
        let mut order = Vec::new();
        let mut homs = Vec::new();
        for (hi, lo, h) in g.edges() {
            order.push((l.name(lo).to_string(), l.name(hi).to_string()));
            if lo != g.bottom() {
                homs.push(HomSpec {
                    from: l.name(hi).to_string(),
                    to: l.name(lo).to_string(),
                    map: hom_to_json(h)?,
                });
            }
        }
        Ok(LatticeFile { nodes, order, homs })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice files serialize")
    }
}

/// Parses lattice file text and validates the directed lattice.
pub fn parse_lattice(text: &str) -> Result<DirectedLattice> {
    let g = LatticeFile::parse(text)?.to_directed_lattice()?;
    let report = dl_validate(&g, LOAD_BUDGET);
    if !report.passed() {
        return Err(Error::ValidationFailed(report));
    }
    Ok(g)
}

pub fn load_lattice_file(path: impl AsRef<Path>) -> Result<DirectedLattice> {
    parse_lattice(&std::fs::read_to_string(path)?)
}

/// Loads and builds a meadow in the given mode.
pub fn load_meadow_file(path: impl AsRef<Path>, mode: BuildMode) -> Result<Meadow> {
    build_meadow(load_lattice_file(path)?, mode)
}

/// Serializes a directed lattice to lattice file text.
pub fn write_lattice(g: &DirectedLattice) -> Result<String> {
    Ok(LatticeFile::from_directed_lattice(g)?.to_json_string())
}

/// Reads an ideal file: node names mapped to `"zero"`, `"whole"`,
/// `{"nZ": n}` or `{"subset": [value, ...]}`. Unlisted nodes get the zero
/// ideal, the bottom the whole ring.
pub fn parse_ideal(m: &Meadow, text: &str) -> Result<MeadowIdeal> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("an ideal file is an object keyed by node"))?;
    let mut entries = Vec::new();
    for (node, spec) in obj {
        let ring = m.ring_at(m.node_id(node)?);
        let d = match spec {
            Value::String(s) if s == "zero" => IdealDesc::ZeroIdeal,
            Value::String(s) if s == "whole" => IdealDesc::WholeRing,
            Value::Object(o) if o.len() == 1 => {
                let (k, body) = o.iter().next().expect("one entry");
                match k.as_str() {
                    "nZ" => IdealDesc::Multiples(
                        body.as_u64()
                            .ok_or_else(|| parse_err(format!("{body} is not a natural number")))?,
                    ),
                    "subset" => IdealDesc::FiniteSubset(
                        body.as_array()
                            .ok_or_else(|| parse_err("subset needs a list of values"))?
                            .iter()
                            .map(|x| value_from_json(ring, x))
                            .collect::<Result<_>>()?,
                    ),
                    other => return Err(parse_err(format!("unknown ideal constructor `{other}`"))),
                }
            }
            other => return Err(parse_err(format!("cannot read an ideal from {other}"))),
        };
        entries.push((node.as_str(), d));
    }
    MeadowIdeal::from_named(m, &entries)
}

pub fn load_ideal_file(m: &Meadow, path: impl AsRef<Path>) -> Result<MeadowIdeal> {
    parse_ideal(m, &std::fs::read_to_string(path)?)
}
