//! Finite directed lattices shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use meadow::morphism::{adjoin_a, glue_over_zp, meadow_product};
use meadow::ring::{RingDescriptor, RingHom};
use meadow::{build_meadow, BuildMode, DirectedLattice, Lattice, Meadow};

pub fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

pub fn zn(n: u64) -> RingDescriptor {
    RingDescriptor::modular(n).unwrap()
}

pub fn arc(r: RingDescriptor) -> Arc<RingDescriptor> {
    Arc::new(r)
}

pub fn product(fs: &[u64]) -> RingDescriptor {
    RingDescriptor::product(fs.iter().map(|&n| zn(n)).collect()).unwrap()
}

pub fn adjoin(r: RingDescriptor) -> Meadow {
    adjoin_a(&r).unwrap()
}

/// A chain of rings, top first, with the given maps between neighbours.
pub fn chain(rings: Vec<RingDescriptor>, maps: Vec<RingHom>) -> DirectedLattice {
    let mut names: Vec<String> = (0..rings.len()).map(|i| format!("c{i}")).collect();
    names.push("a".into());
    let bottom_first: Vec<&str> = names.iter().rev().map(String::as_str).collect();
    let l = Lattice::chain(&bottom_first).unwrap();
    let mut all = vec![RingDescriptor::Zero];
    all.extend(rings.into_iter().rev());
    let homs = maps
        .into_iter()
        .enumerate()
        .map(|(i, h)| (format!("c{i}"), format!("c{}", i + 1), h))
        .collect();
    DirectedLattice::new(l, all, homs).unwrap()
}

/// `top` above `left` and `right`, which meet at `below` (or at `a`).
pub fn diamond(
    top: RingDescriptor,
    left: (RingDescriptor, RingHom),
    right: (RingDescriptor, RingHom),
    below: Option<(RingDescriptor, RingHom, RingHom)>,
) -> DirectedLattice {
    let mut names = vec!["top", "l", "r", "a"];
    let mut rings = vec![top, left.0, right.0, RingDescriptor::Zero];
    let mut order = vec![("l", "top"), ("r", "top")];
    let mut homs = vec![
        ("top".to_string(), "l".to_string(), left.1),
        ("top".to_string(), "r".to_string(), right.1),
    ];
    match below {
        Some((ring, from_l, from_r)) => {
            names.push("b");
            rings.push(ring);
            order.extend([("b", "l"), ("b", "r"), ("a", "b")]);
            homs.push(("l".into(), "b".into(), from_l));
            homs.push(("r".into(), "b".into(), from_r));
        }
        None => order.extend([("a", "l"), ("a", "r")]),
    }
    let l = Lattice::new(&names, &order).unwrap();
    DirectedLattice::new(l, rings, homs).unwrap()
}

pub fn reduce(n: u64, m: u64) -> RingHom {
    RingHom::reduce_mod_div(n, m).unwrap()
}

pub fn id(r: &RingDescriptor) -> RingHom {
    RingHom::identity(&arc(r.clone()))
}

pub fn proj(fs: &[u64], k: usize) -> RingHom {
    RingHom::project(&arc(product(fs)), k).unwrap()
}

pub fn verified(g: DirectedLattice) -> Meadow {
    build_meadow(g, BuildMode::VerifyInvertibility).unwrap()
}

/// Top `Z/12` with `Z/4 -> Z/2` on one side and `Z/3` on the other.
pub fn five_node_z12() -> DirectedLattice {
    let names = ["top", "f", "t", "h", "a"];
    let order = [
        ("f", "top"),
        ("t", "top"),
        ("h", "f"),
        ("a", "h"),
        ("a", "t"),
    ];
    let l = Lattice::new(&names, &order).unwrap();
    DirectedLattice::new(
        l,
        vec![zn(12), zn(4), zn(3), zn(2), RingDescriptor::Zero],
        vec![
            ("top".into(), "f".into(), reduce(12, 4)),
            ("top".into(), "t".into(), reduce(12, 3)),
            ("f".into(), "h".into(), reduce(4, 2)),
        ],
    )
    .unwrap()
}

/// `Z/6` above two copies of `Z/2`: `3` is a unit in both copies only.
pub fn two_z2_ambiguous() -> DirectedLattice {
    diamond(zn(6), (zn(2), reduce(6, 2)), (zn(2), reduce(6, 2)), None)
}

/// `Z/30` above `Z/2`, `Z/3`, `Z/5`: `5` is a unit in the first two.
pub fn three_prime_ambiguous() -> DirectedLattice {
    let names = ["top", "p2", "p3", "p5", "a"];
    let order = [
        ("p2", "top"),
        ("p3", "top"),
        ("p5", "top"),
        ("a", "p2"),
        ("a", "p3"),
        ("a", "p5"),
    ];
    let l = Lattice::new(&names, &order).unwrap();
    DirectedLattice::new(
        l,
        vec![zn(30), zn(2), zn(3), zn(5), RingDescriptor::Zero],
        vec![
            ("top".into(), "p2".into(), reduce(30, 2)),
            ("top".into(), "p3".into(), reduce(30, 3)),
            ("top".into(), "p5".into(), reduce(30, 5)),
        ],
    )
    .unwrap()
}

/// The finite corpus: valid directed lattices with at most six nodes and
/// at most 200 elements, each built with certified inverses.
pub fn corpus() -> Vec<(String, Meadow)> {
    let mut out: Vec<(String, Meadow)> = Vec::new();
    let mut push = |name: &str, m: Meadow| out.push((name.to_string(), m));
    for n in [2, 3, 4, 5, 6, 8, 9] {
        push(&format!("Z{n}+a"), adjoin(zn(n)));
    }
    push("Z2xZ2+a", adjoin(product(&[2, 2])));
    push("Z2xZ3+a", adjoin(product(&[2, 3])));
    push("Z3xZ3+a", adjoin(product(&[3, 3])));
    push("Z2xZ2xZ2+a", adjoin(product(&[2, 2, 2])));
    push("Z10xZ10+a", adjoin(product(&[10, 10])));
    push(
        "chain Z4>Z2",
        verified(chain(vec![zn(4), zn(2)], vec![reduce(4, 2)])),
    );
    push(
        "chain Z6>Z3",
        verified(chain(vec![zn(6), zn(3)], vec![reduce(6, 3)])),
    );
    push(
        "chain Z8>Z4>Z2",
        verified(chain(
            vec![zn(8), zn(4), zn(2)],
            vec![reduce(8, 4), reduce(4, 2)],
        )),
    );
    push(
        "chain Z2>Z2",
        verified(chain(vec![zn(2), zn(2)], vec![id(&zn(2))])),
    );
    push(
        "chain of five Z2",
        verified(chain(vec![zn(2); 5], (0..4).map(|_| id(&zn(2))).collect())),
    );
    push(
        "diamond Z6>Z2,Z3",
        verified(diamond(
            zn(6),
            (zn(2), reduce(6, 2)),
            (zn(3), reduce(6, 3)),
            None,
        )),
    );
    push(
        "diamond Z2xZ2>Z2,Z2",
        verified(diamond(
            product(&[2, 2]),
            (zn(2), proj(&[2, 2], 0)),
            (zn(2), proj(&[2, 2], 1)),
            None,
        )),
    );
    push(
        "field diamond Z3",
        verified(diamond(
            zn(3),
            (zn(3), id(&zn(3))),
            (zn(3), id(&zn(3))),
            Some((zn(3), id(&zn(3)), id(&zn(3)))),
        )),
    );
    push("five nodes Z12", verified(five_node_z12()));
    let z2 = adjoin(zn(2));
    let z3 = adjoin(zn(3));
    let chain_z2 = verified(chain(vec![zn(2), zn(2)], vec![id(&zn(2))]));
    push(
        "product Z3+a x Z2+a",
        meadow_product(&z3, &z2).unwrap().meadow,
    );
    push(
        "product chain x Z2+a",
        meadow_product(&chain_z2, &z2).unwrap().meadow,
    );
    push("glue Z2+a, Z2+a over 2", glue_over_zp(&z2, &z2, 2).unwrap());
    push(
        "glue Z2xZ2+a, chain over 2",
        glue_over_zp(&adjoin(product(&[2, 2])), &chain_z2, 2).unwrap(),
    );
    out
}

/// Corpus members with at most `limit` elements.
pub fn corpus_upto(limit: usize) -> Vec<(String, Meadow)> {
    corpus()
        .into_iter()
        .filter(|(_, m)| m.carrier_size().unwrap() <= limit)
        .collect()
}
