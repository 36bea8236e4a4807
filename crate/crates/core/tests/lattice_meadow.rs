mod common;

use std::collections::HashSet;

use common::{adjoin, arc, example, id, product, reduce, verified, zn};
use meadow::file::{load_lattice_file, load_meadow_file};
use meadow::ring::{RingDescriptor, RingHom, RingValue};
use meadow::{
    build_meadow, decompose, dl_validate, lattice_validate, BuildMode, DirectedLattice, Error,
    Lattice, Meadow, ViolationKind,
};

fn chain_z_q() -> Meadow {
    load_meadow_file(example("chain_z_q.json"), BuildMode::VerifyInvertibility).unwrap()
}

fn el(m: &Meadow, text: &str) -> meadow::MeadowElement {
    m.parse_element(text).unwrap()
}

#[test]
fn lattice_shapes() {
    let chain = Lattice::chain(&["bot", "q", "top"]).unwrap();
    assert!(lattice_validate(&chain).passed());
    assert_eq!(chain.meet_named("q", "top").unwrap(), "q");

    let diamond = Lattice::new(
        &["bot", "l", "r", "top"],
        &[("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
    )
    .unwrap();
    assert!(lattice_validate(&diamond).passed());
    assert_eq!(diamond.meet_named("l", "r").unwrap(), "bot");

    let no_top = Lattice::new(&["bot", "l", "r"], &[("bot", "l"), ("bot", "r")]).unwrap();
    assert!(lattice_validate(&no_top).has(ViolationKind::NoTop));

    let fd = load_lattice_file(example("field_diamond.json")).unwrap();
    assert_eq!(fd.lattice().meet_named("f1", "f2").unwrap(), "f3");
}

#[test]
fn maximal_subsets() {
    let chain = Lattice::chain(&["bot", "q", "top"]).unwrap();
    assert_eq!(chain.maximal_named(&["bot", "q"]).unwrap(), ["q"]);
    assert!(chain.maximal_named::<&str>(&[]).unwrap().is_empty());
    let l = Lattice::new(
        &["a", "q1", "q2", "z"],
        &[("a", "q1"), ("a", "q2"), ("q1", "z"), ("q2", "z")],
    )
    .unwrap();
    let mut got = l.maximal_named(&["q1", "q2", "a"]).unwrap();
    got.sort();
    assert_eq!(got, ["q1", "q2"]);
}

#[test]
fn directed_lattice_validation() {
    let g = load_lattice_file(example("chain_z_q.json")).unwrap();
    assert!(dl_validate(&g, 32).passed());
    assert_eq!(
        g.transition_named("z", "q").unwrap(),
        &RingHom::include_rationals()
    );
    assert!(g.transition_named("q", "q").unwrap().is_identity());
    let to_bottom = g.transition_named("z", "a").unwrap();
    assert!(to_bottom.target().is_zero_ring());

    // Z/4 over two copies of Z/2 that meet in a third: one side is a table
    // that agrees with reduction on 0 and 1 but sends 2 to 1
    let z4 = arc(zn(4));
    let z2 = arc(zn(2));
    let v = |r: &std::sync::Arc<RingDescriptor>, k: u64| RingValue::from_int(r, k);
    let bent = RingHom::table(
        &z4,
        &z2,
        (0..4)
            .map(|k| (v(&z4, k), v(&z2, [0, 1, 1, 1][k as usize])))
            .collect(),
    )
    .unwrap();
    let g = common::diamond(
        zn(4),
        (zn(2), reduce(4, 2)),
        (zn(2), bent),
        Some((zn(2), id(&zn(2)), id(&zn(2)))),
    );
    let report = dl_validate(&g, 32);
    assert!(!report.passed());
    assert!(report.has(ViolationKind::EdgeNotHom));
    assert!(report.has(ViolationKind::PathDependence));

    let l = Lattice::chain(&["bot", "top"]).unwrap();
    let bad = DirectedLattice::new(
        l,
        vec![zn(2), zn(2)],
        vec![("top".into(), "bot".into(), id(&zn(2)))],
    );
    match bad {
        Ok(g) => assert!(dl_validate(&g, 32).has(ViolationKind::BottomNotZeroRing)),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn building() {
    let n = chain_z_q();
    assert_eq!(n.status(), meadow::InvertibilityStatus::Verified);
    match load_meadow_file(
        example("two_q_ambiguous.json"),
        BuildMode::VerifyInvertibility,
    ) {
        Err(Error::AmbiguousInverse {
            element,
            mut maximal,
        }) => {
            maximal.sort();
            assert_eq!(maximal, ["q1", "q2"]);
            assert!(!element.is_empty());
        }
        other => panic!("{other:?}"),
    }
    let z6 = adjoin(zn(6));
    assert_eq!(z6.carrier_size(), Some(7));
    assert_eq!(z6.elements().unwrap().len(), 7);
}

#[test]
fn arithmetic_across_nodes() {
    let n = chain_z_q();
    let s = n.add(&el(&n, "2 @ z"), &el(&n, "1/3 @ q")).unwrap();
    assert_eq!(s.to_string(), "7/3 @ q");
    assert!(n.add(&el(&n, "5"), &n.error_elem()).unwrap().is_error());
    assert_eq!(n.neg(&el(&n, "3")).unwrap().to_string(), "-3 @ z");
    assert!(n.neg(&n.error_elem()).unwrap().is_error());
    assert_eq!(n.zero_of(&el(&n, "1/2 @ q")).unwrap().to_string(), "0 @ q");
    assert!(n.zero_of(&n.error_elem()).unwrap().is_error());
    assert_eq!(n.zero_of(&el(&n, "5")).unwrap().to_string(), "0 @ z");

    let z3 = adjoin(zn(3));
    assert_eq!(z3.neg(&el(&z3, "2")).unwrap().to_string(), "1 @ top");

    // 1 at l times 1 at r lands at their meet, which is not the bottom
    let d = verified(common::diamond(
        zn(2),
        (zn(2), id(&zn(2))),
        (zn(2), id(&zn(2))),
        Some((zn(2), id(&zn(2)), id(&zn(2)))),
    ));
    let p = d.mul(&el(&d, "1 @ l"), &el(&d, "1 @ r")).unwrap();
    assert_eq!(p.to_string(), "1 @ b");
}

#[test]
fn inverses_and_witnesses() {
    let n = chain_z_q();
    assert_eq!(n.inverse(&el(&n, "2")).unwrap().to_string(), "1/2 @ q");
    assert!(n.inverse(&el(&n, "0")).unwrap().is_error());
    let m = load_meadow_file(example("z_only.json"), BuildMode::VerifyInvertibility).unwrap();
    assert!(m.inverse(&el(&m, "5")).unwrap().is_error());
    let p = adjoin(product(&[2, 2]));
    assert!(p.inverse(&el(&p, "(1, 0)")).unwrap().is_error());
    assert_eq!(p.inverse(&p.one()).unwrap(), p.one());

    let names = |m: &Meadow, js: &[usize]| {
        let mut v: Vec<String> = js.iter().map(|&j| m.node_name(j).to_string()).collect();
        v.sort();
        v
    };
    let w = n.j_set(&el(&n, "2")).unwrap();
    assert_eq!(names(&n, &w.j_set), ["a", "q"]);
    assert_eq!(names(&n, &w.maximal), ["q"]);
    let w = n.j_set(&el(&n, "0")).unwrap();
    assert_eq!(names(&n, &w.j_set), ["a"]);
    assert_eq!(names(&n, &w.maximal), ["a"]);

    let two_q = Meadow::unchecked(load_lattice_file(example("two_q_ambiguous.json")).unwrap());
    let w = two_q.j_set(&two_q.parse_element("2").unwrap()).unwrap();
    assert_eq!(names(&two_q, &w.maximal), ["q1", "q2"]);
}

#[test]
fn zero_order() {
    let n = chain_z_q();
    let z0 = el(&n, "0");
    let q0 = el(&n, "0 @ q");
    assert!(n.zero_order_leq(&n.error_elem(), &z0).unwrap());
    assert!(n.zero_order_leq(&z0, &z0).unwrap());
    assert!(!n.zero_order_leq(&z0, &q0).unwrap());
    assert!(n.zero_order_leq(&q0, &z0).unwrap());
}

fn rings_of(d: &meadow::Decomposition) -> HashSet<RingDescriptor> {
    d.components.iter().map(|c| (*c.ring).clone()).collect()
}

#[test]
fn decomposition() {
    let d = decompose(&adjoin(zn(6))).unwrap();
    assert_eq!(
        rings_of(&d),
        [zn(6), RingDescriptor::Zero].into_iter().collect()
    );
    assert_eq!(d.transitions.len(), 1);

    let d = decompose(&adjoin(product(&[2, 2]))).unwrap();
    assert_eq!(
        rings_of(&d),
        [product(&[2, 2]), RingDescriptor::Zero]
            .into_iter()
            .collect()
    );

    let original = common::five_node_z12();
    let m = verified(original.clone());
    let rebuilt = decompose(&m).unwrap().to_directed_lattice().unwrap();
    assert_eq!(
        rebuilt.lattice().covers().len(),
        original.lattice().covers().len()
    );
    let again = build_meadow(rebuilt, BuildMode::VerifyInvertibility).unwrap();
    assert_eq!(again.carrier_size(), m.carrier_size());
}

#[test]
fn infinite_decomposition_is_refused() {
    assert!(matches!(
        decompose(&chain_z_q()),
        Err(Error::InfiniteCarrier(_))
    ));
}
