mod common;

use proptest::prelude::*;

use common::{adjoin, chain, example, id, reduce, verified, zn};
use meadow::axioms::{check_laws, law_by_name, AxiomReport};
use meadow::file::{load_lattice_file, load_meadow_file};
use meadow::ring::{RingHom, RingValue};
use meadow::{
    check_axioms, check_characterizations, find_counterexample, BuildMode, Characterization,
    CheckMode, Law, Meadow, Property, Suite,
};

fn exhaustive(m: &Meadow, suite: Suite) -> AxiomReport {
    check_axioms(m, suite, CheckMode::Exhaustive).unwrap()
}

fn witness_value(r: &AxiomReport, law: &str, var: &str) -> String {
    let l = r.law(law).unwrap();
    assert!(!l.passed);
    l.witness.iter().find(|(v, _)| v == var).unwrap().1.clone()
}

#[test]
fn common_meadow_axioms_on_z6() {
    let r = exhaustive(&adjoin(zn(6)), Suite::CM);
    assert_eq!(r.laws.len(), 14);
    assert!(r.passed(), "{r}");
    // a law in three variables runs over every triple of the seven elements
    assert_eq!(r.law("M1").unwrap().tuples, 343);
}

#[test]
fn every_suite_holds_on_the_corpus() {
    for (name, m) in common::corpus_upto(40) {
        for suite in [
            Suite::PM,
            Suite::Identities,
            Suite::AssemblyAdd,
            Suite::AssemblyMul,
        ] {
            let r = exhaustive(&m, suite);
            assert!(r.passed(), "{name}: {r}");
        }
    }
}

#[test]
fn named_conditions() {
    assert!(exhaustive(&adjoin(zn(6)), Suite::NVL).passed());
    let three = verified(chain(vec![zn(2), zn(2)], vec![id(&zn(2))]));
    let r = exhaustive(&three, Suite::NVL);
    assert!(!r.passed());
    let x = witness_value(&r, "NVL", "x");
    assert!(x.ends_with("@ c1"), "{x}");

    let r = exhaustive(&adjoin(zn(4)), Suite::AVL);
    assert_eq!(witness_value(&r, "AVL", "x"), "2 @ top");

    assert!(exhaustive(&adjoin(zn(5)), Suite::CIL).passed());
    let r = exhaustive(&adjoin(zn(6)), Suite::CIL);
    assert_eq!(witness_value(&r, "CIL", "x"), "2 @ top");
}

#[test]
fn characterization_reports() {
    for (name, m) in common::corpus_upto(40) {
        for which in Characterization::ALL {
            let r = check_characterizations(&m, which).unwrap();
            assert!(r.consistent, "{name}: {}", r.detail);
        }
    }
    let r = check_characterizations(&adjoin(zn(5)), Characterization::Cil).unwrap();
    assert!(r.syntactic && r.structural);
    let r = check_characterizations(&adjoin(zn(6)), Characterization::Cil).unwrap();
    assert!(!r.syntactic && !r.structural);
}

#[test]
fn counterexample_search() {
    let two_z2 = load_lattice_file(example("two_z2_ambiguous.json")).unwrap();
    let w = find_counterexample(&two_z2, &Property::UniqueMaximalInverse)
        .unwrap()
        .unwrap();
    assert_eq!(w[0].1, "3 @ top");

    let valid = chain(vec![zn(4), zn(2)], vec![reduce(4, 2)]);
    for law in Suite::CM.laws() {
        assert_eq!(
            find_counterexample(&valid, &Property::Law(law.clone())).unwrap(),
            None,
            "{}",
            law.name
        );
    }

    // a diamond where one side forgets that 2 = 0 in Z/2 breaks distributivity
    let z4 = common::arc(zn(4));
    let z2 = common::arc(zn(2));
    let v = |r: &std::sync::Arc<meadow::ring::RingDescriptor>, k: u64| RingValue::from_int(r, k);
    let bent = RingHom::table(
        &z4,
        &z2,
        (0..4)
            .map(|k| (v(&z4, k), v(&z2, [0, 1, 1, 1][k as usize])))
            .collect(),
    )
    .unwrap();
    let broken = common::diamond(zn(4), (zn(2), reduce(4, 2)), (zn(2), bent), None);
    let pm8 = law_by_name("PM8").unwrap();
    let w = find_counterexample(&broken, &Property::Law(pm8))
        .unwrap()
        .expect("distributivity fails");
    assert_eq!(w.len(), 3);
}

#[test]
fn infinite_meadows_are_sampled() {
    let n = load_meadow_file(example("chain_z_q.json"), BuildMode::VerifyInvertibility).unwrap();
    assert!(check_axioms(&n, Suite::CM, CheckMode::Exhaustive).is_err());
    let r = check_axioms(&n, Suite::CM, CheckMode::Auto).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.mode.to_string(), "sampled(2000)");
    let a = check_axioms(
        &n,
        Suite::PM,
        CheckMode::Sampled {
            samples: 300,
            seed: 7,
        },
    )
    .unwrap();
    let b = check_axioms(
        &n,
        Suite::PM,
        CheckMode::Sampled {
            samples: 300,
            seed: 7,
        },
    )
    .unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn report_json_shape() {
    let r = exhaustive(&adjoin(zn(6)), Suite::CIL);
    let j = r.to_json();
    assert_eq!(j["suite"], "CIL");
    assert_eq!(j["mode"], "exhaustive");
    assert_eq!(j["laws"][0]["status"], "fail");
    assert_eq!(j["laws"][0]["witness"][0], "x = 2 @ top");
}

#[test]
fn custom_laws() {
    let law = Law::parse("square-root-of-one", "x * x = 1 => x = 1 | x = -1").unwrap();
    let r = check_laws(
        &adjoin(zn(8)),
        "custom",
        &[law.clone()],
        CheckMode::Exhaustive,
    )
    .unwrap();
    // 3 squares to 1 in Z/8
    assert!(!r.passed());
    assert!(
        check_laws(&adjoin(zn(7)), "custom", &[law], CheckMode::Exhaustive)
            .unwrap()
            .passed()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cm_holds_on_random_cyclic_meadows(n in 2u64..16) {
        prop_assert!(exhaustive(&adjoin(zn(n)), Suite::CM).passed());
    }

    #[test]
    fn failed_laws_carry_witnesses(n in 2u64..13) {
        for suite in [Suite::NVL, Suite::AVL, Suite::CIL, Suite::StrongAssembly] {
            let m = verified(chain(vec![zn(n), zn(n)], vec![id(&zn(n))]));
            for l in exhaustive(&m, suite).failures() {
                prop_assert!(!l.witness.is_empty());
            }
        }
    }

    #[test]
    fn cil_matches_primality(n in 2u64..30) {
        let prime = (2..n).all(|d| n % d != 0);
        prop_assert_eq!(exhaustive(&adjoin(zn(n)), Suite::CIL).passed(), prime);
    }
}
