mod common;

#[test]
fn corpus_has_twenty_small_valid_members() {
    let corpus = common::corpus();
    assert!(corpus.len() >= 20, "{}", corpus.len());
    for (name, m) in &corpus {
        let n = m.carrier_size().unwrap();
        assert!(
            m.lattice().len() <= 6,
            "{name}: {} nodes",
            m.lattice().len()
        );
        assert!(n <= 200, "{name}: {n} elements");
        assert_eq!(m.status(), meadow::InvertibilityStatus::Verified, "{name}");
    }
}
