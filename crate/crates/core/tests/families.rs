use rrbailey_core::bailey::{check_family, q_direct, wbl_sides, CheckSet, FamilyParams, CLOSED_BETAS};
use rrbailey_core::Order;

fn corpus_params() -> impl Iterator<Item = FamilyParams> {
    CLOSED_BETAS
        .iter()
        .map(|c| FamilyParams::new(c.params.0, c.params.1, c.params.2).unwrap())
}

#[test]
fn closed_form_lemma_sides() {
    let order = Order::new(24, 24);
    for p in corpus_params() {
        let (left, right) = wbl_sides(&p, order).unwrap();
        let direct = q_direct(&p, p.big_k(), order).unwrap();
        assert_eq!(left, right, "{p}");
        assert_eq!(left, direct, "{p}");
    }
}

#[test]
fn corpus_families_pass_every_check() {
    for p in corpus_params() {
        let report = check_family(&p, Order::new(20, 20), CheckSet::ALL);
        assert!(report.passed(), "{p}: {:?}", report.failures().collect::<Vec<_>>());
        assert!(report.integral, "{p}");
    }
}
