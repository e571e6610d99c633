use realizer_core::extract::extract;
use realizer_core::harness::{
    build_max_proof, comparator_semantics, comparator_tag, linearity_probe, verify_pi2, Witness,
};
use realizer_core::kernel::check;
use realizer_core::reduce::{normalize, DEFAULT_FUEL};
use realizer_core::term::{numeral, Term};

#[test]
fn max_matches_host_arithmetic() {
    let program = extract(&check(&build_max_proof()).unwrap());
    for a in 0..=15u64 {
        for b in 0..=15u64 {
            let applied = Term::left(Term::apps(program.clone(), [numeral(a), numeral(b)]));
            assert_eq!(
                normalize(&applied, DEFAULT_FUEL).unwrap().term,
                numeral(a.max(b)),
                "max({a}, {b})"
            );
        }
    }
}

#[test]
fn verify_reports_every_pair_without_stuck_terms() {
    let report = verify_pi2(&check(&build_max_proof()).unwrap(), 15, DEFAULT_FUEL).unwrap();
    assert!(report.all_pass);
    assert_eq!(report.results.len(), 256);
    assert_eq!(report.stuck_count(), 0);
    for e in &report.results {
        assert_eq!(e.witness, Witness::Value(e.inputs[0].max(e.inputs[1])));
    }
}

#[test]
fn comparator_contract() {
    assert!(comparator_semantics(15));
}

#[test]
fn comparator_tags_on_examples() {
    assert_eq!(comparator_tag(7, 0, DEFAULT_FUEL), Witness::Value(0));
    assert_eq!(comparator_tag(0, 9, DEFAULT_FUEL), Witness::Value(1));
    // Equal inputs go through the second disjunct all the way down to the
    // base case; either tag would be correct, this one is what the proof does.
    for a in 0..=15 {
        assert_eq!(
            comparator_tag(a, a, DEFAULT_FUEL),
            Witness::Value(1),
            "a = {a}"
        );
    }
}

#[test]
fn comparison_cost_grows_linearly() {
    let probe = linearity_probe(&[0, 4, 8, 16, 32, 64]).unwrap();
    let steps: Vec<u64> = probe.iter().map(|&(_, s)| s).collect();
    assert!(steps[0] > 0 && steps[0] <= 10, "base cost {}", steps[0]);
    assert!(steps.windows(2).all(|w| w[0] < w[1]), "{probe:?}");
    for i in 2..steps.len() {
        let ratio = steps[i] as f64 / steps[i - 1] as f64;
        assert!(
            ratio <= 2.5,
            "steps({}) / steps({}) = {ratio}",
            probe[i].0,
            probe[i - 1].0
        );
    }
}
