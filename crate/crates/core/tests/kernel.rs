mod common;

use std::path::PathBuf;

use proptest::prelude::*;
use realizer_core::harness::{
    build_lemma_proof, build_max_proof, lemma_statement, max_statement, mutation_suite,
};
use realizer_core::kernel::{check, open_assumptions, CheckErrorKind, Proof};
use realizer_core::logic::Formula;
use realizer_core::script::{parse_proof, parse_script, print_proof};

fn corpus(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../proofs")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn corpus_files_match_built_in_proofs() {
    assert_eq!(parse_proof(&corpus("max.nd")).unwrap(), build_max_proof());
    assert_eq!(
        parse_proof(&corpus("lemma_geq.nd")).unwrap(),
        build_lemma_proof()
    );
}

#[test]
fn corpus_scripts_round_trip_through_the_printer() {
    for name in ["max.nd", "lemma_geq.nd", "refl_zero.nd", "successor.nd"] {
        let parsed = parse_proof(&corpus(name)).unwrap();
        assert_eq!(
            parse_proof(&print_proof(&parsed)).unwrap(),
            parsed,
            "{name}"
        );
    }
}

#[test]
fn built_in_proofs_check_with_stated_conclusions() {
    let lemma = check(&build_lemma_proof()).unwrap();
    assert!(lemma.conclusion().alpha_eq(&lemma_statement()));
    assert!(lemma.is_closed());
    let max = check(&build_max_proof()).unwrap();
    assert!(max.conclusion().alpha_eq(&max_statement()));
    assert!(max.is_closed());
}

#[test]
fn conclusions_are_deterministic() {
    for p in [build_lemma_proof(), build_max_proof()] {
        let first = check(&p).unwrap();
        let again = check(first.proof()).unwrap();
        assert_eq!(first.conclusion(), again.conclusion());
        assert_eq!(first.open_assumptions(), again.open_assumptions());
        for (path, node) in p.nodes() {
            assert_eq!(check(node), check(node), "at {path}");
        }
    }
}

#[test]
fn mutants_are_rejected_with_designated_errors() {
    let suite = mutation_suite();
    assert!(suite.len() >= 6);
    let kinds: Vec<CheckErrorKind> = suite.iter().map(|m| m.expected).collect();
    for kind in [
        CheckErrorKind::RuleMismatch,
        CheckErrorKind::EigenvariableViolation,
        CheckErrorKind::LabelClash,
        CheckErrorKind::BadAxiomInstance,
    ] {
        assert!(kinds.contains(&kind), "no mutant expects {kind:?}");
    }
    for m in suite {
        let err = check(&m.proof).expect_err(m.name);
        assert_eq!(err.kind(), m.expected, "{}: {err}", m.name);
    }
}

#[test]
fn printed_mutants_reparse_and_are_still_rejected() {
    for m in mutation_suite() {
        let script = parse_script(&print_proof(&m.proof)).unwrap();
        assert_eq!(script.proof, m.proof, "{}", m.name);
        let err = check(&script.proof).unwrap_err();
        assert_eq!(err.kind(), m.expected, "{}", m.name);
        assert!(
            script.span(err.node()).is_some(),
            "{}: no span for {}",
            m.name,
            err.node()
        );
    }
}

/// Closed subproofs of the corpus and of the mutants, each with its verdict.
fn closed_subtrees() -> Vec<Proof> {
    let mut roots = vec![build_max_proof(), build_lemma_proof()];
    roots.extend(mutation_suite().into_iter().map(|m| m.proof));
    let mut out = Vec::new();
    for root in &roots {
        for (_, node) in root.nodes() {
            if open_assumptions(node).is_ok_and(|open| open.is_empty()) || check(node).is_err() {
                out.push(node.clone());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn unused_assumptions_do_not_change_verdicts(
        pick in any::<prop::sample::Index>(),
        extra in common::arb_formula(&["x1", "x2", "n"]),
    ) {
        let subtrees = closed_subtrees();
        let sub = pick.get(&subtrees);
        let weakened = Proof::and_i(sub.clone(), Proof::assume("unused_extra", extra));
        match (check(sub), check(&weakened)) {
            (Ok(a), Ok(b)) => {
                let Formula::And(left, _) = b.conclusion() else {
                    return Err(TestCaseError::fail("weakened conclusion is not a conjunction"));
                };
                prop_assert_eq!(a.conclusion(), &**left);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a.kind(), b.kind()),
            (a, b) => prop_assert!(false, "verdicts differ: {:?} vs {:?}", a.is_ok(), b.is_ok()),
        }
    }
}
