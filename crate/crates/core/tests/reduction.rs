mod common;

use common::arb_term;
use proptest::prelude::*;
use realizer_core::extract::extract;
use realizer_core::harness::build_lemma_proof;
use realizer_core::kernel::check;
use realizer_core::reduce::{is_normal, normalize, normalize_unshared, step, Normalized};
use realizer_core::term::{
    alpha_eq, denote_arithmetical, free_vars, numeral, parse_term, substitute, Term,
};

/// Iterates `step` like `normalize_unshared`, but gives up once the term
/// grows past `max_size` so self-duplicating inputs stay cheap.
fn bounded_unshared(t: &Term, fuel: u64, max_size: usize) -> Option<Normalized> {
    let mut cur = t.clone();
    for steps in 0..=fuel {
        match step(&cur) {
            None => return Some(Normalized { term: cur, steps }),
            Some(next) if next.size() <= max_size => cur = next,
            Some(_) => return None,
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn substitution_freshness(t in arb_term(), x in prop::sample::select(&common::VARS[..]), s in arb_term()) {
        let result = free_vars(&substitute(&t, x, &s));
        let mut allowed = free_vars(&t);
        allowed.remove(x);
        allowed.extend(free_vars(&s));
        prop_assert!(result.is_subset(&allowed), "{result:?} not within {allowed:?}");
    }

    #[test]
    fn substituting_an_absent_variable_changes_nothing(t in arb_term(), s in arb_term()) {
        prop_assert_eq!(substitute(&t, "w", &s), t);
    }

    #[test]
    fn print_parse_round_trip(t in arb_term()) {
        let printed = t.to_string();
        let reparsed = parse_term(&printed).unwrap();
        prop_assert_eq!(reparsed, t, "printed as {}", printed);
    }

    #[test]
    fn alpha_eq_is_reflexive_and_ignores_binder_names(body in arb_term()) {
        prop_assert!(alpha_eq(&body, &body));
        let renamed = Term::lam("w", substitute(&body, "x", &Term::var("w")));
        prop_assert!(alpha_eq(&Term::lam("x", body), &renamed));
    }

    #[test]
    fn step_is_deterministic(t in arb_term()) {
        prop_assert_eq!(step(&t), step(&t));
    }

    #[test]
    fn normal_forms_are_stable(t in arb_term()) {
        if let Ok(nf) = normalize(&t, 2_000) {
            prop_assert!(is_normal(&nf.term), "{} is not normal", nf.term);
            prop_assert_eq!(normalize(&nf.term, 2_000).map(|n| n.steps), Ok(0));
        }
    }

    #[test]
    fn sharing_preserves_normal_forms(t in arb_term()) {
        if let Some(reference) = bounded_unshared(&t, 500, 5_000) {
            let shared = normalize(&t, reference.steps).unwrap();
            prop_assert!(
                alpha_eq(&shared.term, &reference.term),
                "{} vs {}", shared.term, reference.term
            );
            prop_assert!(shared.steps <= reference.steps);
        }
    }
}

#[test]
fn sharing_agrees_on_duplicating_programs() {
    let lemma = extract(&check(&build_lemma_proof()).unwrap());
    let mut cases: Vec<Term> = [
        r"(\x. (x, x)) (1 + 1 -. 1)",
        r"(\x. (isZero x, x)) (1 + 1)",
        r"(\x. ite (isZero x) x (x -. 1)) (1 + 1 + 1)",
        r"R 0 (\n. \r. r + 1) (1 + (1 + 1))",
        r"(\f. f (f 0)) (\v. R 1 (\n. \r. (r, n)) v)",
        r"\a. (\x. \a. x) a",
        r"left ((\x. (x, x)) (\y. y z))",
        r"(\x. x x) (\y. \z. y)",
    ]
    .iter()
    .map(|s| parse_term(s).unwrap())
    .collect();
    for a in 0..4 {
        for b in 0..4 {
            cases.push(Term::left(Term::apps(
                lemma.clone(),
                [numeral(a), numeral(b)],
            )));
        }
    }
    for t in cases {
        let reference = normalize_unshared(&t, 100_000).unwrap();
        let shared = normalize(&t, 100_000).unwrap();
        assert!(
            alpha_eq(&shared.term, &reference.term),
            "{t}: {} vs {}",
            shared.term,
            reference.term
        );
        assert!(shared.steps <= reference.steps, "{t}");
    }
}

#[test]
fn shared_scrutinee_keeps_its_original_form() {
    // Canonicalization happens in scrutinee position only; the other copy is
    // already normal and must be left alone.
    let t = parse_term(r"(\x. (isZero x, x)) (1 + 1)").unwrap();
    assert_eq!(
        normalize(&t, 100).unwrap().term,
        parse_term("(1, 1 + 1)").unwrap()
    );
}

#[test]
fn cut_minus_semantics() {
    for a in 0..=50u64 {
        for b in 0..=50u64 {
            let nf = normalize(&Term::cut_minus(numeral(a), numeral(b)), 10).unwrap();
            assert_eq!(nf.term, numeral(a.saturating_sub(b)), "{a} -. {b}");
            assert_eq!(nf.steps, 1);
        }
    }
}

#[test]
fn numeral_round_trip() {
    // Successive numerals are grown in place; `numeral` itself is compared
    // against them at every hundredth step.
    let mut t = Term::zero();
    for n in 0..=10_000u64 {
        assert_eq!(denote_arithmetical(&t), Some(n));
        if n % 100 == 0 {
            assert_eq!(numeral(n), t);
        }
        t = Term::plus(t, Term::one());
    }
}

#[test]
fn fuel_exhaustion_reports_partial_term() {
    let omega = parse_term(r"(\x. x x) (\x. x x)").unwrap();
    let err = normalize(&omega, 25).unwrap_err();
    assert_eq!(err.steps, 25);
    assert!(err.partial.is_some());
    let err = normalize(&parse_term("left (0, 1)").unwrap(), 0).unwrap_err();
    assert_eq!(err.partial, Some(parse_term("left (0, 1)").unwrap()));
}
