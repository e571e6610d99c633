//! One line per acceptance criterion, then a single assertion over all of
//! them. Run with `cargo test -p realizer-cli --test acceptance -- --nocapture`
//! to see the report.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use realizer_core::extract::{extract, extract_axiom, extract_with, ExtractionContext};
use realizer_core::harness::{
    build_lemma_proof, build_max_proof, comparator_semantics, lemma_statement, linearity_probe,
    max_statement, mutation_suite, run_witness, Witness, DISPLAYED_LEMMA_TERM, DISPLAYED_MAX_TERM,
};
use realizer_core::kernel::{check, AxiomKind, Proof};
use realizer_core::logic::parse_arith;
use realizer_core::reduce::{normalize, step, DEFAULT_FUEL};
use realizer_core::term::{alpha_eq, denote_arithmetical, numeral, parse_term, substitute, Term};

const RULE_TIME_LIMIT: Duration = Duration::from_secs(1);
const MAX_TIME_LIMIT: Duration = Duration::from_secs(60);
const MAX_FUEL: u64 = 1_000_000;
const GRID: u64 = 15;
const AGREEMENT_GRID: u64 = 10;
const LINEARITY_SIZES: [u64; 4] = [4, 8, 16, 32];
const LINEARITY_RATIO: f64 = 2.5;
const MIN_MUTANTS: usize = 6;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn t(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn rule_conformance() -> Verdict {
    let cut = |a, b| Term::cut_minus(numeral(a), numeral(b));
    let rules: [(&str, Term, Term); 11] = [
        ("beta", t(r"(\x. f x x) s"), t("f s s")),
        ("left", t("left (s, t)"), t("s")),
        ("right", t("right (s, t)"), t("t")),
        ("isZero 0", t("isZero 0"), t("0")),
        ("isZero (t + 1)", t("isZero (t + 1)"), t("1")),
        ("ite 0", t("ite 0 t s"), t("t")),
        ("ite 1", t("ite 1 t s"), t("s")),
        ("R b s 0", t("R b s 0"), t("b")),
        ("R b s (t + 1)", t("R b s (t + 1)"), t("s t (R b s t)")),
        ("5 -. 3", cut(5, 3), numeral(2)),
        ("3 -. 5", cut(3, 5), numeral(0)),
    ];
    let start = Instant::now();
    let failed: Vec<&str> = rules
        .iter()
        .filter(|(_, lhs, rhs)| step(lhs).as_ref() != Some(rhs))
        .map(|(name, _, _)| *name)
        .collect();
    let elapsed = start.elapsed();
    verdict(
        failed.is_empty() && elapsed < RULE_TIME_LIMIT,
        format!(
            "{}/{} rules, {elapsed:.2?} (limit {RULE_TIME_LIMIT:?}){}",
            rules.len() - failed.len(),
            rules.len(),
            if failed.is_empty() {
                String::new()
            } else {
                format!(", failed: {failed:?}")
            }
        ),
    )
}

fn max_synthesis() -> Verdict {
    let start = Instant::now();
    let program = extract(&check(&build_max_proof()).unwrap());
    let mut wrong = Vec::new();
    for a in 0..=GRID {
        for b in 0..=GRID {
            let applied = Term::left(Term::apps(program.clone(), [numeral(a), numeral(b)]));
            match normalize(&applied, MAX_FUEL) {
                Ok(nf) if nf.term == numeral(a.max(b)) => {}
                _ => wrong.push((a, b)),
            }
        }
    }
    let elapsed = start.elapsed();
    let total = (GRID + 1) * (GRID + 1);
    verdict(
        wrong.is_empty() && elapsed < MAX_TIME_LIMIT,
        format!(
            "{}/{total} pairs exact, {elapsed:.2?} (limit {MAX_TIME_LIMIT:?}){}",
            total as usize - wrong.len(),
            if wrong.is_empty() {
                String::new()
            } else {
                format!(", wrong: {wrong:?}")
            }
        ),
    )
}

fn comparator_contract() -> Verdict {
    let program = extract(&check(&build_lemma_proof()).unwrap());
    let mut violations = Vec::new();
    for a in 0..=GRID {
        for b in 0..=GRID {
            let ok = match run_witness(&program, &[a, b], DEFAULT_FUEL).witness {
                Witness::Value(0) => a >= b,
                Witness::Value(1) => b >= a,
                _ => false,
            };
            if !ok {
                violations.push((a, b));
            }
        }
    }
    let harness_agrees = comparator_semantics(GRID);
    verdict(
        violations.is_empty() && harness_agrees,
        format!(
            "{} violations over [0,{GRID}]^2, harness check {harness_agrees}",
            violations.len()
        ),
    )
}

fn linearity() -> Verdict {
    let probe = match linearity_probe(&LINEARITY_SIZES) {
        Ok(p) => p,
        Err(e) => return verdict(false, format!("probe failed: {e}")),
    };
    let steps: Vec<u64> = probe.iter().map(|&(_, s)| s).collect();
    let increasing = steps.windows(2).all(|w| w[0] < w[1]);
    // steps(2a) / steps(a) for a in {8, 16}.
    let ratios = [
        steps[2] as f64 / steps[1] as f64,
        steps[3] as f64 / steps[2] as f64,
    ];
    let bounded = ratios.iter().all(|&r| r <= LINEARITY_RATIO);
    verdict(
        increasing && bounded,
        format!("steps {probe:?}, ratios {ratios:.3?} (limit {LINEARITY_RATIO})"),
    )
}

fn kernel_soundness() -> Verdict {
    let lemma_ok = check(&build_lemma_proof())
        .is_ok_and(|cp| cp.is_closed() && cp.conclusion().alpha_eq(&lemma_statement()));
    let max_ok = check(&build_max_proof())
        .is_ok_and(|cp| cp.is_closed() && cp.conclusion().alpha_eq(&max_statement()));
    let suite = mutation_suite();
    let escaped: Vec<&str> = suite
        .iter()
        .filter(|m| check(&m.proof).map_err(|e| e.kind()) != Err(m.expected))
        .map(|m| m.name)
        .collect();
    verdict(
        lemma_ok && max_ok && suite.len() >= MIN_MUTANTS && escaped.is_empty(),
        format!(
            "lemma {lemma_ok}, max {max_ok}, {}/{} mutants rejected as designated (need {MIN_MUTANTS}){}",
            suite.len() - escaped.len(),
            suite.len(),
            if escaped.is_empty() { String::new() } else { format!(", not: {escaped:?}") }
        ),
    )
}

fn extraction_fidelity() -> Verdict {
    let mut eq_nodes = 0;
    let mut eq_transparent = true;
    for root in [build_max_proof(), build_lemma_proof()] {
        for (_, node) in root.nodes() {
            if let Proof::EqRule { premise, .. } = node {
                eq_nodes += 1;
                let whole = extract_with(node, &mut ExtractionContext::for_proof(node));
                let inner = extract_with(premise, &mut ExtractionContext::for_proof(node));
                eq_transparent &= whole == inner;
            }
        }
    }
    let a = |s: &str| parse_arith(s).unwrap();
    let axioms: [(AxiomKind, Vec<_>, &str); 5] = [
        (AxiomKind::Refl, vec![a("x")], "eps"),
        (AxiomKind::GeqRefl, vec![a("x")], "eps"),
        (AxiomKind::GeqZero, vec![a("x")], "eps"),
        (AxiomKind::GeqSuccMono, vec![a("x"), a("y")], r"\z. eps"),
        (
            AxiomKind::ZeroOrSucc,
            vec![a("t")],
            "(isZero t, ite (isZero t) eps (t -. 1, eps))",
        ),
    ];
    let axioms_ok = axioms
        .iter()
        .all(|(schema, terms, expected)| alpha_eq(&extract_axiom(*schema, terms), &t(expected)));
    verdict(
        eq_nodes > 0 && eq_transparent && axioms_ok,
        format!("{eq_nodes} equality-rule nodes transparent: {eq_transparent}, axiom contents: {axioms_ok}"),
    )
}

fn left_number(program: &Term, a: u64, b: u64) -> Option<u64> {
    let applied = Term::left(Term::apps(program.clone(), [numeral(a), numeral(b)]));
    normalize(&applied, DEFAULT_FUEL)
        .ok()
        .and_then(|nf| denote_arithmetical(&nf.term))
}

fn observational_agreement() -> Verdict {
    let lemma = extract(&check(&build_lemma_proof()).unwrap());
    let max = extract(&check(&build_max_proof()).unwrap());
    let displayed_max = substitute(&t(DISPLAYED_MAX_TERM), "f", &lemma);
    let displayed_lemma = t(DISPLAYED_LEMMA_TERM);
    let mut disagreements = Vec::new();
    for a in 0..=AGREEMENT_GRID {
        for b in 0..=AGREEMENT_GRID {
            let max_pair = (left_number(&max, a, b), left_number(&displayed_max, a, b));
            let lemma_pair = (
                left_number(&lemma, a, b),
                left_number(&displayed_lemma, a, b),
            );
            if max_pair.0.is_none()
                || max_pair.0 != max_pair.1
                || lemma_pair.0.is_none()
                || lemma_pair.0 != lemma_pair.1
            {
                disagreements.push((a, b));
            }
        }
    }
    verdict(
        disagreements.is_empty(),
        format!(
            "{} disagreements over [0,{AGREEMENT_GRID}]^2 for both programs",
            disagreements.len()
        ),
    )
}

fn cli_pipeline() -> Verdict {
    let max = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../proofs/max.nd");
    let max = max.to_str().unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_realizer"))
            .args(args)
            .output()
            .unwrap()
    };
    let checked = run(&["check", max]);
    let extracted = run(&["extract", max]);
    let ran = run(&["run", max, "2", "5"]);
    let verified = run(&["verify", max, "--bound", "15"]);
    let ran_out = String::from_utf8_lossy(&ran.stdout).into_owned();
    let verify_out = String::from_utf8_lossy(&verified.stdout).into_owned();
    let ok = checked.status.success()
        && extracted.status.success()
        && parse_term(String::from_utf8_lossy(&extracted.stdout).trim()).is_ok()
        && ran.status.success()
        && ran_out == "5\n"
        && verified.status.success()
        && verify_out.starts_with("256/256 pass");
    verdict(
        ok,
        format!(
            "check {}, extract {}, run 2 5 -> {:?}, verify -> {:?}",
            checked.status,
            extracted.status,
            ran_out.trim(),
            verify_out.lines().next().unwrap_or("")
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("reduction-rule conformance", rule_conformance),
        ("max synthesis", max_synthesis),
        ("comparator semantics", comparator_contract),
        ("linearity", linearity),
        ("kernel soundness", kernel_soundness),
        ("extraction fidelity", extraction_fidelity),
        ("observational agreement", observational_agreement),
        ("cli pipeline", cli_pipeline),
    ];
    let mut failed = Vec::new();
    for (name, criterion) in criteria {
        let v = criterion();
        println!(
            "{} {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        if !v.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
