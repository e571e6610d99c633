//! Single-point corruptions of the built-in proofs, each paired with the
//! error the checker must report.

use crate::kernel::{AxiomKind, CheckErrorKind, NodePath, Proof};
use crate::logic::{parse_arith, parse_formula};

use super::corpus::{build_lemma_proof, build_max_proof};

#[derive(Debug, Clone)]
pub struct Mutant {
    pub name: &'static str,
    pub proof: Proof,
    pub expected: CheckErrorKind,
}

fn edit(mut proof: Proof, path: &str, change: impl FnOnce(&mut Proof)) -> Proof {
    let path = NodePath::parse(path).unwrap_or_else(|| panic!("bad mutation path `{path}`"));
    let node = proof
        .at_mut(&path)
        .unwrap_or_else(|| panic!("no node at `{path}`"));
    change(node);
    proof
}

const MAX_CASES: &str = "premise.premise";
const LEMMA_ZERO_CASE: &str = "step.premise.case1";
const LEMMA_SUCC_CASE: &str = "step.premise.case2";
const LEMMA_PRED_COMPARE: &str = "step.premise.case2.body.premise";

pub fn mutation_suite() -> Vec<Mutant> {
    use CheckErrorKind::*;
    let max = build_max_proof;
    let lemma = build_lemma_proof;
    let f = |s: &str| parse_formula(s).unwrap();
    let t = |s: &str| parse_arith(s).unwrap();

    vec![
        Mutant {
            name: "max: first case exists-i witness x2 instead of x1",
            proof: edit(max(), &format!("{MAX_CASES}.case1"), |p| {
                if let Proof::ExistsI { witness, .. } = p {
                    *witness = t("x2");
                }
            }),
            expected: RuleMismatch,
        },
        Mutant {
            name: "max: and-i premises swapped in the first case",
            proof: edit(max(), &format!("{MAX_CASES}.case1.premise"), |p| {
                if let Proof::AndI(l, r) = p {
                    std::mem::swap(l, r);
                }
            }),
            expected: RuleMismatch,
        },
        Mutant {
            name: "max: or-e case labels swapped",
            proof: edit(max(), MAX_CASES, |p| {
                if let Proof::OrE {
                    left_label,
                    right_label,
                    ..
                } = p
                {
                    std::mem::swap(left_label, right_label);
                }
            }),
            expected: EigenvariableViolation,
        },
        Mutant {
            name: "max: one label on two different assumptions",
            proof: edit(max(), &format!("{MAX_CASES}.case1.premise.left"), |p| {
                *p = Proof::assume("ge12", f("x1 >= x1"));
            }),
            expected: LabelClash,
        },
        Mutant {
            name: "lemma: step eigenvariable free in an extra open assumption",
            proof: edit(
                lemma(),
                &format!("{LEMMA_ZERO_CASE}.premise.premise"),
                |p| {
                    *p = Proof::assume("extra", f("n + 1 >= 0"));
                },
            ),
            expected: EigenvariableViolation,
        },
        Mutant {
            name: "lemma: equality rule with the wrong motive",
            proof: edit(lemma(), LEMMA_ZERO_CASE, |p| {
                if let Proof::EqRule { motive, .. } = p {
                    *motive = f(r"n + 1 >= h \/ h >= n + 1");
                }
            }),
            expected: RuleMismatch,
        },
        Mutant {
            name: "lemma: induction base proves the case 1",
            proof: edit(lemma(), "base", |p| {
                *p = Proof::forall_i(
                    "x2",
                    Proof::or_ir(f("1 >= x2"), Proof::axiom(AxiomKind::GeqZero, [t("x2")])),
                );
            }),
            expected: RuleMismatch,
        },
        Mutant {
            name: "lemma: imp-e antecedent does not match the implication",
            proof: edit(
                lemma(),
                &format!("{LEMMA_PRED_COMPARE}.case1.premise.imp"),
                |p| {
                    *p = Proof::axiom(AxiomKind::GeqSuccMono, [t("y"), t("n")]);
                },
            ),
            expected: RuleMismatch,
        },
        Mutant {
            name: "lemma: exists-e eigenvariable free in an open assumption",
            proof: edit(
                lemma(),
                &format!("{LEMMA_PRED_COMPARE}.case1.premise.imp"),
                |p| {
                    *p = Proof::assume("mono", f("n >= y -> n + 1 >= y + 1"));
                },
            ),
            expected: EigenvariableViolation,
        },
        Mutant {
            name: "lemma: exists-e discharges the wrong label",
            proof: edit(lemma(), LEMMA_SUCC_CASE, |p| {
                if let Proof::ExistsE { label, .. } = p {
                    *label = "zero".into();
                }
            }),
            expected: EigenvariableViolation,
        },
        Mutant {
            name: "lemma: monotonicity axiom with one term",
            proof: edit(
                lemma(),
                &format!("{LEMMA_PRED_COMPARE}.case2.premise.imp"),
                |p| {
                    *p = Proof::axiom(AxiomKind::GeqSuccMono, [t("y")]);
                },
            ),
            expected: BadAxiomInstance,
        },
    ]
}
