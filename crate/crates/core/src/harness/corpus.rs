//! The built-in proofs: the comparison lemma and the maximum function.

use crate::kernel::{AxiomKind, Proof};
use crate::logic::{parse_arith, parse_formula, ArithTerm, Formula};

fn f(src: &str) -> Formula {
    parse_formula(src).unwrap_or_else(|e| panic!("built-in formula `{src}`: {e}"))
}

fn t(src: &str) -> ArithTerm {
    parse_arith(src).unwrap_or_else(|e| panic!("built-in term `{src}`: {e}"))
}

/// `forall x2. x1 >= x2 \/ x2 >= x1`, the induction motive of the lemma.
pub fn comparison_motive() -> Formula {
    f(r"forall x2. x1 >= x2 \/ x2 >= x1")
}

/// `forall x1. forall x2. x1 >= x2 \/ x2 >= x1`.
pub fn lemma_statement() -> Formula {
    Formula::forall("x1", comparison_motive())
}

/// The body of the maximum statement, with `y` free.
pub fn max_body() -> Formula {
    f(r"y >= x1 /\ y >= x2 /\ (y = x1 \/ y = x2)")
}

/// `forall x1. forall x2. exists y. ...`.
pub fn max_statement() -> Formula {
    Formula::forall(
        "x1",
        Formula::forall("x2", Formula::exists("y", max_body())),
    )
}

/// Proof of the comparison lemma by induction on `x1`.
///
/// In the step, `x2` is split into zero or a successor `y + 1`; the latter
/// case uses the hypothesis at `y` and lifts it with successor monotonicity.
pub fn build_lemma_proof() -> Proof {
    let base = Proof::forall_i(
        "x2",
        Proof::or_ir(f("0 >= x2"), Proof::axiom(AxiomKind::GeqZero, [t("x2")])),
    );

    let ih_at_y = Proof::forall_e(
        Proof::assume("ih", f(r"forall x2. n >= x2 \/ x2 >= n")),
        t("y"),
    );
    let compare_pred = Proof::or_e(
        ih_at_y,
        "nge",
        Proof::or_il(
            f("y + 1 >= n + 1"),
            Proof::imp_e(
                Proof::assume("nge", f("n >= y")),
                Proof::axiom(AxiomKind::GeqSuccMono, [t("n"), t("y")]),
            ),
        ),
        "yge",
        Proof::or_ir(
            f("n + 1 >= y + 1"),
            Proof::imp_e(
                Proof::assume("yge", f("y >= n")),
                Proof::axiom(AxiomKind::GeqSuccMono, [t("y"), t("n")]),
            ),
        ),
    );

    let zero_case = Proof::eq_rule(
        "h",
        f(r"n + 1 >= h \/ x2 >= n + 1"),
        t("x2"),
        t("0"),
        Proof::assume("zero", f("x2 = 0")),
        Proof::or_il(
            f("x2 >= n + 1"),
            Proof::axiom(AxiomKind::GeqZero, [t("n + 1")]),
        ),
    );
    let succ_case = Proof::exists_e(
        Proof::assume("succ", f("exists y. x2 = y + 1")),
        "y",
        "pred",
        Proof::eq_rule(
            "h",
            f(r"n + 1 >= h \/ h >= n + 1"),
            t("x2"),
            t("y + 1"),
            Proof::assume("pred", f("x2 = y + 1")),
            compare_pred,
        ),
    );

    let step = Proof::forall_i(
        "x2",
        Proof::or_e(
            Proof::axiom(AxiomKind::ZeroOrSucc, [t("x2")]),
            "zero",
            zero_case,
            "succ",
            succ_case,
        ),
    );
    Proof::ind("x1", comparison_motive(), base, "ih", "n", step)
}

/// Proof that every two numbers have a maximum, with the comparison lemma
/// inlined.
pub fn build_max_proof() -> Proof {
    let compare = Proof::forall_e(Proof::forall_e(build_lemma_proof(), t("x1")), t("x2"));
    let body = max_body();
    let first_wins = Proof::exists_i(
        "y",
        body.clone(),
        t("x1"),
        Proof::and_i(
            Proof::axiom(AxiomKind::GeqRefl, [t("x1")]),
            Proof::and_i(
                Proof::assume("ge12", f("x1 >= x2")),
                Proof::or_il(f("x1 = x2"), Proof::axiom(AxiomKind::Refl, [t("x1")])),
            ),
        ),
    );
    let second_wins = Proof::exists_i(
        "y",
        body,
        t("x2"),
        Proof::and_i(
            Proof::assume("ge21", f("x2 >= x1")),
            Proof::and_i(
                Proof::axiom(AxiomKind::GeqRefl, [t("x2")]),
                Proof::or_ir(f("x2 = x1"), Proof::axiom(AxiomKind::Refl, [t("x2")])),
            ),
        ),
    );
    Proof::forall_i(
        "x1",
        Proof::forall_i(
            "x2",
            Proof::or_e(compare, "ge12", first_wins, "ge21", second_wins),
        ),
    )
}

/// Hand-written realizer of the maximum proof with the lemma's realizer left
/// as the free variable `f`.
pub const DISPLAYED_MAX_TERM: &str = r"\x1. \x2. ite (left (f x1 x2)) (x1, (eps, (right (f x1 x2), (0, eps)))) (x2, (right (f x1 x2), (eps, (1, eps))))";

/// Hand-simplified realizer of the comparison lemma.
pub const DISPLAYED_LEMMA_TERM: &str = r"\u. R (\x2. (1, eps)) (\n. \Z. \x2. ite (isZero x2) (0, eps) (ite (left (Z (x2 -. 1))) (0, eps) (1, eps))) u";
