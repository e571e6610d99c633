//! Extraction of computational content from checked proofs.
//!
//! | rule | extracted term |
//! |------|----------------|
//! | assumption `[A]` labeled `l` | `h_l` |
//! | ∧i | `(E p1, E p2)` |
//! | ∨i left / right | `(0, E p)` / `(1, E p)` |
//! | ∨e | `ite (left E p1) (E p2[h_a := right E p1]) (E p3[h_b := right E p1])` |
//! | →e | `E p2 (E p1)` |
//! | ∀i on `x` | `\x. E p` |
//! | ∀e at `t` | `E p t` |
//! | ∃i with witness `t` | `(t, E p)` |
//! | ∃e with eigenvariable `y` | `E p2[y := left E p1][h_b := right E p1]` |
//! | induction | `\u. R (E base) (\n. \h_ih. E step) u` |
//! | equality rule | `E p2` |
//!
//! Proofs of `t = t`, `t >= t` and `t >= 0` carry `ε`, monotonicity carries
//! `\x. ε`, and `t = 0 \/ exists y. t = y + 1` carries
//! `(isZero t, ite (isZero t) ε (t -. 1, ε))`.

use std::collections::{BTreeMap, BTreeSet};

use crate::kernel::{AxiomKind, CheckedProof, Proof};
use crate::logic::ArithTerm;
use crate::term::{substitute, Term};

/// Term variable standing for the content of the assumption `label`.
pub fn assumption_var(label: &str) -> String {
    format!("h_{label}")
}

pub fn embed_arith(t: &ArithTerm) -> Term {
    match t {
        ArithTerm::Var(x) => Term::var(x),
        ArithTerm::Zero => Term::zero(),
        ArithTerm::One => Term::one(),
        ArithTerm::Plus(l, r) => Term::plus(embed_arith(l), embed_arith(r)),
    }
}

/// Computational content of an axiom instance. Panics on an arity mismatch,
/// which `check` already rules out.
pub fn extract_axiom(schema: AxiomKind, terms: &[ArithTerm]) -> Term {
    assert_eq!(
        terms.len(),
        schema.arity(),
        "{schema} instantiated with wrong arity"
    );
    match schema {
        AxiomKind::Refl | AxiomKind::GeqRefl | AxiomKind::GeqZero => Term::eps(),
        AxiomKind::GeqSuccMono => Term::lam("x", Term::eps()),
        AxiomKind::ZeroOrSucc => {
            let t = embed_arith(&terms[0]);
            Term::pair(
                Term::is_zero(t.clone()),
                Term::ite(
                    Term::is_zero(t.clone()),
                    Term::eps(),
                    Term::pair(Term::cut_minus(t, Term::one()), Term::eps()),
                ),
            )
        }
    }
}

/// Naming state threaded through one extraction.
#[derive(Debug, Clone)]
pub struct ExtractionContext {
    assumption_vars: BTreeMap<String, String>,
    taken: BTreeSet<String>,
    next_fresh: usize,
}

impl ExtractionContext {
    pub fn for_proof(p: &Proof) -> Self {
        let names = p.names();
        let assumption_vars: BTreeMap<String, String> = labels(p)
            .into_iter()
            .map(|l| {
                let v = assumption_var(&l);
                (l, v)
            })
            .collect();
        let mut taken = names;
        taken.extend(assumption_vars.values().cloned());
        ExtractionContext {
            assumption_vars,
            taken,
            next_fresh: 0,
        }
    }

    pub fn var_for(&self, label: &str) -> String {
        self.assumption_vars
            .get(label)
            .cloned()
            .unwrap_or_else(|| assumption_var(label))
    }

    /// `u`, `u1`, `u2`, ... skipping anything used by the proof.
    pub fn fresh(&mut self) -> String {
        loop {
            let cand = match self.next_fresh {
                0 => "u".to_string(),
                k => format!("u{k}"),
            };
            self.next_fresh += 1;
            if self.taken.insert(cand.clone()) {
                return cand;
            }
        }
    }
}

fn labels(p: &Proof) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for (_, node) in p.nodes() {
        match node {
            Proof::Assume { label, .. } | Proof::ExistsE { label, .. } => {
                out.insert(label.clone());
            }
            Proof::OrE {
                left_label,
                right_label,
                ..
            } => {
                out.insert(left_label.clone());
                out.insert(right_label.clone());
            }
            Proof::Ind { hyp_label, .. } => {
                out.insert(hyp_label.clone());
            }
            _ => {}
        }
    }
    out
}

/// The realizer of a checked proof.
pub fn extract(cp: &CheckedProof) -> Term {
    let mut ctx = ExtractionContext::for_proof(cp.proof());
    extract_with(cp.proof(), &mut ctx)
}

pub fn extract_with(p: &Proof, ctx: &mut ExtractionContext) -> Term {
    match p {
        Proof::Axiom { schema, terms } => extract_axiom(*schema, terms),
        Proof::Assume { label, .. } => Term::var(ctx.var_for(label)),
        Proof::AndI(l, r) => Term::pair(extract_with(l, ctx), extract_with(r, ctx)),
        Proof::OrIL { premise, .. } => Term::pair(Term::zero(), extract_with(premise, ctx)),
        Proof::OrIR { premise, .. } => Term::pair(Term::one(), extract_with(premise, ctx)),
        Proof::OrE {
            disj,
            left_label,
            left_case,
            right_label,
            right_case,
        } => {
            let d = extract_with(disj, ctx);
            let content = Term::right(d.clone());
            let c1 = extract_with(left_case, ctx);
            let c2 = extract_with(right_case, ctx);
            Term::ite(
                Term::left(d),
                substitute(&c1, &ctx.var_for(left_label), &content),
                substitute(&c2, &ctx.var_for(right_label), &content),
            )
        }
        Proof::ImpE { ant, imp } => {
            let a = extract_with(ant, ctx);
            Term::app(extract_with(imp, ctx), a)
        }
        Proof::ForallI { eigen, premise } => Term::lam(eigen.clone(), extract_with(premise, ctx)),
        Proof::ForallE { premise, witness } => {
            Term::app(extract_with(premise, ctx), embed_arith(witness))
        }
        Proof::ExistsI {
            witness, premise, ..
        } => Term::pair(embed_arith(witness), extract_with(premise, ctx)),
        Proof::ExistsE {
            ex,
            eigen,
            label,
            body,
        } => {
            let e = extract_with(ex, ctx);
            let b = extract_with(body, ctx);
            let b = substitute(&b, eigen, &Term::left(e.clone()));
            substitute(&b, &ctx.var_for(label), &Term::right(e))
        }
        Proof::Ind {
            base,
            hyp_label,
            step_eigen,
            step,
            ..
        } => {
            let u = ctx.fresh();
            let b = extract_with(base, ctx);
            let s = extract_with(step, ctx);
            let step_fn = Term::lam(step_eigen.clone(), Term::lam(ctx.var_for(hyp_label), s));
            Term::lam(u.clone(), Term::rec(b, step_fn, Term::var(u)))
        }
        Proof::EqRule { premise, .. } => extract_with(premise, ctx),
    }
}
