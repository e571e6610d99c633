//! Normal-order reduction.
//!
//! `step` contracts the leftmost-outermost redex. Besides β, the constant
//! rules are:
//!
//! ```text
//! left (s, t)          -> s
//! right (s, t)         -> t
//! isZero 0             -> 0
//! isZero (t + 1)       -> 1
//! ite 0 t s            -> t
//! ite 1 t s            -> s
//! R b s 0              -> b
//! R b s (t + 1)        -> s t (R b s t)
//! t -. s               -> numeral(a - b)   (t, s closed, denoting a > b)
//! t -. s               -> 0                (t, s closed, denoting a <= b)
//! ```
//!
//! When the scrutinee of `isZero`, `ite` or `R` is a closed arithmetical term
//! not of the shape the rules need (e.g. `1` or `1 + (1 + 1)`), one step is
//! spent rewriting it to its canonical numeral.
//!
//! `normalize` evaluates lazily with sharing: an argument duplicated by β is
//! reduced once and every copy sees the result. Without sharing, realizers
//! that pass a predecessor computation down a recursion re-evaluate it at
//! every level and take exponentially many steps. `normalize_unshared`
//! iterates `step` literally; both reach the same normal form whenever both
//! finish.

use thiserror::Error;

use crate::term::{
    denote_arithmetical, is_canonical_numeral, numeral, substitute, ConstKind, Term,
};

mod lazy;

/// Default step budget for normalization.
pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("fuel exhausted after {steps} reduction steps")]
pub struct FuelExhausted {
    /// The partially reduced term, unless it was too large to materialize.
    pub partial: Option<Term>,
    pub steps: u64,
}

/// A normal form together with the number of steps taken to reach it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub term: Term,
    pub steps: u64,
}

enum Scrutinee<'a> {
    Zero,
    Succ(&'a Term),
    Canonicalize(Term),
}

fn scrutinee(t: &Term) -> Option<Scrutinee<'_>> {
    if *t == Term::zero() {
        return Some(Scrutinee::Zero);
    }
    if let Some((pred, Term::Const(ConstKind::One))) = t.as_binary(ConstKind::Plus) {
        return Some(Scrutinee::Succ(pred));
    }
    denote_arithmetical(t).map(|n| Scrutinee::Canonicalize(numeral(n)))
}

/// Contracts `t` itself if it is a redex.
fn contract(t: &Term) -> Option<Term> {
    let Term::App(fun, arg) = t else {
        return None;
    };
    if let Term::Lam(x, body) = &**fun {
        return Some(substitute(body, x, arg));
    }
    let (head, args) = t.spine();
    let Term::Const(c) = head else {
        return None;
    };
    match (c, args.as_slice()) {
        (ConstKind::Left, [p]) => p.as_pair().map(|(l, _)| l.clone()),
        (ConstKind::Right, [p]) => p.as_pair().map(|(_, r)| r.clone()),
        (ConstKind::IsZero, [n]) => Some(match scrutinee(n)? {
            Scrutinee::Zero => Term::zero(),
            Scrutinee::Succ(_) => Term::one(),
            Scrutinee::Canonicalize(n) => Term::is_zero(n),
        }),
        (ConstKind::IfThenElse, [cond, then, other]) => {
            if **cond == Term::zero() {
                return Some((*then).clone());
            }
            if **cond == Term::one() || **cond == numeral(1) {
                return Some((*other).clone());
            }
            match denote_arithmetical(cond) {
                Some(n @ (0 | 1)) if !is_canonical_numeral(cond) => {
                    Some(Term::ite(numeral(n), (*then).clone(), (*other).clone()))
                }
                _ => None,
            }
        }
        (ConstKind::R, [base, step, n]) => Some(match scrutinee(n)? {
            Scrutinee::Zero => (*base).clone(),
            Scrutinee::Succ(pred) => Term::apps(
                (*step).clone(),
                [
                    pred.clone(),
                    Term::rec((*base).clone(), (*step).clone(), pred.clone()),
                ],
            ),
            Scrutinee::Canonicalize(n) => Term::rec((*base).clone(), (*step).clone(), n),
        }),
        (ConstKind::CutMinus, [a, b]) => {
            let (a, b) = (denote_arithmetical(a)?, denote_arithmetical(b)?);
            Some(numeral(a.saturating_sub(b)))
        }
        _ => None,
    }
}

/// One leftmost-outermost reduction step, or `None` if `t` is normal.
pub fn step(t: &Term) -> Option<Term> {
    if let Some(r) = contract(t) {
        return Some(r);
    }
    match t {
        Term::App(f, a) => {
            if let Some(f2) = step(f) {
                return Some(Term::app(f2, (**a).clone()));
            }
            step(a).map(|a2| Term::app((**f).clone(), a2))
        }
        Term::Lam(x, body) => step(body).map(|b| Term::lam(x.clone(), b)),
        Term::Var(_) | Term::Const(_) => None,
    }
}

pub fn is_normal(t: &Term) -> bool {
    step(t).is_none()
}

/// Stack size for evaluation threads; deep recursions in realizers nest
/// thunk forcing proportionally.
const EVAL_STACK: usize = 256 << 20;

/// Reduces `t` to normal form lazily, spending at most `fuel` steps. Each
/// contracted redex counts once, however many copies of it are shared.
pub fn normalize(t: &Term, fuel: u64) -> Result<Normalized, FuelExhausted> {
    std::thread::scope(|scope| {
        let worker = std::thread::Builder::new()
            .stack_size(EVAL_STACK)
            .spawn_scoped(scope, || {
                let mut machine = lazy::Machine::new(fuel);
                let result = machine.normalize(t);
                let steps = machine.steps;
                match result {
                    Ok(term) => Ok(Normalized { term, steps }),
                    Err(partial) => Err(FuelExhausted { partial, steps }),
                }
            })
            .expect("spawn evaluation thread");
        worker
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

/// Reduces `t` by iterating `step`, without sharing.
pub fn normalize_unshared(t: &Term, fuel: u64) -> Result<Normalized, FuelExhausted> {
    let mut cur = t.clone();
    let mut steps = 0;
    while let Some(next) = step(&cur) {
        if steps == fuel {
            return Err(FuelExhausted {
                partial: Some(cur),
                steps,
            });
        }
        cur = next;
        steps += 1;
    }
    Ok(Normalized { term: cur, steps })
}

/// Number of steps `normalize` takes on `t`.
pub fn step_count(t: &Term, fuel: u64) -> Result<u64, FuelExhausted> {
    normalize(t, fuel).map(|n| n.steps)
}
