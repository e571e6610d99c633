//! The untyped λ-calculus with arithmetic, pair and control constants.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::syntax::{prime_until, Cursor, ParseError, Tok};

/// Internal name of the variable standing for "no computational content".
/// It is printed and parsed as `eps`.
pub const EPS: &str = "ε";

/// The fixed set of constant symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstKind {
    Zero,
    One,
    Plus,
    CutMinus,
    Pair,
    Left,
    Right,
    IsZero,
    IfThenElse,
    R,
}

impl ConstKind {
    pub const ALL: [ConstKind; 10] = [
        ConstKind::Zero,
        ConstKind::One,
        ConstKind::Plus,
        ConstKind::CutMinus,
        ConstKind::Pair,
        ConstKind::Left,
        ConstKind::Right,
        ConstKind::IsZero,
        ConstKind::IfThenElse,
        ConstKind::R,
    ];

    /// Surface spelling when the constant appears unapplied.
    pub fn symbol(self) -> &'static str {
        match self {
            ConstKind::Zero => "0",
            ConstKind::One => "1",
            ConstKind::Plus => "(+)",
            ConstKind::CutMinus => "(-.)",
            ConstKind::Pair => "pair",
            ConstKind::Left => "left",
            ConstKind::Right => "right",
            ConstKind::IsZero => "isZero",
            ConstKind::IfThenElse => "ite",
            ConstKind::R => "R",
        }
    }

    fn from_keyword(word: &str) -> Option<ConstKind> {
        Some(match word {
            "pair" => ConstKind::Pair,
            "left" => ConstKind::Left,
            "right" => ConstKind::Right,
            "isZero" => ConstKind::IsZero,
            "ite" => ConstKind::IfThenElse,
            "R" => ConstKind::R,
            _ => return None,
        })
    }
}

/// A λ-term. The tree form is canonical; infix and pair notation exist only
/// in the textual syntax.
#[derive(Debug, Clone)]
pub enum Term {
    Var(String),
    Const(ConstKind),
    App(Box<Term>, Box<Term>),
    Lam(String, Box<Term>),
}

/// Structural equality, iterative so that deep numerals compare safely.
impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        let mut stack = vec![(self, other)];
        while let Some(pair) = stack.pop() {
            match pair {
                (Term::Var(a), Term::Var(b)) if a == b => {}
                (Term::Const(a), Term::Const(b)) if a == b => {}
                (Term::App(f, a), Term::App(g, b)) => {
                    stack.push((a, b));
                    stack.push((f, g));
                }
                (Term::Lam(x, s), Term::Lam(y, t)) if x == y => stack.push((s, t)),
                _ => return false,
            }
        }
        true
    }
}

impl Eq for Term {}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn eps() -> Term {
        Term::Var(EPS.to_string())
    }

    pub fn zero() -> Term {
        Term::Const(ConstKind::Zero)
    }

    pub fn one() -> Term {
        Term::Const(ConstKind::One)
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// Left-nested application of `head` to `args`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    /// Abstraction. Panics if `binder` is ε, which is never bound.
    pub fn lam(binder: impl Into<String>, body: Term) -> Term {
        let binder = binder.into();
        assert_ne!(binder, EPS, "ε cannot be used as a binder");
        Term::Lam(binder, Box::new(body))
    }

    pub fn plus(l: Term, r: Term) -> Term {
        Term::apps(Term::Const(ConstKind::Plus), [l, r])
    }

    pub fn cut_minus(l: Term, r: Term) -> Term {
        Term::apps(Term::Const(ConstKind::CutMinus), [l, r])
    }

    pub fn pair(l: Term, r: Term) -> Term {
        Term::apps(Term::Const(ConstKind::Pair), [l, r])
    }

    pub fn left(t: Term) -> Term {
        Term::app(Term::Const(ConstKind::Left), t)
    }

    pub fn right(t: Term) -> Term {
        Term::app(Term::Const(ConstKind::Right), t)
    }

    pub fn is_zero(t: Term) -> Term {
        Term::app(Term::Const(ConstKind::IsZero), t)
    }

    pub fn ite(cond: Term, then: Term, other: Term) -> Term {
        Term::apps(Term::Const(ConstKind::IfThenElse), [cond, then, other])
    }

    pub fn rec(base: Term, step: Term, n: Term) -> Term {
        Term::apps(Term::Const(ConstKind::R), [base, step, n])
    }

    pub fn is_eps(&self) -> bool {
        matches!(self, Term::Var(x) if x == EPS)
    }

    /// Splits an application spine into its head and its arguments.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut head = self;
        let mut args = Vec::new();
        while let Term::App(f, a) = head {
            args.push(&**a);
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// `Some((l, r))` if this is `c l r` for the binary constant `c`.
    pub fn as_binary(&self, c: ConstKind) -> Option<(&Term, &Term)> {
        match self {
            Term::App(f, r) => match &**f {
                Term::App(g, l) if **g == Term::Const(c) => Some((l, r)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Term, &Term)> {
        self.as_binary(ConstKind::Pair)
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            n += 1;
            match t {
                Term::App(f, a) => {
                    stack.push(f);
                    stack.push(a);
                }
                Term::Lam(_, b) => stack.push(b),
                _ => {}
            }
        }
        n
    }
}

/// Canonical numeral: `0`, and `numeral(n) + 1` for successors.
pub fn numeral(n: u64) -> Term {
    let mut t = Term::zero();
    for _ in 0..n {
        t = Term::plus(t, Term::one());
    }
    t
}

/// The number denoted by a variable-free term built only from 0, 1 and
/// fully applied `+`; `None` for anything else (or on overflow).
pub fn denote_arithmetical(t: &Term) -> Option<u64> {
    let mut total: u64 = 0;
    let mut stack = vec![t];
    while let Some(t) = stack.pop() {
        match t {
            Term::Const(ConstKind::Zero) => {}
            Term::Const(ConstKind::One) => total = total.checked_add(1)?,
            _ => {
                let (l, r) = t.as_binary(ConstKind::Plus)?;
                stack.push(r);
                stack.push(l);
            }
        }
    }
    Some(total)
}

/// Whether `t` is exactly `numeral(n)` for some n.
pub fn is_canonical_numeral(t: &Term) -> bool {
    let mut t = t;
    loop {
        match t {
            Term::Const(ConstKind::Zero) => return true,
            _ => match t.as_binary(ConstKind::Plus) {
                Some((pred, Term::Const(ConstKind::One))) => t = pred,
                _ => return false,
            },
        }
    }
}

pub fn free_vars(t: &Term) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_free(t, &mut Vec::new(), &mut out);
    out
}

fn collect_free<'a>(t: &'a Term, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(x) => {
            if !bound.contains(&x.as_str()) {
                out.insert(x.clone());
            }
        }
        Term::Const(_) => {}
        Term::App(f, a) => {
            collect_free(f, bound, out);
            collect_free(a, bound, out);
        }
        Term::Lam(x, b) => {
            bound.push(x);
            collect_free(b, bound, out);
            bound.pop();
        }
    }
}

pub fn occurs_free(t: &Term, x: &str) -> bool {
    match t {
        Term::Var(y) => y == x,
        Term::Const(_) => false,
        Term::App(f, a) => occurs_free(f, x) || occurs_free(a, x),
        Term::Lam(y, b) => y != x && occurs_free(b, x),
    }
}

/// Capture-avoiding substitution `t[x := s]`.
///
/// A binder of `t` that would capture a free variable of `s` is renamed by
/// appending primes. ε is never substituted for: `substitute(t, "ε", s)`
/// returns `t` unchanged.
pub fn substitute(t: &Term, x: &str, s: &Term) -> Term {
    if x == EPS {
        return t.clone();
    }
    let fv_s = free_vars(s);
    subst_with(t, x, s, &fv_s)
}

fn subst_with(t: &Term, x: &str, s: &Term, fv_s: &BTreeSet<String>) -> Term {
    match t {
        Term::Var(y) if y == x => s.clone(),
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::App(f, a) => Term::app(subst_with(f, x, s, fv_s), subst_with(a, x, s, fv_s)),
        Term::Lam(y, body) => {
            if y == x || !occurs_free(body, x) {
                return t.clone();
            }
            if fv_s.contains(y) {
                let fresh = prime_until(y, |cand| {
                    cand == x || fv_s.contains(cand) || occurs_free(body, cand)
                });
                let renamed = subst_with(
                    body,
                    y,
                    &Term::var(&fresh),
                    &BTreeSet::from([fresh.clone()]),
                );
                Term::lam(fresh, subst_with(&renamed, x, s, fv_s))
            } else {
                Term::lam(y.clone(), subst_with(body, x, s, fv_s))
            }
        }
    }
}

/// α-equivalence. Free variables (including ε) are compared by name.
pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    fn go<'a>(t: &'a Term, u: &'a Term, env: &mut Vec<(&'a str, &'a str)>) -> bool {
        match (t, u) {
            (Term::Var(x), Term::Var(y)) => {
                let lx = env.iter().rposition(|(l, _)| *l == x);
                let ry = env.iter().rposition(|(_, r)| *r == y);
                match (lx, ry) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (Term::Const(a), Term::Const(b)) => a == b,
            (Term::App(f, a), Term::App(g, b)) => go(f, g, env) && go(a, b, env),
            (Term::Lam(x, b), Term::Lam(y, c)) => {
                env.push((x, y));
                let eq = go(b, c, env);
                env.pop();
                eq
            }
            _ => false,
        }
    }
    go(t, u, &mut Vec::new())
}

// Printer precedence levels.
const TOP: u8 = 0;
const INFIX_LEFT: u8 = 1;
const APP: u8 = 2;
const ATOM: u8 = 3;

fn write_term(t: &Term, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let Some((l, r)) = t.as_pair() {
        f.write_str("(")?;
        write_term(l, TOP, f)?;
        f.write_str(", ")?;
        write_term(r, TOP, f)?;
        return f.write_str(")");
    }
    for (c, op) in [(ConstKind::Plus, "+"), (ConstKind::CutMinus, "-.")] {
        if let Some((l, r)) = t.as_binary(c) {
            if prec > INFIX_LEFT {
                f.write_str("(")?;
            }
            write_term(l, INFIX_LEFT, f)?;
            write!(f, " {op} ")?;
            write_term(r, APP, f)?;
            if prec > INFIX_LEFT {
                f.write_str(")")?;
            }
            return Ok(());
        }
    }
    match t {
        Term::Var(x) if x == EPS => f.write_str("eps"),
        Term::Var(x) => f.write_str(x),
        Term::Const(c) => f.write_str(c.symbol()),
        Term::App(fun, arg) => {
            if prec > APP {
                f.write_str("(")?;
            }
            write_term(fun, APP, f)?;
            f.write_str(" ")?;
            write_term(arg, ATOM, f)?;
            if prec > APP {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::Lam(x, body) => {
            if prec > TOP {
                f.write_str("(")?;
            }
            write!(f, "\\{x}. ")?;
            write_term(body, TOP, f)?;
            if prec > TOP {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, TOP, f)
    }
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

/// Parses the textual term syntax.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut cur = Cursor::new(src)?;
    let t = expr(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

fn starts_lambda(cur: &Cursor) -> bool {
    cur.peek() == Some(&Tok::Backslash) || cur.is_keyword("lam")
}

fn expr(cur: &mut Cursor) -> Result<Term, ParseError> {
    if starts_lambda(cur) {
        return lambda(cur);
    }
    let mut lhs = application(cur)?;
    loop {
        let op = match cur.peek() {
            Some(Tok::Plus) => ConstKind::Plus,
            Some(Tok::CutMinus) => ConstKind::CutMinus,
            _ => return Ok(lhs),
        };
        cur.bump();
        let rhs = application(cur)?;
        lhs = Term::apps(Term::Const(op), [lhs, rhs]);
    }
}

fn lambda(cur: &mut Cursor) -> Result<Term, ParseError> {
    cur.bump();
    let mut binders = vec![cur.variable()?];
    while cur.peek() != Some(&Tok::Dot) {
        cur.eat(&Tok::Comma);
        binders.push(cur.variable()?);
    }
    cur.expect(&Tok::Dot)?;
    let body = expr(cur)?;
    Ok(binders.into_iter().rev().fold(body, |b, x| Term::lam(x, b)))
}

fn starts_atom(cur: &Cursor) -> bool {
    matches!(
        cur.peek(),
        Some(Tok::Ident(_) | Tok::Zero | Tok::One | Tok::LParen | Tok::Backslash | Tok::Eps)
    )
}

fn application(cur: &mut Cursor) -> Result<Term, ParseError> {
    // A bare operator at the start of an operand is the constant itself.
    let mut head = match cur.peek() {
        Some(Tok::Plus) => {
            cur.bump();
            Term::Const(ConstKind::Plus)
        }
        Some(Tok::CutMinus) => {
            cur.bump();
            Term::Const(ConstKind::CutMinus)
        }
        _ => atom(cur)?,
    };
    while starts_atom(cur) {
        if starts_lambda(cur) {
            let arg = lambda(cur)?;
            return Ok(Term::app(head, arg));
        }
        head = Term::app(head, atom(cur)?);
    }
    Ok(head)
}

fn atom(cur: &mut Cursor) -> Result<Term, ParseError> {
    let pos = cur.pos();
    match cur.peek().cloned() {
        Some(Tok::Zero) => {
            cur.bump();
            Ok(Term::zero())
        }
        Some(Tok::One) => {
            cur.bump();
            Ok(Term::one())
        }
        Some(Tok::Eps) => {
            cur.bump();
            Ok(Term::eps())
        }
        Some(Tok::Ident(word)) => {
            if word == "eps" {
                cur.bump();
                Ok(Term::eps())
            } else if let Some(c) = ConstKind::from_keyword(&word) {
                cur.bump();
                Ok(Term::Const(c))
            } else if word == "lam" {
                lambda(cur)
            } else {
                Ok(Term::Var(cur.variable()?))
            }
        }
        Some(Tok::Backslash) => lambda(cur),
        Some(Tok::LParen) => {
            cur.bump();
            if matches!(cur.peek(), Some(Tok::Plus | Tok::CutMinus))
                && cur.peek_at(1) == Some(&Tok::RParen)
            {
                let c = if cur.bump() == Some(Tok::Plus) {
                    ConstKind::Plus
                } else {
                    ConstKind::CutMinus
                };
                cur.bump();
                return Ok(Term::Const(c));
            }
            let first = expr(cur)?;
            if cur.eat(&Tok::Comma) {
                let second = expr(cur)?;
                cur.expect(&Tok::RParen)?;
                Ok(Term::pair(first, second))
            } else {
                cur.expect(&Tok::RParen)?;
                Ok(first)
            }
        }
        _ => Err(ParseError::new(pos, cur.unexpected("a term").message)),
    }
}
