//! First-order formulas over the signature {0, 1, +, =, >=} and their
//! semantics over the naturals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{prime_until, Cursor, ParseError, Tok};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArithTerm {
    Var(String),
    Zero,
    One,
    Plus(Box<ArithTerm>, Box<ArithTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(ArithTerm, ArithTerm),
    Geq(ArithTerm, ArithTerm),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("formula is not quantifier-free")]
    NotQuantifierFree,
}

/// Assignment of naturals to variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Env(BTreeMap<String, u64>);

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn get(&self, name: &str) -> Option<u64> {
        self.0.get(name).copied()
    }

    pub fn set(&mut self, name: impl Into<String>, value: u64) {
        self.0.insert(name.into(), value);
    }

    pub fn with(mut self, name: impl Into<String>, value: u64) -> Self {
        self.set(name, value);
        self
    }
}

impl<S: Into<String>, I: IntoIterator<Item = (S, u64)>> From<I> for Env {
    fn from(pairs: I) -> Self {
        Env(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

impl ArithTerm {
    pub fn var(name: impl Into<String>) -> Self {
        ArithTerm::Var(name.into())
    }

    pub fn plus(l: ArithTerm, r: ArithTerm) -> Self {
        ArithTerm::Plus(Box::new(l), Box::new(r))
    }

    /// `self + 1`.
    pub fn succ(self) -> Self {
        ArithTerm::plus(self, ArithTerm::One)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            ArithTerm::Var(x) => {
                out.insert(x.clone());
            }
            ArithTerm::Zero | ArithTerm::One => {}
            ArithTerm::Plus(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn mentions(&self, x: &str) -> bool {
        match self {
            ArithTerm::Var(y) => x == y,
            ArithTerm::Zero | ArithTerm::One => false,
            ArithTerm::Plus(l, r) => l.mentions(x) || r.mentions(x),
        }
    }

    pub fn subst(&self, x: &str, t: &ArithTerm) -> ArithTerm {
        match self {
            ArithTerm::Var(y) if y == x => t.clone(),
            ArithTerm::Var(_) | ArithTerm::Zero | ArithTerm::One => self.clone(),
            ArithTerm::Plus(l, r) => ArithTerm::plus(l.subst(x, t), r.subst(x, t)),
        }
    }
}

pub fn eval_arith(t: &ArithTerm, env: &Env) -> Result<u64, EvalError> {
    match t {
        ArithTerm::Var(x) => env
            .get(x)
            .ok_or_else(|| EvalError::UnboundVariable(x.clone())),
        ArithTerm::Zero => Ok(0),
        ArithTerm::One => Ok(1),
        ArithTerm::Plus(l, r) => Ok(eval_arith(l, env)? + eval_arith(r, env)?),
    }
}

impl Formula {
    pub fn eq(l: ArithTerm, r: ArithTerm) -> Self {
        Formula::Eq(l, r)
    }

    pub fn geq(l: ArithTerm, r: ArithTerm) -> Self {
        Formula::Geq(l, r)
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn forall(x: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(x.into(), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(x.into(), Box::new(body))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Geq(..) => true,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.is_quantifier_free() && r.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(l, r) | Formula::Geq(l, r) => {
                for x in l.free_vars().into_iter().chain(r.free_vars()) {
                    if !bound.contains(&x.as_str()) {
                        out.insert(x);
                    }
                }
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                bound.push(x);
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Formula::Eq(l, r) | Formula::Geq(l, r) => l.mentions(x) || r.mentions(x),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.has_free(x) || r.has_free(x)
            }
            Formula::Forall(y, b) | Formula::Exists(y, b) => y != x && b.has_free(x),
        }
    }

    /// Every identifier occurring in the formula, bound or free.
    pub fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(l, r) | Formula::Geq(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.all_names(out);
                r.all_names(out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                out.insert(x.clone());
                b.all_names(out);
            }
        }
    }

    /// Capture-avoiding substitution `self[x := t]`.
    pub fn subst(&self, x: &str, t: &ArithTerm) -> Formula {
        let fv_t = t.free_vars();
        self.subst_with(x, t, &fv_t)
    }

    fn subst_with(&self, x: &str, t: &ArithTerm, fv_t: &BTreeSet<String>) -> Formula {
        match self {
            Formula::Eq(l, r) => Formula::Eq(l.subst(x, t), r.subst(x, t)),
            Formula::Geq(l, r) => Formula::Geq(l.subst(x, t), r.subst(x, t)),
            Formula::And(l, r) => Formula::and(l.subst_with(x, t, fv_t), r.subst_with(x, t, fv_t)),
            Formula::Or(l, r) => Formula::or(l.subst_with(x, t, fv_t), r.subst_with(x, t, fv_t)),
            Formula::Imp(l, r) => Formula::imp(l.subst_with(x, t, fv_t), r.subst_with(x, t, fv_t)),
            Formula::Forall(y, b) | Formula::Exists(y, b) => {
                if y == x || !b.has_free(x) {
                    return self.clone();
                }
                let (y, b) = if fv_t.contains(y) {
                    let fresh = prime_until(y, |c| c == x || fv_t.contains(c) || b.has_free(c));
                    let renamed = b.subst(y, &ArithTerm::var(&fresh));
                    (fresh, renamed)
                } else {
                    (y.clone(), (**b).clone())
                };
                let body = b.subst_with(x, t, fv_t);
                match self {
                    Formula::Forall(..) => Formula::forall(y, body),
                    _ => Formula::exists(y, body),
                }
            }
        }
    }

    /// α-equivalence of formulas.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn term_eq(a: &ArithTerm, b: &ArithTerm, env: &[(&str, &str)]) -> bool {
            match (a, b) {
                (ArithTerm::Var(x), ArithTerm::Var(y)) => {
                    let lx = env.iter().rposition(|(l, _)| l == x);
                    let ry = env.iter().rposition(|(_, r)| r == y);
                    match (lx, ry) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (ArithTerm::Zero, ArithTerm::Zero) | (ArithTerm::One, ArithTerm::One) => true,
                (ArithTerm::Plus(a1, a2), ArithTerm::Plus(b1, b2)) => {
                    term_eq(a1, b1, env) && term_eq(a2, b2, env)
                }
                _ => false,
            }
        }
        fn go<'a>(f: &'a Formula, g: &'a Formula, env: &mut Vec<(&'a str, &'a str)>) -> bool {
            match (f, g) {
                (Formula::Eq(a, b), Formula::Eq(c, d))
                | (Formula::Geq(a, b), Formula::Geq(c, d)) => {
                    term_eq(a, c, env) && term_eq(b, d, env)
                }
                (Formula::And(a, b), Formula::And(c, d))
                | (Formula::Or(a, b), Formula::Or(c, d))
                | (Formula::Imp(a, b), Formula::Imp(c, d)) => go(a, c, env) && go(b, d, env),
                (Formula::Forall(x, a), Formula::Forall(y, b))
                | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
                    env.push((x, y));
                    let eq = go(a, b, env);
                    env.pop();
                    eq
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }
}

pub fn formula_subst(f: &Formula, x: &str, t: &ArithTerm) -> Formula {
    f.subst(x, t)
}

/// Truth of a quantifier-free formula; implication is material.
pub fn eval_qf(f: &Formula, env: &Env) -> Result<bool, EvalError> {
    match f {
        Formula::Eq(l, r) => Ok(eval_arith(l, env)? == eval_arith(r, env)?),
        Formula::Geq(l, r) => Ok(eval_arith(l, env)? >= eval_arith(r, env)?),
        Formula::And(l, r) => {
            let (a, b) = (eval_qf(l, env)?, eval_qf(r, env)?);
            Ok(a && b)
        }
        Formula::Or(l, r) => {
            let (a, b) = (eval_qf(l, env)?, eval_qf(r, env)?);
            Ok(a || b)
        }
        Formula::Imp(l, r) => {
            let (a, b) = (eval_qf(l, env)?, eval_qf(r, env)?);
            Ok(!a || b)
        }
        Formula::Forall(..) | Formula::Exists(..) => Err(EvalError::NotQuantifierFree),
    }
}

/// Truth with both quantifiers ranging over `0..=bound`.
///
/// A `false` for a `∀` is a genuine counterexample over ℕ and a `true` for an
/// `∃` is a genuine witness; the other two answers only hold up to `bound`.
pub fn eval_bounded(f: &Formula, env: &Env, bound: u64) -> Result<bool, EvalError> {
    match f {
        Formula::Eq(..) | Formula::Geq(..) => eval_qf(f, env),
        Formula::And(l, r) => {
            let (a, b) = (eval_bounded(l, env, bound)?, eval_bounded(r, env, bound)?);
            Ok(a && b)
        }
        Formula::Or(l, r) => {
            let (a, b) = (eval_bounded(l, env, bound)?, eval_bounded(r, env, bound)?);
            Ok(a || b)
        }
        Formula::Imp(l, r) => {
            let (a, b) = (eval_bounded(l, env, bound)?, eval_bounded(r, env, bound)?);
            Ok(!a || b)
        }
        Formula::Forall(x, body) => {
            let mut env = env.clone();
            for v in 0..=bound {
                env.set(x.clone(), v);
                if !eval_bounded(body, &env, bound)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Exists(x, body) => {
            let mut env = env.clone();
            for v in 0..=bound {
                env.set(x.clone(), v);
                if eval_bounded(body, &env, bound)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

fn write_arith(t: &ArithTerm, right_operand: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        ArithTerm::Var(x) => f.write_str(x),
        ArithTerm::Zero => f.write_str("0"),
        ArithTerm::One => f.write_str("1"),
        ArithTerm::Plus(l, r) => {
            if right_operand {
                f.write_str("(")?;
            }
            write_arith(l, false, f)?;
            f.write_str(" + ")?;
            write_arith(r, true, f)?;
            if right_operand {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for ArithTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_arith(self, false, f)
    }
}

// Binding strength: -> < \/ < /\ < atoms. Quantifiers extend to the right.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => 0,
        Formula::Imp(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Eq(..) | Formula::Geq(..) => 4,
    }
}

fn write_formula(g: &Formula, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let paren = level(g) < min;
    if paren {
        f.write_str("(")?;
    }
    match g {
        Formula::Eq(l, r) => write!(f, "{l} = {r}")?,
        Formula::Geq(l, r) => write!(f, "{l} >= {r}")?,
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            let (op, lvl) = match g {
                Formula::And(..) => ("/\\", 3),
                Formula::Or(..) => ("\\/", 2),
                _ => ("->", 1),
            };
            // Right-associative. Quantified operands are always parenthesized.
            write_formula(l, lvl + 1, f)?;
            write!(f, " {op} ")?;
            write_formula(r, lvl.max(1), f)?;
        }
        Formula::Forall(x, b) => {
            write!(f, "forall {x}. ")?;
            write_formula(b, 0, f)?;
        }
        Formula::Exists(x, b) => {
            write!(f, "exists {x}. ")?;
            write_formula(b, 0, f)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, 0, f)
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut cur = Cursor::new(src)?;
    let f = formula(&mut cur)?;
    cur.finish()?;
    Ok(f)
}

pub fn parse_arith(src: &str) -> Result<ArithTerm, ParseError> {
    let mut cur = Cursor::new(src)?;
    let t = arith(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl FromStr for ArithTerm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_arith(s)
    }
}

fn formula(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let quant = if cur.is_keyword("forall") || cur.peek() == Some(&Tok::Forall) {
        Some(true)
    } else if cur.is_keyword("exists") || cur.peek() == Some(&Tok::Exists) {
        Some(false)
    } else {
        None
    };
    if let Some(universal) = quant {
        cur.bump();
        let mut binders = vec![cur.variable()?];
        while cur.eat(&Tok::Comma) {
            binders.push(cur.variable()?);
        }
        cur.expect(&Tok::Dot)?;
        let body = formula(cur)?;
        return Ok(binders.into_iter().rev().fold(body, |b, x| {
            if universal {
                Formula::forall(x, b)
            } else {
                Formula::exists(x, b)
            }
        }));
    }
    implication(cur)
}

fn implication(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let lhs = disjunction(cur)?;
    if cur.eat(&Tok::Arrow) {
        return Ok(Formula::imp(lhs, operand_or_quantifier(cur, implication)?));
    }
    Ok(lhs)
}

fn disjunction(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let lhs = conjunction(cur)?;
    if cur.eat(&Tok::Or) {
        return Ok(Formula::or(lhs, operand_or_quantifier(cur, disjunction)?));
    }
    Ok(lhs)
}

fn conjunction(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let lhs = primary(cur)?;
    if cur.eat(&Tok::And) {
        return Ok(Formula::and(lhs, operand_or_quantifier(cur, conjunction)?));
    }
    Ok(lhs)
}

/// Right operands may be an unparenthesized quantifier, which then extends
/// to the end of the enclosing formula.
fn operand_or_quantifier(
    cur: &mut Cursor,
    next: fn(&mut Cursor) -> Result<Formula, ParseError>,
) -> Result<Formula, ParseError> {
    if cur.is_keyword("forall")
        || cur.is_keyword("exists")
        || matches!(cur.peek(), Some(Tok::Forall | Tok::Exists))
    {
        formula(cur)
    } else {
        next(cur)
    }
}

fn primary(cur: &mut Cursor) -> Result<Formula, ParseError> {
    if cur.peek() == Some(&Tok::LParen) {
        // Either a parenthesized formula or an atom whose left term starts
        // with a parenthesis; try the atom first.
        let mark = cur.mark();
        if let Ok(a) = atom(cur) {
            return Ok(a);
        }
        cur.reset(mark);
        cur.bump();
        let f = formula(cur)?;
        cur.expect(&Tok::RParen)?;
        return Ok(f);
    }
    atom(cur)
}

fn atom(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let l = arith(cur)?;
    if cur.eat(&Tok::Eq) {
        Ok(Formula::Eq(l, arith(cur)?))
    } else if cur.eat(&Tok::Geq) {
        Ok(Formula::Geq(l, arith(cur)?))
    } else {
        Err(cur.unexpected("`=` or `>=`"))
    }
}

fn arith(cur: &mut Cursor) -> Result<ArithTerm, ParseError> {
    let mut lhs = arith_atom(cur)?;
    while cur.eat(&Tok::Plus) {
        lhs = ArithTerm::plus(lhs, arith_atom(cur)?);
    }
    Ok(lhs)
}

fn arith_atom(cur: &mut Cursor) -> Result<ArithTerm, ParseError> {
    match cur.peek() {
        Some(Tok::Zero) => {
            cur.bump();
            Ok(ArithTerm::Zero)
        }
        Some(Tok::One) => {
            cur.bump();
            Ok(ArithTerm::One)
        }
        Some(Tok::Ident(_)) => Ok(ArithTerm::Var(cur.variable()?)),
        Some(Tok::LParen) => {
            cur.bump();
            let t = arith(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(t)
        }
        _ => Err(cur.unexpected("an arithmetic term")),
    }
}
