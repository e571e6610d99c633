//! S-expression proof scripts.
//!
//! ```text
//! (refl t) (geq-refl t) (geq-zero t) (zero-or-succ t) (geq-succ-mono t s)
//! (assume label F)  (and-i p q)  (or-i-l F p)  (or-i-r F p)
//! (or-e p (label q) (label r))  (imp-e p q)
//! (forall-i x p)  (forall-e p t)  (exists-i (x F) t p)  (exists-e p (y label q))
//! (ind (x F) base (n label step))  (eq-rule (h F) t s p q)
//! ```
//!
//! Formulas are double-quoted strings in the logic syntax. Terms are either
//! bare atoms (`x2`, `0`) or quoted strings (`"n + 1"`). `forall-i` takes
//! several binders and `forall-e` several witnesses; both desugar to nested
//! nodes. Commas are whitespace and `;` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::kernel::{AxiomKind, NodePath, Proof};
use crate::logic::{parse_arith, parse_formula, ArithTerm, Formula};
use crate::syntax::{is_variable_name, ParseError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    Str(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::Str(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos = Pos::new(self.pos.line + 1, 1);
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() || c == ',' {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Option<Sexp>, ParseError> {
        self.skip_trivia();
        let start = self.pos;
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            '(' => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        Some(')') => {
                            self.bump();
                            return Ok(Some(Sexp::List(items, start)));
                        }
                        Some(_) => items.extend(self.read()?),
                        None => return Err(ParseError::new(start, "unclosed `(`")),
                    }
                }
            }
            ')' => Err(ParseError::new(start, "unbalanced `)`")),
            '"' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => return Ok(Some(Sexp::Str(s, start))),
                        Some(c) => s.push(c),
                        None => return Err(ParseError::new(start, "unterminated string")),
                    }
                }
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '"' | ';' | ',') {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Some(Sexp::Atom(s, start)))
            }
        }
    }
}

/// Reads every top-level S-expression in `src`.
pub fn read_sexps(src: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut r = Reader {
        chars: src.chars().peekable(),
        pos: Pos::new(1, 1),
    };
    let mut out = Vec::new();
    while let Some(s) = r.read()? {
        out.push(s);
    }
    Ok(out)
}

/// A parsed script: the proof plus the source position of each node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub proof: Proof,
    pub spans: BTreeMap<NodePath, Pos>,
}

impl Script {
    pub fn span(&self, path: &NodePath) -> Option<Pos> {
        self.spans.get(path).copied()
    }
}

pub fn parse_script(src: &str) -> Result<Script, ParseError> {
    let sexps = read_sexps(src)?;
    let mut it = sexps.into_iter();
    let Some(first) = it.next() else {
        return Err(ParseError::new(
            Pos::new(1, 1),
            "empty script: expected one proof",
        ));
    };
    if let Some(extra) = it.next() {
        return Err(ParseError::new(
            extra.pos(),
            "a script contains exactly one proof",
        ));
    }
    let mut spans = BTreeMap::new();
    let proof = proof(&first, NodePath::root(), &mut spans)?;
    Ok(Script { proof, spans })
}

pub fn parse_proof(src: &str) -> Result<Proof, ParseError> {
    parse_script(src).map(|s| s.proof)
}

fn formula_arg(s: &Sexp) -> Result<Formula, ParseError> {
    match s {
        Sexp::Str(text, pos) => parse_formula(text).map_err(|e| e.shifted(content_start(*pos))),
        other => Err(ParseError::new(other.pos(), "expected a quoted formula")),
    }
}

fn term_arg(s: &Sexp) -> Result<ArithTerm, ParseError> {
    match s {
        Sexp::Str(text, pos) => parse_arith(text).map_err(|e| e.shifted(content_start(*pos))),
        Sexp::Atom(text, pos) => parse_arith(text).map_err(|e| e.shifted(*pos)),
        Sexp::List(_, pos) => Err(ParseError::new(*pos, "expected a term")),
    }
}

fn content_start(quote: Pos) -> Pos {
    Pos::new(quote.line, quote.col + 1)
}

fn name_arg(s: &Sexp) -> Result<String, ParseError> {
    match s {
        Sexp::Atom(name, _) if is_variable_name(name) => Ok(name.clone()),
        other => Err(ParseError::new(other.pos(), "expected a name")),
    }
}

fn list(s: &Sexp, what: &str) -> Result<(Vec<Sexp>, Pos), ParseError> {
    match s {
        Sexp::List(items, pos) => Ok((items.clone(), *pos)),
        other => Err(ParseError::new(other.pos(), format!("expected {what}"))),
    }
}

fn arity(items: &[Sexp], n: usize, head: &str, pos: Pos) -> Result<(), ParseError> {
    if items.len() == n + 1 {
        Ok(())
    } else {
        Err(ParseError::new(
            pos,
            format!("`{head}` takes {n} argument(s), got {}", items.len() - 1),
        ))
    }
}

/// `(name F)` binder-with-formula pair.
fn binder_formula(s: &Sexp) -> Result<(String, Formula), ParseError> {
    let (items, pos) = list(s, "`(name \"formula\")`")?;
    if items.len() != 2 {
        return Err(ParseError::new(pos, "expected `(name \"formula\")`"));
    }
    Ok((name_arg(&items[0])?, formula_arg(&items[1])?))
}

fn proof(
    s: &Sexp,
    path: NodePath,
    spans: &mut BTreeMap<NodePath, Pos>,
) -> Result<Proof, ParseError> {
    let (items, pos) = list(s, "a proof `( ... )`")?;
    let head = match items.first() {
        Some(Sexp::Atom(h, _)) => h.clone(),
        _ => return Err(ParseError::new(pos, "expected a rule name")),
    };
    spans.insert(path.clone(), pos);
    let sub = |seg: &'static str, s: &Sexp, spans: &mut BTreeMap<NodePath, Pos>| {
        proof(s, path.child(seg), spans)
    };

    if let Some(schema) = AxiomKind::from_keyword(&head) {
        let terms = items[1..]
            .iter()
            .map(term_arg)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Proof::Axiom { schema, terms });
    }
    match head.as_str() {
        "assume" => {
            arity(&items, 2, &head, pos)?;
            Ok(Proof::assume(name_arg(&items[1])?, formula_arg(&items[2])?))
        }
        "and-i" => {
            arity(&items, 2, &head, pos)?;
            let l = sub("left", &items[1], spans)?;
            let r = sub("right", &items[2], spans)?;
            Ok(Proof::and_i(l, r))
        }
        "or-i-l" | "or-i-r" => {
            arity(&items, 2, &head, pos)?;
            let other = formula_arg(&items[1])?;
            let p = sub("premise", &items[2], spans)?;
            Ok(if head == "or-i-l" {
                Proof::or_il(other, p)
            } else {
                Proof::or_ir(other, p)
            })
        }
        "or-e" => {
            arity(&items, 3, &head, pos)?;
            let disj = sub("disj", &items[1], spans)?;
            let case = |s: &Sexp, seg, spans: &mut BTreeMap<NodePath, Pos>| {
                let (c, cpos) = list(s, "`(label proof)`")?;
                if c.len() != 2 {
                    return Err(ParseError::new(cpos, "expected `(label proof)`"));
                }
                Ok((name_arg(&c[0])?, sub(seg, &c[1], spans)?))
            };
            let (l1, c1) = case(&items[2], "case1", spans)?;
            let (l2, c2) = case(&items[3], "case2", spans)?;
            Ok(Proof::or_e(disj, l1, c1, l2, c2))
        }
        "imp-e" => {
            arity(&items, 2, &head, pos)?;
            let ant = sub("ant", &items[1], spans)?;
            let imp = sub("imp", &items[2], spans)?;
            Ok(Proof::imp_e(ant, imp))
        }
        "forall-i" => {
            if items.len() < 3 {
                return Err(ParseError::new(pos, "`forall-i` takes binders and a proof"));
            }
            let binders = items[1..items.len() - 1]
                .iter()
                .map(name_arg)
                .collect::<Result<Vec<_>, _>>()?;
            let mut inner = path.clone();
            for _ in 1..binders.len() {
                inner = inner.child("premise");
                spans.insert(inner.clone(), pos);
            }
            let body = proof(&items[items.len() - 1], inner.child("premise"), spans)?;
            Ok(binders
                .into_iter()
                .rev()
                .fold(body, |p, x| Proof::forall_i(x, p)))
        }
        "forall-e" => {
            if items.len() < 3 {
                return Err(ParseError::new(
                    pos,
                    "`forall-e` takes a proof and witnesses",
                ));
            }
            let witnesses = items[2..]
                .iter()
                .map(term_arg)
                .collect::<Result<Vec<_>, _>>()?;
            // The innermost application sits deepest in the tree.
            let mut inner = path.clone();
            for _ in 1..witnesses.len() {
                inner = inner.child("premise");
                spans.insert(inner.clone(), pos);
            }
            let p = proof(&items[1], inner.child("premise"), spans)?;
            Ok(witnesses.into_iter().fold(p, Proof::forall_e))
        }
        "exists-i" => {
            arity(&items, 3, &head, pos)?;
            let (x, body) = binder_formula(&items[1])?;
            let witness = term_arg(&items[2])?;
            let p = sub("premise", &items[3], spans)?;
            Ok(Proof::exists_i(x, body, witness, p))
        }
        "exists-e" => {
            arity(&items, 2, &head, pos)?;
            let ex = sub("ex", &items[1], spans)?;
            let (c, cpos) = list(&items[2], "`(eigenvariable label proof)`")?;
            if c.len() != 3 {
                return Err(ParseError::new(
                    cpos,
                    "expected `(eigenvariable label proof)`",
                ));
            }
            let body = sub("body", &c[2], spans)?;
            Ok(Proof::exists_e(
                ex,
                name_arg(&c[0])?,
                name_arg(&c[1])?,
                body,
            ))
        }
        "ind" => {
            arity(&items, 3, &head, pos)?;
            let (x, motive) = binder_formula(&items[1])?;
            let base = sub("base", &items[2], spans)?;
            let (c, cpos) = list(&items[3], "`(eigenvariable label proof)`")?;
            if c.len() != 3 {
                return Err(ParseError::new(
                    cpos,
                    "expected `(eigenvariable label proof)`",
                ));
            }
            let step = sub("step", &c[2], spans)?;
            Ok(Proof::ind(
                x,
                motive,
                base,
                name_arg(&c[1])?,
                name_arg(&c[0])?,
                step,
            ))
        }
        "eq-rule" => {
            arity(&items, 5, &head, pos)?;
            let (hole, motive) = binder_formula(&items[1])?;
            let lhs = term_arg(&items[2])?;
            let rhs = term_arg(&items[3])?;
            let eq = sub("eq", &items[4], spans)?;
            let p = sub("premise", &items[5], spans)?;
            Ok(Proof::eq_rule(hole, motive, lhs, rhs, eq, p))
        }
        other => Err(ParseError::new(pos, format!("unknown rule `{other}`"))),
    }
}

fn quote_term(t: &ArithTerm) -> String {
    match t {
        ArithTerm::Var(x) => x.clone(),
        ArithTerm::Zero => "0".into(),
        ArithTerm::One => "1".into(),
        ArithTerm::Plus(..) => format!("\"{t}\""),
    }
}

/// Renders a proof as a script that parses back to the same tree.
pub fn print_proof(p: &Proof) -> String {
    let mut out = String::new();
    write_proof(p, 0, &mut out);
    out.push('\n');
    out
}

fn write_proof(p: &Proof, indent: usize, out: &mut String) {
    let pad = |n: usize| " ".repeat(n);
    let inner = indent + 2;
    let nl = |out: &mut String, n: usize| {
        out.push('\n');
        out.push_str(&pad(n));
    };
    match p {
        Proof::Axiom { schema, terms } => {
            let _ = write!(out, "({schema}");
            for t in terms {
                let _ = write!(out, " {}", quote_term(t));
            }
            out.push(')');
        }
        Proof::Assume { label, formula } => {
            let _ = write!(out, "(assume {label} \"{formula}\")");
        }
        Proof::AndI(l, r) => {
            out.push_str("(and-i");
            nl(out, inner);
            write_proof(l, inner, out);
            nl(out, inner);
            write_proof(r, inner, out);
            out.push(')');
        }
        Proof::OrIL { other, premise } | Proof::OrIR { other, premise } => {
            let _ = write!(out, "({} \"{other}\"", p.rule_name());
            nl(out, inner);
            write_proof(premise, inner, out);
            out.push(')');
        }
        Proof::OrE {
            disj,
            left_label,
            left_case,
            right_label,
            right_case,
        } => {
            out.push_str("(or-e");
            nl(out, inner);
            write_proof(disj, inner, out);
            for (label, case) in [(left_label, left_case), (right_label, right_case)] {
                nl(out, inner);
                let _ = write!(out, "({label}");
                nl(out, inner + 2);
                write_proof(case, inner + 2, out);
                out.push(')');
            }
            out.push(')');
        }
        Proof::ImpE { ant, imp } => {
            out.push_str("(imp-e");
            nl(out, inner);
            write_proof(ant, inner, out);
            nl(out, inner);
            write_proof(imp, inner, out);
            out.push(')');
        }
        Proof::ForallI { .. } => {
            let mut binders = Vec::new();
            let mut cur = p;
            while let Proof::ForallI { eigen, premise } = cur {
                binders.push(eigen.as_str());
                cur = premise;
            }
            let _ = write!(out, "(forall-i {}", binders.join(" "));
            nl(out, inner);
            write_proof(cur, inner, out);
            out.push(')');
        }
        Proof::ForallE { .. } => {
            let mut witnesses = Vec::new();
            let mut cur = p;
            while let Proof::ForallE { premise, witness } = cur {
                witnesses.push(quote_term(witness));
                cur = premise;
            }
            witnesses.reverse();
            out.push_str("(forall-e");
            nl(out, inner);
            write_proof(cur, inner, out);
            let _ = write!(out, " {})", witnesses.join(" "));
        }
        Proof::ExistsI {
            binder,
            body,
            witness,
            premise,
        } => {
            let _ = write!(
                out,
                "(exists-i ({binder} \"{body}\") {}",
                quote_term(witness)
            );
            nl(out, inner);
            write_proof(premise, inner, out);
            out.push(')');
        }
        Proof::ExistsE {
            ex,
            eigen,
            label,
            body,
        } => {
            out.push_str("(exists-e");
            nl(out, inner);
            write_proof(ex, inner, out);
            nl(out, inner);
            let _ = write!(out, "({eigen} {label}");
            nl(out, inner + 2);
            write_proof(body, inner + 2, out);
            out.push_str("))");
        }
        Proof::Ind {
            counter,
            motive,
            base,
            hyp_label,
            step_eigen,
            step,
        } => {
            let _ = write!(out, "(ind ({counter} \"{motive}\")");
            nl(out, inner);
            write_proof(base, inner, out);
            nl(out, inner);
            let _ = write!(out, "({step_eigen} {hyp_label}");
            nl(out, inner + 2);
            write_proof(step, inner + 2, out);
            out.push_str("))");
        }
        Proof::EqRule {
            hole,
            motive,
            lhs,
            rhs,
            eq,
            premise,
        } => {
            let _ = write!(
                out,
                "(eq-rule ({hole} \"{motive}\") {} {}",
                quote_term(lhs),
                quote_term(rhs)
            );
            nl(out, inner);
            write_proof(eq, inner, out);
            nl(out, inner);
            write_proof(premise, inner, out);
            out.push(')');
        }
    }
}
