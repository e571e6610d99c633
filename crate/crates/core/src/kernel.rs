//! Natural-deduction proofs for intuitionistic arithmetic and their checker.
//!
//! Rules: ∧i, ∨i (left and right), ∨e, →e, ∀i, ∀e, ∃i, ∃e, induction and
//! the equality rule. Leaves are labeled assumptions or instances of the five
//! axiom schemas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::logic::{ArithTerm, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomKind {
    /// `t = t`
    Refl,
    /// `t >= t`
    GeqRefl,
    /// `t = 0 \/ exists y. t = y + 1`
    ZeroOrSucc,
    /// `t >= s -> t + 1 >= s + 1`
    GeqSuccMono,
    /// `t >= 0`
    GeqZero,
}

impl AxiomKind {
    pub const ALL: [AxiomKind; 5] = [
        AxiomKind::Refl,
        AxiomKind::GeqRefl,
        AxiomKind::ZeroOrSucc,
        AxiomKind::GeqSuccMono,
        AxiomKind::GeqZero,
    ];

    pub fn arity(self) -> usize {
        match self {
            AxiomKind::GeqSuccMono => 2,
            _ => 1,
        }
    }

    /// Keyword used in proof scripts.
    pub fn keyword(self) -> &'static str {
        match self {
            AxiomKind::Refl => "refl",
            AxiomKind::GeqRefl => "geq-refl",
            AxiomKind::ZeroOrSucc => "zero-or-succ",
            AxiomKind::GeqSuccMono => "geq-succ-mono",
            AxiomKind::GeqZero => "geq-zero",
        }
    }

    pub fn from_keyword(word: &str) -> Option<AxiomKind> {
        AxiomKind::ALL.into_iter().find(|k| k.keyword() == word)
    }
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A derivation tree. Discharging rules name the labels they discharge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Proof {
    Axiom {
        schema: AxiomKind,
        terms: Vec<ArithTerm>,
    },
    Assume {
        label: String,
        formula: Formula,
    },
    AndI(Box<Proof>, Box<Proof>),
    /// Concludes `A \/ other` from a proof of `A`.
    OrIL {
        other: Formula,
        premise: Box<Proof>,
    },
    /// Concludes `other \/ B` from a proof of `B`.
    OrIR {
        other: Formula,
        premise: Box<Proof>,
    },
    OrE {
        disj: Box<Proof>,
        left_label: String,
        left_case: Box<Proof>,
        right_label: String,
        right_case: Box<Proof>,
    },
    ImpE {
        ant: Box<Proof>,
        imp: Box<Proof>,
    },
    ForallI {
        eigen: String,
        premise: Box<Proof>,
    },
    ForallE {
        premise: Box<Proof>,
        witness: ArithTerm,
    },
    ExistsI {
        binder: String,
        body: Formula,
        witness: ArithTerm,
        premise: Box<Proof>,
    },
    ExistsE {
        ex: Box<Proof>,
        eigen: String,
        label: String,
        body: Box<Proof>,
    },
    Ind {
        counter: String,
        motive: Formula,
        base: Box<Proof>,
        hyp_label: String,
        step_eigen: String,
        step: Box<Proof>,
    },
    /// From `lhs = rhs` and `motive[hole := rhs]` concludes `motive[hole := lhs]`.
    EqRule {
        hole: String,
        motive: Formula,
        lhs: ArithTerm,
        rhs: ArithTerm,
        eq: Box<Proof>,
        premise: Box<Proof>,
    },
}

impl Proof {
    pub fn axiom(schema: AxiomKind, terms: impl IntoIterator<Item = ArithTerm>) -> Proof {
        Proof::Axiom {
            schema,
            terms: terms.into_iter().collect(),
        }
    }

    pub fn assume(label: impl Into<String>, formula: Formula) -> Proof {
        Proof::Assume {
            label: label.into(),
            formula,
        }
    }

    pub fn and_i(l: Proof, r: Proof) -> Proof {
        Proof::AndI(Box::new(l), Box::new(r))
    }

    pub fn or_il(other: Formula, premise: Proof) -> Proof {
        Proof::OrIL {
            other,
            premise: Box::new(premise),
        }
    }

    pub fn or_ir(other: Formula, premise: Proof) -> Proof {
        Proof::OrIR {
            other,
            premise: Box::new(premise),
        }
    }

    pub fn or_e(
        disj: Proof,
        left_label: impl Into<String>,
        left_case: Proof,
        right_label: impl Into<String>,
        right_case: Proof,
    ) -> Proof {
        Proof::OrE {
            disj: Box::new(disj),
            left_label: left_label.into(),
            left_case: Box::new(left_case),
            right_label: right_label.into(),
            right_case: Box::new(right_case),
        }
    }

    pub fn imp_e(ant: Proof, imp: Proof) -> Proof {
        Proof::ImpE {
            ant: Box::new(ant),
            imp: Box::new(imp),
        }
    }

    pub fn forall_i(eigen: impl Into<String>, premise: Proof) -> Proof {
        Proof::ForallI {
            eigen: eigen.into(),
            premise: Box::new(premise),
        }
    }

    pub fn forall_e(premise: Proof, witness: ArithTerm) -> Proof {
        Proof::ForallE {
            premise: Box::new(premise),
            witness,
        }
    }

    pub fn exists_i(
        binder: impl Into<String>,
        body: Formula,
        witness: ArithTerm,
        premise: Proof,
    ) -> Proof {
        Proof::ExistsI {
            binder: binder.into(),
            body,
            witness,
            premise: Box::new(premise),
        }
    }

    pub fn exists_e(
        ex: Proof,
        eigen: impl Into<String>,
        label: impl Into<String>,
        body: Proof,
    ) -> Proof {
        Proof::ExistsE {
            ex: Box::new(ex),
            eigen: eigen.into(),
            label: label.into(),
            body: Box::new(body),
        }
    }

    pub fn ind(
        counter: impl Into<String>,
        motive: Formula,
        base: Proof,
        hyp_label: impl Into<String>,
        step_eigen: impl Into<String>,
        step: Proof,
    ) -> Proof {
        Proof::Ind {
            counter: counter.into(),
            motive,
            base: Box::new(base),
            hyp_label: hyp_label.into(),
            step_eigen: step_eigen.into(),
            step: Box::new(step),
        }
    }

    pub fn eq_rule(
        hole: impl Into<String>,
        motive: Formula,
        lhs: ArithTerm,
        rhs: ArithTerm,
        eq: Proof,
        premise: Proof,
    ) -> Proof {
        Proof::EqRule {
            hole: hole.into(),
            motive,
            lhs,
            rhs,
            eq: Box::new(eq),
            premise: Box::new(premise),
        }
    }

    /// Name of the rule at the root of this proof.
    pub fn rule_name(&self) -> &'static str {
        match self {
            Proof::Axiom { schema, .. } => schema.keyword(),
            Proof::Assume { .. } => "assume",
            Proof::AndI(..) => "and-i",
            Proof::OrIL { .. } => "or-i-l",
            Proof::OrIR { .. } => "or-i-r",
            Proof::OrE { .. } => "or-e",
            Proof::ImpE { .. } => "imp-e",
            Proof::ForallI { .. } => "forall-i",
            Proof::ForallE { .. } => "forall-e",
            Proof::ExistsI { .. } => "exists-i",
            Proof::ExistsE { .. } => "exists-e",
            Proof::Ind { .. } => "ind",
            Proof::EqRule { .. } => "eq-rule",
        }
    }

    /// Immediate subproofs with the path segment naming each.
    pub fn children(&self) -> Vec<(&'static str, &Proof)> {
        match self {
            Proof::Axiom { .. } | Proof::Assume { .. } => vec![],
            Proof::AndI(l, r) => vec![("left", l), ("right", r)],
            Proof::OrIL { premise, .. }
            | Proof::OrIR { premise, .. }
            | Proof::ForallI { premise, .. }
            | Proof::ForallE { premise, .. }
            | Proof::ExistsI { premise, .. } => vec![("premise", premise)],
            Proof::OrE {
                disj,
                left_case,
                right_case,
                ..
            } => vec![("disj", disj), ("case1", left_case), ("case2", right_case)],
            Proof::ImpE { ant, imp } => vec![("ant", ant), ("imp", imp)],
            Proof::ExistsE { ex, body, .. } => vec![("ex", ex), ("body", body)],
            Proof::Ind { base, step, .. } => vec![("base", base), ("step", step)],
            Proof::EqRule { eq, premise, .. } => vec![("eq", eq), ("premise", premise)],
        }
    }

    fn children_mut(&mut self) -> Vec<(&'static str, &mut Proof)> {
        match self {
            Proof::Axiom { .. } | Proof::Assume { .. } => vec![],
            Proof::AndI(l, r) => vec![("left", l), ("right", r)],
            Proof::OrIL { premise, .. }
            | Proof::OrIR { premise, .. }
            | Proof::ForallI { premise, .. }
            | Proof::ForallE { premise, .. }
            | Proof::ExistsI { premise, .. } => vec![("premise", premise)],
            Proof::OrE {
                disj,
                left_case,
                right_case,
                ..
            } => vec![("disj", disj), ("case1", left_case), ("case2", right_case)],
            Proof::ImpE { ant, imp } => vec![("ant", ant), ("imp", imp)],
            Proof::ExistsE { ex, body, .. } => vec![("ex", ex), ("body", body)],
            Proof::Ind { base, step, .. } => vec![("base", base), ("step", step)],
            Proof::EqRule { eq, premise, .. } => vec![("eq", eq), ("premise", premise)],
        }
    }

    /// The subproof at `path`, if the path exists.
    pub fn at(&self, path: &NodePath) -> Option<&Proof> {
        let mut cur = self;
        for seg in path.segments() {
            cur = cur.children().into_iter().find(|(s, _)| s == seg)?.1;
        }
        Some(cur)
    }

    pub fn at_mut(&mut self, path: &NodePath) -> Option<&mut Proof> {
        let mut cur = self;
        for seg in path.segments() {
            cur = cur.children_mut().into_iter().find(|(s, _)| s == seg)?.1;
        }
        Some(cur)
    }

    /// Every node of the tree with its path, in pre-order.
    pub fn nodes(&self) -> Vec<(NodePath, &Proof)> {
        let mut out = Vec::new();
        let mut stack = vec![(NodePath::root(), self)];
        while let Some((path, p)) = stack.pop() {
            for (seg, child) in p.children().into_iter().rev() {
                stack.push((path.child(seg), child));
            }
            out.push((path, p));
        }
        out
    }

    /// Every identifier used anywhere in the proof: variables, binders,
    /// eigenvariables, holes and labels.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (_, p) in self.nodes() {
            let term = |t: &ArithTerm, out: &mut BTreeSet<String>| out.extend(t.free_vars());
            match p {
                Proof::Axiom { terms, .. } => terms.iter().for_each(|t| term(t, &mut out)),
                Proof::Assume { label, formula } => {
                    out.insert(label.clone());
                    formula.all_names(&mut out);
                }
                Proof::AndI(..) | Proof::ImpE { .. } => {}
                Proof::OrIL { other, .. } | Proof::OrIR { other, .. } => other.all_names(&mut out),
                Proof::OrE {
                    left_label,
                    right_label,
                    ..
                } => {
                    out.insert(left_label.clone());
                    out.insert(right_label.clone());
                }
                Proof::ForallI { eigen, .. } => {
                    out.insert(eigen.clone());
                }
                Proof::ForallE { witness, .. } => term(witness, &mut out),
                Proof::ExistsI {
                    binder,
                    body,
                    witness,
                    ..
                } => {
                    out.insert(binder.clone());
                    body.all_names(&mut out);
                    term(witness, &mut out);
                }
                Proof::ExistsE { eigen, label, .. } => {
                    out.insert(eigen.clone());
                    out.insert(label.clone());
                }
                Proof::Ind {
                    counter,
                    motive,
                    hyp_label,
                    step_eigen,
                    ..
                } => {
                    out.insert(counter.clone());
                    motive.all_names(&mut out);
                    out.insert(hyp_label.clone());
                    out.insert(step_eigen.clone());
                }
                Proof::EqRule {
                    hole,
                    motive,
                    lhs,
                    rhs,
                    ..
                } => {
                    out.insert(hole.clone());
                    motive.all_names(&mut out);
                    term(lhs, &mut out);
                    term(rhs, &mut out);
                }
            }
        }
        out
    }
}

/// Location of a node: the child segments from the root, e.g.
/// `step.premise.case2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePath(Vec<&'static str>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn child(&self, seg: &'static str) -> Self {
        let mut segs = self.0.clone();
        segs.push(seg);
        NodePath(segs)
    }

    /// Parses a dotted path such as `step.premise.case2`; `<root>` or the
    /// empty string is the root. Unknown segment names yield `None`.
    pub fn parse(s: &str) -> Option<Self> {
        const SEGMENTS: [&str; 13] = [
            "left", "right", "premise", "disj", "case1", "case2", "ant", "imp", "ex", "body",
            "base", "step", "eq",
        ];
        if s.is_empty() || s == "<root>" {
            return Some(NodePath::root());
        }
        s.split('.')
            .map(|seg| SEGMENTS.iter().find(|k| **k == seg).copied())
            .collect::<Option<Vec<_>>>()
            .map(NodePath)
    }

    pub fn segments(&self) -> &[&'static str] {
        &self.0
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("<root>")
        } else {
            f.write_str(&self.0.join("."))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckErrorKind {
    RuleMismatch,
    EigenvariableViolation,
    LabelClash,
    BadAxiomInstance,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("rule mismatch at {node}: expected {expected}, found {found}")]
    RuleMismatch {
        node: NodePath,
        expected: String,
        found: String,
    },
    #[error("eigenvariable violation at {node}: `{name}` {reason}")]
    EigenvariableViolation {
        node: NodePath,
        name: String,
        reason: String,
    },
    #[error("label clash at {node}: `{label}` tags both {first} and {second}")]
    LabelClash {
        node: NodePath,
        label: String,
        first: String,
        second: String,
    },
    #[error("bad axiom instance at {node}: {schema} takes {expected} term(s), got {found}")]
    BadAxiomInstance {
        node: NodePath,
        schema: AxiomKind,
        expected: usize,
        found: usize,
    },
}

impl CheckError {
    pub fn kind(&self) -> CheckErrorKind {
        match self {
            CheckError::RuleMismatch { .. } => CheckErrorKind::RuleMismatch,
            CheckError::EigenvariableViolation { .. } => CheckErrorKind::EigenvariableViolation,
            CheckError::LabelClash { .. } => CheckErrorKind::LabelClash,
            CheckError::BadAxiomInstance { .. } => CheckErrorKind::BadAxiomInstance,
        }
    }

    pub fn node(&self) -> &NodePath {
        match self {
            CheckError::RuleMismatch { node, .. }
            | CheckError::EigenvariableViolation { node, .. }
            | CheckError::LabelClash { node, .. }
            | CheckError::BadAxiomInstance { node, .. } => node,
        }
    }
}

/// The formula stated by an axiom instance.
pub fn axiom_conclusion(schema: AxiomKind, terms: &[ArithTerm]) -> Result<Formula, CheckError> {
    if terms.len() != schema.arity() {
        return Err(CheckError::BadAxiomInstance {
            node: NodePath::root(),
            schema,
            expected: schema.arity(),
            found: terms.len(),
        });
    }
    let t = &terms[0];
    Ok(match schema {
        AxiomKind::Refl => Formula::eq(t.clone(), t.clone()),
        AxiomKind::GeqRefl => Formula::geq(t.clone(), t.clone()),
        AxiomKind::GeqZero => Formula::geq(t.clone(), ArithTerm::Zero),
        AxiomKind::GeqSuccMono => {
            let s = &terms[1];
            Formula::imp(
                Formula::geq(t.clone(), s.clone()),
                Formula::geq(t.clone().succ(), s.clone().succ()),
            )
        }
        AxiomKind::ZeroOrSucc => {
            let fv = t.free_vars();
            let y = if fv.contains("y") {
                crate::syntax::prime_until("y", |c| fv.contains(c))
            } else {
                "y".to_string()
            };
            Formula::or(
                Formula::eq(t.clone(), ArithTerm::Zero),
                Formula::exists(y.clone(), Formula::eq(t.clone(), ArithTerm::var(y).succ())),
            )
        }
    })
}

pub type OpenAssumptions = BTreeMap<String, Formula>;

/// A proof that passed `check`, with its conclusion and open assumptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedProof {
    proof: Proof,
    conclusion: Formula,
    open: OpenAssumptions,
}

impl CheckedProof {
    pub fn proof(&self) -> &Proof {
        &self.proof
    }

    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    pub fn open_assumptions(&self) -> &OpenAssumptions {
        &self.open
    }

    pub fn is_closed(&self) -> bool {
        self.open.is_empty()
    }

    pub fn into_proof(self) -> Proof {
        self.proof
    }
}

/// Labels and formulas of undischarged assumptions, without checking rules.
pub fn open_assumptions(p: &Proof) -> Result<OpenAssumptions, CheckError> {
    fn go(p: &Proof, path: &NodePath) -> Result<OpenAssumptions, CheckError> {
        let mut open = OpenAssumptions::new();
        if let Proof::Assume { label, formula } = p {
            open.insert(label.clone(), formula.clone());
            return Ok(open);
        }
        for (seg, child) in p.children() {
            let mut sub = go(child, &path.child(seg))?;
            let discharged = match (p, seg) {
                (Proof::OrE { left_label, .. }, "case1") => Some(left_label),
                (Proof::OrE { right_label, .. }, "case2") => Some(right_label),
                (Proof::ExistsE { label, .. }, "body") => Some(label),
                (Proof::Ind { hyp_label, .. }, "step") => Some(hyp_label),
                _ => None,
            };
            if let Some(label) = discharged {
                sub.remove(label);
            }
            merge(&mut open, sub, path)?;
        }
        Ok(open)
    }
    go(p, &NodePath::root())
}

fn merge(
    into: &mut OpenAssumptions,
    other: OpenAssumptions,
    node: &NodePath,
) -> Result<(), CheckError> {
    for (label, f) in other {
        match into.get(&label) {
            Some(existing) if !existing.alpha_eq(&f) => {
                return Err(CheckError::LabelClash {
                    node: node.clone(),
                    label,
                    first: existing.to_string(),
                    second: f.to_string(),
                });
            }
            Some(_) => {}
            None => {
                into.insert(label, f);
            }
        }
    }
    Ok(())
}

struct Judgment {
    conclusion: Formula,
    open: OpenAssumptions,
}

/// Checks every rule application and recomputes the conclusion.
pub fn check(p: &Proof) -> Result<CheckedProof, CheckError> {
    let j = infer(p, &NodePath::root())?;
    Ok(CheckedProof {
        proof: p.clone(),
        conclusion: j.conclusion,
        open: j.open,
    })
}

fn mismatch(node: &NodePath, expected: impl fmt::Display, found: impl fmt::Display) -> CheckError {
    CheckError::RuleMismatch {
        node: node.clone(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

fn require(
    node: &NodePath,
    what: &str,
    expected: &Formula,
    found: &Formula,
) -> Result<(), CheckError> {
    if expected.alpha_eq(found) {
        Ok(())
    } else {
        Err(mismatch(
            node,
            format!("{what} `{expected}`"),
            format!("`{found}`"),
        ))
    }
}

/// Removes `label` from `open`, which must tag `expected` if present.
fn discharge(
    open: &mut OpenAssumptions,
    label: &str,
    expected: &Formula,
    node: &NodePath,
) -> Result<(), CheckError> {
    match open.remove(label) {
        Some(f) if !f.alpha_eq(expected) => Err(mismatch(
            node,
            format!("assumption `{label}` to be `{expected}`"),
            format!("`{f}`"),
        )),
        _ => Ok(()),
    }
}

fn eigen_free_in_open(
    open: &OpenAssumptions,
    name: &str,
    node: &NodePath,
) -> Result<(), CheckError> {
    match open.iter().find(|(_, f)| f.has_free(name)) {
        Some((label, f)) => Err(CheckError::EigenvariableViolation {
            node: node.clone(),
            name: name.to_string(),
            reason: format!("occurs free in open assumption `{label}`: {f}"),
        }),
        None => Ok(()),
    }
}

fn infer(p: &Proof, path: &NodePath) -> Result<Judgment, CheckError> {
    let sub = |seg: &'static str, child: &Proof| infer(child, &path.child(seg));
    match p {
        Proof::Axiom { schema, terms } => {
            let conclusion = axiom_conclusion(*schema, terms).map_err(|e| match e {
                CheckError::BadAxiomInstance {
                    schema,
                    expected,
                    found,
                    ..
                } => CheckError::BadAxiomInstance {
                    node: path.clone(),
                    schema,
                    expected,
                    found,
                },
                other => other,
            })?;
            Ok(Judgment {
                conclusion,
                open: OpenAssumptions::new(),
            })
        }
        Proof::Assume { label, formula } => Ok(Judgment {
            conclusion: formula.clone(),
            open: OpenAssumptions::from([(label.clone(), formula.clone())]),
        }),
        Proof::AndI(l, r) => {
            let l = sub("left", l)?;
            let r = sub("right", r)?;
            let mut open = l.open;
            merge(&mut open, r.open, path)?;
            Ok(Judgment {
                conclusion: Formula::and(l.conclusion, r.conclusion),
                open,
            })
        }
        Proof::OrIL { other, premise } => {
            let j = sub("premise", premise)?;
            Ok(Judgment {
                conclusion: Formula::or(j.conclusion, other.clone()),
                open: j.open,
            })
        }
        Proof::OrIR { other, premise } => {
            let j = sub("premise", premise)?;
            Ok(Judgment {
                conclusion: Formula::or(other.clone(), j.conclusion),
                open: j.open,
            })
        }
        Proof::OrE {
            disj,
            left_label,
            left_case,
            right_label,
            right_case,
        } => {
            let d = sub("disj", disj)?;
            let Formula::Or(a, b) = &d.conclusion else {
                return Err(mismatch(
                    path,
                    "a disjunction",
                    format!("`{}`", d.conclusion),
                ));
            };
            let mut c1 = sub("case1", left_case)?;
            let mut c2 = sub("case2", right_case)?;
            require(
                path,
                "second case to conclude",
                &c1.conclusion,
                &c2.conclusion,
            )?;
            discharge(&mut c1.open, left_label, a, path)?;
            discharge(&mut c2.open, right_label, b, path)?;
            let mut open = d.open;
            merge(&mut open, c1.open, path)?;
            merge(&mut open, c2.open, path)?;
            Ok(Judgment {
                conclusion: c1.conclusion,
                open,
            })
        }
        Proof::ImpE { ant, imp } => {
            let a = sub("ant", ant)?;
            let i = sub("imp", imp)?;
            let Formula::Imp(hyp, concl) = &i.conclusion else {
                return Err(mismatch(
                    path,
                    "an implication",
                    format!("`{}`", i.conclusion),
                ));
            };
            require(path, "antecedent", hyp, &a.conclusion)?;
            let mut open = a.open;
            merge(&mut open, i.open, path)?;
            Ok(Judgment {
                conclusion: (**concl).clone(),
                open,
            })
        }
        Proof::ForallI { eigen, premise } => {
            let j = sub("premise", premise)?;
            eigen_free_in_open(&j.open, eigen, path)?;
            Ok(Judgment {
                conclusion: Formula::forall(eigen.clone(), j.conclusion),
                open: j.open,
            })
        }
        Proof::ForallE { premise, witness } => {
            let j = sub("premise", premise)?;
            let Formula::Forall(x, body) = &j.conclusion else {
                return Err(mismatch(
                    path,
                    "a universal formula",
                    format!("`{}`", j.conclusion),
                ));
            };
            Ok(Judgment {
                conclusion: body.subst(x, witness),
                open: j.open,
            })
        }
        Proof::ExistsI {
            binder,
            body,
            witness,
            premise,
        } => {
            let j = sub("premise", premise)?;
            require(path, "premise", &body.subst(binder, witness), &j.conclusion)?;
            Ok(Judgment {
                conclusion: Formula::exists(binder.clone(), body.clone()),
                open: j.open,
            })
        }
        Proof::ExistsE {
            ex,
            eigen,
            label,
            body,
        } => {
            let e = sub("ex", ex)?;
            let Formula::Exists(x, inner) = &e.conclusion else {
                return Err(mismatch(
                    path,
                    "an existential formula",
                    format!("`{}`", e.conclusion),
                ));
            };
            let hyp = inner.subst(x, &ArithTerm::var(eigen));
            let mut b = sub("body", body)?;
            discharge(&mut b.open, label, &hyp, path)?;
            if e.conclusion.has_free(eigen) {
                return Err(CheckError::EigenvariableViolation {
                    node: path.clone(),
                    name: eigen.clone(),
                    reason: format!("occurs free in the eliminated formula {}", e.conclusion),
                });
            }
            if b.conclusion.has_free(eigen) {
                return Err(CheckError::EigenvariableViolation {
                    node: path.clone(),
                    name: eigen.clone(),
                    reason: format!("occurs free in the conclusion {}", b.conclusion),
                });
            }
            eigen_free_in_open(&b.open, eigen, path)?;
            let mut open = e.open;
            merge(&mut open, b.open, path)?;
            Ok(Judgment {
                conclusion: b.conclusion,
                open,
            })
        }
        Proof::Ind {
            counter,
            motive,
            base,
            hyp_label,
            step_eigen,
            step,
        } => {
            let conclusion = Formula::forall(counter.clone(), motive.clone());
            let b = sub("base", base)?;
            require(
                path,
                "base case",
                &motive.subst(counter, &ArithTerm::Zero),
                &b.conclusion,
            )?;
            let mut s = sub("step", step)?;
            let eigen = ArithTerm::var(step_eigen);
            require(
                path,
                "step case",
                &motive.subst(counter, &eigen.clone().succ()),
                &s.conclusion,
            )?;
            discharge(&mut s.open, hyp_label, &motive.subst(counter, &eigen), path)?;
            if conclusion.has_free(step_eigen) {
                return Err(CheckError::EigenvariableViolation {
                    node: path.clone(),
                    name: step_eigen.clone(),
                    reason: format!("occurs free in the induction conclusion {conclusion}"),
                });
            }
            eigen_free_in_open(&s.open, step_eigen, path)?;
            let mut open = b.open;
            merge(&mut open, s.open, path)?;
            Ok(Judgment { conclusion, open })
        }
        Proof::EqRule {
            hole,
            motive,
            lhs,
            rhs,
            eq,
            premise,
        } => {
            let e = sub("eq", eq)?;
            require(
                path,
                "equation",
                &Formula::eq(lhs.clone(), rhs.clone()),
                &e.conclusion,
            )?;
            let q = sub("premise", premise)?;
            require(path, "premise", &motive.subst(hole, rhs), &q.conclusion)?;
            let mut open = e.open;
            merge(&mut open, q.open, path)?;
            Ok(Judgment {
                conclusion: motive.subst(hole, lhs),
                open,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_arith, parse_formula};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn a(s: &str) -> ArithTerm {
        parse_arith(s).unwrap()
    }

    #[test]
    fn axiom_conclusion_examples() {
        assert_eq!(
            axiom_conclusion(AxiomKind::Refl, &[a("x + 1")]),
            Ok(f("x + 1 = x + 1"))
        );
        assert_eq!(
            axiom_conclusion(AxiomKind::ZeroOrSucc, &[a("x2")]),
            Ok(f("x2 = 0 \\/ exists y. x2 = y + 1"))
        );
        assert_eq!(
            axiom_conclusion(AxiomKind::GeqSuccMono, &[a("n"), a("y")]),
            Ok(f("n >= y -> n + 1 >= y + 1"))
        );
        assert_eq!(
            axiom_conclusion(AxiomKind::GeqZero, &[a("t")]),
            Ok(f("t >= 0"))
        );
        assert_eq!(
            axiom_conclusion(AxiomKind::GeqRefl, &[a("t")]),
            Ok(f("t >= t"))
        );
    }

    #[test]
    fn zero_or_succ_avoids_capturing_y() {
        let concl = axiom_conclusion(AxiomKind::ZeroOrSucc, &[a("y")]).unwrap();
        assert_eq!(concl, f("y = 0 \\/ exists y'. y = y' + 1"));
    }

    #[test]
    fn axiom_arity_is_checked() {
        let err = check(&Proof::axiom(AxiomKind::GeqSuccMono, [a("n")])).unwrap_err();
        assert_eq!(err.kind(), CheckErrorKind::BadAxiomInstance);
        let err = check(&Proof::axiom(AxiomKind::Refl, [a("n"), a("m")])).unwrap_err();
        assert_eq!(err.kind(), CheckErrorKind::BadAxiomInstance);
    }

    #[test]
    fn forall_intro_eigenvariable_condition() {
        let p = Proof::forall_i("x", Proof::assume("h", f("x >= 0")));
        let err = check(&p).unwrap_err();
        assert!(matches!(err, CheckError::EigenvariableViolation { ref name, .. } if name == "x"));
        let ok = check(&Proof::forall_i(
            "x",
            Proof::axiom(AxiomKind::GeqZero, [a("x")]),
        ))
        .unwrap();
        assert_eq!(ok.conclusion(), &f("forall x. x >= 0"));
    }

    #[test]
    fn exists_intro_checks_witness() {
        let p = Proof::exists_i(
            "y",
            f("y = 1"),
            ArithTerm::Zero,
            Proof::axiom(AxiomKind::Refl, [ArithTerm::Zero]),
        );
        assert_eq!(check(&p).unwrap_err().kind(), CheckErrorKind::RuleMismatch);
        let p = Proof::exists_i(
            "y",
            f("y = 0"),
            ArithTerm::Zero,
            Proof::axiom(AxiomKind::Refl, [ArithTerm::Zero]),
        );
        assert_eq!(check(&p).unwrap().conclusion(), &f("exists y. y = 0"));
    }

    #[test]
    fn open_assumption_examples() {
        let p = Proof::assume("h", f("0 = 0"));
        assert_eq!(
            open_assumptions(&p).unwrap(),
            OpenAssumptions::from([("h".into(), f("0 = 0"))])
        );
        let disj = Proof::assume("d", f("0 = 0 \\/ 1 = 1"));
        let p = Proof::or_e(
            disj,
            "h1",
            Proof::and_i(
                Proof::assume("h1", f("0 = 0")),
                Proof::assume("k", f("1 = 1")),
            ),
            "h2",
            Proof::and_i(
                Proof::axiom(AxiomKind::Refl, [a("0")]),
                Proof::assume("h2", f("1 = 1")),
            ),
        );
        let open = open_assumptions(&p).unwrap();
        assert_eq!(open.keys().cloned().collect::<Vec<_>>(), vec!["d", "k"]);
        assert_eq!(check(&p).unwrap().open_assumptions(), &open);
    }

    #[test]
    fn label_clash_is_reported() {
        let p = Proof::and_i(
            Proof::assume("h", f("0 = 0")),
            Proof::assume("h", f("1 = 1")),
        );
        assert_eq!(check(&p).unwrap_err().kind(), CheckErrorKind::LabelClash);
        assert_eq!(
            open_assumptions(&p).unwrap_err().kind(),
            CheckErrorKind::LabelClash
        );
        let same = Proof::and_i(
            Proof::assume("h", f("0 = 0")),
            Proof::assume("h", f("0 = 0")),
        );
        assert_eq!(check(&same).unwrap().open_assumptions().len(), 1);
    }

    #[test]
    fn or_elim_discharges_named_labels() {
        let disj = Proof::assume("d", f("x = 0 \\/ x = 1"));
        let concl = f("x = 0 \\/ x = 1");
        let p = Proof::or_e(
            disj.clone(),
            "l",
            Proof::or_il(f("x = 1"), Proof::assume("l", f("x = 0"))),
            "r",
            Proof::or_ir(f("x = 0"), Proof::assume("r", f("x = 1"))),
        );
        let cp = check(&p).unwrap();
        assert_eq!(cp.conclusion(), &concl);
        assert_eq!(
            cp.open_assumptions().keys().cloned().collect::<Vec<_>>(),
            vec!["d"]
        );

        // Discharging a label with the wrong formula is rejected.
        let p = Proof::or_e(
            disj,
            "l",
            Proof::or_il(f("x = 0"), Proof::assume("l", f("x = 1"))),
            "r",
            Proof::or_ir(f("x = 0"), Proof::assume("r", f("x = 1"))),
        );
        assert_eq!(check(&p).unwrap_err().kind(), CheckErrorKind::RuleMismatch);
    }

    #[test]
    fn exists_elim_eigenvariable_in_conclusion() {
        // From exists y. x = y + 1 conclude y + 1 = y + 1 mentioning the eigenvariable.
        let ex = Proof::assume("e", f("exists y. x = y + 1"));
        let p = Proof::exists_e(ex, "y", "h", Proof::axiom(AxiomKind::Refl, [a("y + 1")]));
        let err = check(&p).unwrap_err();
        assert_eq!(err.kind(), CheckErrorKind::EigenvariableViolation);
    }

    #[test]
    fn eq_rule_fills_the_hole() {
        let p = Proof::eq_rule(
            "h",
            f("h >= 0"),
            a("x"),
            a("0"),
            Proof::assume("e", f("x = 0")),
            Proof::axiom(AxiomKind::GeqZero, [a("0")]),
        );
        assert_eq!(check(&p).unwrap().conclusion(), &f("x >= 0"));
        let wrong = Proof::eq_rule(
            "h",
            f("h >= 1"),
            a("x"),
            a("0"),
            Proof::assume("e", f("x = 0")),
            Proof::axiom(AxiomKind::GeqZero, [a("0")]),
        );
        assert_eq!(
            check(&wrong).unwrap_err().kind(),
            CheckErrorKind::RuleMismatch
        );
    }

    #[test]
    fn induction_checks_base_step_and_hypothesis() {
        // forall x. x >= 0, by induction with a trivial step.
        let motive = f("x >= 0");
        let step = Proof::axiom(AxiomKind::GeqZero, [a("n + 1")]);
        let p = Proof::ind(
            "x",
            motive.clone(),
            Proof::axiom(AxiomKind::GeqZero, [a("0")]),
            "ih",
            "n",
            step.clone(),
        );
        assert_eq!(check(&p).unwrap().conclusion(), &f("forall x. x >= 0"));

        let bad_base = Proof::ind(
            "x",
            motive.clone(),
            Proof::axiom(AxiomKind::GeqZero, [a("1")]),
            "ih",
            "n",
            step,
        );
        assert_eq!(
            check(&bad_base).unwrap_err().kind(),
            CheckErrorKind::RuleMismatch
        );

        let leaky = Proof::ind(
            "x",
            motive,
            Proof::axiom(AxiomKind::GeqZero, [a("0")]),
            "ih",
            "n",
            Proof::and_i(
                Proof::axiom(AxiomKind::GeqZero, [a("n + 1")]),
                Proof::assume("other", f("n = n")),
            ),
        );
        // Step concludes a conjunction, which is a mismatch before the eigen check.
        assert_eq!(
            check(&leaky).unwrap_err().kind(),
            CheckErrorKind::RuleMismatch
        );
    }

    #[test]
    fn error_paths_name_the_offending_node() {
        let p = Proof::and_i(
            Proof::axiom(AxiomKind::Refl, [a("0")]),
            Proof::or_il(f("0 = 0"), Proof::axiom(AxiomKind::GeqSuccMono, [a("0")])),
        );
        let err = check(&p).unwrap_err();
        assert_eq!(err.node().to_string(), "right.premise");
        assert_eq!(NodePath::root().to_string(), "<root>");
    }
}
