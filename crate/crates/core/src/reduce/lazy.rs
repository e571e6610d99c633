//! Call-by-need evaluation to full normal form.
//!
//! Arguments are passed as shared thunks that are reduced at most once, so a
//! term that duplicates an argument does not duplicate the work of reducing
//! it. Redexes are the same as for `step`; a constant's scrutinee is forced
//! before anything else in its arguments. Read-back then normalizes under
//! binders and inside stuck applications.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::rc::Rc;

use crate::syntax::prime_until;
use crate::term::{free_vars, numeral, ConstKind, Term};

/// Raised when the step budget runs out.
pub(super) struct OutOfFuel;

type Eval<T> = Result<T, OutOfFuel>;

#[derive(Clone)]
struct Env<'t>(Option<Rc<Frame<'t>>>);

struct Frame<'t> {
    name: &'t str,
    value: Thunk<'t>,
    next: Env<'t>,
}

impl<'t> Env<'t> {
    fn bind(&self, name: &'t str, value: Thunk<'t>) -> Self {
        Env(Some(Rc::new(Frame {
            name,
            value,
            next: self.clone(),
        })))
    }

    fn lookup(&self, name: &str) -> Option<Thunk<'t>> {
        let mut cur = self.0.as_deref();
        while let Some(frame) = cur {
            if frame.name == name {
                return Some(frame.value.clone());
            }
            cur = frame.next.0.as_deref();
        }
        None
    }
}

#[derive(Clone)]
enum Pending<'t> {
    Eval(&'t Term, Env<'t>),
    Apply(Value<'t>, Vec<Thunk<'t>>),
}

enum State<'t> {
    Pending(Pending<'t>),
    Forcing,
    Done(Value<'t>),
}

#[derive(Clone)]
struct Thunk<'t>(Rc<RefCell<State<'t>>>);

impl<'t> Thunk<'t> {
    fn pending(p: Pending<'t>) -> Self {
        Thunk(Rc::new(RefCell::new(State::Pending(p))))
    }

    fn done(v: Value<'t>) -> Self {
        Thunk(Rc::new(RefCell::new(State::Done(v))))
    }
}

#[derive(Clone)]
enum Head {
    Var(Rc<str>),
    Const(ConstKind),
}

/// Weak head normal forms.
#[derive(Clone)]
enum Value<'t> {
    Closure(&'t str, &'t Term, Env<'t>),
    /// A canonical numeral produced by a rule.
    Nat(u64),
    /// A variable or constant applied to arguments, with no rule applicable.
    Neutral(Head, Vec<Thunk<'t>>),
}

impl Value<'_> {
    fn constant(c: ConstKind) -> Self {
        Value::Neutral(Head::Const(c), Vec::new())
    }

    fn is_const(&self, c: ConstKind) -> bool {
        matches!(self, Value::Neutral(Head::Const(k), xs) if *k == c && xs.is_empty())
    }

    /// Syntactically `0`.
    fn is_zero(&self) -> bool {
        matches!(self, Value::Nat(0)) || self.is_const(ConstKind::Zero)
    }
}

enum Scrutinee<'t> {
    Zero,
    Succ(Thunk<'t>),
}

pub(super) struct Machine {
    pub(super) steps: u64,
    fuel: u64,
    avoid: BTreeSet<String>,
}

impl Machine {
    pub(super) fn new(fuel: u64) -> Self {
        Machine {
            steps: 0,
            fuel,
            avoid: BTreeSet::new(),
        }
    }

    fn tick(&mut self) -> Eval<()> {
        if self.steps == self.fuel {
            return Err(OutOfFuel);
        }
        self.steps += 1;
        Ok(())
    }

    /// Normal form of `t`, or the partially reduced term (when it is small
    /// enough to materialize) if fuel runs out.
    pub(super) fn normalize(&mut self, t: &Term) -> Result<Term, Option<Term>> {
        self.avoid = free_vars(t);
        let root = Thunk::pending(Pending::Eval(t, Env(None)));
        match self.force(&root).and_then(|v| self.quote(v)) {
            Ok(nf) => Ok(nf),
            Err(OutOfFuel) => {
                self.avoid = free_vars(t);
                let mut budget = 1_000_000;
                Err(self.freeze_thunk(&root, &mut budget))
            }
        }
    }

    fn force<'t>(&mut self, th: &Thunk<'t>) -> Eval<Value<'t>> {
        let pending = {
            let mut state = th.0.borrow_mut();
            match &*state {
                State::Done(v) => return Ok(v.clone()),
                State::Forcing => unreachable!("thunk demanded while being forced"),
                State::Pending(p) => {
                    let p = p.clone();
                    *state = State::Forcing;
                    p
                }
            }
        };
        let result = match pending.clone() {
            Pending::Eval(t, env) => self.eval(t, env),
            Pending::Apply(f, args) => self.apply(f, args),
        };
        *th.0.borrow_mut() = match &result {
            Ok(v) => State::Done(v.clone()),
            Err(_) => State::Pending(pending),
        };
        result
    }

    fn arg_thunk<'t>(t: &'t Term, env: &Env<'t>) -> Thunk<'t> {
        match t {
            Term::Var(x) => env.lookup(x).unwrap_or_else(|| {
                Thunk::done(Value::Neutral(Head::Var(x.as_str().into()), Vec::new()))
            }),
            Term::Const(c) => Thunk::done(Value::constant(*c)),
            _ => Thunk::pending(Pending::Eval(t, env.clone())),
        }
    }

    fn eval<'t>(&mut self, t: &'t Term, env: Env<'t>) -> Eval<Value<'t>> {
        match t {
            Term::Var(x) => match env.lookup(x) {
                Some(th) => self.force(&th),
                None => Ok(Value::Neutral(Head::Var(x.as_str().into()), Vec::new())),
            },
            Term::Const(c) => Ok(Value::constant(*c)),
            Term::Lam(x, body) => Ok(Value::Closure(x, body, env)),
            Term::App(..) => {
                let (head, args) = t.spine();
                let args = args.into_iter().map(|a| Self::arg_thunk(a, &env)).collect();
                let f = self.eval(head, env)?;
                self.apply(f, args)
            }
        }
    }

    fn apply<'t>(&mut self, mut f: Value<'t>, args: Vec<Thunk<'t>>) -> Eval<Value<'t>> {
        let mut rest = args.into_iter();
        loop {
            match f {
                Value::Closure(x, body, env) => {
                    let Some(a) = rest.next() else {
                        return Ok(Value::Closure(x, body, env));
                    };
                    self.tick()?;
                    f = self.eval(body, env.bind(x, a))?;
                }
                Value::Nat(n) if rest.len() == 0 => return Ok(Value::Nat(n)),
                Value::Nat(0) => f = Value::constant(ConstKind::Zero),
                Value::Nat(n) => {
                    f = Value::Neutral(
                        Head::Const(ConstKind::Plus),
                        vec![
                            Thunk::done(Value::Nat(n - 1)),
                            Thunk::done(Value::constant(ConstKind::One)),
                        ],
                    )
                }
                Value::Neutral(head, mut xs) => {
                    xs.extend(rest);
                    return match head {
                        Head::Const(c) => self.delta(c, xs),
                        head => Ok(Value::Neutral(head, xs)),
                    };
                }
            }
        }
    }

    fn delta<'t>(&mut self, c: ConstKind, xs: Vec<Thunk<'t>>) -> Eval<Value<'t>> {
        use ConstKind::*;
        let arity = match c {
            Left | Right | IsZero => 1,
            CutMinus => 2,
            IfThenElse | R => 3,
            Zero | One | Plus | Pair => return Ok(Value::Neutral(Head::Const(c), xs)),
        };
        if xs.len() < arity {
            return Ok(Value::Neutral(Head::Const(c), xs));
        }
        let fired = match c {
            Left | Right => match self.force(&xs[0])? {
                Value::Neutral(Head::Const(Pair), p) if p.len() == 2 => {
                    self.tick()?;
                    Some(self.force(&p[usize::from(c == Right)])?)
                }
                _ => None,
            },
            IsZero => match self.scrutinee(&xs[0])? {
                Some(s) => {
                    self.tick()?;
                    Some(Value::constant(match s {
                        Scrutinee::Zero => Zero,
                        Scrutinee::Succ(_) => One,
                    }))
                }
                None => None,
            },
            IfThenElse => match self.condition(&xs[0])? {
                Some(tag) => {
                    self.tick()?;
                    Some(self.force(&xs[if tag { 1 } else { 2 }])?)
                }
                None => None,
            },
            R => match self.scrutinee(&xs[2])? {
                Some(Scrutinee::Zero) => {
                    self.tick()?;
                    Some(self.force(&xs[0])?)
                }
                Some(Scrutinee::Succ(pred)) => {
                    self.tick()?;
                    let rec = Thunk::pending(Pending::Apply(
                        Value::constant(R),
                        vec![xs[0].clone(), xs[1].clone(), pred.clone()],
                    ));
                    let step = self.force(&xs[1])?;
                    Some(self.apply(step, vec![pred, rec])?)
                }
                None => None,
            },
            CutMinus => match self.denote(&xs[0])? {
                Some(a) => match self.denote(&xs[1])? {
                    Some(b) => {
                        self.tick()?;
                        Some(Value::Nat(a.saturating_sub(b)))
                    }
                    None => None,
                },
                None => None,
            },
            Zero | One | Plus | Pair => unreachable!(),
        };
        match fired {
            Some(v) => self.apply(v, xs[arity..].to_vec()),
            None => Ok(Value::Neutral(Head::Const(c), xs)),
        }
    }

    /// Zero or successor shape of a scrutinee, canonicalizing a closed
    /// arithmetical term in one step when needed.
    fn scrutinee<'t>(&mut self, th: &Thunk<'t>) -> Eval<Option<Scrutinee<'t>>> {
        let v = self.force(th)?;
        if v.is_zero() {
            return Ok(Some(Scrutinee::Zero));
        }
        match &v {
            Value::Nat(k) => return Ok(Some(Scrutinee::Succ(Thunk::done(Value::Nat(k - 1))))),
            Value::Neutral(Head::Const(ConstKind::Plus), p)
                if p.len() == 2 && self.force(&p[1])?.is_const(ConstKind::One) =>
            {
                return Ok(Some(Scrutinee::Succ(p[0].clone())));
            }
            _ => {}
        }
        Ok(match self.denote(th)? {
            Some(0) => {
                self.tick()?;
                Some(Scrutinee::Zero)
            }
            Some(k) => {
                self.tick()?;
                Some(Scrutinee::Succ(Thunk::done(Value::Nat(k - 1))))
            }
            None => None,
        })
    }

    /// `Some(true)` for 0, `Some(false)` for 1 (as `1` or `0 + 1`).
    fn condition(&mut self, th: &Thunk<'_>) -> Eval<Option<bool>> {
        let v = self.force(th)?;
        if v.is_zero() {
            return Ok(Some(true));
        }
        if v.is_const(ConstKind::One) || matches!(v, Value::Nat(1)) {
            return Ok(Some(false));
        }
        if let Value::Neutral(Head::Const(ConstKind::Plus), p) = &v {
            if p.len() == 2
                && self.force(&p[0])?.is_zero()
                && self.force(&p[1])?.is_const(ConstKind::One)
            {
                return Ok(Some(false));
            }
        }
        Ok(match self.denote(th)? {
            Some(n @ (0 | 1)) => {
                self.tick()?;
                Some(n == 0)
            }
            _ => None,
        })
    }

    /// The number a closed arithmetical value denotes.
    fn denote(&mut self, th: &Thunk<'_>) -> Eval<Option<u64>> {
        let mut total: u64 = 0;
        let mut cur = th.clone();
        loop {
            let add = match self.force(&cur)? {
                Value::Nat(n) => return Ok(Some(total.saturating_add(n))),
                v if v.is_const(ConstKind::Zero) => return Ok(Some(total)),
                v if v.is_const(ConstKind::One) => return Ok(Some(total.saturating_add(1))),
                Value::Neutral(Head::Const(ConstKind::Plus), p) if p.len() == 2 => {
                    let Some(r) = self.denote(&p[1])? else {
                        return Ok(None);
                    };
                    cur = p[0].clone();
                    r
                }
                _ => return Ok(None),
            };
            total = total.saturating_add(add);
        }
    }

    fn fresh_binder(&mut self, base: &str) -> String {
        let name = prime_until(base, |c| self.avoid.contains(c));
        self.avoid.insert(name.clone());
        name
    }

    fn bound_var<'t>(name: &str) -> Thunk<'t> {
        Thunk::done(Value::Neutral(Head::Var(name.into()), Vec::new()))
    }

    fn quote(&mut self, v: Value<'_>) -> Eval<Term> {
        match v {
            Value::Nat(n) => Ok(numeral(n)),
            Value::Neutral(head, xs) => {
                let mut t = head_term(&head);
                for x in xs {
                    let xv = self.force(&x)?;
                    t = Term::app(t, self.quote(xv)?);
                }
                Ok(t)
            }
            Value::Closure(x, body, env) => {
                let name = self.fresh_binder(x);
                let result = self
                    .eval(body, env.bind(x, Self::bound_var(&name)))
                    .and_then(|bv| self.quote(bv));
                self.avoid.remove(&name);
                Ok(Term::lam(name, result?))
            }
        }
    }

    fn freeze_thunk(&mut self, th: &Thunk<'_>, budget: &mut usize) -> Option<Term> {
        let state = match &*th.0.borrow() {
            State::Done(v) => Pending::Apply(v.clone(), Vec::new()),
            State::Pending(p) => p.clone(),
            State::Forcing => return None,
        };
        match state {
            Pending::Eval(t, env) => self.freeze_term(t, &env, budget),
            Pending::Apply(f, args) => {
                let mut t = self.freeze_value(f, budget)?;
                for a in &args {
                    t = Term::app(t, self.freeze_thunk(a, budget)?);
                }
                Some(t)
            }
        }
    }

    fn freeze_term<'t>(&mut self, t: &'t Term, env: &Env<'t>, budget: &mut usize) -> Option<Term> {
        *budget = budget.checked_sub(1)?;
        match t {
            Term::Var(x) => match env.lookup(x) {
                Some(th) => self.freeze_thunk(&th, budget),
                None => Some(t.clone()),
            },
            Term::Const(_) => Some(t.clone()),
            Term::App(f, a) => Some(Term::app(
                self.freeze_term(f, env, budget)?,
                self.freeze_term(a, env, budget)?,
            )),
            Term::Lam(x, body) => self.freeze_binder(x, body, env, budget),
        }
    }

    fn freeze_binder<'t>(
        &mut self,
        x: &'t str,
        body: &'t Term,
        env: &Env<'t>,
        budget: &mut usize,
    ) -> Option<Term> {
        let name = self.fresh_binder(x);
        let inner = self.freeze_term(body, &env.bind(x, Self::bound_var(&name)), budget);
        self.avoid.remove(&name);
        Some(Term::lam(name, inner?))
    }

    fn freeze_value(&mut self, v: Value<'_>, budget: &mut usize) -> Option<Term> {
        *budget = budget.checked_sub(1)?;
        match v {
            Value::Nat(n) => Some(numeral(n)),
            Value::Neutral(head, xs) => {
                let mut t = head_term(&head);
                for x in &xs {
                    t = Term::app(t, self.freeze_thunk(x, budget)?);
                }
                Some(t)
            }
            Value::Closure(x, body, env) => self.freeze_binder(x, body, &env, budget),
        }
    }
}

fn head_term(head: &Head) -> Term {
    match head {
        Head::Var(x) => Term::var(&**x),
        Head::Const(c) => Term::Const(*c),
    }
}
