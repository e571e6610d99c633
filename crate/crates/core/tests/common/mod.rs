#![allow(dead_code)]

use proptest::prelude::*;
use realizer_core::logic::{ArithTerm, Formula};
use realizer_core::term::{numeral, ConstKind, Term};

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(&VARS[..]).prop_map(Term::var),
        prop::sample::select(&ConstKind::ALL[..]).prop_map(Term::Const),
        (0u64..4).prop_map(numeral),
        Just(Term::eps()),
    ];
    leaf.prop_recursive(5, 40, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, a)| Term::app(f, a)),
            (prop::sample::select(&VARS[..]), inner.clone()).prop_map(|(x, b)| Term::lam(x, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::pair(a, b)),
            (inner.clone(), inner.clone(), inner).prop_map(|(c, a, b)| Term::ite(c, a, b)),
        ]
    })
}

pub fn arb_arith(vars: &'static [&'static str]) -> impl Strategy<Value = ArithTerm> {
    let leaf = prop_oneof![
        Just(ArithTerm::Zero),
        Just(ArithTerm::One),
        prop::sample::select(vars).prop_map(ArithTerm::var),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| ArithTerm::plus(l, r))
    })
}

pub fn arb_closed_arith() -> impl Strategy<Value = ArithTerm> {
    let leaf = prop_oneof![Just(ArithTerm::Zero), Just(ArithTerm::One)];
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| ArithTerm::plus(l, r))
    })
}

pub fn arb_qf_formula(vars: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        (arb_arith(vars), arb_arith(vars)).prop_map(|(l, r)| Formula::eq(l, r)),
        (arb_arith(vars), arb_arith(vars)).prop_map(|(l, r)| Formula::geq(l, r)),
    ];
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::imp(l, r)),
        ]
    })
}

pub fn arb_formula(vars: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    arb_qf_formula(vars).prop_recursive(2, 16, 2, move |inner| {
        prop_oneof![
            (prop::sample::select(vars), inner.clone()).prop_map(|(x, b)| Formula::forall(x, b)),
            (prop::sample::select(vars), inner.clone()).prop_map(|(x, b)| Formula::exists(x, b)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::imp(l, r)),
        ]
    })
}
