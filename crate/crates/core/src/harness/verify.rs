//! Running extracted programs against the Π₂ formulas they were extracted from.

use rayon::prelude::*;
use thiserror::Error;

use crate::extract::extract;
use crate::kernel::CheckedProof;
use crate::logic::{eval_qf, Env, Formula};
use crate::reduce::{normalize, DEFAULT_FUEL};
use crate::term::{denote_arithmetical, numeral, Term};

use super::corpus::build_lemma_proof;

/// Why a program failed to produce a numeral.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Stuck {
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { steps: u64 },
    #[error("normal form `{0}` is not a numeral")]
    NotNumeral(Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Value(u64),
    Stuck(Stuck),
}

/// Result of one program run: the witness and the steps spent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub witness: Witness,
    pub steps: u64,
}

/// Normalizes `left (program args...)` and reads off the numeral.
pub fn run_witness(program: &Term, args: &[u64], fuel: u64) -> Run {
    let applied = Term::left(Term::apps(
        program.clone(),
        args.iter().map(|&a| numeral(a)),
    ));
    match normalize(&applied, fuel) {
        Ok(nf) => {
            // Tags come out as the constant `1`, which denotes but is not
            // canonical, so any closed arithmetical normal form counts.
            let witness = match denote_arithmetical(&nf.term) {
                Some(v) => Witness::Value(v),
                None => Witness::Stuck(Stuck::NotNumeral(nf.term)),
            };
            Run {
                witness,
                steps: nf.steps,
            }
        }
        Err(e) => Run {
            witness: Witness::Stuck(Stuck::FuelExhausted { steps: e.steps }),
            steps: e.steps,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyEntry {
    pub inputs: Vec<u64>,
    pub witness: Witness,
    pub holds: bool,
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub spec: Formula,
    pub bound: u64,
    pub results: Vec<VerifyEntry>,
    pub all_pass: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|e| e.holds).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyEntry> {
        self.results.iter().filter(|e| !e.holds)
    }

    pub fn max_steps(&self) -> u64 {
        self.results.iter().map(|e| e.steps).max().unwrap_or(0)
    }

    pub fn stuck_count(&self) -> usize {
        self.results
            .iter()
            .filter(|e| matches!(e.witness, Witness::Stuck(_)))
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("`{0}` is not of the form forall ... exists y. G with G quantifier-free")]
    NotPi2(Formula),
    #[error("proof has open assumptions: {}", .0.join(", "))]
    OpenProof(Vec<String>),
}

/// Splits `forall x1 ... xk. exists y. G` into its parts.
pub fn pi2_shape(f: &Formula) -> Option<(Vec<String>, &str, &Formula)> {
    let mut universals = Vec::new();
    let mut cur = f;
    while let Formula::Forall(x, body) = cur {
        universals.push(x.clone());
        cur = body;
    }
    match cur {
        Formula::Exists(y, g) if g.is_quantifier_free() => Some((universals, y, g)),
        _ => None,
    }
}

fn input_tuples(arity: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut tuples = vec![Vec::new()];
    for _ in 0..arity {
        tuples = tuples
            .into_iter()
            .flat_map(|prefix| {
                (0..=bound).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    tuples
}

/// Runs the realizer of `cp` on every input in `0..=bound` per universal
/// variable and checks the quantifier-free matrix on the produced witness.
/// Inputs are evaluated in parallel; results keep lexicographic input order.
pub fn verify_pi2(cp: &CheckedProof, bound: u64, fuel: u64) -> Result<VerifyReport, VerifyError> {
    if !cp.is_closed() {
        return Err(VerifyError::OpenProof(
            cp.open_assumptions().keys().cloned().collect(),
        ));
    }
    let spec = cp.conclusion().clone();
    let (universals, y, matrix) =
        pi2_shape(&spec).ok_or_else(|| VerifyError::NotPi2(spec.clone()))?;
    let program = extract(cp);

    let results: Vec<VerifyEntry> = input_tuples(universals.len(), bound)
        .into_par_iter()
        .map(|inputs| {
            let run = run_witness(&program, &inputs, fuel);
            let holds = match run.witness {
                Witness::Value(w) => {
                    let env = Env::from(
                        universals
                            .iter()
                            .cloned()
                            .zip(inputs.iter().copied())
                            .chain([(y.to_string(), w)]),
                    );
                    eval_qf(matrix, &env) == Ok(true)
                }
                Witness::Stuck(_) => false,
            };
            VerifyEntry {
                inputs,
                witness: run.witness,
                holds,
                steps: run.steps,
            }
        })
        .collect();
    let all_pass = results.iter().all(|e| e.holds);
    Ok(VerifyReport {
        spec,
        bound,
        results,
        all_pass,
    })
}

fn lemma_program() -> Term {
    let cp = crate::kernel::check(&build_lemma_proof()).expect("built-in lemma proof checks");
    extract(&cp)
}

/// The tag `left (E a b)` produced by the lemma's realizer.
pub fn comparator_tag(a: u64, b: u64, fuel: u64) -> Witness {
    run_witness(&lemma_program(), &[a, b], fuel).witness
}

/// True iff for all `a, b <= bound` the lemma's realizer yields tag 0 or 1,
/// with 0 only when `a >= b` and 1 only when `b >= a`.
pub fn comparator_semantics(bound: u64) -> bool {
    let program = lemma_program();
    input_tuples(2, bound).into_par_iter().all(|ab| {
        let (a, b) = (ab[0], ab[1]);
        match run_witness(&program, &ab, DEFAULT_FUEL).witness {
            Witness::Value(0) => a >= b,
            Witness::Value(1) => b >= a,
            _ => false,
        }
    })
}

/// Normalization step counts of `left (E a a)` for the lemma's realizer.
pub fn linearity_probe(sizes: &[u64]) -> Result<Vec<(u64, u64)>, Stuck> {
    let program = lemma_program();
    sizes
        .iter()
        .map(|&a| {
            let run = run_witness(&program, &[a, a], DEFAULT_FUEL);
            match run.witness {
                Witness::Value(_) => Ok((a, run.steps)),
                Witness::Stuck(s) => Err(s),
            }
        })
        .collect()
}
