//! Built-in proofs, semantic verification of extracted programs, and a
//! mutation suite for the checker.

mod corpus;
mod mutants;
mod verify;

pub use corpus::{
    build_lemma_proof, build_max_proof, comparison_motive, lemma_statement, max_body,
    max_statement, DISPLAYED_LEMMA_TERM, DISPLAYED_MAX_TERM,
};
pub use mutants::{mutation_suite, Mutant};
pub use verify::{
    comparator_semantics, comparator_tag, linearity_probe, pi2_shape, run_witness, verify_pi2, Run,
    Stuck, VerifyEntry, VerifyError, VerifyReport, Witness,
};
