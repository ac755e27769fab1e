//! Letters, cyclic and partial words, the rewriting rules and the
//! reducibility deciders.

mod cyclic;
mod decide;
mod letter;
pub mod oracle;
mod rules;

use thiserror::Error;

pub use cyclic::{CyclicWord, PartialWord};
pub use decide::{
    is_omega_reducible, is_r_omega_reducible, Decider, Decision, ReductionTrace, TraceStep,
};
pub use letter::{format_letters, parse_letters, Letter};
pub use oracle::{brute_force_oracle, Target};
pub use rules::{l_reduce, Rewrite, Rule, Site};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("rule {rule} does not match {len} letters at position {start} of {word}")]
    InvalidSite {
        rule: Rule,
        start: usize,
        len: usize,
        word: String,
    },
    #[error("R-reducibility is only defined for odd length, got length {0}")]
    EvenLengthPartial(usize),
    #[error("word length {len} exceeds the oracle bound {bound}")]
    LengthBoundExceeded { len: usize, bound: usize },
    #[error("trace step {step}: expected {expected}, found {found}")]
    TraceMismatch {
        step: usize,
        expected: String,
        found: String,
    },
}
