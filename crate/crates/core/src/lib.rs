//! Randomized approximation of NFA universality under word distributions.
//!
//! The crate provides automaton representations and certificates, length
//! distributions with exact samplers, Monte Carlo estimators of the
//! universality index together with the decision procedures built on them,
//! brute-force oracles for small instances, and the reduction from block-NFA
//! universality to the threshold problem.

pub mod automata;
pub mod distributions;
pub mod error;
pub mod estimators;
pub mod format;
pub mod oracle;
pub mod reduction;
pub mod sampling;
mod util;

pub use automata::{
    certify_acyclic, certify_block, complement_dfa, union_nfa, AdfaCertificate, BlockCertificate,
    Dfa, Nfa, StateId, Symbol, Word,
};
pub use distributions::{augment, zeta, AugmentedTable, Family, LengthDistribution, WordDistribution, ZetaValue};
pub use error::{Error, Result};
pub use format::{parse_dfa, parse_nfa, write_nfa};
pub use sampling::{RngStream, WordSampler};
pub use util::ratio_to_f64;
