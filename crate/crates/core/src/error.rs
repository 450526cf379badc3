use thiserror::Error;

use crate::automata::{StateId, Symbol};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("symbol {symbol} is outside the alphabet 0..{alphabet_size}")]
    SymbolOutOfRange { symbol: Symbol, alphabet_size: u32 },

    #[error("state {state} is outside the valid range 0..{states}")]
    StateOutOfRange { state: StateId, states: usize },

    #[error("automaton is not deterministic: {0}")]
    NotDeterministic(String),

    /// The reachable part of a DFA contains a cycle.
    #[error("automaton has a cycle among reachable states (through state {0})")]
    NotAcyclic(StateId),

    /// The automaton accepts words of two different lengths.
    #[error("automaton accepts words of lengths {0} and {1}, not a block automaton")]
    NotBlock(usize, usize),

    #[error("automaton accepts the empty language")]
    EmptyLanguage,

    #[error("alphabet mismatch: expected size {expected}, found {found}")]
    AlphabetMismatch { expected: u32, found: u32 },

    #[error("Dirichlet exponent {0} <= 2 has infinite expected length")]
    InfiniteExpectation(f64),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("operation requires a length-based word distribution")]
    NotLengthBased,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
