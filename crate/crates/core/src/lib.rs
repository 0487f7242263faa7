//! Composite/prime decisions, widths and witness decompositions for
//! permutation, commutative permutation and unary DFAs, with brute-force
//! oracles to cross-check them.
//!
//! A DFA is composite when its language is the intersection of the languages
//! of strictly smaller DFAs; its width is the fewest such factors needed.

pub mod algebra;
pub mod cli;
pub mod commutative;
pub mod dfa;
pub mod error;
pub mod generators;
pub mod oracle;
pub mod orbit;
pub mod setcover;
pub mod unary;
pub mod util;

pub use algebra::{verify_decomposition, Decomposition, DecompositionIssue};
pub use dfa::{classify, parse_dfa, Dfa, DfaClass, Letter, State, Word};
pub use error::{Error, Result};
