//! Universal cycles and `s`-overlap cycles for weak orders.
//!
//! Weak orders on `[n]` are handled as height words (see [`word`]). A
//! [`Family`] of equal-length words is turned into a [`TransitionGraph`]
//! whose Euler tours spell overlap cycles ([`euler`]); every cycle can be
//! checked independently against the enumerated family ([`oracle`]).
//!
//! ```
//! use weakorder_cycles::{generate_ucycle, verify, Family};
//!
//! let w3: Family = "wn:n=3".parse().unwrap();
//! let cycle = generate_ucycle(&w3).unwrap();
//! assert_eq!(cycle.len(), 13);
//! assert!(verify(&cycle, &w3).unwrap().ok);
//! ```

pub mod cli;
pub mod euler;
pub mod family;
pub mod graph;
pub mod oracle;
pub mod word;

pub use euler::{euler_tour, generate, generate_ucycle, spell, CycleResult, EulerError};
pub use family::{Family, FamilyError, WordList};
pub use graph::{GraphError, GraphSummary, TransitionGraph};
pub use oracle::{
    decompose_weight, verify, verify_symbols, OracleError, VerificationReport, WeightDecomposition,
};
pub use word::{
    format_relation, parse_relation, HeightWord, OrderedPartition, PartialWord, Symbol, WordError,
};
