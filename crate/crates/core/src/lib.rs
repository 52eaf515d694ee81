//! Trivalent semantics for indicative conditionals.
//!
//! A conditional `A -> C` takes the value of `C` when `A` is not false and is
//! indeterminate (`½`) otherwise. On top of the truth tables the crate
//! provides exact probabilities over finite world sets, decision procedures
//! for the certainty-preserving logic `C`, the strict-truth logic `SS` and
//! the uncertain-inference logic `U`, and a catalog of inference principles
//! checked against those procedures.
//!
//! ```
//! use trivalent::{Checker, Logic, Sequent};
//!
//! let mp = Sequent::parse("a -> b; a |- b").unwrap();
//! let checker = Checker::default();
//! assert!(checker.entails(Logic::C, &mp).unwrap().is_valid());
//! assert!(!checker.entails(Logic::U, &mp).unwrap().is_valid());
//! ```

pub mod catalog;
pub mod consequence;
pub mod error;
pub mod formula;
pub mod parser;
pub mod pool;
pub mod probability;
pub mod scalar;
pub mod semantics;

pub use consequence::{classical_valid, Checker, Logic, Sequent, Status, Verdict};
pub use error::{Error, Result};
pub use formula::Formula;
pub use probability::{Credence, Odds, TruthPartition};
pub use scalar::Scalar;
pub use semantics::{eval, truth_table, Limits, SemanticsConfig, TruthValue, Valuation, ValuationMode, WorldSpace};

/// Arbitrary-precision rational, the default weight type.
pub type Rational = num_rational::BigRational;
/// Credence with exact weights.
pub type ExactCredence = Credence<Rational>;
/// Credence with `f64` weights, for quick numerical work.
pub type FloatCredence = Credence<f64>;
