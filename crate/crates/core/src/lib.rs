//! Barrier combinatorics, block Ramsey searches, exact sup-family norms,
//! block oscillation measurement and block asymptotic models, all at finite
//! scale with exact rational arithmetic.

pub mod barrier;
pub mod block;
pub mod cli;
pub mod error;
pub mod model;
pub mod norm;
pub mod ordinal;
pub mod oscillation;
pub mod ramsey;
pub mod ratio;
pub mod section6;
pub mod sets;

pub use barrier::{BarrierDescriptor, RankReport};
pub use error::{Error, Result};
pub use ordinal::{ordinal_compare, Ordinal};
pub use ramsey::Search;
pub use ratio::Rational;
pub use sets::{compare_sets, set, FiniteSet, SetGenerator};
