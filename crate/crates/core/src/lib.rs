//! Lyndon-word machinery for squares and runs.
//!
//! * [`text`]: texts, the two opposite lexicographic orders, periods.
//! * [`lyndon`]: Lyndon words, factorizations and Lyndon trees.
//! * [`repetitions`]: runs and their L-roots.
//! * [`squares`]: primitively rooted squares, square prefixes.
//! * [`lemmas`]: exhaustive checkers for the structural lemmas.
//! * [`analysis`]: everything above for one text, in one report.
//! * [`bounds`]: the `S(n)` recurrence, `psq(n)` maxima, Fibonacci words.

pub mod analysis;
pub mod bounds;
mod enumerate;
pub mod error;
pub mod lemmas;
pub mod lyndon;
pub mod repetitions;
pub mod squares;
pub mod text;

pub use enumerate::{map_chunks, Budget, Chunk};
pub use error::{Error, Partial, Result};
pub use text::{Interval, LexOrder, Text};
