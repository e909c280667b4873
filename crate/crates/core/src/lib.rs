//! Automatic sequences read through their naturally induced transducers.
//!
//! The crate turns a deterministic finite automaton with output into a
//! synchronizing transducer whose outputs are permutations, extracts the
//! group structure of that transducer, and uses it to predict and measure
//! the behaviour of the sequence along primes, against the Möbius function
//! and under exponential sums.

pub mod automaton;
mod bits;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod group_structure;
pub mod harmonic;
pub mod numbertheory;
pub mod perm;
pub mod transducer;

pub use automaton::{Dfao, DigitSystem, Label, Word};
pub use error::{Error, Result};
pub use group_structure::{analyze, Analysis, StructureConfig, StructureReport};
pub use perm::{GroupTable, Perm};
pub use transducer::Transducer;
