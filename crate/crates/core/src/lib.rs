//! Pseudoquotients `x/f` for a semigroup `S` of injections of a set `X` satisfying the Ore
//! condition and right cancellation.
//!
//! * [`action`] declares the interface an instance implements.
//! * [`calculus`] derives equivalence, the embedding of `X`, the extension of `S` to
//!   bijections of the pseudoquotient space, and the group of left fractions.
//! * [`instances`] holds four exact-arithmetic instances.
//! * [`laws`] checks the construction's laws on randomly sampled data.
//! * [`verifier`] checks injectivity, the Ore condition and cancellation up to a word-length
//!   bound for finitely generated presentations.

pub mod action;
pub mod calculus;
pub mod error;
pub mod instances;
pub mod laws;
pub mod linalg;
pub mod sampling;
pub mod verifier;

pub use action::{GroupFraction, OreAction, OreWitness, Pseudoquotient};
pub use calculus::Calculus;
pub use error::{Error, Result};
pub use sampling::RandomSample;
