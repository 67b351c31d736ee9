//! Rank-metric codes over finite field extensions, relative generalized rank weights,
//! nested coset coding for secure network coding, and exhaustive checkers for its
//! security and error-correction guarantees.

pub mod acceptance;
pub mod codes;
pub mod config;
pub mod error;
pub mod field;
pub mod coset_scheme;
pub mod decoder;
pub mod linalg;
pub mod network;
pub mod rank_metrics;
pub mod security;
pub mod subspaces;

pub use error::{Error, Result};
pub use field::{ExtElement, Field, FieldCtx, PrimeField};
pub use linalg::{BitMatrix, ExtMatrix, Matrix, Subspace};
