//! Exact q-specializations of monomial symmetric functions.
//!
//! The crate evaluates `m_mu` on the formal alphabet `(a - b)/(1 - q)`
//! through two closed forms over the distinct rearrangements of `mu`, checks
//! them against brute-force oracles, verifies the symmetrized rational
//! identities they imply, builds the positivity polynomial `H_mu(q, t)`, and
//! expands the row Macdonald polynomial `g_n(X; q, t)` on six bases.
//!
//! All arithmetic is exact: rationals are arbitrary precision and rational
//! functions are compared by cross-multiplication.

pub mod error;
pub mod fraction;
pub mod identities;
pub mod json;
pub mod macdonald;
pub mod partition;
pub mod poly;
pub mod positivity;
pub mod rational;
pub mod report;
pub mod selftest;
pub mod series;
pub mod specialization;
pub mod text;
pub mod verify;

pub mod cli;

pub use error::{Error, Result};
pub use fraction::{frac_eq, FactoredFraction};
pub use partition::{Derangement, Partition, PermutationWithCycles};
pub use poly::{poly_mul, Monomial, Polynomial, Universe};
pub use rational::Rational;
