//! Aggregation of subjective expected utility preferences under uncertainty.
//!
//! The crate covers the relative fair family of rules (minimum over a weight
//! polytope of 0–1 normalized expected utilities), its utilitarian, maximin,
//! leximin and variational relatives, a set of counterexample rules, and a
//! randomized harness that audits each axiom against any rule.

pub mod error;
pub mod gallery;
pub mod geometry;
pub mod harness;
pub mod mixing;
pub mod model;
pub mod rng;
pub mod rules;
pub mod schema;
pub mod tol;
pub mod verdict;
pub mod welfare;

pub use error::{Error, Result};
