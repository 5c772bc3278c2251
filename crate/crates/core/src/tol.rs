//! Numeric tolerances shared across the crate.

/// Probability sums and normalization checks.
pub const PROB: f64 = 1e-12;

/// Default strict-vs-indifferent threshold on rule scores.
pub const SCORE: f64 = 1e-12;

/// Derived comparisons: welfare-function property checks, recovery.
pub const DERIVED: f64 = 1e-9;

/// Margin an individual's utility difference must clear before the harness
/// treats it as a strict individual preference in an axiom premise.
pub const PREMISE: f64 = 1e-9;
