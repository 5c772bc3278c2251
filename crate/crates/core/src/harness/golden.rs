//! Hand-built instances tried before any random trial.
//!
//! Each instance is a known violation for at least one counterexample rule;
//! for every other rule it is just one more trial.

use super::checks::Witness;
use super::generate::expand_with;
use super::Axiom;
use crate::error::Result;
use crate::mixing::problem_with_event;
use crate::model::{Act, Individual, Problem};

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn one_cell(outcomes: &[&str], values: &[&[f64]]) -> Result<Problem> {
    let individuals = values.iter().map(|v| Individual::new(v.to_vec(), vec![1.0])).collect();
    Problem::new(labels(outcomes), labels(&["all"]), individuals)
}

fn pareto() -> Result<Witness> {
    let problem = one_cell(&["hi", "lo"], &[&[1.0, 0.0], &[1.0, 0.0]])?;
    Ok(Witness::Pareto { problem, f: Act(vec![0]), g: Act(vec![1]) })
}

/// `U*(f) = (0.5, 1)` against `U*(g) = (0.5, 0.5)`.
fn strong_pareto() -> Result<Witness> {
    let problem = one_cell(&["hi", "lo", "f", "g"], &[&[1.0, 0.0, 0.5, 0.5], &[1.0, 0.0, 1.0, 0.5]])?;
    Ok(Witness::StrongPareto { problem, f: Act(vec![2]), g: Act(vec![3]) })
}

/// Five outcomes and then six: the parity rule switches from the sum to the
/// minimum, and `x` (sum 1.1, min 0.2) trades places with `y` (0.8, 0.4).
fn iie() -> Result<Witness> {
    let problem = one_cell(
        &["a", "b", "x", "y", "z"],
        &[&[1.0, 0.0, 0.2, 0.4, 0.5], &[0.0, 1.0, 0.9, 0.4, 0.5]],
    )?;
    let expanded = expand_with(&problem, "w", &[0.5, 0.5])?;
    Ok(Witness::Iie { problem, expanded, f: Act(vec![2]), g: Act(vec![3]) })
}

fn wpm() -> Result<Witness> {
    let problem = one_cell(&["x", "y"], &[&[1.0, 0.0], &[0.0, 1.0]])?;
    Ok(Witness::Wpm { problem, x: 0, y: 1 })
}

/// Same values, beliefs on `{A, B}` swapped between the two profiles.
fn belief_irrelevance() -> Result<Witness> {
    let build = |p: [f64; 2], q: [f64; 2]| {
        Problem::new(
            labels(&["x", "y"]),
            labels(&["A", "B"]),
            vec![Individual::new(vec![1.0, 0.0], p.to_vec()), Individual::new(vec![0.0, 1.0], q.to_vec())],
        )
    };
    let problem = build([0.9, 0.1], [0.1, 0.9])?;
    let other = build([0.1, 0.9], [0.9, 0.1])?;
    Ok(Witness::BeliefIrrelevance { problem, other, x: 0, y: 1 })
}

/// `U*(f) = (0.5, 0.5)`, `U*(g) = (0.9, 0.2)`; mixing both with the common
/// best outcome at one half gives `(0.75, 0.75)` and `(0.95, 0.6)`.
fn rci() -> Result<Witness> {
    let problem = Problem::new(
        labels(&["hi", "lo"]),
        labels(&["c0", "c1", "c2", "c3"]),
        vec![
            Individual::new(vec![1.0, 0.0], vec![0.45, 0.05, 0.45, 0.05]),
            Individual::new(vec![1.0, 0.0], vec![0.1, 0.4, 0.1, 0.4]),
        ],
    )?;
    Ok(Witness::Rci { problem, f: Act(vec![1, 0, 0, 1]), g: Act(vec![0, 1, 0, 1]), x: 0, alpha: 0.5 })
}

/// `xEy` with `q = (0.1, 0.9)` has profile `(0.1, 0.1)`.
fn spm() -> Result<Witness> {
    let (problem, event) = problem_with_event(&labels(&["x", "y"]), vec![vec![1.0, 0.0], vec![0.0, 1.0]], &[0.1, 0.9])?;
    Ok(Witness::Spm { problem, event, x: 0, y: 1 })
}

/// Common values; `f = hi E lo` has profile `(0.9, 0.1)` and the middle
/// outcome gives `(0.5, 0.5)`.
fn saa() -> Result<Witness> {
    let (problem, event) = problem_with_event(&labels(&["hi", "mid", "lo"]), vec![vec![1.0, 0.5, 0.0]; 2], &[0.9, 0.1])?;
    let f = crate::mixing::binary_act(&problem, 0, &event, 2)?;
    Ok(Witness::Saa { problem, x: 1, f })
}

/// Golden instances for `axiom` with `n` individuals.
pub fn golden_witnesses(axiom: Axiom, n: usize) -> Result<Vec<Witness>> {
    if n != 2 {
        return Ok(Vec::new());
    }
    Ok(match axiom {
        Axiom::Pareto => vec![pareto()?],
        Axiom::StrongPareto => vec![strong_pareto()?],
        Axiom::Iie => vec![iie()?],
        Axiom::Wpm => vec![wpm()?],
        Axiom::Spm => vec![spm()?],
        Axiom::BeliefIrrelevance => vec![belief_irrelevance()?],
        Axiom::Rci => vec![rci()?],
        Axiom::Saa => vec![saa()?],
        _ => Vec::new(),
    })
}
