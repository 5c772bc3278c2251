//! Problems, acts, and subjective expected utility with 0–1 normalization.
//!
//! A [`Problem`] fixes a finite outcome set, a finite partition of the state
//! space into labelled cells, and one `(values, belief)` pair per individual.
//! Acts assign an outcome to every cell. All indices are positional: outcome
//! `k` is `problem.outcomes()[k]`, cell `c` is `problem.cells()[c]`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// One individual's primitives: a value per outcome and a probability per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub values: Vec<f64>,
    pub belief: Vec<f64>,
}

impl Individual {
    pub fn new(values: Vec<f64>, belief: Vec<f64>) -> Self {
        Individual { values, belief }
    }
}

/// A violated structural invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    TooFewOutcomes { found: usize },
    TooFewIndividuals { found: usize },
    EmptyPartition,
    EmptyLabel,
    DuplicateOutcome { label: String },
    DuplicateCell { label: String },
    MissingValue { individual: usize, outcome: String },
    MissingBelief { individual: usize, cell: String },
    UnknownLabel { individual: usize, label: String },
    NonFiniteValue { individual: usize },
    ConstantValueFunction { individual: usize },
    NegativeProbability { individual: usize, cell: String },
    BeliefNotNormalized { individual: usize, sum: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewOutcomes { found } => write!(f, "need at least 2 outcomes, found {found}"),
            Violation::TooFewIndividuals { found } => {
                write!(f, "need at least 2 individuals, found {found}")
            }
            Violation::EmptyPartition => write!(f, "partition has no cells"),
            Violation::EmptyLabel => write!(f, "empty label"),
            Violation::DuplicateOutcome { label } => write!(f, "duplicate outcome `{label}`"),
            Violation::DuplicateCell { label } => write!(f, "duplicate cell `{label}`"),
            Violation::MissingValue { individual, outcome } => {
                write!(f, "individual {individual} has no value for outcome `{outcome}`")
            }
            Violation::MissingBelief { individual, cell } => {
                write!(f, "individual {individual} has no probability for cell `{cell}`")
            }
            Violation::UnknownLabel { individual, label } => {
                write!(f, "individual {individual} references unknown label `{label}`")
            }
            Violation::NonFiniteValue { individual } => {
                write!(f, "individual {individual} has a non-finite number")
            }
            Violation::ConstantValueFunction { individual } => {
                write!(f, "individual {individual} has a constant value function")
            }
            Violation::NegativeProbability { individual, cell } => {
                write!(f, "individual {individual} has negative probability on `{cell}`")
            }
            Violation::BeliefNotNormalized { individual, sum } => {
                write!(f, "belief of individual {individual} sums to {sum}")
            }
        }
    }
}

/// Checks every structural invariant of a problem given in positional form.
pub fn validate_parts(
    outcomes: &[String],
    cells: &[String],
    individuals: &[Individual],
) -> Vec<Violation> {
    let mut out = Vec::new();
    if outcomes.len() < 2 {
        out.push(Violation::TooFewOutcomes { found: outcomes.len() });
    }
    if individuals.len() < 2 {
        out.push(Violation::TooFewIndividuals { found: individuals.len() });
    }
    if cells.is_empty() {
        out.push(Violation::EmptyPartition);
    }
    if outcomes.iter().chain(cells).any(|l| l.is_empty()) {
        out.push(Violation::EmptyLabel);
    }
    let mut seen = HashSet::new();
    for label in outcomes {
        if !seen.insert(label.as_str()) {
            out.push(Violation::DuplicateOutcome { label: label.clone() });
        }
    }
    seen.clear();
    for label in cells {
        if !seen.insert(label.as_str()) {
            out.push(Violation::DuplicateCell { label: label.clone() });
        }
    }
    for (i, ind) in individuals.iter().enumerate() {
        if ind.values.len() != outcomes.len() {
            for label in outcomes.iter().skip(ind.values.len()) {
                out.push(Violation::MissingValue { individual: i, outcome: label.clone() });
            }
        }
        if ind.belief.len() != cells.len() {
            for label in cells.iter().skip(ind.belief.len()) {
                out.push(Violation::MissingBelief { individual: i, cell: label.clone() });
            }
        }
        if ind.values.iter().chain(&ind.belief).any(|v| !v.is_finite()) {
            out.push(Violation::NonFiniteValue { individual: i });
            continue;
        }
        if let Some((lo, hi)) = min_max(&ind.values) {
            if hi <= lo {
                out.push(Violation::ConstantValueFunction { individual: i });
            }
        }
        for (c, &p) in ind.belief.iter().enumerate() {
            if p < 0.0 {
                let cell = cells.get(c).cloned().unwrap_or_default();
                out.push(Violation::NegativeProbability { individual: i, cell });
            }
        }
        let sum: f64 = ind.belief.iter().sum();
        if !ind.belief.is_empty() && (sum - 1.0).abs() > tol::PROB {
            out.push(Violation::BeliefNotNormalized { individual: i, sum });
        }
    }
    out
}

/// Validates a problem document, including label coverage of the maps.
pub fn validate_problem(doc: &ProblemDoc) -> Vec<Violation> {
    match doc.to_parts() {
        Ok((outcomes, cells, individuals)) => validate_parts(&outcomes, &cells, &individuals),
        Err(v) => v,
    }
}

fn min_max(values: &[f64]) -> Option<(f64, f64)> {
    let mut it = values.iter().copied();
    let first = it.next()?;
    Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
}

/// Rescales `values` so that the minimum maps to 0 and the maximum to 1.
pub fn normalize(values: &[f64]) -> Option<Vec<f64>> {
    let (lo, hi) = min_max(values)?;
    if hi <= lo {
        return None;
    }
    let span = hi - lo;
    Some(values.iter().map(|v| (v - lo) / span).collect())
}

/// A validated social choice problem. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProblemDoc", into = "ProblemDoc")]
pub struct Problem {
    outcomes: Vec<String>,
    cells: Vec<String>,
    individuals: Vec<Individual>,
    normalized: Vec<Vec<f64>>,
}

impl Problem {
    pub fn new(outcomes: Vec<String>, cells: Vec<String>, individuals: Vec<Individual>) -> Result<Self> {
        let violations = validate_parts(&outcomes, &cells, &individuals);
        if !violations.is_empty() {
            return Err(Error::InvalidProblem(violations));
        }
        let normalized = individuals
            .iter()
            .map(|ind| normalize(&ind.values).expect("validated non-constant"))
            .collect();
        Ok(Problem { outcomes, cells, individuals, normalized })
    }

    /// Convenience constructor with `&str` labels.
    pub fn from_labels(outcomes: &[&str], cells: &[&str], individuals: Vec<Individual>) -> Result<Self> {
        Problem::new(
            outcomes.iter().map(|s| s.to_string()).collect(),
            cells.iter().map(|s| s.to_string()).collect(),
            individuals,
        )
    }

    pub fn n(&self) -> usize {
        self.individuals.len()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn cells(&self) -> &[String] {
        &self.cells
    }

    pub fn individuals(&self) -> &[Individual] {
        &self.individuals
    }

    pub fn individual(&self, i: usize) -> Result<&Individual> {
        self.individuals.get(i).ok_or(Error::UnknownIndividual(i))
    }

    pub fn outcome_index(&self, label: &str) -> Result<usize> {
        self.outcomes
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| Error::UnknownOutcome(label.to_string()))
    }

    pub fn cell_index(&self, label: &str) -> Result<usize> {
        self.cells
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| Error::UnknownCell(label.to_string()))
    }

    /// Cached 0–1 normalized value function of individual `i`.
    pub fn normalized_values(&self, i: usize) -> Result<&[f64]> {
        self.normalized.get(i).map(Vec::as_slice).ok_or(Error::UnknownIndividual(i))
    }

    /// True when every individual has the same normalized value function.
    pub fn has_common_values(&self) -> bool {
        self.normalized.windows(2).all(|w| w[0] == w[1])
    }

    /// Same outcomes and partition, new individuals.
    pub fn with_individuals(&self, individuals: Vec<Individual>) -> Result<Self> {
        Problem::new(self.outcomes.clone(), self.cells.clone(), individuals)
    }

    /// Probability each individual assigns to a set of cells.
    pub fn event_probability(&self, i: usize, event: &[usize]) -> Result<f64> {
        let belief = &self.individual(i)?.belief;
        event
            .iter()
            .map(|&c| belief.get(c).copied().ok_or_else(|| Error::UnknownCell(c.to_string())))
            .sum()
    }

    /// Probability mass each outcome receives under `act` for individual `i`.
    ///
    /// The outcome with the largest mass absorbs the rounding residual so the
    /// masses sum to exactly one; constant acts therefore evaluate exactly.
    pub fn outcome_masses(&self, i: usize, act: &Act) -> Result<Vec<f64>> {
        self.check_act(act)?;
        let belief = &self.individual(i)?.belief;
        let mut mass = vec![0.0; self.outcomes.len()];
        for (c, &o) in act.0.iter().enumerate() {
            mass[o] += belief[c];
        }
        let (heavy, _) = mass
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, &m)| if m > best.1 { (k, m) } else { best });
        let rest: f64 = mass.iter().enumerate().filter(|&(k, _)| k != heavy).map(|(_, m)| m).sum();
        mass[heavy] = 1.0 - rest;
        Ok(mass)
    }

    pub fn check_act(&self, act: &Act) -> Result<()> {
        if act.0.len() != self.cells.len() {
            return Err(Error::PartitionMismatch { expected: self.cells.len(), found: act.0.len() });
        }
        if let Some(&bad) = act.0.iter().find(|&&o| o >= self.outcomes.len()) {
            return Err(Error::UnknownOutcome(format!("#{bad}")));
        }
        Ok(())
    }
}

/// An act: entry `c` is the index of the outcome assigned to cell `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Act(pub Vec<usize>);

impl Act {
    pub fn constant(problem: &Problem, outcome: usize) -> Result<Self> {
        if outcome >= problem.outcomes().len() {
            return Err(Error::UnknownOutcome(format!("#{outcome}")));
        }
        Ok(Act(vec![outcome; problem.cells().len()]))
    }

    /// Builds an act from `(cell label, outcome label)` pairs covering every cell.
    pub fn from_labels<'a, I>(problem: &Problem, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut slots: Vec<Option<usize>> = vec![None; problem.cells().len()];
        for (cell, outcome) in pairs {
            let c = problem.cell_index(cell)?;
            slots[c] = Some(problem.outcome_index(outcome)?);
        }
        slots
            .into_iter()
            .enumerate()
            .map(|(c, o)| o.ok_or_else(|| Error::UnknownCell(problem.cells()[c].clone())))
            .collect::<Result<Vec<_>>>()
            .map(Act)
    }

    pub fn outcomes(&self) -> &[usize] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

/// The 0–1 normalized value function of individual `i`.
pub fn normalize_values(problem: &Problem, i: usize) -> Result<Vec<f64>> {
    let values = &problem.individual(i)?.values;
    normalize(values).ok_or(Error::ConstantValueFunction(i))
}

/// Raw subjective expected utility of `act` for individual `i`.
pub fn seu(problem: &Problem, i: usize, act: &Act) -> Result<f64> {
    let mass = problem.outcome_masses(i, act)?;
    let values = &problem.individual(i)?.values;
    Ok(mass.iter().zip(values).map(|(m, v)| m * v).sum())
}

/// Subjective expected utility under the 0–1 normalized value function.
pub fn normalized_seu(problem: &Problem, i: usize, act: &Act) -> Result<f64> {
    let mass = problem.outcome_masses(i, act)?;
    let values = problem.normalized_values(i)?;
    Ok(mass.iter().zip(values).map(|(m, v)| m * v).sum())
}

/// The vector of normalized SEU values, one entry per individual.
pub fn normalized_profile(problem: &Problem, act: &Act) -> Result<Vec<f64>> {
    (0..problem.n()).map(|i| normalized_seu(problem, i, act)).collect()
}

/// Outcome labels, cell labels and individuals.
pub type Parts = (Vec<String>, Vec<String>, Vec<Individual>);

/// Serialized form of a problem: labels plus per-individual maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemDoc {
    pub outcomes: Vec<String>,
    pub partition: Vec<String>,
    pub individuals: Vec<IndividualDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndividualDoc {
    pub values: BTreeMap<String, f64>,
    pub belief: BTreeMap<String, f64>,
}

impl ProblemDoc {
    /// Resolves label maps to positional vectors; reports coverage problems.
    pub fn to_parts(&self) -> std::result::Result<Parts, Vec<Violation>> {
        let mut violations = Vec::new();
        let mut individuals = Vec::with_capacity(self.individuals.len());
        for (i, ind) in self.individuals.iter().enumerate() {
            let mut values = Vec::with_capacity(self.outcomes.len());
            for o in &self.outcomes {
                match ind.values.get(o) {
                    Some(&v) => values.push(v),
                    None => violations.push(Violation::MissingValue { individual: i, outcome: o.clone() }),
                }
            }
            let mut belief = Vec::with_capacity(self.partition.len());
            for c in &self.partition {
                match ind.belief.get(c) {
                    Some(&p) => belief.push(p),
                    None => violations.push(Violation::MissingBelief { individual: i, cell: c.clone() }),
                }
            }
            for label in ind.values.keys().filter(|k| !self.outcomes.contains(k)) {
                violations.push(Violation::UnknownLabel { individual: i, label: label.clone() });
            }
            for label in ind.belief.keys().filter(|k| !self.partition.contains(k)) {
                violations.push(Violation::UnknownLabel { individual: i, label: label.clone() });
            }
            individuals.push(Individual { values, belief });
        }
        if violations.is_empty() {
            Ok((self.outcomes.clone(), self.partition.clone(), individuals))
        } else {
            Err(violations)
        }
    }
}

impl TryFrom<ProblemDoc> for Problem {
    type Error = Error;

    fn try_from(doc: ProblemDoc) -> Result<Self> {
        let (outcomes, cells, individuals) = doc.to_parts().map_err(Error::InvalidProblem)?;
        Problem::new(outcomes, cells, individuals)
    }
}

impl From<Problem> for ProblemDoc {
    fn from(p: Problem) -> Self {
        ProblemDoc::from(&p)
    }
}

impl From<&Problem> for ProblemDoc {
    fn from(p: &Problem) -> Self {
        let individuals = p
            .individuals
            .iter()
            .map(|ind| IndividualDoc {
                values: p.outcomes.iter().cloned().zip(ind.values.iter().copied()).collect(),
                belief: p.cells.iter().cloned().zip(ind.belief.iter().copied()).collect(),
            })
            .collect();
        ProblemDoc { outcomes: p.outcomes.clone(), partition: p.cells.clone(), individuals }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cells(values: [Vec<f64>; 2], beliefs: [Vec<f64>; 2]) -> Problem {
        let [v1, v2] = values;
        let [b1, b2] = beliefs;
        Problem::from_labels(
            &["a", "b", "c"][..v1.len()],
            &["s1", "s2"][..b1.len()],
            vec![Individual::new(v1, b1), Individual::new(v2, b2)],
        )
        .unwrap()
    }

    #[test]
    fn normalize_rescales_to_unit_interval() {
        let p = two_cells([vec![0.0, 2.0, 4.0], vec![5.0, 5.0, 7.0]], [vec![1.0], vec![1.0]]);
        assert_eq!(normalize_values(&p, 0).unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(normalize_values(&p, 1).unwrap(), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn constant_values_rejected() {
        assert!(normalize(&[3.0, 3.0, 3.0]).is_none());
        let err = Problem::from_labels(
            &["a", "b", "c"],
            &["s"],
            vec![
                Individual::new(vec![3.0, 3.0, 3.0], vec![1.0]),
                Individual::new(vec![0.0, 1.0, 2.0], vec![1.0]),
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::InvalidProblem(vec![Violation::ConstantValueFunction { individual: 0 }])
        );
    }

    #[test]
    fn seu_examples() {
        let p = two_cells([vec![0.0, 1.0], vec![4.0, 8.0]], [vec![0.5, 0.5], vec![0.25, 0.75]]);
        let f = Act::from_labels(&p, [("s1", "a"), ("s2", "b")]).unwrap();
        assert_eq!(seu(&p, 0, &f).unwrap(), 0.5);
        assert!((seu(&p, 1, &f).unwrap() - 7.0).abs() < 1e-12);
        // individual 2 normalized: a = 0, b = 1 → 0.75
        assert!((normalized_seu(&p, 1, &f).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn constant_act_evaluates_exactly() {
        let p = two_cells(
            [vec![0.0, 0.3, 1.0], vec![1.0, 0.0, 0.6]],
            [vec![0.1, 0.9], vec![0.7, 0.3]],
        );
        let b = Act::constant(&p, 1).unwrap();
        assert_eq!(seu(&p, 0, &b).unwrap(), 0.3);
        let best = Act::constant(&p, 2).unwrap();
        assert_eq!(normalized_seu(&p, 0, &best).unwrap(), 1.0);
        let worst = Act::constant(&p, 0).unwrap();
        assert_eq!(normalized_seu(&p, 0, &worst).unwrap(), 0.0);
    }

    #[test]
    fn profile_from_componentwise_seu() {
        let p = two_cells(
            [vec![0.0, 1.0, 0.5], vec![0.0, 0.6, 1.0]],
            [vec![0.5, 0.5], vec![0.5, 0.5]],
        );
        let f = Act::from_labels(&p, [("s1", "a"), ("s2", "b")]).unwrap();
        let prof = normalized_profile(&p, &f).unwrap();
        let oracle: Vec<f64> = (0..2)
            .map(|i| 0.5 * p.normalized_values(i).unwrap()[0] + 0.5 * p.normalized_values(i).unwrap()[1])
            .collect();
        assert!((prof[0] - 0.5).abs() < 1e-12 && (prof[1] - 0.3).abs() < 1e-12);
        assert!(prof.iter().zip(&oracle).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn validation_reports_structured_violations() {
        let ok = two_cells([vec![0.0, 1.0], vec![1.0, 0.0]], [vec![0.5, 0.5], vec![0.2, 0.8]]);
        assert!(validate_problem(&ProblemDoc::from(&ok)).is_empty());

        let bad = validate_parts(
            &["a".into(), "b".into()],
            &["s".into()],
            &[
                Individual::new(vec![0.0, 1.0], vec![0.9]),
                Individual::new(vec![1.0, 0.0], vec![1.0]),
            ],
        );
        assert_eq!(bad.len(), 1);
        assert!(matches!(bad[0], Violation::BeliefNotNormalized { individual: 0, .. }));

        let single = validate_parts(
            &["a".into()],
            &["s".into()],
            &[Individual::new(vec![0.0], vec![1.0]), Individual::new(vec![0.0], vec![1.0])],
        );
        assert!(single.contains(&Violation::TooFewOutcomes { found: 1 }));
    }

    #[test]
    fn doc_coverage_errors() {
        let ok = two_cells([vec![0.0, 1.0], vec![1.0, 0.0]], [vec![0.5, 0.5], vec![0.2, 0.8]]);
        let mut doc = ProblemDoc::from(&ok);
        doc.individuals[1].belief.remove("s2");
        let v = validate_problem(&doc);
        assert_eq!(v, vec![Violation::MissingBelief { individual: 1, cell: "s2".into() }]);
    }

    #[test]
    fn malformed_acts_rejected() {
        let p = two_cells([vec![0.0, 1.0], vec![1.0, 0.0]], [vec![0.5, 0.5], vec![0.2, 0.8]]);
        assert!(matches!(seu(&p, 0, &Act(vec![0])), Err(Error::PartitionMismatch { .. })));
        assert!(matches!(seu(&p, 0, &Act(vec![0, 7])), Err(Error::UnknownOutcome(_))));
        assert!(matches!(Act::from_labels(&p, [("s9", "a")]), Err(Error::UnknownCell(_))));
        assert!(matches!(Act::from_labels(&p, [("s1", "zz")]), Err(Error::UnknownOutcome(_))));
    }

    #[test]
    fn serde_round_trip() {
        let p = two_cells([vec![0.0, 1.0], vec![1.0, 0.25]], [vec![0.1, 0.9], vec![0.2, 0.8]]);
        let json = serde_json::to_string(&p).unwrap();
        let back: Problem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
