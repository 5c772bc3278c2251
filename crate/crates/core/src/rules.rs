//! Aggregation rules over normalized utility profiles.
//!
//! Every rule here ranks acts of a fixed problem. Score-based rules map the
//! normalized profile `U*(f)` (and, for two of the counterexample rules, a
//! little context from the problem) to a real number; the leximin rule only
//! compares.
//!
//! Weight sets are polytopes given by their vertices, so the minimum of a
//! linear map over the set is the minimum over the vertices. Cost functions
//! for variational rules are finite lists of `(weight, penalty)` candidates;
//! penalties follow the convex convention (larger penalty, less plausible
//! weight), which is what the pointwise-supremum construction produces even
//! though the characterization is sometimes stated with "concave".

use std::cmp::Ordering as CmpOrdering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixing::root_label;
use crate::model::{normalized_profile, Act, Problem};
use crate::tol;

/// Outcome of comparing two acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    FirstStrict,
    Indifferent,
    SecondStrict,
}

impl Ordering {
    pub fn reverse(self) -> Self {
        match self {
            Ordering::FirstStrict => Ordering::SecondStrict,
            Ordering::Indifferent => Ordering::Indifferent,
            Ordering::SecondStrict => Ordering::FirstStrict,
        }
    }

    /// `f R g`: the first act is at least as good as the second.
    pub fn first_weakly_better(self) -> bool {
        self != Ordering::SecondStrict
    }

    fn from_scores(a: f64, b: f64, threshold: f64) -> Self {
        if a - b > threshold {
            Ordering::FirstStrict
        } else if b - a > threshold {
            Ordering::SecondStrict
        } else {
            Ordering::Indifferent
        }
    }
}

/// A point of the simplex: non-negative weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeight("empty weight vector".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeight(format!("{weights:?} has a negative or non-finite entry")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol::PROB {
            return Err(Error::InvalidWeight(format!("{weights:?} sums to {sum}")));
        }
        Ok(WeightVector(weights))
    }

    pub fn equal(n: usize) -> Self {
        WeightVector(vec![1.0 / n as f64; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = vec![0.0; n];
        w[i] = 1.0;
        WeightVector(w)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, u: &[f64]) -> f64 {
        self.0.iter().zip(u).map(|(w, x)| w * x).sum()
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        WeightVector::new(v)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

/// A convex polytope of weights, stored by its (distinct) vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightSetDoc", into = "WeightSetDoc")]
pub struct WeightSet {
    vertices: Vec<WeightVector>,
    full_simplex: bool,
}

#[derive(Serialize, Deserialize)]
struct WeightSetDoc {
    vertices: Vec<WeightVector>,
}

impl TryFrom<WeightSetDoc> for WeightSet {
    type Error = Error;
    fn try_from(doc: WeightSetDoc) -> Result<Self> {
        WeightSet::new(doc.vertices)
    }
}

impl From<WeightSet> for WeightSetDoc {
    fn from(m: WeightSet) -> Self {
        WeightSetDoc { vertices: m.vertices }
    }
}

impl WeightSet {
    pub fn new(vertices: Vec<WeightVector>) -> Result<Self> {
        let first = vertices.first().ok_or(Error::EmptyWeightSet)?;
        let n = first.dim();
        if let Some(bad) = vertices.iter().find(|v| v.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
        }
        for (a, v) in vertices.iter().enumerate() {
            if vertices[..a].contains(v) {
                return Err(Error::InvalidWeight(format!("duplicate vertex {:?}", v.as_slice())));
            }
        }
        let full_simplex = (0..n).all(|i| vertices.contains(&WeightVector::unit(n, i)));
        Ok(WeightSet { vertices, full_simplex })
    }

    /// The whole simplex over `n` individuals.
    pub fn simplex(n: usize) -> Self {
        WeightSet { vertices: (0..n).map(|i| WeightVector::unit(n, i)).collect(), full_simplex: true }
    }

    pub fn singleton(w: WeightVector) -> Self {
        let full_simplex = w.dim() == 1;
        WeightSet { vertices: vec![w], full_simplex }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        WeightSet::new(rows.iter().map(|r| WeightVector::new(r.to_vec())).collect::<Result<_>>()?)
    }

    pub fn vertices(&self) -> &[WeightVector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn is_full_simplex(&self) -> bool {
        self.full_simplex
    }

    /// `min_{μ ∈ M} μ·u`, attained at a vertex.
    pub fn min_dot(&self, u: &[f64]) -> f64 {
        self.vertices.iter().map(|v| v.dot(u)).fold(f64::INFINITY, f64::min)
    }

    /// `max_{μ ∈ M} μ·u`.
    pub fn max_dot(&self, u: &[f64]) -> f64 {
        self.vertices.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// True if every permutation of every vertex is again a vertex.
    pub fn is_symmetric(&self) -> bool {
        self.vertices.iter().all(|v| {
            let n = v.dim();
            (0..n).all(|a| {
                (a + 1..n).all(|b| {
                    let mut w = v.0.clone();
                    w.swap(a, b);
                    self.vertices.iter().any(|x| x.0 == w)
                })
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub weight: WeightVector,
    pub penalty: f64,
}

/// A grounded penalty on finitely many candidate weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CostFunctionDoc", into = "CostFunctionDoc")]
pub struct CostFunction {
    candidates: Vec<Candidate>,
}

#[derive(Serialize, Deserialize)]
struct CostFunctionDoc {
    candidates: Vec<Candidate>,
}

impl TryFrom<CostFunctionDoc> for CostFunction {
    type Error = Error;
    fn try_from(doc: CostFunctionDoc) -> Result<Self> {
        CostFunction::new(doc.candidates)
    }
}

impl From<CostFunction> for CostFunctionDoc {
    fn from(c: CostFunction) -> Self {
        CostFunctionDoc { candidates: c.candidates }
    }
}

impl CostFunction {
    pub fn new(candidates: Vec<Candidate>) -> Result<Self> {
        let first = candidates.first().ok_or(Error::EmptyWeightSet)?;
        let n = first.weight.dim();
        if let Some(bad) = candidates.iter().find(|c| c.weight.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.weight.dim() });
        }
        if let Some(bad) = candidates.iter().find(|c| !c.penalty.is_finite() || c.penalty < 0.0) {
            return Err(Error::InvalidWeight(format!("penalty {} must be finite and non-negative", bad.penalty)));
        }
        let floor = candidates.iter().map(|c| c.penalty).fold(f64::INFINITY, f64::min);
        if floor > tol::PROB {
            return Err(Error::NotGrounded(floor));
        }
        Ok(CostFunction { candidates })
    }

    pub fn from_pairs(pairs: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        CostFunction::new(
            pairs
                .into_iter()
                .map(|(w, penalty)| Ok(Candidate { weight: WeightVector::new(w)?, penalty }))
                .collect::<Result<_>>()?,
        )
    }

    /// Zero penalty on every vertex of `m`.
    pub fn indicator(m: &WeightSet) -> Self {
        CostFunction {
            candidates: m.vertices().iter().map(|w| Candidate { weight: w.clone(), penalty: 0.0 }).collect(),
        }
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn dim(&self) -> usize {
        self.candidates[0].weight.dim()
    }

    pub fn evaluate(&self, u: &[f64]) -> f64 {
        self.candidates
            .iter()
            .map(|c| c.weight.dot(u) + c.penalty)
            .fold(f64::INFINITY, f64::min)
    }
}

/// An aggregation rule. The serialized form is the rule-file descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rule {
    /// Minimum over a weight polytope of weighted normalized utilities.
    RelativeFair(WeightSet),
    /// Fixed-weight sum of normalized utilities.
    RelativeUtilitarian { weight: WeightVector },
    /// Smallest normalized utility.
    RelativeMaximin,
    /// Lexicographic comparison of sorted normalized profiles.
    RelativeLeximin,
    /// Minimum over candidates of weighted utility plus penalty.
    Variational(CostFunction),
    /// Every pair of acts is indifferent.
    Indifference,
    /// Equal-weight utilitarian when the outcome set has odd size, maximin otherwise.
    Parity,
    /// Maximum over a weight polytope.
    MaxWeight(WeightSet),
    /// Product of normalized utilities.
    Nash,
    /// Utilitarian with weights proportional to `0.1 + p_i(E0)`, where `E0`
    /// is every cell descending from the reference cell (default: the first
    /// cell of the partition).
    BeliefWeightedUtilitarian {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reference_cell: Option<String>,
    },
}

pub fn relative_fair_rule(m: WeightSet) -> Rule {
    Rule::RelativeFair(m)
}

pub fn relative_utilitarian_rule(weight: WeightVector) -> Rule {
    Rule::RelativeUtilitarian { weight }
}

pub fn relative_maximin_rule() -> Rule {
    Rule::RelativeMaximin
}

pub fn relative_leximin_rule() -> Rule {
    Rule::RelativeLeximin
}

pub fn variational_rule(cost: CostFunction) -> Rule {
    Rule::Variational(cost)
}

pub fn indifference_rule() -> Rule {
    Rule::Indifference
}

pub fn parity_rule() -> Rule {
    Rule::Parity
}

pub fn max_weight_rule(m: WeightSet) -> Rule {
    Rule::MaxWeight(m)
}

pub fn nash_rule() -> Rule {
    Rule::Nash
}

pub fn belief_weighted_utilitarian_rule(reference_cell: Option<String>) -> Rule {
    Rule::BeliefWeightedUtilitarian { reference_cell }
}

/// Non-decreasing rearrangement of a profile.
pub fn leximin_key(u: &[f64]) -> Vec<f64> {
    let mut key = u.to_vec();
    key.sort_by(f64::total_cmp);
    key
}

/// Exact lexicographic comparison of sorted profiles.
pub fn leximin_compare(u: &[f64], v: &[f64]) -> Ordering {
    let (a, b) = (leximin_key(u), leximin_key(v));
    for (x, y) in a.iter().zip(&b) {
        match x.partial_cmp(y) {
            Some(CmpOrdering::Greater) => return Ordering::FirstStrict,
            Some(CmpOrdering::Less) => return Ordering::SecondStrict,
            _ => {}
        }
    }
    Ordering::Indifferent
}

impl Rule {
    /// Short kind tag, as used in rule files.
    pub fn kind(&self) -> &'static str {
        match self {
            Rule::RelativeFair(_) => "relative_fair",
            Rule::RelativeUtilitarian { .. } => "relative_utilitarian",
            Rule::RelativeMaximin => "relative_maximin",
            Rule::RelativeLeximin => "relative_leximin",
            Rule::Variational(_) => "variational",
            Rule::Indifference => "indifference",
            Rule::Parity => "parity",
            Rule::MaxWeight(_) => "max_weight",
            Rule::Nash => "nash",
            Rule::BeliefWeightedUtilitarian { .. } => "belief_weighted_utilitarian",
        }
    }

    pub fn has_score(&self) -> bool {
        !matches!(self, Rule::RelativeLeximin)
    }

    /// Number of individuals the rule's parameters fix, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Rule::RelativeFair(m) | Rule::MaxWeight(m) => Some(m.dim()),
            Rule::RelativeUtilitarian { weight } => Some(weight.dim()),
            Rule::Variational(c) => Some(c.dim()),
            _ => None,
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        match self.dim() {
            Some(d) if d != n => Err(Error::DimensionMismatch { expected: d, found: n }),
            _ => Ok(()),
        }
    }

    /// Score of a normalized profile `u` in the context of `problem`.
    pub fn score_profile(&self, problem: &Problem, u: &[f64]) -> Result<f64> {
        self.check_dim(u.len())?;
        let n = u.len();
        Ok(match self {
            Rule::RelativeFair(m) => m.min_dot(u),
            Rule::RelativeUtilitarian { weight } => weight.dot(u),
            Rule::RelativeMaximin => u.iter().copied().fold(f64::INFINITY, f64::min),
            Rule::RelativeLeximin => return Err(Error::ComparatorOnly(self.kind().into())),
            Rule::Variational(c) => c.evaluate(u),
            Rule::Indifference => 0.0,
            Rule::Parity => {
                if problem.outcomes().len() % 2 == 1 {
                    WeightVector::equal(n).dot(u)
                } else {
                    u.iter().copied().fold(f64::INFINITY, f64::min)
                }
            }
            Rule::MaxWeight(m) => m.max_dot(u),
            Rule::Nash => u.iter().product(),
            Rule::BeliefWeightedUtilitarian { reference_cell } => {
                belief_weights(problem, reference_cell.as_deref())?.iter().zip(u).map(|(w, x)| w * x).sum()
            }
        })
    }

    /// Compares two normalized profiles; scores closer than `threshold` tie.
    pub fn compare_profiles(&self, problem: &Problem, u: &[f64], v: &[f64], threshold: f64) -> Result<Ordering> {
        if let Rule::RelativeLeximin = self {
            return Ok(leximin_compare(u, v));
        }
        Ok(Ordering::from_scores(self.score_profile(problem, u)?, self.score_profile(problem, v)?, threshold))
    }
}

/// Weights of the belief-weighted utilitarian rule for a problem.
pub fn belief_weights(problem: &Problem, reference_cell: Option<&str>) -> Result<Vec<f64>> {
    let root = match reference_cell {
        Some(label) => root_label(label).to_string(),
        None => root_label(&problem.cells()[0]).to_string(),
    };
    let event: Vec<usize> = problem
        .cells()
        .iter()
        .enumerate()
        .filter(|(_, c)| root_label(c) == root)
        .map(|(k, _)| k)
        .collect();
    if event.is_empty() {
        return Err(Error::UnknownCell(root));
    }
    let raw = (0..problem.n())
        .map(|i| problem.event_probability(i, &event).map(|p| 0.1 + p))
        .collect::<Result<Vec<_>>>()?;
    let total: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|w| w / total).collect())
}

/// Social score of act `f`; fails for comparator-only rules.
pub fn evaluate(rule: &Rule, problem: &Problem, f: &Act) -> Result<f64> {
    if !rule.has_score() {
        return Err(Error::ComparatorOnly(rule.kind().into()));
    }
    rule.score_profile(problem, &normalized_profile(problem, f)?)
}

/// Compares two acts with the default score threshold.
pub fn compare(rule: &Rule, problem: &Problem, f: &Act, g: &Act) -> Result<Ordering> {
    compare_with_threshold(rule, problem, f, g, tol::SCORE)
}

pub fn compare_with_threshold(rule: &Rule, problem: &Problem, f: &Act, g: &Act, threshold: f64) -> Result<Ordering> {
    let u = normalized_profile(problem, f)?;
    let v = normalized_profile(problem, g)?;
    rule.compare_profiles(problem, &u, &v, threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Individual;

    fn dummy(n: usize, outcomes: usize) -> Problem {
        let labels: Vec<String> = (0..outcomes).map(|k| format!("o{k}")).collect();
        let values: Vec<f64> = (0..outcomes).map(|k| k as f64).collect();
        Problem::new(
            labels,
            vec!["s".into()],
            (0..n).map(|_| Individual::new(values.clone(), vec![1.0])).collect(),
        )
        .unwrap()
    }

    fn score(rule: &Rule, u: &[f64]) -> f64 {
        rule.score_profile(&dummy(u.len(), 3), u).unwrap()
    }

    #[test]
    fn relative_fair_special_cases() {
        let single = relative_fair_rule(WeightSet::singleton(WeightVector::equal(2)));
        assert!((score(&single, &[0.3, 0.7]) - 0.5).abs() < 1e-15);
        let full = relative_fair_rule(WeightSet::simplex(2));
        assert_eq!(score(&full, &[0.3, 0.7]), 0.3);
        let seg = WeightSet::from_rows(&[&[0.3, 0.7], &[0.7, 0.3]]).unwrap();
        assert!((score(&relative_fair_rule(seg.clone()), &[1.0, 0.0]) - 0.3).abs() < 1e-15);
        assert!((score(&max_weight_rule(seg), &[1.0, 0.0]) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn polytope_min_matches_dense_hull_sampling() {
        // Oracle: brute-force minimum over a fine grid of the segment.
        let seg = WeightSet::from_rows(&[&[0.3, 0.7], &[0.7, 0.3]]).unwrap();
        let u = [1.0, 0.0];
        let brute = (0..=10_000)
            .map(|k| {
                let t = k as f64 / 10_000.0;
                (t * 0.3 + (1.0 - t) * 0.7) * u[0] + (t * 0.7 + (1.0 - t) * 0.3) * u[1]
            })
            .fold(f64::INFINITY, f64::min);
        assert!((seg.min_dot(&u) - brute).abs() < 1e-12);
    }

    #[test]
    fn utilitarian_and_maximin() {
        let dict = relative_utilitarian_rule(WeightVector::new(vec![1.0, 0.0]).unwrap());
        assert_eq!(score(&dict, &[0.42, 0.9]), 0.42);
        let eq = relative_utilitarian_rule(WeightVector::equal(2));
        assert!((score(&eq, &[0.2, 0.8]) - 0.5).abs() < 1e-15);
        assert_eq!(score(&relative_maximin_rule(), &[0.3, 0.7]), 0.3);
        assert_eq!(score(&relative_maximin_rule(), &[0.6, 0.6, 0.6]), 0.6);
    }

    #[test]
    fn weight_validation() {
        assert!(WeightVector::new(vec![0.5, 0.6]).is_err());
        assert!(WeightVector::new(vec![-0.1, 1.1]).is_err());
        assert_eq!(WeightSet::new(vec![]).unwrap_err(), Error::EmptyWeightSet);
        assert!(WeightSet::from_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).is_err());
        assert!(WeightSet::from_rows(&[&[1.0, 0.0], &[0.0, 1.0]]).unwrap().is_full_simplex());
        assert!(WeightSet::from_rows(&[&[0.3, 0.7], &[0.7, 0.3]]).unwrap().is_symmetric());
    }

    #[test]
    fn leximin_examples() {
        assert_eq!(leximin_key(&[0.7, 0.2, 0.5]), vec![0.2, 0.5, 0.7]);
        assert_eq!(leximin_key(&[0.4, 0.4]), vec![0.4, 0.4]);
        assert_eq!(leximin_key(&[0.5, 0.7, 0.2]), leximin_key(&[0.2, 0.5, 0.7]));
        assert_eq!(leximin_compare(&[0.2, 0.5], &[0.2, 0.4]), Ordering::FirstStrict);
        assert_eq!(leximin_compare(&[0.5, 1.0], &[0.5, 0.5]), Ordering::FirstStrict);
        let p = dummy(2, 3);
        assert_eq!(
            relative_maximin_rule().compare_profiles(&p, &[0.5, 1.0], &[0.5, 0.5], tol::SCORE).unwrap(),
            Ordering::Indifferent
        );
        assert_eq!(leximin_compare(&[0.3, 0.6], &[0.6, 0.3]), Ordering::Indifferent);
    }

    #[test]
    fn variational_examples() {
        let c = CostFunction::from_pairs(vec![
            (vec![1.0, 0.0], 0.2),
            (vec![0.0, 1.0], 0.0),
            (vec![0.5, 0.5], 0.0),
        ])
        .unwrap();
        // exhaustive: 0.1 + 0.2, 0.9, 0.5
        let expected = [0.1 + 0.2, 0.9, 0.5].into_iter().fold(f64::INFINITY, f64::min);
        assert!((score(&variational_rule(c), &[0.1, 0.9]) - expected).abs() < 1e-15);
        assert!(matches!(
            CostFunction::from_pairs(vec![(vec![1.0, 0.0], 0.2)]),
            Err(Error::NotGrounded(_))
        ));
        let single = variational_rule(CostFunction::from_pairs(vec![(vec![0.25, 0.75], 0.0)]).unwrap());
        let util = relative_utilitarian_rule(WeightVector::new(vec![0.25, 0.75]).unwrap());
        assert_eq!(score(&single, &[0.4, 0.1]), score(&util, &[0.4, 0.1]));
    }

    #[test]
    fn counterexample_rules() {
        assert_eq!(score(&indifference_rule(), &[0.1, 0.9]), 0.0);
        assert_eq!(score(&nash_rule(), &[0.5, 0.5]), 0.25);
        assert_eq!(score(&nash_rule(), &[0.0, 0.9]), 0.0);
        let odd = dummy(2, 3);
        let even = dummy(2, 4);
        assert!((parity_rule().score_profile(&odd, &[0.2, 0.8]).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(parity_rule().score_profile(&even, &[0.2, 0.8]).unwrap(), 0.2);
    }

    #[test]
    fn nash_rci_numbers() {
        // (0.5, 0.5) beats (0.9, 0.2) but the order flips after mixing with the best outcome.
        let mix = |u: f64| 0.5 * u + 0.5;
        let (f, g) = (0.5 * 0.5, 0.9 * 0.2);
        let (fm, gm) = (mix(0.5) * mix(0.5), mix(0.9) * mix(0.2));
        assert!(f > g && fm < gm);
        assert!((fm - 0.5625).abs() < 1e-15 && (gm - 0.57).abs() < 1e-15);
    }

    #[test]
    fn belief_weights_follow_reference_event() {
        let p = Problem::from_labels(
            &["x", "y"],
            &["e0", "rest"],
            vec![
                Individual::new(vec![1.0, 0.0], vec![0.9, 0.1]),
                Individual::new(vec![0.0, 1.0], vec![0.1, 0.9]),
            ],
        )
        .unwrap();
        let w = belief_weights(&p, None).unwrap();
        assert!((w[0] - 10.0 / 12.0).abs() < 1e-15 && (w[1] - 2.0 / 12.0).abs() < 1e-15);
        let same = Problem::from_labels(
            &["x", "y"],
            &["e0", "rest"],
            vec![
                Individual::new(vec![1.0, 0.0], vec![0.3, 0.7]),
                Individual::new(vec![0.0, 1.0], vec![0.3, 0.7]),
            ],
        )
        .unwrap();
        assert_eq!(belief_weights(&same, None).unwrap(), vec![0.5, 0.5]);
        // splitting the reference cell does not move the weights
        let (r, _) = crate::mixing::refine_all(&p, 0.37).unwrap();
        let w2 = belief_weights(&r.problem, None).unwrap();
        assert!((w[0] - w2[0]).abs() < 1e-15);
    }

    #[test]
    fn compare_and_evaluate() {
        let p = dummy(2, 3);
        let maximin = relative_maximin_rule();
        assert_eq!(maximin.compare_profiles(&p, &[0.3, 0.7], &[0.4, 0.4], tol::SCORE).unwrap(), Ordering::SecondStrict);
        let eq = relative_utilitarian_rule(WeightVector::equal(2));
        assert_eq!(eq.compare_profiles(&p, &[0.3, 0.7], &[0.4, 0.6], tol::SCORE).unwrap(), Ordering::Indifferent);
        let f = Act::constant(&p, 0).unwrap();
        assert!(matches!(evaluate(&relative_leximin_rule(), &p, &f), Err(Error::ComparatorOnly(_))));
        let wrong = relative_utilitarian_rule(WeightVector::equal(3));
        assert!(matches!(evaluate(&wrong, &p, &f), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn descriptor_round_trip() {
        let rules = vec![
            relative_fair_rule(WeightSet::from_rows(&[&[0.3, 0.7], &[0.7, 0.3]]).unwrap()),
            relative_utilitarian_rule(WeightVector::equal(2)),
            relative_maximin_rule(),
            variational_rule(CostFunction::from_pairs(vec![(vec![1.0, 0.0], 0.0)]).unwrap()),
            belief_weighted_utilitarian_rule(None),
            belief_weighted_utilitarian_rule(Some("rain".into())),
        ];
        for r in rules {
            let json = serde_json::to_string(&r).unwrap();
            let back: Rule = serde_json::from_str(&json).unwrap();
            assert_eq!(back, r);
        }
        let parsed: Rule = serde_json::from_str(r#"{"kind":"relative_fair","vertices":[[0.5,0.5]]}"#).unwrap();
        assert_eq!(parsed.kind(), "relative_fair");
        assert!(serde_json::from_str::<Rule>(r#"{"kind":"relative_fair","vertices":[]}"#).is_err());
    }
}
