//! Random problems, acts and inessential expansions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Act, Individual, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueMode {
    Iid,
    /// One raw value function shared by everybody.
    CommonValues,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BeliefMode {
    Iid,
    CommonBeliefs,
    /// Cell 0 carries an individual-specific probability `q_i`; the other
    /// cells share the rest in common proportions.
    DesignedEvent,
}

pub const DEFAULT_SEED: u64 = 20_251_019;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub outcomes: usize,
    pub cells: usize,
    pub values: ValueMode,
    pub beliefs: BeliefMode,
    pub trials: usize,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            n: 2,
            outcomes: 3,
            cells: 3,
            values: ValueMode::Iid,
            beliefs: BeliefMode::Iid,
            trials: 1000,
            seed: DEFAULT_SEED,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!("n = {} (need at least 2)", self.n)));
        }
        if self.outcomes < 2 {
            return Err(Error::InvalidConfig(format!("{} outcomes (need at least 2)", self.outcomes)));
        }
        if self.cells < 1 {
            return Err(Error::InvalidConfig("partition needs at least one cell".into()));
        }
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn outcome_labels(k: usize) -> Vec<String> {
    (0..k).map(|o| format!("x{o}")).collect()
}

pub fn cell_labels(k: usize) -> Vec<String> {
    (0..k).map(|c| format!("c{c}")).collect()
}

/// Raw values on `k` outcomes, spread at least `1e-3` so that the
/// normalization is well conditioned.
pub fn random_values(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.gen()).collect();
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi - lo >= 1e-3 {
            return v;
        }
    }
}

/// A flat Dirichlet draw via normalized exponential spacings.
pub fn random_distribution(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    loop {
        let e: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let s: f64 = e.iter().sum();
        if s > 0.0 {
            return e.iter().map(|x| x / s).collect();
        }
    }
}

pub fn random_beliefs(rng: &mut ChaCha8Rng, mode: BeliefMode, n: usize, cells: usize) -> Vec<Vec<f64>> {
    match mode {
        BeliefMode::Iid => (0..n).map(|_| random_distribution(rng, cells)).collect(),
        BeliefMode::CommonBeliefs => vec![random_distribution(rng, cells); n],
        BeliefMode::DesignedEvent => {
            let rest = if cells > 1 { random_distribution(rng, cells - 1) } else { Vec::new() };
            (0..n)
                .map(|_| {
                    if cells == 1 {
                        return vec![1.0];
                    }
                    let q: f64 = rng.gen();
                    let mut p = vec![q];
                    p.extend(rest.iter().map(|w| (1.0 - q) * w));
                    p
                })
                .collect()
        }
    }
}

pub fn random_value_profile(rng: &mut ChaCha8Rng, mode: ValueMode, n: usize, k: usize) -> Vec<Vec<f64>> {
    match mode {
        ValueMode::Iid => (0..n).map(|_| random_values(rng, k)).collect(),
        ValueMode::CommonValues => vec![random_values(rng, k); n],
    }
}

pub fn gen_problem_with(config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<Problem> {
    config.validate()?;
    let values = random_value_profile(rng, config.values, config.n, config.outcomes);
    let beliefs = random_beliefs(rng, config.beliefs, config.n, config.cells);
    let individuals = values.into_iter().zip(beliefs).map(|(v, p)| Individual::new(v, p)).collect();
    Problem::new(outcome_labels(config.outcomes), cell_labels(config.cells), individuals)
}

/// A random valid problem; the same `(config, seed)` gives the same problem.
pub fn gen_problem(config: &GeneratorConfig, seed: u64) -> Result<Problem> {
    gen_problem_with(config, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_act(problem: &Problem, rng: &mut ChaCha8Rng) -> Act {
    let k = problem.outcomes().len();
    Act((0..problem.cells().len()).map(|_| rng.gen_range(0..k)).collect())
}

/// Two distinct outcome indices.
pub fn random_outcome_pair(problem: &Problem, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let k = problem.outcomes().len();
    let x = rng.gen_range(0..k);
    let y = (x + rng.gen_range(1..k)) % k;
    (x, y)
}

fn fresh_label(problem: &Problem) -> String {
    let mut label = "x_new".to_string();
    while problem.outcomes().contains(&label) {
        label.push('\'');
    }
    label
}

/// Appends an outcome whose raw value for every individual lies within that
/// individual's existing range.
pub fn expand_with(problem: &Problem, label: &str, values: &[f64]) -> Result<Problem> {
    if values.len() != problem.n() {
        return Err(Error::DimensionMismatch { expected: problem.n(), found: values.len() });
    }
    let mut outcomes = problem.outcomes().to_vec();
    outcomes.push(label.to_string());
    let mut individuals = Vec::with_capacity(problem.n());
    for (i, (ind, &v)) in problem.individuals().iter().zip(values).enumerate() {
        let lo = ind.values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ind.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !(lo..=hi).contains(&v) {
            return Err(Error::NotInessential(format!(
                "value {v} for individual {i} lies outside [{lo}, {hi}]"
            )));
        }
        let mut values = ind.values.clone();
        values.push(v);
        individuals.push(Individual::new(values, ind.belief.clone()));
    }
    Problem::new(outcomes, problem.cells().to_vec(), individuals)
}

pub fn gen_inessential_expansion_with(problem: &Problem, rng: &mut ChaCha8Rng) -> Result<Problem> {
    let values: Vec<f64> = problem
        .individuals()
        .iter()
        .map(|ind| {
            let lo = ind.values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ind.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (lo + rng.gen::<f64>() * (hi - lo)).clamp(lo, hi)
        })
        .collect();
    expand_with(problem, &fresh_label(problem), &values)
}

pub fn gen_inessential_expansion(problem: &Problem, seed: u64) -> Result<Problem> {
    gen_inessential_expansion_with(problem, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// The three defining conditions: `X ⊂ X'`, preferences on the old acts
/// unchanged (same beliefs, same values on old outcomes), and every new
/// outcome weakly between each individual's old best and worst.
pub fn is_inessential_expansion(original: &Problem, expanded: &Problem) -> bool {
    let k = original.outcomes().len();
    if expanded.n() != original.n()
        || expanded.cells() != original.cells()
        || expanded.outcomes().len() < k
        || expanded.outcomes()[..k] != *original.outcomes()
    {
        return false;
    }
    original.individuals().iter().zip(expanded.individuals()).all(|(a, b)| {
        let lo = a.values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = a.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        a.belief == b.belief && b.values[..k] == a.values[..] && b.values[k..].iter().all(|v| (lo..=hi).contains(v))
    })
}
