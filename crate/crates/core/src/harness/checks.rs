//! Per-axiom instances and their verdicts.
//!
//! A [`Witness`] is a complete instance of an axiom's quantifiers. The same
//! [`verdict`] function judges freshly generated instances and replays stored
//! witnesses, so a stored witness reproduces its verdict by construction.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::generate::*;
use super::Axiom;
use crate::error::{Error, Result};
use crate::mixing::{binary_act, coin_toss_event, problem_with_event, pseudo_mix_all};
use crate::model::{normalized_profile, Act, Individual, Problem};
use crate::rules::{compare, Ordering, Rule};
use crate::tol;
use crate::welfare::psi_of_rule;

/// One instance of an axiom's premises.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Witness {
    Pareto { problem: Problem, f: Act, g: Act },
    StrongPareto { problem: Problem, f: Act, g: Act },
    /// `sequence[t]` converges in utilities to `f`; `g` is the fixed act.
    ContinuitySequence { problem: Problem, f: Act, g: Act, sequence: Vec<Act> },
    /// `ψ` jumps by more than `JUMP` between the points at fractions `lo`
    /// and `hi` of the segment from `u` to `v`.
    ContinuityJump { u: Vec<f64>, v: Vec<f64>, lo: f64, hi: f64 },
    Iie { problem: Problem, expanded: Problem, f: Act, g: Act },
    /// Outcomes `x`, `y`; the coin-toss event is built by refining `problem`.
    Wpm { problem: Problem, x: usize, y: usize },
    Spm { problem: Problem, event: Vec<usize>, x: usize, y: usize },
    BeliefIrrelevance { problem: Problem, other: Problem, x: usize, y: usize },
    Rci { problem: Problem, f: Act, g: Act, x: usize, alpha: f64 },
    Ci { problem: Problem, f: Act, g: Act, x: usize, alpha: f64 },
    Wrci { problem: Problem, f: Act, g: Act, x: usize, y: usize, alpha: f64 },
    Anonymity { problem: Problem, permutation: Vec<usize>, f: Act, g: Act },
    /// Individuals in `group` are the same in both problems; everybody else
    /// is indifferent between `f` and `g` in both.
    Separability { problem: Problem, other: Problem, group: Vec<usize>, f: Act, g: Act },
    Saa { problem: Problem, x: usize, f: Act },
}

impl Witness {
    pub fn axiom(&self) -> Axiom {
        match self {
            Witness::Pareto { .. } => Axiom::Pareto,
            Witness::StrongPareto { .. } => Axiom::StrongPareto,
            Witness::ContinuitySequence { .. } | Witness::ContinuityJump { .. } => Axiom::Continuity,
            Witness::Iie { .. } => Axiom::Iie,
            Witness::Wpm { .. } => Axiom::Wpm,
            Witness::Spm { .. } => Axiom::Spm,
            Witness::BeliefIrrelevance { .. } => Axiom::BeliefIrrelevance,
            Witness::Rci { .. } => Axiom::Rci,
            Witness::Ci { .. } => Axiom::Ci,
            Witness::Wrci { .. } => Axiom::Wrci,
            Witness::Anonymity { .. } => Axiom::Anonymity,
            Witness::Separability { .. } => Axiom::Separability,
            Witness::Saa { .. } => Axiom::Saa,
        }
    }

    /// Number of individuals in the instance.
    pub fn n(&self) -> usize {
        match self {
            Witness::ContinuityJump { u, .. } => u.len(),
            Witness::Pareto { problem, .. }
            | Witness::StrongPareto { problem, .. }
            | Witness::ContinuitySequence { problem, .. }
            | Witness::Iie { problem, .. }
            | Witness::Wpm { problem, .. }
            | Witness::Spm { problem, .. }
            | Witness::BeliefIrrelevance { problem, .. }
            | Witness::Rci { problem, .. }
            | Witness::Ci { problem, .. }
            | Witness::Wrci { problem, .. }
            | Witness::Anonymity { problem, .. }
            | Witness::Separability { problem, .. }
            | Witness::Saa { problem, .. } => problem.n(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The premises do not hold; the instance says nothing.
    Vacuous,
    Held,
    Violated,
}

impl Verdict {
    fn from_violation(v: bool) -> Self {
        if v {
            Verdict::Violated
        } else {
            Verdict::Held
        }
    }
}

/// Jump size treated as a discontinuity by the segment scan.
pub const JUMP: f64 = 1e-3;

fn strictly_above(a: f64, b: f64) -> bool {
    a > b + tol::PREMISE
}

fn constant(problem: &Problem, x: usize) -> Result<Act> {
    Act::constant(problem, x)
}

fn mixed_ordering(rule: &Rule, problem: &Problem, f: &Act, g: &Act, x: usize, alpha: f64) -> Result<Ordering> {
    let (map, mixed) = pseudo_mix_all(problem, &[f, g], x, alpha)?;
    compare(rule, &map.problem, &mixed[0], &mixed[1])
}

fn segment_point(u: &[f64], v: &[f64], s: f64) -> Vec<f64> {
    u.iter().zip(v).map(|(a, b)| (a + s * (b - a)).clamp(0.0, 1.0)).collect()
}

/// Judges one instance against `rule`.
pub fn verdict(rule: &Rule, w: &Witness) -> Result<Verdict> {
    Ok(match w {
        Witness::Pareto { problem, f, g } => {
            let (u, v) = (normalized_profile(problem, f)?, normalized_profile(problem, g)?);
            if !u.iter().zip(&v).all(|(a, b)| a >= b) {
                return Ok(Verdict::Vacuous);
            }
            let all_strict = u.iter().zip(&v).all(|(a, b)| strictly_above(*a, *b));
            let ord = compare(rule, problem, f, g)?;
            Verdict::from_violation(ord == Ordering::SecondStrict || (all_strict && ord != Ordering::FirstStrict))
        }
        Witness::StrongPareto { problem, f, g } => {
            let (u, v) = (normalized_profile(problem, f)?, normalized_profile(problem, g)?);
            let weak = u.iter().zip(&v).all(|(a, b)| a >= b);
            let some_strict = u.iter().zip(&v).any(|(a, b)| strictly_above(*a, *b));
            if !(weak && some_strict) {
                return Ok(Verdict::Vacuous);
            }
            Verdict::from_violation(compare(rule, problem, f, g)? != Ordering::FirstStrict)
        }
        Witness::ContinuitySequence { problem, f, g, sequence } => {
            let mut seq_weakly_above = true;
            let mut seq_weakly_below = true;
            for ft in sequence {
                let ord = compare(rule, problem, ft, g)?;
                seq_weakly_above &= ord.first_weakly_better();
                seq_weakly_below &= ord.reverse().first_weakly_better();
            }
            let limit = compare(rule, problem, f, g)?;
            let part_one = seq_weakly_above && !limit.first_weakly_better();
            let part_two = seq_weakly_below && !limit.reverse().first_weakly_better();
            Verdict::from_violation(part_one || part_two)
        }
        Witness::ContinuityJump { u, v, lo, hi } => {
            let a = psi_of_rule(rule, &segment_point(u, v, *lo))?;
            let b = psi_of_rule(rule, &segment_point(u, v, *hi))?;
            Verdict::from_violation((a - b).abs() > JUMP)
        }
        Witness::Iie { problem, expanded, f, g } => {
            if !is_inessential_expansion(problem, expanded) {
                return Ok(Verdict::Vacuous);
            }
            Verdict::from_violation(compare(rule, problem, f, g)? != compare(rule, expanded, f, g)?)
        }
        Witness::Wpm { problem, x, y } => {
            if x == y {
                return Ok(Verdict::Vacuous);
            }
            let (map, event) = coin_toss_event(problem)?;
            let p = &map.problem;
            let mix = binary_act(p, *x, &event, *y)?;
            let below_x = compare(rule, p, &mix, &constant(p, *x)?)? == Ordering::SecondStrict;
            let below_y = compare(rule, p, &mix, &constant(p, *y)?)? == Ordering::SecondStrict;
            Verdict::from_violation(below_x && below_y)
        }
        Witness::Spm { problem, event, x, y } => {
            if x == y || event.is_empty() {
                return Ok(Verdict::Vacuous);
            }
            let mix = binary_act(problem, *x, event, *y)?;
            let below_x = compare(rule, problem, &mix, &constant(problem, *x)?)? == Ordering::SecondStrict;
            let below_y = compare(rule, problem, &mix, &constant(problem, *y)?)? == Ordering::SecondStrict;
            Verdict::from_violation(below_x && below_y)
        }
        Witness::BeliefIrrelevance { problem, other, x, y } => {
            let same_values = problem.outcomes() == other.outcomes()
                && problem.n() == other.n()
                && (0..problem.n()).all(|i| problem.normalized_values(i).ok() == other.normalized_values(i).ok());
            if !same_values {
                return Ok(Verdict::Vacuous);
            }
            let a = compare(rule, problem, &constant(problem, *x)?, &constant(problem, *y)?)?;
            let b = compare(rule, other, &constant(other, *x)?, &constant(other, *y)?)?;
            Verdict::from_violation(a != b)
        }
        Witness::Rci { problem, f, g, x, alpha } => {
            if !problem.has_common_values() {
                return Ok(Verdict::Vacuous);
            }
            Verdict::from_violation(compare(rule, problem, f, g)? != mixed_ordering(rule, problem, f, g, *x, *alpha)?)
        }
        Witness::Ci { problem, f, g, x, alpha } => {
            Verdict::from_violation(compare(rule, problem, f, g)? != mixed_ordering(rule, problem, f, g, *x, *alpha)?)
        }
        Witness::Wrci { problem, f, g, x, y, alpha } => {
            if !problem.has_common_values() {
                return Ok(Verdict::Vacuous);
            }
            let a = mixed_ordering(rule, problem, f, g, *x, *alpha)?;
            let b = mixed_ordering(rule, problem, f, g, *y, *alpha)?;
            Verdict::from_violation(a != b)
        }
        Witness::Anonymity { problem, permutation, f, g } => {
            let permuted = permute(problem, permutation)?;
            Verdict::from_violation(compare(rule, problem, f, g)? != compare(rule, &permuted, f, g)?)
        }
        Witness::Separability { problem, other, group, f, g } => {
            if !separability_premise(problem, other, group, f, g)? {
                return Ok(Verdict::Vacuous);
            }
            Verdict::from_violation(compare(rule, problem, f, g)? != compare(rule, other, f, g)?)
        }
        Witness::Saa { problem, x, f } => {
            if !problem.has_common_values() {
                return Ok(Verdict::Vacuous);
            }
            let cx = constant(problem, *x)?;
            let (ux, uf) = (normalized_profile(problem, &cx)?, normalized_profile(problem, f)?);
            if !ux.iter().zip(&uf).any(|(a, b)| strictly_above(*a, *b)) {
                return Ok(Verdict::Vacuous);
            }
            Verdict::from_violation(compare(rule, problem, &cx, f)? != Ordering::FirstStrict)
        }
    })
}

/// `R^π` with `R^π_i = R_{π(i)}`.
pub fn permute(problem: &Problem, permutation: &[usize]) -> Result<Problem> {
    let n = problem.n();
    let mut seen = vec![false; n];
    for &k in permutation {
        if k >= n || std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidConfig(format!("{permutation:?} is not a permutation of 0..{n}")));
        }
    }
    if permutation.len() != n {
        return Err(Error::InvalidConfig(format!("{permutation:?} is not a permutation of 0..{n}")));
    }
    problem.with_individuals(permutation.iter().map(|&k| problem.individuals()[k].clone()).collect())
}

fn separability_premise(a: &Problem, b: &Problem, group: &[usize], f: &Act, g: &Act) -> Result<bool> {
    if a.outcomes() != b.outcomes() || a.cells() != b.cells() || a.n() != b.n() {
        return Ok(false);
    }
    let (uf, ug) = (normalized_profile(a, f)?, normalized_profile(a, g)?);
    let (vf, vg) = (normalized_profile(b, f)?, normalized_profile(b, g)?);
    Ok((0..a.n()).all(|i| {
        if group.contains(&i) {
            a.individuals()[i] == b.individuals()[i]
        } else {
            uf[i] == ug[i] && vf[i] == vg[i]
        }
    }))
}

fn with_values(rng: &mut ChaCha8Rng, config: &GeneratorConfig, values: ValueMode) -> Result<Problem> {
    gen_problem_with(&GeneratorConfig { values, ..config.clone() }, rng)
}

fn alpha(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0.01..0.99)
}

/// Draws one instance of `axiom` for a trial.
pub fn instance(axiom: Axiom, config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<Witness> {
    let n = config.n;
    Ok(match axiom {
        Axiom::Pareto => {
            let values = if rng.gen_bool(0.5) { config.values } else { ValueMode::CommonValues };
            let problem = with_values(rng, config, values)?;
            let (f, g) = oriented_pair(&problem, rng)?;
            Witness::Pareto { problem, f, g }
        }
        Axiom::StrongPareto => strong_pareto_instance(config, rng)?,
        Axiom::Continuity => return Err(Error::Unsupported("continuity is checked constructively".into())),
        Axiom::Iie => {
            let problem = gen_problem_with(config, rng)?;
            let expanded = gen_inessential_expansion_with(&problem, rng)?;
            let (f, g) = (random_act(&problem, rng), random_act(&problem, rng));
            Witness::Iie { problem, expanded, f, g }
        }
        Axiom::Wpm => {
            let problem = gen_problem_with(config, rng)?;
            let (x, y) = random_outcome_pair(&problem, rng);
            Witness::Wpm { problem, x, y }
        }
        Axiom::Spm => {
            if rng.gen_bool(0.5) {
                let values = random_value_profile(rng, config.values, n, config.outcomes);
                let q: Vec<f64> = (0..n).map(|_| rng.gen_range(0.001..0.999)).collect();
                let (problem, event) = problem_with_event(&outcome_labels(config.outcomes), values, &q)?;
                let (x, y) = random_outcome_pair(&problem, rng);
                Witness::Spm { problem, event, x, y }
            } else {
                let problem = gen_problem_with(config, rng)?;
                let cells = problem.cells().len();
                let mut event: Vec<usize> = (0..cells).filter(|_| rng.gen_bool(0.5)).collect();
                if event.is_empty() {
                    event.push(rng.gen_range(0..cells));
                }
                let (x, y) = random_outcome_pair(&problem, rng);
                Witness::Spm { problem, event, x, y }
            }
        }
        Axiom::BeliefIrrelevance => {
            let problem = gen_problem_with(config, rng)?;
            let beliefs = random_beliefs(rng, config.beliefs, n, config.cells);
            let individuals = problem
                .individuals()
                .iter()
                .zip(beliefs)
                .map(|(ind, p)| Individual::new(ind.values.clone(), p))
                .collect();
            let other = problem.with_individuals(individuals)?;
            let (x, y) = random_outcome_pair(&problem, rng);
            Witness::BeliefIrrelevance { problem, other, x, y }
        }
        Axiom::Rci | Axiom::Ci => {
            let values = if axiom == Axiom::Rci { ValueMode::CommonValues } else { config.values };
            let problem = with_values(rng, config, values)?;
            let (f, g) = (random_act(&problem, rng), random_act(&problem, rng));
            let x = rng.gen_range(0..problem.outcomes().len());
            let alpha = alpha(rng);
            if axiom == Axiom::Rci {
                Witness::Rci { problem, f, g, x, alpha }
            } else {
                Witness::Ci { problem, f, g, x, alpha }
            }
        }
        Axiom::Wrci => {
            let problem = with_values(rng, config, ValueMode::CommonValues)?;
            let (f, g) = (random_act(&problem, rng), random_act(&problem, rng));
            let (x, y) = random_outcome_pair(&problem, rng);
            let alpha = alpha(rng);
            Witness::Wrci { problem, f, g, x, y, alpha }
        }
        Axiom::Anonymity => {
            let problem = gen_problem_with(config, rng)?;
            let mut permutation: Vec<usize> = (0..n).collect();
            permutation.shuffle(rng);
            if permutation.iter().enumerate().all(|(i, &k)| i == k) {
                permutation.swap(0, 1);
            }
            let (f, g) = (random_act(&problem, rng), random_act(&problem, rng));
            Witness::Anonymity { problem, permutation, f, g }
        }
        Axiom::Separability => separability_instance(config, rng)?,
        Axiom::Saa => {
            if rng.gen_bool(0.5) {
                // f = best on E, worst elsewhere, so U*(f) is the event profile
                let v = random_values(rng, config.outcomes);
                let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let x = rng.gen_range(0..v.len());
                let c = (v[x] - lo) / (hi - lo);
                let q: Vec<f64> = if rng.gen_bool(0.5) {
                    (0..n).map(|_| rng.gen()).collect()
                } else {
                    // one individual just below x, the rest near the top
                    let k = rng.gen_range(0..n);
                    let gap = 10f64.powf(-rng.gen_range(1.0..8.0));
                    (0..n)
                        .map(|i| match i {
                            _ if i == k => (c - gap * c.max(1e-3)).clamp(0.0, 1.0),
                            _ if rng.gen_bool(0.5) => 1.0,
                            _ => rng.gen_range(c..=1.0),
                        })
                        .collect()
                };
                let (problem, event) = problem_with_event(&outcome_labels(config.outcomes), vec![v.clone(); n], &q)?;
                let best = argmax(&v);
                let worst = argmax(&v.iter().map(|x| -x).collect::<Vec<_>>());
                let f = binary_act(&problem, best, &event, worst)?;
                Witness::Saa { problem, x, f }
            } else {
                let problem = with_values(rng, config, ValueMode::CommonValues)?;
                let f = random_act(&problem, rng);
                let x = rng.gen_range(0..problem.outcomes().len());
                Witness::Saa { problem, x, f }
            }
        }
    })
}

fn argmax(v: &[f64]) -> usize {
    (0..v.len()).fold(0, |best, k| if v[k] > v[best] { k } else { best })
}

/// Two random acts ordered so that at least as many individuals weakly
/// prefer the first.
fn oriented_pair(problem: &Problem, rng: &mut ChaCha8Rng) -> Result<(Act, Act)> {
    let (f, g) = (random_act(problem, rng), random_act(problem, rng));
    let (u, v) = (normalized_profile(problem, &f)?, normalized_profile(problem, &g)?);
    let votes = u.iter().zip(&v).filter(|(a, b)| a >= b).count();
    Ok(if 2 * votes >= u.len() { (f, g) } else { (g, f) })
}

/// Some individuals put zero belief on cell 0 and the acts differ only
/// there, which makes those individuals exactly indifferent.
fn strong_pareto_instance(config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<Witness> {
    let problem = gen_problem_with(config, rng)?;
    if config.cells < 2 || rng.gen_bool(0.25) {
        let (f, g) = oriented_pair(&problem, rng)?;
        return Ok(Witness::StrongPareto { problem, f, g });
    }
    let n = problem.n();
    let blind: Vec<bool> = loop {
        let b: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        if b.iter().any(|&x| x) && !b.iter().all(|&x| x) {
            break b;
        }
    };
    let individuals = problem
        .individuals()
        .iter()
        .zip(&blind)
        .map(|(ind, &zero)| {
            if !zero {
                return ind.clone();
            }
            let mut p = vec![0.0];
            p.extend(random_distribution(rng, config.cells - 1));
            Individual::new(ind.values.clone(), p)
        })
        .collect();
    let problem = problem.with_individuals(individuals)?;
    let f = random_act(&problem, rng);
    let mut g = f.clone();
    let (a, b) = random_outcome_pair(&problem, rng);
    let (mut f, _) = (f, ());
    f.0[0] = a;
    g.0[0] = b;
    let (u, v) = (normalized_profile(&problem, &f)?, normalized_profile(&problem, &g)?);
    let votes = u.iter().zip(&v).filter(|(x, y)| x >= y).count();
    Ok(if votes == n {
        Witness::StrongPareto { problem, f, g }
    } else {
        Witness::StrongPareto { problem, f: g, g: f }
    })
}

/// Beliefs with `p(c0) = p(c1)` bitwise, so swapping the outcomes of the
/// first two cells leaves the individual exactly indifferent.
fn balanced_belief(rng: &mut ChaCha8Rng, cells: usize) -> Vec<f64> {
    let w = random_distribution(rng, cells - 1);
    let half = w[0] / 2.0;
    let mut p = vec![half, half];
    p.extend_from_slice(&w[1..]);
    p
}

fn separability_instance(config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<Witness> {
    let n = config.n;
    let cells = config.cells.max(2);
    let k = config.outcomes;
    let group: Vec<usize> = loop {
        let g: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !g.is_empty() && g.len() < n {
            break g;
        }
    };
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    for i in 0..n {
        if group.contains(&i) {
            let ind = Individual::new(random_values(rng, k), random_distribution(rng, cells));
            first.push(ind.clone());
            second.push(ind);
        } else {
            first.push(Individual::new(random_values(rng, k), balanced_belief(rng, cells)));
            second.push(Individual::new(random_values(rng, k), balanced_belief(rng, cells)));
        }
    }
    let problem = Problem::new(outcome_labels(k), cell_labels(cells), first)?;
    let other = problem.with_individuals(second)?;
    let mut f = random_act(&problem, rng);
    if f.0[0] == f.0[1] {
        f.0[1] = (f.0[0] + rng.gen_range(1..k)) % k;
    }
    let mut g = f.clone();
    g.0.swap(0, 1);
    Ok(Witness::Separability { problem, other, group, f, g })
}

/// Fixed construction: `U*(f^t) = (0.5 - 1/t, 1, …, 1)` for `t = 2..=64`
/// against `U*(g) = (0.5, …, 0.5)`, limit `U*(f) = (0.5, 1, …, 1)`.
pub fn continuity_sequence(n: usize) -> Result<Witness> {
    let steps: Vec<usize> = (2..=64).collect();
    let mut outcomes = vec!["top".to_string(), "g".to_string(), "f".to_string()];
    outcomes.extend(steps.iter().map(|t| format!("f{t}")));
    let mut individuals = Vec::with_capacity(n);
    let mut first = vec![1.0, 0.5, 0.5];
    first.extend(steps.iter().map(|&t| 0.5 - 1.0 / t as f64));
    individuals.push(Individual::new(first, vec![1.0]));
    for _ in 1..n {
        let mut rest = vec![0.0, 0.5, 1.0];
        rest.extend(steps.iter().map(|_| 1.0));
        individuals.push(Individual::new(rest, vec![1.0]));
    }
    let problem = Problem::new(outcomes, vec!["all".into()], individuals)?;
    let sequence = (0..steps.len()).map(|k| Act(vec![3 + k])).collect();
    Ok(Witness::ContinuitySequence { problem, f: Act(vec![2]), g: Act(vec![1]), sequence })
}

/// Scans `ψ` along random segments for jumps larger than [`JUMP`] that
/// survive bisection down to width `1e-9`.
pub fn scan_jumps(rule: &Rule, n: usize, segments: usize, seed: u64) -> Result<Option<Witness>> {
    const POINTS: usize = 64;
    for s in 0..segments {
        let mut rng = crate::rng::stream(seed, s as u64);
        let u: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
        let v: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
        let psi = |t: f64| psi_of_rule(rule, &segment_point(&u, &v, t));
        let mut prev = psi(0.0)?;
        for k in 1..=POINTS {
            let (mut lo, mut hi) = ((k - 1) as f64 / POINTS as f64, k as f64 / POINTS as f64);
            let next = psi(hi)?;
            if (next - prev).abs() > JUMP {
                let (mut a, mut b) = (prev, next);
                while hi - lo > 1e-9 {
                    let mid = 0.5 * (lo + hi);
                    let m = psi(mid)?;
                    if (m - a).abs() >= (b - m).abs() {
                        hi = mid;
                        b = m;
                    } else {
                        lo = mid;
                        a = m;
                    }
                }
                if (b - a).abs() > JUMP {
                    return Ok(Some(Witness::ContinuityJump { u, v, lo, hi }));
                }
            }
            prev = next;
        }
    }
    Ok(None)
}
