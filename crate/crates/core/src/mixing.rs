//! Partition refinement and the acts built on it: coin-toss events, binary
//! acts, pseudo-mixed acts, and problems with a designed event.
//!
//! Every split is a common-fraction split: a cell `c` becomes two children
//! carrying `t·p_i(c)` and `(1 - t)·p_i(c)` for every individual `i`. Child
//! labels are `"{parent}/0"` and `"{parent}/1"`, so the text before the first
//! `/` always names the top-level ancestor cell (see [`root_label`]).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::model::{Act, Individual, Problem};

/// A refined problem together with the child → parent cell map.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub parent: Vec<usize>,
    pub problem: Problem,
}

/// The label of the top-level cell a (possibly refined) cell descends from.
pub fn root_label(label: &str) -> &str {
    label.split('/').next().unwrap_or(label)
}

fn check_fraction(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::FractionOutOfRange(t))
    }
}

fn child_label(parent: &str, k: usize, taken: &HashSet<String>) -> String {
    let mut label = format!("{parent}/{k}");
    while taken.contains(&label) {
        label.push('\'');
    }
    label
}

/// Splits the cells selected by `split` with fraction `t`. Returns the
/// refinement and, per old cell, the indices of its children in the new
/// partition (one entry if the cell was not split).
fn refine_cells(problem: &Problem, t: f64, split: impl Fn(usize) -> bool) -> Result<(Refinement, Vec<Vec<usize>>)> {
    check_fraction(t)?;
    let mut taken: HashSet<String> = problem.cells().iter().cloned().collect();
    let mut cells = Vec::new();
    let mut parent = Vec::new();
    let mut children = Vec::with_capacity(problem.cells().len());
    for (c, label) in problem.cells().iter().enumerate() {
        if split(c) {
            let a = child_label(label, 0, &taken);
            taken.insert(a.clone());
            let b = child_label(label, 1, &taken);
            taken.insert(b.clone());
            children.push(vec![cells.len(), cells.len() + 1]);
            cells.push(a);
            cells.push(b);
            parent.extend([c, c]);
        } else {
            children.push(vec![cells.len()]);
            cells.push(label.clone());
            parent.push(c);
        }
    }
    let individuals = problem
        .individuals()
        .iter()
        .map(|ind| {
            let mut belief = Vec::with_capacity(cells.len());
            for (c, &p) in ind.belief.iter().enumerate() {
                if split(c) {
                    let head = t * p;
                    belief.push(head);
                    belief.push(p - head);
                } else {
                    belief.push(p);
                }
            }
            Individual::new(ind.values.clone(), belief)
        })
        .collect();
    let refined = Problem::new(problem.outcomes().to_vec(), cells, individuals)?;
    Ok((Refinement { parent, problem: refined }, children))
}

/// Splits one cell into two children holding fractions `t` and `1 - t` of its mass.
pub fn refine_proportional(problem: &Problem, cell: usize, t: f64) -> Result<Refinement> {
    if cell >= problem.cells().len() {
        return Err(Error::UnknownCell(format!("#{cell}")));
    }
    refine_cells(problem, t, |c| c == cell).map(|(r, _)| r)
}

/// Splits every cell with fraction `t`. The second value lists, per old cell,
/// its `t`-child and its `(1 - t)`-child.
pub fn refine_all(problem: &Problem, t: f64) -> Result<(Refinement, Vec<[usize; 2]>)> {
    let (r, children) = refine_cells(problem, t, |_| true)?;
    let pairs = children.into_iter().map(|v| [v[0], v[1]]).collect();
    Ok((r, pairs))
}

/// Carries an act on the parent partition over to the refined partition.
pub fn lift_act(map: &Refinement, f: &Act) -> Result<Act> {
    let parents = map.parent.iter().copied().max().map_or(0, |m| m + 1);
    if f.0.len() != parents {
        return Err(Error::PartitionMismatch { expected: parents, found: f.0.len() });
    }
    Ok(Act(map.parent.iter().map(|&c| f.0[c]).collect()))
}

/// An event every individual believes has probability one half.
pub fn coin_toss_event(problem: &Problem) -> Result<(Refinement, Vec<usize>)> {
    let (r, pairs) = refine_all(problem, 0.5)?;
    let event = pairs.iter().map(|p| p[0]).collect();
    Ok((r, event))
}

/// The act `xEy`: `x` on the cells of `event`, `y` elsewhere.
pub fn binary_act(problem: &Problem, x: usize, event: &[usize], y: usize) -> Result<Act> {
    let k = problem.outcomes().len();
    for o in [x, y] {
        if o >= k {
            return Err(Error::UnknownOutcome(format!("#{o}")));
        }
    }
    let mut act = vec![y; problem.cells().len()];
    for &c in event {
        *act.get_mut(c).ok_or_else(|| Error::UnknownCell(format!("#{c}")))? = x;
    }
    Ok(Act(act))
}

/// Pseudo-mixes each act in `acts` with the constant outcome `x` at weight
/// `alpha`, all on one shared refinement: every cell is split with fraction
/// `alpha`, the `alpha`-child keeps the act's outcome and the other child gets `x`.
pub fn pseudo_mix_all(problem: &Problem, acts: &[&Act], x: usize, alpha: f64) -> Result<(Refinement, Vec<Act>)> {
    if x >= problem.outcomes().len() {
        return Err(Error::UnknownOutcome(format!("#{x}")));
    }
    for f in acts {
        problem.check_act(f)?;
    }
    let (r, pairs) = refine_all(problem, alpha)?;
    let mixed = acts
        .iter()
        .map(|f| {
            let mut out = vec![x; r.parent.len()];
            for (c, pair) in pairs.iter().enumerate() {
                out[pair[0]] = f.0[c];
            }
            Act(out)
        })
        .collect();
    Ok((r, mixed))
}

/// The pseudo-mixed act `f_{αx}` on its refined problem.
pub fn pseudo_mixed_act(problem: &Problem, f: &Act, x: usize, alpha: f64) -> Result<(Refinement, Act)> {
    let (r, mut acts) = pseudo_mix_all(problem, &[f], x, alpha)?;
    Ok((r, acts.pop().expect("one act in, one act out")))
}

/// Probability individual `i` assigns to each outcome under `act`, summed cell by cell.
pub fn induced_distribution(problem: &Problem, i: usize, act: &Act) -> Result<Vec<f64>> {
    problem.check_act(act)?;
    let belief = &problem.individual(i)?.belief;
    let mut dist = vec![0.0; problem.outcomes().len()];
    for (c, &o) in act.0.iter().enumerate() {
        dist[o] += belief[c];
    }
    Ok(dist)
}

/// Builds a two-cell problem `{E, Ec}` in which individual `i` assigns
/// probability `q[i]` to `E`. Returns the problem and the event `E`.
pub fn problem_with_event(outcomes: &[String], values: Vec<Vec<f64>>, q: &[f64]) -> Result<(Problem, Vec<usize>)> {
    if values.len() != q.len() {
        return Err(Error::DimensionMismatch { expected: values.len(), found: q.len() });
    }
    if let Some(bad) = q.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::InvalidProbability(format!("event probability {bad} outside [0, 1]")));
    }
    let individuals = values
        .into_iter()
        .zip(q)
        .map(|(v, &qi)| Individual::new(v, vec![qi, 1.0 - qi]))
        .collect();
    let problem = Problem::new(outcomes.to_vec(), vec!["E".into(), "Ec".into()], individuals)?;
    Ok((problem, vec![0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::normalized_profile;

    fn sample() -> Problem {
        Problem::from_labels(
            &["x", "y", "z"],
            &["c1", "c2"],
            vec![
                Individual::new(vec![0.0, 1.0, 0.4], vec![0.4, 0.6]),
                Individual::new(vec![1.0, 0.0, 0.7], vec![0.6, 0.4]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_cell_half_split() {
        let p = Problem::from_labels(
            &["x", "y"],
            &["all"],
            vec![
                Individual::new(vec![0.0, 1.0], vec![1.0]),
                Individual::new(vec![1.0, 0.0], vec![1.0]),
            ],
        )
        .unwrap();
        let r = refine_proportional(&p, 0, 0.5).unwrap();
        assert_eq!(r.problem.cells(), ["all/0", "all/1"]);
        for ind in r.problem.individuals() {
            assert_eq!(ind.belief, vec![0.5, 0.5]);
        }
    }

    #[test]
    fn heterogeneous_proportional_split() {
        let p = sample();
        let r = refine_proportional(&p, 0, 0.25).unwrap();
        assert!((r.problem.individuals()[0].belief[0] - 0.1).abs() < 1e-15);
        assert!((r.problem.individuals()[1].belief[0] - 0.15).abs() < 1e-15);
        assert_eq!(r.parent, vec![0, 0, 1]);
    }

    #[test]
    fn fraction_bounds() {
        let p = sample();
        assert_eq!(refine_proportional(&p, 0, 1.0).unwrap_err(), Error::FractionOutOfRange(1.0));
        assert!(pseudo_mixed_act(&p, &Act(vec![0, 1]), 2, 0.0).is_err());
        assert!(matches!(refine_proportional(&p, 5, 0.5), Err(Error::UnknownCell(_))));
    }

    #[test]
    fn lift_preserves_profile_and_shape() {
        let p = sample();
        let f = Act(vec![0, 1]);
        let r = refine_proportional(&p, 0, 0.3).unwrap();
        let lifted = lift_act(&r, &f).unwrap();
        assert_eq!(lifted.0, vec![0, 0, 1]);
        let a = normalized_profile(&p, &f).unwrap();
        let b = normalized_profile(&r.problem, &lifted).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).abs() < 1e-12);
        }
        let c = lift_act(&r, &Act(vec![2, 2])).unwrap();
        assert!(c.is_constant());
        assert!(matches!(lift_act(&r, &Act(vec![0])), Err(Error::PartitionMismatch { .. })));
    }

    #[test]
    fn coin_toss_mix_is_midpoint() {
        let p = sample();
        let (r, e) = coin_toss_event(&p).unwrap();
        for i in 0..p.n() {
            assert!((r.problem.event_probability(i, &e).unwrap() - 0.5).abs() < 1e-15);
        }
        let mix = binary_act(&r.problem, 0, &e, 1).unwrap();
        let ux = normalized_profile(&r.problem, &Act::constant(&r.problem, 0).unwrap()).unwrap();
        let uy = normalized_profile(&r.problem, &Act::constant(&r.problem, 1).unwrap()).unwrap();
        let um = normalized_profile(&r.problem, &mix).unwrap();
        for i in 0..2 {
            assert!((um[i] - 0.5 * (ux[i] + uy[i])).abs() < 1e-12);
        }
    }

    #[test]
    fn binary_act_extremes() {
        let p = sample();
        assert_eq!(binary_act(&p, 0, &[0, 1], 1).unwrap(), Act(vec![0, 0]));
        assert_eq!(binary_act(&p, 0, &[], 1).unwrap(), Act(vec![1, 1]));
        assert!(matches!(binary_act(&p, 9, &[], 1), Err(Error::UnknownOutcome(_))));
        assert!(matches!(binary_act(&p, 0, &[4], 1), Err(Error::UnknownCell(_))));
    }

    #[test]
    fn pseudo_mix_distribution_example() {
        // f = y on c1 (p = 0.4, 0.6), z on c2; mix with x at alpha = 0.5.
        let p = sample();
        let f = Act(vec![1, 2]);
        let (r, fm) = pseudo_mixed_act(&p, &f, 0, 0.5).unwrap();
        let d1 = induced_distribution(&r.problem, 0, &fm).unwrap();
        let d2 = induced_distribution(&r.problem, 1, &fm).unwrap();
        assert!((d1[1] - 0.2).abs() < 1e-15 && (d2[1] - 0.3).abs() < 1e-15);
        assert!((d1[0] - 0.5).abs() < 1e-15 && (d2[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mixing_with_own_outcome_keeps_distribution() {
        let p = sample();
        let f = Act(vec![1, 1]);
        let (r, fm) = pseudo_mixed_act(&p, &f, 1, 0.3).unwrap();
        assert!(fm.is_constant());
        assert_eq!(induced_distribution(&r.problem, 0, &fm).unwrap(), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn designed_event_profile() {
        let outcomes = vec!["x".to_string(), "y".to_string()];
        let values = vec![vec![1.0, 0.0], vec![0.2, 0.9]];
        let (p, e) = problem_with_event(&outcomes, values, &[0.3, 0.8]).unwrap();
        let f = binary_act(&p, 0, &e, 1).unwrap();
        let prof = normalized_profile(&p, &f).unwrap();
        // u*_1 = (1, 0), u*_2 = (0, 1)
        let expected = [0.3 * 1.0 + 0.7 * 0.0, 0.8 * 0.0 + 0.2 * 1.0];
        for (a, b) in prof.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(matches!(
            problem_with_event(&outcomes, vec![vec![1.0, 0.0]; 2], &[1.2, 0.0]),
            Err(Error::InvalidProbability(_))
        ));
    }

    #[test]
    fn labels_stay_unique_and_rooted() {
        let p = Problem::from_labels(
            &["x", "y"],
            &["a", "a/0"],
            vec![
                Individual::new(vec![0.0, 1.0], vec![0.5, 0.5]),
                Individual::new(vec![1.0, 0.0], vec![0.5, 0.5]),
            ],
        )
        .unwrap();
        let (r, _) = refine_all(&p, 0.5).unwrap();
        assert_eq!(r.problem.cells().len(), 4);
        assert!(r.problem.cells().iter().all(|c| root_label(c) == "a"));
    }
}
