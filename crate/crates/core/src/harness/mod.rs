//! Randomized axiom audits.
//!
//! Every check draws trial instances from a seeded stream, judges them with
//! [`checks::verdict`] and stops at the first violation. Golden instances are
//! judged before the random ones. A report either carries a witness that
//! replays to `violated`, or says how many trials found nothing.

pub mod checks;
pub mod generate;
pub mod golden;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use checks::{verdict, Verdict, Witness};
pub use generate::{
    gen_inessential_expansion, gen_problem, is_inessential_expansion, BeliefMode, GeneratorConfig, ValueMode,
    DEFAULT_SEED,
};

use crate::error::{Error, Result};
use crate::rules::Rule;
use crate::verdict::Status;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Pareto,
    StrongPareto,
    Continuity,
    Iie,
    Wpm,
    Spm,
    BeliefIrrelevance,
    Rci,
    Ci,
    Wrci,
    Anonymity,
    Separability,
    Saa,
}

impl Axiom {
    pub const ALL: [Axiom; 13] = [
        Axiom::Pareto,
        Axiom::StrongPareto,
        Axiom::Continuity,
        Axiom::Iie,
        Axiom::Wpm,
        Axiom::Spm,
        Axiom::BeliefIrrelevance,
        Axiom::Rci,
        Axiom::Ci,
        Axiom::Wrci,
        Axiom::Anonymity,
        Axiom::Separability,
        Axiom::Saa,
    ];

    /// The characterization of the relative fair family.
    pub const RELATIVE_FAIR: [Axiom; 6] =
        [Axiom::Pareto, Axiom::Continuity, Axiom::Iie, Axiom::Wpm, Axiom::BeliefIrrelevance, Axiom::Rci];

    pub const UTILITARIAN: [Axiom; 5] =
        [Axiom::Pareto, Axiom::Continuity, Axiom::Iie, Axiom::BeliefIrrelevance, Axiom::Ci];

    pub const MAXIMIN: [Axiom; 6] =
        [Axiom::Pareto, Axiom::Continuity, Axiom::Iie, Axiom::BeliefIrrelevance, Axiom::Spm, Axiom::Saa];

    pub const LEXIMIN: [Axiom; 6] = [
        Axiom::StrongPareto,
        Axiom::Iie,
        Axiom::BeliefIrrelevance,
        Axiom::Anonymity,
        Axiom::Spm,
        Axiom::Separability,
    ];

    pub const VARIATIONAL: [Axiom; 6] =
        [Axiom::Pareto, Axiom::Continuity, Axiom::Iie, Axiom::Wpm, Axiom::BeliefIrrelevance, Axiom::Wrci];

    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Pareto => "pareto",
            Axiom::StrongPareto => "strong_pareto",
            Axiom::Continuity => "continuity",
            Axiom::Iie => "iie",
            Axiom::Wpm => "wpm",
            Axiom::Spm => "spm",
            Axiom::BeliefIrrelevance => "belief_irrelevance",
            Axiom::Rci => "rci",
            Axiom::Ci => "ci",
            Axiom::Wrci => "wrci",
            Axiom::Anonymity => "anonymity",
            Axiom::Separability => "separability",
            Axiom::Saa => "saa",
        }
    }

    fn index(self) -> u64 {
        Axiom::ALL.iter().position(|a| *a == self).expect("listed") as u64
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let alias = match key.as_str() {
            "p" => "pareto",
            "cont" => "continuity",
            "bi" => "belief_irrelevance",
            "sp" => "strong_pareto",
            other => other,
        };
        Axiom::ALL
            .into_iter()
            .find(|a| a.as_str() == alias)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown axiom '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    Golden,
    Search,
    /// The fixed continuity sequence.
    Construction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub rule: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<WitnessSource>,
    /// Index of the violating random trial, if one was found by search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    pub trials: usize,
    /// Trials whose premises held.
    pub premise_hits: usize,
    pub n: usize,
    pub seed: u64,
}

/// Per-check switches beyond the generator settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub golden: bool,
    /// Random segments scanned for jumps of `ψ` in the continuity check.
    pub segments: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { golden: true, segments: 100 }
    }
}

const CHUNK: usize = 256;

/// Stream index of trial `k` of `axiom`.
fn trial_stream(axiom: Axiom, k: usize) -> u64 {
    (axiom.index() << 40) | k as u64
}

/// Replays a stored witness.
pub fn replay(rule: &Rule, witness: &Witness) -> Result<Status> {
    Ok(match verdict(rule, witness)? {
        Verdict::Violated => Status::Violated,
        _ => Status::NoViolationFound,
    })
}

fn effective_config(rule: &Rule, config: &GeneratorConfig) -> Result<GeneratorConfig> {
    let cfg = GeneratorConfig { n: rule.dim().unwrap_or(config.n), ..config.clone() };
    cfg.validate()?;
    Ok(cfg)
}

pub fn check_axiom(rule: &Rule, axiom: Axiom, config: &GeneratorConfig) -> Result<AxiomReport> {
    check_axiom_with(rule, axiom, config, CheckOptions::default())
}

pub fn check_axiom_with(rule: &Rule, axiom: Axiom, config: &GeneratorConfig, opts: CheckOptions) -> Result<AxiomReport> {
    let cfg = effective_config(rule, config)?;
    if axiom == Axiom::Continuity {
        return check_continuity(rule, &cfg, opts);
    }
    let mut report = AxiomReport {
        axiom,
        rule: rule.kind().to_string(),
        status: Status::NoViolationFound,
        witness: None,
        source: None,
        trial: None,
        trials: 0,
        premise_hits: 0,
        n: cfg.n,
        seed: cfg.seed,
    };
    if opts.golden {
        for w in golden::golden_witnesses(axiom, cfg.n)? {
            if verdict(rule, &w)? == Verdict::Violated {
                report.status = Status::Violated;
                report.witness = Some(w);
                report.source = Some(WitnessSource::Golden);
                return Ok(report);
            }
        }
    }
    let mut start = 0;
    while start < cfg.trials {
        let end = (start + CHUNK).min(cfg.trials);
        let results: Vec<(Verdict, Witness)> = (start..end)
            .into_par_iter()
            .map(|k| {
                let mut rng = crate::rng::stream(cfg.seed, trial_stream(axiom, k));
                let w = checks::instance(axiom, &cfg, &mut rng)?;
                Ok((verdict(rule, &w)?, w))
            })
            .collect::<Result<_>>()?;
        for (offset, (v, w)) in results.into_iter().enumerate() {
            report.trials += 1;
            if v != Verdict::Vacuous {
                report.premise_hits += 1;
            }
            if v == Verdict::Violated {
                report.status = Status::Violated;
                report.witness = Some(w);
                report.source = Some(WitnessSource::Search);
                report.trial = Some(start + offset);
                return Ok(report);
            }
        }
        start = end;
    }
    Ok(report)
}

/// The fixed sequence first; for rules with a score, a jump scan of `ψ`
/// along seeded random segments.
pub fn check_continuity(rule: &Rule, config: &GeneratorConfig, opts: CheckOptions) -> Result<AxiomReport> {
    let cfg = effective_config(rule, config)?;
    let mut report = AxiomReport {
        axiom: Axiom::Continuity,
        rule: rule.kind().to_string(),
        status: Status::NoViolationFound,
        witness: None,
        source: None,
        trial: None,
        trials: 1,
        premise_hits: 1,
        n: cfg.n,
        seed: cfg.seed,
    };
    let seq = checks::continuity_sequence(cfg.n)?;
    if verdict(rule, &seq)? == Verdict::Violated {
        report.status = Status::Violated;
        report.witness = Some(seq);
        report.source = Some(WitnessSource::Construction);
        return Ok(report);
    }
    if rule.has_score() {
        let seed = cfg.seed ^ trial_stream(Axiom::Continuity, 0);
        report.trials += opts.segments;
        report.premise_hits += opts.segments;
        if let Some(w) = checks::scan_jumps(rule, cfg.n, opts.segments, seed)? {
            report.status = Status::Violated;
            report.witness = Some(w);
            report.source = Some(WitnessSource::Search);
        }
    }
    Ok(report)
}

/// A named rule, as listed in a matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedRule {
    pub name: String,
    pub rule: Rule,
}

impl NamedRule {
    pub fn new(name: impl Into<String>, rule: Rule) -> Self {
        NamedRule { name: name.into(), rule }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRow {
    pub rule: String,
    pub reports: Vec<AxiomReport>,
}

impl MatrixRow {
    pub fn violated(&self) -> Vec<Axiom> {
        self.reports.iter().filter(|r| r.status.is_violated()).map(|r| r.axiom).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomMatrix {
    pub axioms: Vec<Axiom>,
    pub rows: Vec<MatrixRow>,
}

/// Default matrix columns: the relative fair characterization minus
/// continuity, which is only added on request.
pub fn default_columns() -> Vec<Axiom> {
    Axiom::RELATIVE_FAIR.into_iter().filter(|a| *a != Axiom::Continuity).collect()
}

pub fn axiom_matrix(rules: &[NamedRule], axioms: &[Axiom], config: &GeneratorConfig) -> Result<AxiomMatrix> {
    axiom_matrix_with(rules, axioms, config, CheckOptions::default())
}

pub fn axiom_matrix_with(
    rules: &[NamedRule],
    axioms: &[Axiom],
    config: &GeneratorConfig,
    opts: CheckOptions,
) -> Result<AxiomMatrix> {
    let rows = rules
        .iter()
        .map(|r| {
            let reports = axioms
                .iter()
                .map(|&a| {
                    let mut rep = check_axiom_with(&r.rule, a, config, opts)?;
                    rep.rule = r.name.clone();
                    Ok(rep)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(MatrixRow { rule: r.name.clone(), reports })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AxiomMatrix { axioms: axioms.to_vec(), rows })
}

impl AxiomMatrix {
    /// Plain-text table: `ok` for no violation found, `FAIL` otherwise.
    pub fn to_table(&self) -> String {
        let width = self.rows.iter().map(|r| r.rule.len()).max().unwrap_or(4).max(4);
        let mut out = format!("{:width$}", "rule");
        for a in &self.axioms {
            out.push_str(&format!("  {:>w$}", a.as_str(), w = a.as_str().len().max(4)));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("{:width$}", row.rule));
            for (a, rep) in self.axioms.iter().zip(&row.reports) {
                let mark = if rep.status.is_violated() { "FAIL" } else { "ok" };
                out.push_str(&format!("  {:>w$}", mark, w = a.as_str().len().max(4)));
            }
            out.push('\n');
        }
        out
    }
}
