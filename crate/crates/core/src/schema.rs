//! Versioned JSON file formats.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::{AxiomReport, GeneratorConfig};
use crate::model::{validate_problem, Act, IndividualDoc, Problem, ProblemDoc};
use crate::rules::{Rule, WeightSet};
use crate::welfare::RecoveredWeightSet;

pub const PROBLEM_SCHEMA: &str = "fairagg.problem/v1";
pub const RULE_SCHEMA: &str = "fairagg.rule/v1";
pub const AXIOMS_SCHEMA: &str = "fairagg.axioms/v1";
pub const RECOVERY_SCHEMA: &str = "fairagg.recovery/v1";

fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::Schema(format!("expected schema '{expected}', found '{found}'")))
    }
}

/// A problem plus named acts, each a map from cell to outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: String,
    pub outcomes: Vec<String>,
    pub partition: Vec<String>,
    pub individuals: Vec<IndividualDoc>,
    #[serde(default)]
    pub acts: BTreeMap<String, BTreeMap<String, String>>,
}

impl ProblemFile {
    pub fn new(problem: &Problem, acts: &[(&str, &Act)]) -> Self {
        let doc = ProblemDoc::from(problem);
        let acts = acts
            .iter()
            .map(|(name, act)| {
                let map = problem
                    .cells()
                    .iter()
                    .zip(&act.0)
                    .map(|(c, &o)| (c.clone(), problem.outcomes()[o].clone()))
                    .collect();
                (name.to_string(), map)
            })
            .collect();
        ProblemFile {
            schema: PROBLEM_SCHEMA.into(),
            outcomes: doc.outcomes,
            partition: doc.partition,
            individuals: doc.individuals,
            acts,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        check_schema(&file.schema, PROBLEM_SCHEMA)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn doc(&self) -> ProblemDoc {
        ProblemDoc { outcomes: self.outcomes.clone(), partition: self.partition.clone(), individuals: self.individuals.clone() }
    }

    /// The validated problem; every violation is listed in the error.
    pub fn problem(&self) -> Result<Problem> {
        let doc = self.doc();
        let violations = validate_problem(&doc);
        if !violations.is_empty() {
            return Err(Error::InvalidProblem(violations));
        }
        Problem::try_from(doc)
    }

    pub fn act(&self, problem: &Problem, name: &str) -> Result<Act> {
        let map = self.acts.get(name).ok_or_else(|| Error::UnknownAct(name.to_string()))?;
        for cell in map.keys() {
            problem.cell_index(cell)?;
        }
        Act::from_labels(problem, map.iter().map(|(c, o)| (c.as_str(), o.as_str())))
    }

    /// All acts in name order.
    pub fn acts(&self, problem: &Problem) -> Result<Vec<(String, Act)>> {
        self.acts.keys().map(|name| Ok((name.clone(), self.act(problem, name)?))).collect()
    }
}

/// A rule descriptor: `kind` plus that kind's parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleFile {
    pub schema: String,
    #[serde(flatten)]
    pub rule: Rule,
}

impl RuleFile {
    pub fn new(rule: Rule) -> Self {
        RuleFile { schema: RULE_SCHEMA.into(), rule }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: RuleFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        check_schema(&file.schema, RULE_SCHEMA)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// The weight set a rule is known to be built from, when it has one.
pub fn known_weight_set(rule: &Rule, n: usize) -> Option<WeightSet> {
    match rule {
        Rule::RelativeFair(m) => Some(m.clone()),
        Rule::RelativeUtilitarian { weight } => Some(WeightSet::singleton(weight.clone())),
        Rule::RelativeMaximin => Some(WeightSet::simplex(n)),
        Rule::Variational(c) if c.candidates().iter().all(|k| k.penalty == 0.0) => {
            WeightSet::new(c.candidates().iter().map(|k| k.weight.clone()).collect()).ok()
        }
        _ => None,
    }
    .filter(|m| m.dim() == n)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomsFile {
    pub schema: String,
    pub rule: Rule,
    pub config: GeneratorConfig,
    pub reports: Vec<AxiomReport>,
}

impl AxiomsFile {
    pub fn new(rule: Rule, config: GeneratorConfig, reports: Vec<AxiomReport>) -> Self {
        AxiomsFile { schema: AXIOMS_SCHEMA.into(), rule, config, reports }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryFile {
    pub schema: String,
    pub rule: Rule,
    pub recovered: RecoveredWeightSet,
    /// Hausdorff distance to the rule's own weight set, when it has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hausdorff: Option<f64>,
    pub max_violation: f64,
}

impl RecoveryFile {
    pub fn new(rule: Rule, recovered: RecoveredWeightSet, hausdorff: Option<f64>) -> Self {
        let max_violation = recovered.max_violation();
        RecoveryFile { schema: RECOVERY_SCHEMA.into(), rule, recovered, hausdorff, max_violation }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
