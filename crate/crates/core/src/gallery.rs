//! The counterexample gallery: six rules that each drop one axiom of the
//! relative fair characterization, their witnesses, and the `ψ` property
//! table.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::{axiom_matrix, replay, Axiom, AxiomMatrix, GeneratorConfig, NamedRule, Witness};
use crate::rules::*;
use crate::schema::to_pretty;
use crate::verdict::Status;
use crate::welfare::{property_profile, PropertyVerdict, WelfareFunction};

pub const MATRIX_SCHEMA: &str = "fairagg.matrix/v1";
pub const WITNESS_SCHEMA: &str = "fairagg.witness/v1";
pub const PROPERTIES_SCHEMA: &str = "fairagg.properties/v1";

pub const GALLERY_TRIALS: usize = 1000;
pub const PROPERTY_SAMPLES: usize = 10_000;

fn two_vertex() -> WeightSet {
    WeightSet::from_rows(&[&[0.3, 0.7], &[0.7, 0.3]]).expect("valid weights")
}

/// The six counterexample rules with the axiom each one drops.
pub fn counterexamples() -> Vec<(NamedRule, Axiom)> {
    vec![
        (NamedRule::new("indifference", indifference_rule()), Axiom::Pareto),
        (NamedRule::new("leximin", relative_leximin_rule()), Axiom::Continuity),
        (NamedRule::new("parity", parity_rule()), Axiom::Iie),
        (NamedRule::new("max_weight", max_weight_rule(two_vertex())), Axiom::Wpm),
        (NamedRule::new("belief_weighted_utilitarian", belief_weighted_utilitarian_rule(None)), Axiom::BeliefIrrelevance),
        (NamedRule::new("nash", nash_rule()), Axiom::Rci),
    ]
}

/// Counterexample rules plus a relative fair control row.
pub fn matrix_rules() -> Vec<NamedRule> {
    let mut rules: Vec<NamedRule> = counterexamples().into_iter().map(|(r, _)| r).collect();
    rules.push(NamedRule::new("relative_fair", relative_fair_rule(two_vertex())));
    rules
}

pub fn gallery_config(seed: u64) -> GeneratorConfig {
    GeneratorConfig { n: 2, trials: GALLERY_TRIALS, seed, ..Default::default() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub schema: String,
    pub config: GeneratorConfig,
    pub matrix: AxiomMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub schema: String,
    pub rule: String,
    pub descriptor: Rule,
    pub axiom: Axiom,
    pub witness: Witness,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyRow {
    pub rule: String,
    pub descriptor: Rule,
    pub verdicts: Vec<PropertyVerdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertiesFile {
    pub schema: String,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub rows: Vec<PropertyRow>,
}

pub fn property_rules() -> Vec<NamedRule> {
    vec![
        NamedRule::new("relative_maximin", relative_maximin_rule()),
        NamedRule::new("equal_utilitarian", relative_utilitarian_rule(WeightVector::equal(2))),
        NamedRule::new("skew_utilitarian", relative_utilitarian_rule(WeightVector::new(vec![0.9, 0.1]).expect("valid weights"))),
        NamedRule::new("nash", nash_rule()),
        NamedRule::new("max_weight", max_weight_rule(two_vertex())),
    ]
}

pub fn property_table(samples: usize, seed: u64) -> Result<PropertiesFile> {
    let rows = property_rules()
        .into_iter()
        .map(|r| {
            let psi = WelfareFunction::from_rule(&r.rule, 2)?;
            Ok(PropertyRow { rule: r.name, descriptor: r.rule, verdicts: property_profile(&psi, samples, seed) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertiesFile { schema: PROPERTIES_SCHEMA.into(), n: 2, samples, seed, rows })
}

/// Every gallery file as `(file name, contents)`, in a fixed order.
pub fn gallery_files(seed: u64) -> Result<Vec<(String, String)>> {
    let config = gallery_config(seed);
    let matrix = axiom_matrix(&matrix_rules(), &Axiom::RELATIVE_FAIR, &config)?;
    let mut files = Vec::new();
    for ((named, axiom), row) in counterexamples().into_iter().zip(&matrix.rows) {
        let report = row
            .reports
            .iter()
            .find(|r| r.axiom == axiom)
            .expect("matrix covers every designated axiom");
        let witness = report
            .witness
            .clone()
            .ok_or_else(|| Error::Unsupported(format!("no witness found for {} against {axiom}", named.name)))?;
        let status = replay(&named.rule, &witness)?;
        let file = WitnessFile {
            schema: WITNESS_SCHEMA.into(),
            rule: named.name.clone(),
            descriptor: named.rule,
            axiom,
            witness,
            status,
        };
        files.push((format!("witness_{}.json", named.name), to_pretty(&file)));
    }
    files.insert(0, ("matrix.json".into(), to_pretty(&MatrixFile { schema: MATRIX_SCHEMA.into(), config, matrix })));
    files.push(("table1.json".into(), to_pretty(&property_table(PROPERTY_SAMPLES, seed)?)));
    Ok(files)
}

pub fn write_gallery(dir: &Path, seed: u64) -> Result<Vec<String>> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let files = gallery_files(seed)?;
    for (name, contents) in &files {
        std::fs::write(dir.join(name), contents).map_err(io)?;
    }
    Ok(files.into_iter().map(|(n, _)| n).collect())
}
