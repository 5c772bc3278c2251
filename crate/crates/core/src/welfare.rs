//! Welfare functions behind score rules.
//!
//! A score rule evaluates an act through its normalized profile, so it is
//! determined by a function `ψ` on `[0,1]^n`. [`probe_act`] builds a problem
//! in which a given profile is realized, [`WelfareFunction`] wraps the
//! resulting `ψ`, and the `check_*` functions search for violations of the
//! structural properties that separate the rule families. For support
//! functions, [`recover_weight_set`] rebuilds the weight polytope from
//! supporting halfspaces.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, HalfPlane, Point};
use crate::mixing::{lift_act, problem_with_event, refine_proportional};
use crate::model::{Act, Problem};
use crate::rng::stream;
use crate::rules::{evaluate, Rule, WeightSet, WeightVector};
use crate::tol;
use crate::verdict::Status;

/// How [`probe_act`] lays out the event carrying the profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BeliefsMode {
    /// Two cells `E`, `Ec` with `p_i(E) = u_i`.
    #[default]
    DesignedEvent,
    /// As `DesignedEvent`, with `E` split into two equal halves.
    SplitEvent,
}

fn check_unit_vector(u: &[f64]) -> Result<()> {
    if u.is_empty() {
        return Err(Error::InvalidVector("empty vector".into()));
    }
    if let Some(bad) = u.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(Error::InvalidVector(format!("component {bad} outside [0, 1]")));
    }
    Ok(())
}

/// A problem with common values `u_i(x*) = 1`, `u_i(x_*) = 0` and an act
/// whose normalized profile is `u`.
pub fn probe_act(u: &[f64], mode: BeliefsMode) -> Result<(Problem, Act)> {
    check_unit_vector(u)?;
    let outcomes = ["x_hi".to_string(), "x_lo".to_string()];
    let values = vec![vec![1.0, 0.0]; u.len()];
    let (problem, _) = problem_with_event(&outcomes, values, u)?;
    let act = if u.iter().all(|&x| x == 1.0) {
        Act::constant(&problem, 0)?
    } else if u.iter().all(|&x| x == 0.0) {
        Act::constant(&problem, 1)?
    } else {
        Act(vec![0, 1])
    };
    match mode {
        BeliefsMode::DesignedEvent => Ok((problem, act)),
        BeliefsMode::SplitEvent => {
            let map = refine_proportional(&problem, 0, 0.5)?;
            let lifted = lift_act(&map, &act)?;
            Ok((map.problem, lifted))
        }
    }
}

/// `ψ(u)` for a score rule: the rule's value on the probe act for `u`.
pub fn psi_of_rule(rule: &Rule, u: &[f64]) -> Result<f64> {
    if !rule.has_score() {
        return Err(Error::ComparatorOnly(rule.kind().into()));
    }
    let (problem, act) = probe_act(u, BeliefsMode::DesignedEvent)?;
    evaluate(rule, &problem, &act)
}

type Evaluator = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A welfare function on `[0,1]^n`, optionally calibrated so that
/// `ψ(0) = 0` and `ψ(1) = 1`.
#[derive(Clone)]
pub struct WelfareFunction {
    n: usize,
    label: String,
    eval: Arc<Evaluator>,
    offset: f64,
    scale: f64,
}

impl fmt::Debug for WelfareFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WelfareFunction")
            .field("n", &self.n)
            .field("label", &self.label)
            .field("offset", &self.offset)
            .field("scale", &self.scale)
            .finish()
    }
}

impl WelfareFunction {
    /// Wraps an explicit formula, uncalibrated.
    pub fn from_fn<F>(n: usize, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        WelfareFunction { n, label: label.into(), eval: Arc::new(f), offset: 0.0, scale: 1.0 }
    }

    /// The calibrated welfare function of a score rule for `n` individuals.
    pub fn from_rule(rule: &Rule, n: usize) -> Result<Self> {
        if !rule.has_score() {
            return Err(Error::ComparatorOnly(rule.kind().into()));
        }
        if let Some(d) = rule.dim() {
            if d != n {
                return Err(Error::DimensionMismatch { expected: d, found: n });
            }
        }
        // surfaces construction errors (n < 2) before the closure hides them
        psi_of_rule(rule, &vec![0.5; n])?;
        let rule = rule.clone();
        let label = rule.kind().to_string();
        Ok(Self::from_fn(n, label, move |u| psi_of_rule(&rule, u).unwrap_or(f64::NAN)).calibrated())
    }

    /// Rescales affinely so that `ψ(0) = 0` and `ψ(1) = 1`. Left unchanged
    /// when `ψ(1) ≤ ψ(0)`, where no increasing calibration exists.
    pub fn calibrated(mut self) -> Self {
        let lo = (self.eval)(&vec![0.0; self.n]);
        let hi = (self.eval)(&vec![1.0; self.n]);
        if lo.is_finite() && hi.is_finite() && hi - lo > tol::DERIVED {
            self.offset = lo;
            self.scale = hi - lo;
        }
        self
    }

    pub fn is_calibrated(&self) -> bool {
        let zero = self.eval(&vec![0.0; self.n]);
        let one = self.eval(&vec![1.0; self.n]);
        zero.abs() <= tol::DERIVED && (one - 1.0).abs() <= tol::DERIVED
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        ((self.eval)(u) - self.offset) / self.scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Monotone,
    Quasiconcave,
    Homogeneous,
    TranslationInvariant,
    Symmetric,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Monotone,
        Property::Quasiconcave,
        Property::Homogeneous,
        Property::TranslationInvariant,
        Property::Symmetric,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Monotone => "monotone",
            Property::Quasiconcave => "quasiconcave",
            Property::Homogeneous => "homogeneous",
            Property::TranslationInvariant => "translation_invariant",
            Property::Symmetric => "symmetric",
        }
    }
}

/// Inputs at which a property fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum PropertyWitness {
    /// `u ≫ v` but `ψ(u)` does not exceed `ψ(v)`.
    Monotone { u: Vec<f64>, v: Vec<f64> },
    Quasiconcave { u: Vec<f64>, v: Vec<f64>, t: f64 },
    Homogeneous { u: Vec<f64>, alpha: f64 },
    TranslationInvariant { u: Vec<f64>, c: f64 },
    Symmetric { u: Vec<f64>, permutation: Vec<usize> },
}

fn clamp_unit(v: impl IntoIterator<Item = f64>) -> Vec<f64> {
    v.into_iter().map(|x| x.clamp(0.0, 1.0)).collect()
}

impl PropertyWitness {
    pub fn property(&self) -> Property {
        match self {
            PropertyWitness::Monotone { .. } => Property::Monotone,
            PropertyWitness::Quasiconcave { .. } => Property::Quasiconcave,
            PropertyWitness::Homogeneous { .. } => Property::Homogeneous,
            PropertyWitness::TranslationInvariant { .. } => Property::TranslationInvariant,
            PropertyWitness::Symmetric { .. } => Property::Symmetric,
        }
    }

    /// Re-evaluates `ψ` at the witness; true when the property fails there.
    pub fn violates(&self, psi: &WelfareFunction) -> bool {
        let eps = tol::DERIVED;
        match self {
            PropertyWitness::Monotone { u, v } => psi.eval(u) <= psi.eval(v) + eps,
            PropertyWitness::Quasiconcave { u, v, t } => {
                let mid = clamp_unit(u.iter().zip(v).map(|(a, b)| t * a + (1.0 - t) * b));
                psi.eval(&mid) < psi.eval(u).min(psi.eval(v)) - eps
            }
            PropertyWitness::Homogeneous { u, alpha } => {
                let scaled = clamp_unit(u.iter().map(|x| alpha * x));
                (psi.eval(&scaled) - alpha * psi.eval(u)).abs() > eps
            }
            PropertyWitness::TranslationInvariant { u, c } => {
                let shifted = clamp_unit(u.iter().map(|x| x + c));
                (psi.eval(&shifted) - psi.eval(u) - c).abs() > eps
            }
            PropertyWitness::Symmetric { u, permutation } => {
                let permuted: Vec<f64> = permutation.iter().map(|&k| u[k]).collect();
                (psi.eval(u) - psi.eval(&permuted)).abs() > eps
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub property: Property,
    pub status: Status,
    pub witness: Option<PropertyWitness>,
    pub samples: usize,
    pub seed: u64,
}

fn uniform(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen::<f64>()).collect()
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// Tries the fixed candidates in order, then `samples` random ones drawn
/// from per-sample streams; the first violation in sample order wins.
fn search<D>(
    property: Property,
    psi: &WelfareFunction,
    samples: usize,
    seed: u64,
    fixed: Vec<PropertyWitness>,
    draw: D,
) -> PropertyVerdict
where
    D: Fn(&mut ChaCha8Rng) -> PropertyWitness + Sync,
{
    let witness = fixed.into_iter().find(|w| w.violates(psi)).or_else(|| {
        (0..samples).into_par_iter().find_map_first(|k| {
            let mut rng = stream(seed, k as u64);
            let w = draw(&mut rng);
            w.violates(psi).then_some(w)
        })
    });
    PropertyVerdict {
        property,
        status: if witness.is_some() { Status::Violated } else { Status::NoViolationFound },
        witness,
        samples,
        seed,
    }
}

/// Samples pairs `u ≫ v` with a componentwise gap of at least `1e-3`.
pub fn check_monotone(psi: &WelfareFunction, samples: usize, seed: u64) -> PropertyVerdict {
    let n = psi.n();
    let fixed = vec![PropertyWitness::Monotone { u: vec![1.0; n], v: vec![0.0; n] }];
    search(Property::Monotone, psi, samples, seed, fixed, |rng| {
        let gap = 1e-3;
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0 - gap)).collect();
        let u = v.iter().map(|&x| rng.gen_range(x + gap..=1.0)).collect();
        PropertyWitness::Monotone { u, v }
    })
}

pub fn check_quasiconcave(psi: &WelfareFunction, samples: usize, seed: u64) -> PropertyVerdict {
    let n = psi.n();
    let mut fixed = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            fixed.push(PropertyWitness::Quasiconcave { u: unit(n, i), v: unit(n, j), t: 0.5 });
        }
    }
    search(Property::Quasiconcave, psi, samples, seed, fixed, |rng| PropertyWitness::Quasiconcave {
        u: uniform(rng, n),
        v: uniform(rng, n),
        t: rng.gen_range(1e-9..1.0 - 1e-9),
    })
}

/// Samples `u` and `α > 0` with `αu ∈ [0,1]^n`.
pub fn check_homogeneous(psi: &WelfareFunction, samples: usize, seed: u64) -> PropertyVerdict {
    let n = psi.n();
    let fixed = vec![PropertyWitness::Homogeneous { u: vec![1.0; n], alpha: 0.5 }];
    search(Property::Homogeneous, psi, samples, seed, fixed, |rng| {
        let u = uniform(rng, n);
        let top = u.iter().copied().fold(0.0, f64::max);
        let alpha = if top > 0.0 { rng.gen_range(1e-9..=1.0 / top) } else { 0.5 };
        PropertyWitness::Homogeneous { u, alpha }
    })
}

/// Samples `u` and `c` with `u + c·1 ∈ [0,1]^n`.
pub fn check_translation_invariant(psi: &WelfareFunction, samples: usize, seed: u64) -> PropertyVerdict {
    let n = psi.n();
    let fixed = vec![PropertyWitness::TranslationInvariant { u: vec![0.5; n], c: 0.2 }];
    search(Property::TranslationInvariant, psi, samples, seed, fixed, |rng| {
        let u = uniform(rng, n);
        let lo = -u.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = 1.0 - u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let c = rng.gen_range(lo..=hi);
        PropertyWitness::TranslationInvariant { u, c }
    })
}

pub fn check_symmetric(psi: &WelfareFunction, samples: usize, seed: u64) -> PropertyVerdict {
    let n = psi.n();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1.min(n - 1));
    let fixed = vec![PropertyWitness::Symmetric { u: unit(n, 0), permutation: swap }];
    search(Property::Symmetric, psi, samples, seed, fixed, |rng| {
        let u = uniform(rng, n);
        let mut permutation: Vec<usize> = (0..n).collect();
        permutation.shuffle(rng);
        PropertyWitness::Symmetric { u, permutation }
    })
}

pub fn check_property(property: Property, psi: &WelfareFunction, samples: usize, seed: u64) -> PropertyVerdict {
    match property {
        Property::Monotone => check_monotone(psi, samples, seed),
        Property::Quasiconcave => check_quasiconcave(psi, samples, seed),
        Property::Homogeneous => check_homogeneous(psi, samples, seed),
        Property::TranslationInvariant => check_translation_invariant(psi, samples, seed),
        Property::Symmetric => check_symmetric(psi, samples, seed),
    }
}

/// All five property verdicts, in [`Property::ALL`] order.
pub fn property_profile(psi: &WelfareFunction, samples: usize, seed: u64) -> Vec<PropertyVerdict> {
    Property::ALL.iter().map(|&p| check_property(p, psi, samples, seed)).collect()
}

/// `μ·direction ≥ bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub direction: Vec<f64>,
    pub bound: f64,
}

impl Halfspace {
    pub fn slack(&self, mu: &[f64]) -> f64 {
        mu.iter().zip(&self.direction).map(|(a, b)| a * b).sum::<f64>() - self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub directions: usize,
    pub refinement_cuts: usize,
    pub seed: u64,
}

/// Outer approximation of a weight polytope by supporting halfspaces, with
/// explicit vertices when `n ≤ 3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveredWeightSet {
    pub n: usize,
    pub halfspaces: Vec<Halfspace>,
    pub vertices: Vec<Vec<f64>>,
    pub grid: GridMeta,
}

impl RecoveredWeightSet {
    /// Largest amount by which a vertex falls short of a stored halfspace.
    pub fn max_violation(&self) -> f64 {
        self.vertices
            .iter()
            .flat_map(|mu| self.halfspaces.iter().map(move |h| -h.slack(mu)))
            .fold(0.0, f64::max)
    }

    /// The vertices as a weight set, snapped onto the simplex.
    pub fn weight_set(&self) -> Result<WeightSet> {
        if self.vertices.is_empty() {
            return Err(Error::Unsupported(format!("vertex enumeration for n = {}", self.n)));
        }
        let mut vertices: Vec<WeightVector> = Vec::new();
        for mu in &self.vertices {
            let clamped: Vec<f64> = mu.iter().map(|x| x.max(0.0)).collect();
            let s: f64 = clamped.iter().sum();
            let w = WeightVector::new(clamped.iter().map(|x| x / s).collect())?;
            if !vertices.contains(&w) {
                vertices.push(w);
            }
        }
        WeightSet::new(vertices)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryConfig {
    /// Grid size, coordinate vectors included.
    pub directions: usize,
    pub seed: u64,
    /// Probe each unconfirmed vertex and cut it off if it lies outside.
    pub refine: bool,
    /// Samples for the homogeneity and translation pre-checks.
    pub precheck_samples: usize,
}

impl Default for RecoveryConfig {
    fn default() -> Self {
        RecoveryConfig { directions: 1000, seed: 0, refine: true, precheck_samples: 2000 }
    }
}

fn to_box(d: &[f64]) -> Vec<f64> {
    let lo = d.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    d.iter().map(|x| ((x - lo) / (hi - lo)).clamp(0.0, 1.0)).collect()
}

/// Directions on the faces of `[0,1]^n`: the coordinate vectors first, then
/// `count - n` further points (a face grid for `n = 2`, uniform angles in the
/// sum-zero plane for `n = 3`, seeded random directions otherwise).
pub fn direction_grid(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut grid: Vec<Vec<f64>> = (0..n).map(|i| unit(n, i)).collect();
    let extra = count.saturating_sub(n);
    match n {
        2 => {
            for k in 0..extra {
                let s = (k / 2) as f64 / (extra / 2).max(1) as f64;
                grid.push(if k % 2 == 0 { vec![1.0, s] } else { vec![s, 1.0] });
            }
        }
        3 => {
            let basis = geometry::plane_basis(3).expect("n = 3");
            for k in 0..extra {
                let theta = std::f64::consts::TAU * k as f64 / extra as f64;
                let (s, c) = theta.sin_cos();
                let d: Vec<f64> = (0..3).map(|i| c * basis[0][i] + s * basis[1][i]).collect();
                grid.push(to_box(&d));
            }
        }
        _ => {
            let mut rng = stream(seed, u64::MAX);
            while grid.len() < count.max(n) {
                let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                if d.iter().any(|x| (x - d[0]).abs() > 1e-9) {
                    grid.push(to_box(&d));
                }
            }
        }
    }
    grid
}

/// Rebuilds the weight set of a support-function `ψ` from its grid.
pub fn recover_weight_set(psi: &WelfareFunction, config: &RecoveryConfig) -> Result<RecoveredWeightSet> {
    let grid = direction_grid(psi.n(), config.directions, config.seed);
    recover_from_grid(psi, &grid, config)
}

/// As [`recover_weight_set`] with an explicit grid.
pub fn recover_from_grid(psi: &WelfareFunction, grid: &[Vec<f64>], config: &RecoveryConfig) -> Result<RecoveredWeightSet> {
    let n = psi.n();
    if let Some(bad) = grid.iter().find(|u| u.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
    }
    for verdict in [
        check_homogeneous(psi, config.precheck_samples, config.seed),
        check_translation_invariant(psi, config.precheck_samples, config.seed),
    ] {
        if let Some(w) = verdict.witness {
            return Err(Error::NotSupportFunction(format!("{} fails at {w:?}", verdict.property.as_str())));
        }
    }
    let mut halfspaces: Vec<Halfspace> = grid
        .par_iter()
        .map(|u| Halfspace { direction: u.clone(), bound: psi.eval(u) })
        .collect();
    if let Some(h) = halfspaces.iter().find(|h| !h.bound.is_finite()) {
        return Err(Error::NotSupportFunction(format!("non-finite value at {:?}", h.direction)));
    }
    let mut cuts = 0;
    let vertices = match n {
        2 => interval(&halfspaces)?,
        3 => {
            let (v, added) = polygon(psi, &mut halfspaces, config.refine)?;
            cuts = added;
            v
        }
        _ => Vec::new(),
    };
    Ok(RecoveredWeightSet {
        n,
        halfspaces,
        vertices,
        grid: GridMeta { directions: grid.len(), refinement_cuts: cuts, seed: config.seed },
    })
}

fn empty_set() -> Error {
    Error::NotSupportFunction("supporting halfspaces have empty intersection with the simplex".into())
}

/// `μ = (s, 1 - s)`: each halfspace reads `s (u_0 - u_1) ≥ bound - u_1`.
fn interval(halfspaces: &[Halfspace]) -> Result<Vec<Vec<f64>>> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for h in halfspaces {
        let d = h.direction[0] - h.direction[1];
        let r = h.bound - h.direction[1];
        if d > 0.0 {
            lo = lo.max(r / d);
        } else if d < 0.0 {
            hi = hi.min(r / d);
        } else if r > tol::DERIVED {
            return Err(empty_set());
        }
    }
    if lo > hi + tol::DERIVED {
        return Err(empty_set());
    }
    if lo >= hi {
        let mid = 0.5 * (lo + hi);
        return Ok(vec![vec![mid, 1.0 - mid]]);
    }
    let mut out = vec![vec![hi, 1.0 - hi]];
    if hi - lo > 1e-12 {
        out.push(vec![lo, 1.0 - lo]);
    }
    Ok(out)
}

const MAX_PROBES: usize = 20_000;
const CUT_DEPTH: f64 = 1e-10;
const COLLINEAR: f64 = 1e-13;

fn plane_halfplane(basis: &[Vec<f64>], h: &Halfspace) -> HalfPlane {
    let dot = |b: &[f64]| b.iter().zip(&h.direction).map(|(x, y)| x * y).sum::<f64>();
    let mean = h.direction.iter().sum::<f64>() / 3.0;
    HalfPlane { a: [dot(&basis[0]), dot(&basis[1])], b: h.bound - mean }
}

fn normalize2(p: Point) -> Point {
    let r = p[0].hypot(p[1]);
    [p[0] / r, p[1] / r]
}

/// Direction in plane coordinates whose unique minimizer over `poly` is the
/// vertex at `k`.
fn vertex_direction(poly: &[Point], k: usize) -> Point {
    let m = poly.len();
    let w = poly[k];
    if m == 2 {
        let o = poly[1 - k];
        return normalize2([o[0] - w[0], o[1] - w[1]]);
    }
    let prev = poly[(k + m - 1) % m];
    let next = poly[(k + 1) % m];
    let inward = |a: Point, b: Point| normalize2([-(b[1] - a[1]), b[0] - a[0]]);
    let (n1, n2) = (inward(prev, w), inward(w, next));
    normalize2([n1[0] + n2[0], n1[1] + n2[1]])
}

fn polygon(psi: &WelfareFunction, halfspaces: &mut Vec<Halfspace>, refine: bool) -> Result<(Vec<Vec<f64>>, usize)> {
    let basis = geometry::plane_basis(3)?;
    let corners: Vec<Point> = (0..3)
        .map(|i| {
            let x = geometry::to_plane(&basis, &unit(3, i));
            [x[0], x[1]]
        })
        .collect();
    let mut poly = geometry::convex_hull(&corners);
    for h in halfspaces.iter() {
        let hp = plane_halfplane(&basis, h);
        if hp.a[0].hypot(hp.a[1]) > 1e-12 {
            poly = geometry::drop_collinear(geometry::clip(&poly, &hp), COLLINEAR);
        } else if hp.b > tol::DERIVED {
            return Err(empty_set());
        }
        if poly.is_empty() {
            return Err(empty_set());
        }
    }
    let mut cuts = 0;
    if refine {
        let mut confirmed: Vec<Point> = Vec::new();
        for _ in 0..MAX_PROBES {
            let open = (0..poly.len()).find(|&k| {
                confirmed.iter().all(|c| (c[0] - poly[k][0]).hypot(c[1] - poly[k][1]) > 1e-10)
            });
            let Some(k) = open else { break };
            if poly.len() == 1 {
                confirmed.push(poly[0]);
                continue;
            }
            let d = vertex_direction(&poly, k);
            let raw: Vec<f64> = (0..3).map(|i| d[0] * basis[0][i] + d[1] * basis[1][i]).collect();
            let u = to_box(&raw);
            let bound = psi.eval(&u);
            let h = Halfspace { direction: u, bound };
            let mu = geometry::from_plane(&basis, &poly[k]);
            if -h.slack(&mu) > CUT_DEPTH {
                let hp = plane_halfplane(&basis, &h);
                poly = geometry::drop_collinear(geometry::clip(&poly, &hp), COLLINEAR);
                if poly.is_empty() {
                    return Err(empty_set());
                }
                halfspaces.push(h);
                cuts += 1;
            } else {
                confirmed.push(poly[k]);
            }
        }
    }
    let planes: Vec<HalfPlane> = halfspaces.iter().map(|h| plane_halfplane(&basis, h)).collect();
    for p in poly.iter_mut() {
        repair(p, &planes);
    }
    let vertices = poly.iter().map(|p| geometry::from_plane(&basis, p)).collect();
    Ok((vertices, cuts))
}

/// Vertices where nearly parallel cuts meet can miss a cut by rounding;
/// cyclic projection onto the violated halfplanes moves them back.
fn repair(p: &mut Point, planes: &[HalfPlane]) {
    for _ in 0..100 {
        let mut moved = false;
        for h in planes {
            let slack = h.a[0] * p[0] + h.a[1] * p[1] - h.b;
            let norm2 = h.a[0] * h.a[0] + h.a[1] * h.a[1];
            if slack < 0.0 && norm2 > 0.0 {
                let step = (-slack + 1e-15) / norm2;
                p[0] += step * h.a[0];
                p[1] += step * h.a[1];
                moved = true;
            }
        }
        if !moved {
            return;
        }
    }
}

/// Symmetric Hausdorff distance between a weight set and a recovered set,
/// both taken as convex hulls of their vertices.
pub fn hausdorff_distance(a: &WeightSet, b: &RecoveredWeightSet) -> Result<f64> {
    if b.vertices.is_empty() {
        return Err(Error::Unsupported(format!("vertex enumeration for n = {}", b.n)));
    }
    if a.dim() != b.n {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.n });
    }
    let va: Vec<Vec<f64>> = a.vertices().iter().map(|w| w.as_slice().to_vec()).collect();
    geometry::hausdorff_between_hulls(&va, &b.vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::normalized_profile;
    use crate::rules::*;

    #[test]
    fn probe_extremes_are_constant() {
        let (p, f) = probe_act(&[1.0, 1.0], BeliefsMode::DesignedEvent).unwrap();
        assert!(f.is_constant());
        assert_eq!(p.outcomes()[f.0[0]], "x_hi");
        let (p, f) = probe_act(&[0.0, 0.0, 0.0], BeliefsMode::DesignedEvent).unwrap();
        assert!(f.is_constant());
        assert_eq!(p.outcomes()[f.0[0]], "x_lo");
    }

    #[test]
    fn probe_profile_matches() {
        for mode in [BeliefsMode::DesignedEvent, BeliefsMode::SplitEvent] {
            let (p, f) = probe_act(&[0.3, 0.8], mode).unwrap();
            let u = normalized_profile(&p, &f).unwrap();
            assert!((u[0] - 0.3).abs() < 1e-12 && (u[1] - 0.8).abs() < 1e-12);
        }
        assert!(matches!(probe_act(&[1.2, 0.0], BeliefsMode::DesignedEvent), Err(Error::InvalidVector(_))));
    }

    #[test]
    fn psi_examples() {
        let u = [0.2, 0.9];
        assert_eq!(psi_of_rule(&relative_maximin_rule(), &u).unwrap(), 0.2);
        let util = relative_utilitarian_rule(WeightVector::equal(2));
        assert!((psi_of_rule(&util, &u).unwrap() - 0.55).abs() < 1e-15);
        assert_eq!(psi_of_rule(&nash_rule(), &[0.5, 0.5]).unwrap(), 0.25);
        assert!(matches!(psi_of_rule(&relative_leximin_rule(), &u), Err(Error::ComparatorOnly(_))));
    }

    #[test]
    fn calibration_contract() {
        let psi = WelfareFunction::from_rule(&relative_maximin_rule(), 3).unwrap();
        assert!(psi.is_calibrated());
        let shifted = WelfareFunction::from_fn(2, "affine", |u| 3.0 + 2.0 * u[0].min(u[1])).calibrated();
        assert!(shifted.is_calibrated());
        assert!((shifted.eval(&[0.4, 0.7]) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn witnesses_recheck() {
        let psi = WelfareFunction::from_fn(2, "const", |_| 0.5);
        let v = check_monotone(&psi, 10, 1);
        assert_eq!(v.status, Status::Violated);
        assert!(v.witness.unwrap().violates(&psi));
    }

    #[test]
    fn maximin_recovers_simplex() {
        let psi = WelfareFunction::from_rule(&relative_maximin_rule(), 3).unwrap();
        let r = recover_weight_set(&psi, &RecoveryConfig { directions: 60, ..Default::default() }).unwrap();
        let d = hausdorff_distance(&WeightSet::simplex(3), &r).unwrap();
        assert!(d < 1e-9, "{d}");
        assert!(r.max_violation() <= 1e-9);
    }

    #[test]
    fn nash_is_refused() {
        let psi = WelfareFunction::from_rule(&nash_rule(), 2).unwrap();
        assert!(matches!(recover_weight_set(&psi, &RecoveryConfig::default()), Err(Error::NotSupportFunction(_))));
    }
}
