use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fairagg::gallery::write_gallery;
use fairagg::harness::{
    check_axiom, default_columns, gen_problem, Axiom, BeliefMode, GeneratorConfig, ValueMode, DEFAULT_SEED,
};
use fairagg::model::{normalized_profile, Act, Problem};
use fairagg::rules::{compare, leximin_key, Ordering, Rule};
use fairagg::schema::{known_weight_set, to_pretty, AxiomsFile, ProblemFile, RecoveryFile, RuleFile};
use fairagg::welfare::{hausdorff_distance, recover_weight_set, RecoveryConfig, WelfareFunction};
use fairagg::Error;

#[derive(Parser)]
#[command(name = "fairagg", version, about = "Aggregate individual preferences over uncertain acts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Values {
    Iid,
    Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Beliefs {
    Iid,
    Common,
    Designed,
}

#[derive(Subcommand)]
enum Command {
    /// Score acts of a problem under a rule and rank them.
    Evaluate {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        rule: PathBuf,
        /// Act names (default: every act in the file).
        acts: Vec<String>,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Compare two named acts.
    Compare {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        rule: PathBuf,
        f: String,
        g: String,
    },
    /// Audit a rule against axioms by randomized search.
    Axioms {
        #[arg(long)]
        rule: PathBuf,
        /// Take the number of individuals, outcomes and cells from this problem.
        #[arg(long)]
        problem: Option<PathBuf>,
        /// Comma-separated axiom names (default: pareto,iie,wpm,belief_irrelevance,rci).
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<String>,
        /// Add the continuity check to the default list.
        #[arg(long)]
        continuity: bool,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the weight set of a rule from its welfare function.
    Recover {
        #[arg(long)]
        rule: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Number of grid directions.
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip vertex certification probes.
        #[arg(long)]
        no_refine: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the counterexample gallery.
    Gallery {
        #[arg(long, default_value = "gallery")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Write a random problem file with two random acts.
    Gen {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        outcomes: usize,
        #[arg(long, default_value_t = 3)]
        cells: usize,
        #[arg(long, value_enum, default_value_t = Values::Iid)]
        values: Values,
        #[arg(long, value_enum, default_value_t = Beliefs::Iid)]
        beliefs: Beliefs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure exit code with a message for the error stream.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_problem(path: &Path) -> Result<(ProblemFile, Problem), Failure> {
    let file = ProblemFile::parse(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let problem = file.problem().map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Ok((file, problem))
}

fn load_rule(path: &Path) -> Result<Rule, Failure> {
    Ok(RuleFile::parse(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?.rule)
}

fn stdout_failure(e: std::io::Error) -> Failure {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        // the reader went away, as with `| head`
        std::process::exit(0);
    }
    Failure(format!("stdout: {e}"))
}

macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout().lock(), $($arg)*).map_err(stdout_failure)?
    };
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display()))),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes()).map_err(stdout_failure)
        }
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn evaluate(problem: &Path, rule: &Path, names: Vec<String>, json: bool) -> CmdResult {
    let (file, problem) = load_problem(problem)?;
    let rule = load_rule(rule)?;
    let names = if names.is_empty() { file.acts.keys().cloned().collect() } else { names };
    let acts: Vec<(String, Act)> =
        names.iter().map(|n| Ok((n.clone(), file.act(&problem, n)?))).collect::<Result<_, Error>>()?;
    let mut rows = Vec::with_capacity(acts.len());
    for (name, act) in &acts {
        let profile = normalized_profile(&problem, act)?;
        let score = if rule.has_score() { Some(rule.score_profile(&problem, &profile)?) } else { None };
        rows.push((name.clone(), act.clone(), profile, score));
    }
    // insertion sort keeps ties in name order and surfaces comparator errors
    let mut ranking: Vec<usize> = Vec::with_capacity(rows.len());
    for k in 0..rows.len() {
        let mut at = ranking.len();
        for (pos, &j) in ranking.iter().enumerate() {
            if compare(&rule, &problem, &rows[k].1, &rows[j].1)? == Ordering::FirstStrict {
                at = pos;
                break;
            }
        }
        ranking.insert(at, k);
    }
    if json {
        let acts: Vec<serde_json::Value> = rows
            .iter()
            .map(|(name, _, profile, score)| {
                let mut v = serde_json::json!({ "act": name, "profile": profile });
                match score {
                    Some(s) => v["score"] = serde_json::json!(s),
                    None => v["leximin_key"] = serde_json::json!(leximin_key(profile)),
                }
                v
            })
            .collect();
        let ranking: Vec<&str> = ranking.iter().map(|&k| rows[k].0.as_str()).collect();
        let doc = serde_json::json!({ "rule": rule.kind(), "acts": acts, "ranking": ranking });
        out!("{}", serde_json::to_string_pretty(&doc).expect("json value"));
        return Ok(ExitCode::SUCCESS);
    }
    out!("rule: {}", rule.kind());
    for (name, _, profile, score) in &rows {
        match score {
            Some(s) => out!("{name}\tscore {s:.6}\tprofile {}", fmt_vec(profile)),
            None => out!("{name}\tkey {}\tprofile {}", fmt_vec(&leximin_key(profile)), fmt_vec(profile)),
        }
    }
    let names: Vec<&str> = ranking.iter().map(|&k| rows[k].0.as_str()).collect();
    out!("ranking: {}", names.join(" > "));
    Ok(ExitCode::SUCCESS)
}

fn compare_cmd(problem: &Path, rule: &Path, f: &str, g: &str) -> CmdResult {
    let (file, problem) = load_problem(problem)?;
    let rule = load_rule(rule)?;
    let (a, b) = (file.act(&problem, f)?, file.act(&problem, g)?);
    let symbol = match compare(&rule, &problem, &a, &b)? {
        Ordering::FirstStrict => ">",
        Ordering::Indifferent => "~",
        Ordering::SecondStrict => "<",
    };
    out!("{f} {symbol} {g}");
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn axioms_cmd(
    rule: &Path,
    problem: Option<&Path>,
    names: Vec<String>,
    continuity: bool,
    trials: usize,
    seed: u64,
    n: usize,
    out: Option<&Path>,
) -> CmdResult {
    let rule = load_rule(rule)?;
    let mut config = GeneratorConfig { n, trials, seed, ..Default::default() };
    if let Some(path) = problem {
        let (_, p) = load_problem(path)?;
        config.n = p.n();
        config.outcomes = p.outcomes().len();
        config.cells = p.cells().len();
        config.values = if p.has_common_values() { ValueMode::CommonValues } else { ValueMode::Iid };
    }
    let mut axioms: Vec<Axiom> = if names.is_empty() {
        default_columns()
    } else {
        names.iter().map(|s| s.parse()).collect::<Result<_, Error>>()?
    };
    if continuity && !axioms.contains(&Axiom::Continuity) {
        axioms.push(Axiom::Continuity);
    }
    let reports = axioms.iter().map(|&a| check_axiom(&rule, a, &config)).collect::<Result<Vec<_>, Error>>()?;
    for r in &reports {
        eprintln!("{:<20} {:<20} trials {:>6}  premises {:>6}", r.axiom.as_str(), r.status.as_str(), r.trials, r.premise_hits);
    }
    let violated = reports.iter().any(|r| r.status.is_violated());
    let config = GeneratorConfig { n: rule.dim().unwrap_or(config.n), ..config };
    emit(out, &to_pretty(&AxiomsFile::new(rule, config, reports)))?;
    Ok(if violated { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn recover_cmd(rule: &Path, n: usize, grid: usize, seed: u64, no_refine: bool, out: Option<&Path>) -> CmdResult {
    let rule = load_rule(rule)?;
    let n = rule.dim().unwrap_or(n);
    let psi = WelfareFunction::from_rule(&rule, n)?;
    let config = RecoveryConfig { directions: grid, seed, refine: !no_refine, ..Default::default() };
    let recovered = recover_weight_set(&psi, &config)?;
    let hausdorff = match known_weight_set(&rule, n) {
        Some(m) if !recovered.vertices.is_empty() => Some(hausdorff_distance(&m, &recovered)?),
        _ => None,
    };
    if let Some(d) = hausdorff {
        eprintln!("hausdorff distance to the rule's weight set: {d:.3e}");
    }
    emit(out, &to_pretty(&RecoveryFile::new(rule, recovered, hausdorff)))?;
    Ok(ExitCode::SUCCESS)
}

fn gen_cmd(config: GeneratorConfig, out: Option<&Path>) -> CmdResult {
    let problem = gen_problem(&config, config.seed)?;
    let mut rng = fairagg::rng::stream(config.seed, 1);
    let f = fairagg::harness::generate::random_act(&problem, &mut rng);
    let g = fairagg::harness::generate::random_act(&problem, &mut rng);
    let file = ProblemFile::new(&problem, &[("f", &f), ("g", &g)]);
    emit(out, &format!("{}\n", file.to_json()))?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Evaluate { problem, rule, acts, json } => evaluate(&problem, &rule, acts, json),
        Command::Compare { problem, rule, f, g } => compare_cmd(&problem, &rule, &f, &g),
        Command::Axioms { rule, problem, axioms, continuity, trials, seed, n, out } => {
            axioms_cmd(&rule, problem.as_deref(), axioms, continuity, trials, seed, n, out.as_deref())
        }
        Command::Recover { rule, n, grid, seed, no_refine, out } => {
            recover_cmd(&rule, n, grid, seed, no_refine, out.as_deref())
        }
        Command::Gallery { out, seed } => {
            for name in write_gallery(&out, seed)? {
                eprintln!("wrote {}", out.join(name).display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { n, outcomes, cells, values, beliefs, seed, out } => {
            let values = match values {
                Values::Iid => ValueMode::Iid,
                Values::Common => ValueMode::CommonValues,
            };
            let beliefs = match beliefs {
                Beliefs::Iid => BeliefMode::Iid,
                Beliefs::Common => BeliefMode::CommonBeliefs,
                Beliefs::Designed => BeliefMode::DesignedEvent,
            };
            let config = GeneratorConfig { n, outcomes, cells, values, beliefs, seed, ..Default::default() };
            gen_cmd(config, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("FAIRAGG_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // a second initialization only fails if something already built the pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
