use super::generators::{gen_complete_minus_matching, gen_random_kconnected, GenError};
use crate::construct::{find_kite, Diagnostic, FindOptions, Stage};
use crate::graph::{verify_kite, Graph, KiteSubdivision, RootQuadruple};
use crate::oracle::{find_kite_exhaustive, SearchBudget};
use crate::par::{self, Execution};
use crate::ConstructError;
use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Complete { n: usize },
    CompleteMinusMatching { n: usize, m: usize },
    /// `n` drawn uniformly from `n_min..=n_max` per graph.
    RandomKConnected { n_min: usize, n_max: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootPolicy {
    /// Every ordered quadruple of distinct vertices.
    Exhaustive,
    Sampled { per_graph: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub generator: GeneratorSpec,
    pub graphs: usize,
    pub roots: RootPolicy,
    pub budget: SearchBudget,
    /// Share of trials cross-checked against the exhaustive search.
    pub oracle_fraction: f64,
    pub oracle_budget: SearchBudget,
    pub seed: u64,
    /// Record wall time per trial. Off keeps report streams reproducible.
    pub timing: bool,
    pub shortcut: bool,
}

impl TrialConfig {
    pub fn new(generator: GeneratorSpec, graphs: usize, roots: RootPolicy, seed: u64) -> Self {
        TrialConfig {
            generator,
            graphs,
            roots,
            budget: SearchBudget::default(),
            oracle_fraction: 0.0,
            oracle_budget: SearchBudget::default(),
            seed,
            timing: false,
            shortcut: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Failure,
    Budget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    /// `None` when the oracle ran out of budget.
    pub exists: Option<bool>,
    pub verified: bool,
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: usize,
    pub graph: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub fingerprint: String,
    pub roots: Option<RootQuadruple>,
    pub outcome: Outcome,
    pub stage: Option<Stage>,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kite: Option<KiteSubdivision>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl TrialReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialise")
    }
}

pub fn to_jsonl(reports: &[TrialReport]) -> String {
    reports.iter().map(|r| r.to_json_line() + "\n").collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub trials: usize,
    pub successes: usize,
    pub failures: usize,
    pub budget: usize,
    pub stages: BTreeMap<Stage, usize>,
    pub oracle_checked: usize,
    pub oracle_disagreements: usize,
    /// Trial indices that needed the exhaustive fallback.
    pub fallbacks: Vec<usize>,
}

pub fn summarize(reports: &[TrialReport]) -> CampaignSummary {
    let mut s = CampaignSummary { trials: reports.len(), ..Default::default() };
    for r in reports {
        match r.outcome {
            Outcome::Success => s.successes += 1,
            Outcome::Failure => s.failures += 1,
            Outcome::Budget => s.budget += 1,
        }
        if let Some(stage) = r.stage {
            *s.stages.entry(stage).or_default() += 1;
            if stage == Stage::Fallback {
                s.fallbacks.push(r.trial);
            }
        }
        if let Some(o) = r.oracle {
            s.oracle_checked += 1;
            if o.agrees == Some(false) || (o.exists == Some(true) && !o.verified) {
                s.oracle_disagreements += 1;
            }
        }
    }
    s
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn make_graph(spec: &GeneratorSpec, seed: u64) -> Result<Graph, GenError> {
    match *spec {
        GeneratorSpec::Complete { n } => Ok(Graph::complete(n)),
        GeneratorSpec::CompleteMinusMatching { n, m } => gen_complete_minus_matching(n, m),
        GeneratorSpec::RandomKConnected { n_min, n_max, k } => {
            if n_min > n_max {
                return Err(GenError::PreconditionViolated("n_min exceeds n_max".into()));
            }
            let n = stream(seed, 0).gen_range(n_min..=n_max);
            gen_random_kconnected(n, k, seed)
        }
    }
}

/// All ordered quadruples of distinct vertices, lexicographic.
pub fn ordered_quadruples(n: usize) -> Vec<RootQuadruple> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if let Ok(r) = RootQuadruple::new(a, b, c, d) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

struct Job<'a> {
    graph: usize,
    seed: u64,
    g: Option<&'a Graph>,
    roots: Option<RootQuadruple>,
    check_oracle: bool,
    error: Option<String>,
}

pub fn run_trials(config: &TrialConfig) -> Vec<TrialReport> {
    run_trials_with(config, Execution::default())
}

/// Generates the graphs, then runs one trial per (graph, roots) pair.
/// Reports come back in trial order whatever the execution mode.
pub fn run_trials_with(config: &TrialConfig, exec: Execution) -> Vec<TrialReport> {
    let graphs = par::map_indexed(exec, config.graphs, |i| {
        let seed = stream(config.seed, i as u64).next_u64();
        (seed, make_graph(&config.generator, seed))
    });
    let mut jobs = Vec::new();
    for (i, (seed, g)) in graphs.iter().enumerate() {
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                jobs.push(Job { graph: i, seed: *seed, g: None, roots: None, check_oracle: false, error: Some(e.to_string()) });
                continue;
            }
        };
        let mut rng = stream(*seed, 1);
        let roots = match config.roots {
            RootPolicy::Exhaustive => ordered_quadruples(g.n()),
            RootPolicy::Sampled { per_graph } if g.n() >= 4 => (0..per_graph)
                .map(|_| {
                    let s = sample(&mut rng, g.n(), 4).into_vec();
                    RootQuadruple::new(s[0], s[1], s[2], s[3]).expect("sampled without replacement")
                })
                .collect(),
            RootPolicy::Sampled { .. } => Vec::new(),
        };
        for r in roots {
            let check_oracle = rng.gen::<f64>() < config.oracle_fraction;
            jobs.push(Job { graph: i, seed: *seed, g: Some(g), roots: Some(r), check_oracle, error: None });
        }
    }
    par::map_indexed(exec, jobs.len(), |t| run_one(config, t, &jobs[t]))
}

fn run_one(config: &TrialConfig, trial: usize, job: &Job) -> TrialReport {
    let mut report = TrialReport {
        trial,
        graph: job.graph,
        seed: job.seed,
        n: job.g.map_or(0, Graph::n),
        m: job.g.map_or(0, Graph::m),
        fingerprint: job.g.map(Graph::fingerprint).unwrap_or_default(),
        roots: job.roots,
        outcome: Outcome::Failure,
        stage: None,
        verified: false,
        oracle: None,
        kite: None,
        diagnostics: Vec::new(),
        error: job.error.clone(),
        wall_ms: None,
    };
    let (Some(g), Some(roots)) = (job.g, job.roots) else {
        return report;
    };
    let opts = FindOptions { shortcut: config.shortcut, budget: config.budget, ..FindOptions::default() };
    let start = Instant::now();
    match find_kite(g, &roots, &opts) {
        Ok(out) => {
            report.verified = verify_kite(g, &roots, &out.kite).is_ok();
            report.outcome = if report.verified { Outcome::Success } else { Outcome::Failure };
            report.stage = Some(out.stage);
            report.kite = Some(out.kite);
            report.diagnostics = out.diagnostics;
        }
        Err(ConstructError::BudgetExhausted(_)) => {
            report.outcome = Outcome::Budget;
            report.error = Some("budget exhausted".into());
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    if config.timing {
        report.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if job.check_oracle {
        let (exists, verified) = match find_kite_exhaustive(g, &roots, config.oracle_budget) {
            Ok(Some(k)) => (Some(true), verify_kite(g, &roots, &k).is_ok()),
            Ok(None) => (Some(false), false),
            Err(_) => (None, false),
        };
        let agrees = match (exists, report.outcome) {
            (None, _) | (_, Outcome::Budget) => None,
            (Some(e), o) => Some(e == (o == Outcome::Success)),
        };
        report.oracle = Some(OracleCheck { exists, verified, agrees });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadruple_count() {
        assert_eq!(ordered_quadruples(8).len(), 1680);
        assert_eq!(ordered_quadruples(9).len(), 3024);
    }

    #[test]
    fn small_campaign_is_reproducible() {
        let mut cfg = TrialConfig::new(
            GeneratorSpec::RandomKConnected { n_min: 9, n_max: 11, k: 7 },
            3,
            RootPolicy::Sampled { per_graph: 4 },
            11,
        );
        cfg.oracle_fraction = 0.5;
        cfg.shortcut = false;
        let a = run_trials_with(&cfg, Execution::Sequential);
        let b = run_trials_with(&cfg, Execution::Parallel);
        assert_eq!(to_jsonl(&a), to_jsonl(&b));
        let s = summarize(&a);
        assert_eq!(s.trials, 12);
        assert_eq!(s.successes, 12);
        assert_eq!(s.stages.values().sum::<usize>() + s.failures + s.budget, s.trials);
        assert_eq!(s.oracle_disagreements, 0);
    }

    #[test]
    fn low_connectivity_failures_are_reported() {
        let cfg = TrialConfig::new(GeneratorSpec::Complete { n: 3 }, 1, RootPolicy::Sampled { per_graph: 2 }, 0);
        assert!(run_trials(&cfg).is_empty());
        let cfg = TrialConfig::new(
            GeneratorSpec::CompleteMinusMatching { n: 4, m: 3 },
            1,
            RootPolicy::Exhaustive,
            0,
        );
        let reports = run_trials(&cfg);
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].outcome, Outcome::Failure);
        assert!(reports[0].error.is_some());
    }
}
