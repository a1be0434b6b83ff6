use clap::{Args, Parser, Subcommand, ValueEnum};
use kitelink::construct::{find_kite, ConstructError, FindOptions};
use kitelink::fans::{find_fan, vertex_connectivity};
use kitelink::graph::{parse_graph_any, verify_kite_raw, Graph, RootQuadruple, Vertex};
use kitelink::harness::{
    gen_complete_minus_matching, gen_random_kconnected, run_trials, summarize, GenError, GeneratorSpec,
    RootPolicy, TrialConfig,
};
use kitelink::linkage::{two_linkage, LinkageError};
use kitelink::oracle::{find_kite_exhaustive, is_kite_linked, OracleError, SearchBudget, DEFAULT_EXPANSIONS};
use kitelink::par;
use serde::{Deserialize, Serialize};
use std::io::Read;
use std::process::ExitCode;

mod selftest;

const FOUND: u8 = 0;
const NOT_FOUND: u8 = 1;
const BAD_INPUT: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "kitelink", version, about = "Rooted kite subdivisions in 7-connected graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Global {
    /// Print results only, no commentary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Expansion budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_EXPANSIONS)]
    budget: u64,
    /// Share of trials cross-checked against the exhaustive search.
    #[arg(long, global = true, default_value_t = 0.0)]
    oracle_fraction: f64,
    /// Worker threads; defaults to one per core
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex connectivity with a minimum separator.
    Conn { file: String },
    /// A k-fan from x to the comma-separated set S.
    Fan { file: String, x: Vertex, s: String, k: usize },
    /// Disjoint s1-t1 and s2-t2 paths.
    Link2 { file: String, s1: Vertex, t1: Vertex, s2: Vertex, t2: Vertex },
    /// Find, verify or search for rooted kites
    #[command(subcommand)]
    Kite(KiteCommand),
    /// Print a generated graph in edge-list form
    #[command(subcommand)]
    Gen(GenCommand),
    /// Quick end-to-end check of every component.
    Selftest,
    /// Run a trial campaign and print one JSON report per line.
    Trials(TrialArgs),
}

#[derive(Subcommand)]
enum KiteCommand {
    /// Construct a kite rooted at x1 x2 x3 x4.
    Find {
        file: String,
        x1: Vertex,
        x2: Vertex,
        x3: Vertex,
        x4: Vertex,
        /// Refuse graphs that are not 7-connected.
        #[arg(long)]
        verify_connectivity: bool,
        /// Skip the triangle shortcut and run the full construction.
        #[arg(long)]
        no_shortcut: bool,
    },
    /// Check a kite given as a JSON file (or inline JSON).
    Verify { file: String, kite: String },
    /// Exhaustive rooted kite search.
    Oracle { file: String, x1: Vertex, x2: Vertex, x3: Vertex, x4: Vertex },
    /// Whether every root assignment admits a kite.
    Linked { file: String },
}

#[derive(Subcommand)]
enum GenCommand {
    /// K_n minus the matching {0,1}, {2,3}, ... of size m.
    Kminusmatching { n: usize, m: usize },
    /// A seeded random k-connected graph on n vertices.
    Random { n: usize, k: usize, seed: u64 },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Kminusmatching,
    Random,
}

#[derive(Args)]
struct TrialArgs {
    #[arg(long, value_enum, default_value = "random")]
    family: Family,
    /// Vertex count (complete and kminusmatching).
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Matching size (kminusmatching).
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long, default_value_t = 10)]
    n_min: usize,
    #[arg(long, default_value_t = 16)]
    n_max: usize,
    #[arg(long, default_value_t = 7)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    graphs: usize,
    /// Roots per graph; omit to try every ordered quadruple.
    #[arg(long)]
    roots: Option<usize>,
    #[arg(long)]
    no_shortcut: bool,
    /// Add wall time to each report.
    #[arg(long)]
    timing: bool,
}

#[derive(Serialize, Deserialize)]
struct KiteJson {
    roots: [Vertex; 4],
    cycle: Vec<Vertex>,
    pendant: Vec<Vertex>,
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(BAD_INPUT, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure(BAD_INPUT, format!("{path}: {e}")))
}

fn load(path: &str) -> Result<Graph, Failure> {
    Ok(parse_graph_any(&read_input(path)?)?)
}

fn roots(a: [Vertex; 4], g: &Graph) -> Result<RootQuadruple, Failure> {
    let r = RootQuadruple::try_from(a)?;
    r.check_in(g)?;
    Ok(r)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("values serialise")
}

fn note(global: &Global, msg: impl AsRef<str>) {
    if !global.quiet {
        eprintln!("{}", msg.as_ref());
    }
}

fn run(cli: Cli) -> Outcome {
    let g_opts = cli.global;
    let budget = SearchBudget::new(g_opts.budget);
    match cli.command {
        Command::Conn { file } => {
            let g = load(&file)?;
            let cert = vertex_connectivity(&g)?;
            println!("{}", json(&cert));
            Ok(FOUND)
        }
        Command::Fan { file, x, s, k } => {
            let g = load(&file)?;
            let set = s
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<Vertex>())
                .collect::<Result<Vec<_>, _>>()?;
            match find_fan(&g, x, &set, k)? {
                Some(fan) => {
                    println!("{}", json(&fan));
                    Ok(FOUND)
                }
                None => {
                    println!("null");
                    Ok(NOT_FOUND)
                }
            }
        }
        Command::Link2 { file, s1, t1, s2, t2 } => {
            let g = load(&file)?;
            match two_linkage(&g, s1, t1, s2, t2) {
                Ok(Some(pair)) => {
                    println!("{}", json(&pair));
                    Ok(FOUND)
                }
                Ok(None) => {
                    println!("null");
                    Ok(NOT_FOUND)
                }
                Err(e @ LinkageError::BudgetExceeded(_)) => Err(Failure(BUDGET, e.to_string())),
                Err(e) => Err(e.into()),
            }
        }
        Command::Kite(cmd) => kite(cmd, &g_opts, budget),
        Command::Gen(cmd) => {
            let g = match cmd {
                GenCommand::Kminusmatching { n, m } => gen_complete_minus_matching(n, m),
                GenCommand::Random { n, k, seed } => gen_random_kconnected(n, k, seed),
            };
            match g {
                Ok(g) => {
                    print!("{}", g.to_text());
                    Ok(FOUND)
                }
                Err(e @ GenError::GenerationExhausted { .. }) => Err(Failure(NOT_FOUND, e.to_string())),
                Err(e) => Err(e.into()),
            }
        }
        Command::Selftest => {
            let failed = selftest::run(|line| note(&g_opts, line));
            Ok(if failed == 0 { FOUND } else { NOT_FOUND })
        }
        Command::Trials(args) => trials(args, &g_opts, budget),
    }
}

fn kite(cmd: KiteCommand, global: &Global, budget: SearchBudget) -> Outcome {
    match cmd {
        KiteCommand::Find { file, x1, x2, x3, x4, verify_connectivity, no_shortcut } => {
            let g = load(&file)?;
            let r = roots([x1, x2, x3, x4], &g)?;
            let opts = FindOptions { verify_connectivity, shortcut: !no_shortcut, fallback: true, budget };
            match find_kite(&g, &r, &opts) {
                Ok(out) => {
                    note(global, format!("stage: {}", out.stage.name()));
                    for d in &out.diagnostics {
                        note(global, d.to_json_line());
                    }
                    let k = KiteJson {
                        roots: r.as_array(),
                        cycle: out.kite.cycle.vertices().to_vec(),
                        pendant: out.kite.pendant.vertices().to_vec(),
                    };
                    println!("{}", json(&k));
                    Ok(FOUND)
                }
                Err(e @ ConstructError::ConstructionFailed(_)) => Err(Failure(NOT_FOUND, e.to_string())),
                Err(e @ ConstructError::BudgetExhausted(_)) => Err(Failure(BUDGET, e.to_string())),
                Err(e) => Err(e.into()),
            }
        }
        KiteCommand::Verify { file, kite } => {
            let g = load(&file)?;
            let text = if kite.trim_start().starts_with('{') { kite } else { read_input(&kite)? };
            let k: KiteJson = serde_json::from_str(&text)?;
            let r = RootQuadruple::try_from(k.roots)?;
            match verify_kite_raw(&g, &r, &k.cycle, &k.pendant) {
                Ok(()) => {
                    println!("valid");
                    Ok(FOUND)
                }
                Err(v) => {
                    println!("invalid: {v}");
                    Ok(NOT_FOUND)
                }
            }
        }
        KiteCommand::Oracle { file, x1, x2, x3, x4 } => {
            let g = load(&file)?;
            let r = roots([x1, x2, x3, x4], &g)?;
            match find_kite_exhaustive(&g, &r, budget) {
                Ok(Some(k)) => {
                    let k = KiteJson {
                        roots: r.as_array(),
                        cycle: k.cycle.vertices().to_vec(),
                        pendant: k.pendant.vertices().to_vec(),
                    };
                    println!("{}", json(&k));
                    Ok(FOUND)
                }
                Ok(None) => {
                    println!("null");
                    Ok(NOT_FOUND)
                }
                Err(e @ OracleError::BudgetExceeded(_)) => Err(Failure(BUDGET, e.to_string())),
                Err(e) => Err(e.into()),
            }
        }
        KiteCommand::Linked { file } => {
            let g = load(&file)?;
            let verdict = par::with_threads(global.threads, || is_kite_linked(&g, budget));
            match verdict {
                Ok(v) => {
                    println!("{}", json(&v));
                    Ok(if v.linked { FOUND } else { NOT_FOUND })
                }
                Err(e @ OracleError::BudgetExceeded(_)) => Err(Failure(BUDGET, e.to_string())),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn trials(args: TrialArgs, global: &Global, budget: SearchBudget) -> Outcome {
    if !(0.0..=1.0).contains(&global.oracle_fraction) {
        return Err(Failure(BAD_INPUT, "--oracle-fraction must lie in [0, 1]".into()));
    }
    let generator = match args.family {
        Family::Complete => GeneratorSpec::Complete { n: args.n },
        Family::Kminusmatching => GeneratorSpec::CompleteMinusMatching { n: args.n, m: args.m },
        Family::Random => GeneratorSpec::RandomKConnected { n_min: args.n_min, n_max: args.n_max, k: args.k },
    };
    let policy = match args.roots {
        Some(per_graph) => RootPolicy::Sampled { per_graph },
        None => RootPolicy::Exhaustive,
    };
    let mut cfg = TrialConfig::new(generator, args.graphs, policy, global.seed);
    cfg.budget = budget;
    cfg.oracle_budget = budget;
    cfg.oracle_fraction = global.oracle_fraction;
    cfg.timing = args.timing;
    cfg.shortcut = !args.no_shortcut;
    let reports = par::with_threads(global.threads, || run_trials(&cfg));
    for r in &reports {
        println!("{}", r.to_json_line());
    }
    let summary = summarize(&reports);
    note(global, json(&summary));
    let clean = summary.failures == 0 && summary.budget == 0 && summary.oracle_disagreements == 0;
    Ok(if clean { FOUND } else if summary.failures == 0 { BUDGET } else { NOT_FOUND })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { BAD_INPUT } else { FOUND });
        }
    };
    let quiet = cli.global.quiet;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            if !quiet || code == BAD_INPUT {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
