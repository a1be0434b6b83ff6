//! Instance generators and the trial campaign runner.

mod generators;
mod trials;

pub use generators::{gen_complete_minus_matching, gen_random_kconnected, GenError};
pub use trials::{
    ordered_quadruples, run_trials, run_trials_with, summarize, to_jsonl, CampaignSummary, GeneratorSpec,
    OracleCheck, Outcome, RootPolicy, TrialConfig, TrialReport,
};
