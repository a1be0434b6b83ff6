//! The rooted kite construction for 7-connected graphs.
//!
//! The pipeline builds a terminal fan at `x2`, extends the reversed `x4`
//! arm to a 7-fan from `x4`, links `x1 -> x3` away from `x2 -> x4`, and then
//! tries each way of closing a kite around the linkage path. Whatever is
//! left over is a flower, handed to a guided search. Any broken internal
//! expectation drops to the exhaustive oracle and leaves a diagnostic.

mod apex;
mod claims;
mod flower;
mod landmarks;

pub use apex::{apex_fan, ApexError, ApexFan, Landing, Side};
pub use claims::{claim1_assembly, claim2_assembly, claim3_assembly, AssemblyError};
pub use flower::{build_flower, resolve_flower, FlowerError};
pub use landmarks::{compute_landmarks, LandmarkError, LandmarkOutcome, Landmarks, UPlace};

use crate::fans::{terminal_fan, vertex_connectivity};
use crate::graph::{verify_kite, Cycle, Graph, KiteSubdivision, Path, RootQuadruple, RootsError};
use crate::linkage::two_linkage;
use crate::oracle::{find_kite_exhaustive, OracleError, SearchBudget};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FindOptions {
    /// Reject graphs with connectivity below 7 up front.
    pub verify_connectivity: bool,
    /// Return the triangle `x1 x2 x3` with a shortest pendant when present.
    pub shortcut: bool,
    /// Fall back to the exhaustive search when the pipeline breaks.
    pub fallback: bool,
    pub budget: SearchBudget,
}

impl Default for FindOptions {
    fn default() -> Self {
        FindOptions { verify_connectivity: false, shortcut: true, fallback: true, budget: SearchBudget::default() }
    }
}

/// Which step produced the kite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Direct,
    Claim1,
    Claim2,
    Claim3,
    Flower,
    Fallback,
}

impl Stage {
    pub const ALL: [Stage; 6] =
        [Stage::Direct, Stage::Claim1, Stage::Claim2, Stage::Claim3, Stage::Flower, Stage::Fallback];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Direct => "direct",
            Stage::Claim1 => "claim1",
            Stage::Claim2 => "claim2",
            Stage::Claim3 => "claim3",
            Stage::Flower => "flower",
            Stage::Fallback => "fallback",
        }
    }
}

/// A pipeline step that broke, with the graph it broke on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub stage: String,
    pub reason: String,
    pub fingerprint: String,
    pub roots: RootQuadruple,
}

impl Diagnostic {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("diagnostics serialise")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KiteOutcome {
    pub kite: KiteSubdivision,
    pub stage: Stage,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("roots: {0}")]
    Roots(#[from] RootsError),
    #[error("graph is only {0}-connected")]
    NotSevenConnected(usize),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("search budget of {0} expansions exhausted")]
    BudgetExhausted(u64),
}

type Broken = (&'static str, String);

fn broke(stage: &'static str) -> impl Fn(String) -> Broken {
    move |reason| (stage, reason)
}

/// Triangle on the three cycle roots plus a shortest `x2 -> x4` path that
/// avoids `x1` and `x3`.
fn direct(g: &Graph, roots: &RootQuadruple) -> Option<KiteSubdivision> {
    let RootQuadruple { x1, x2, x3, x4 } = *roots;
    if !(g.has_edge(x1, x2) && g.has_edge(x2, x3) && g.has_edge(x1, x3)) {
        return None;
    }
    let mut blocked = vec![false; g.n()];
    blocked[x1] = true;
    blocked[x3] = true;
    let pendant = g.bfs_path(x2, x4, &blocked)?;
    Some(KiteSubdivision {
        cycle: Cycle::new(vec![x1, x2, x3]).ok()?,
        pendant: Path::new(pendant).ok()?,
    })
}

fn pipeline(
    g: &Graph,
    roots: &RootQuadruple,
    opts: &FindOptions,
) -> Result<(KiteSubdivision, Stage), Broken> {
    if opts.shortcut {
        if let Some(kite) = direct(g, roots) {
            return Ok((kite, Stage::Direct));
        }
    }
    let tf = terminal_fan(g, roots).ok_or(("terminal_fan", "no (3,3,1) fan from x2".to_string()))?;
    let af = apex_fan(g, &tf).map_err(|e| broke("apex_fan")(e.to_string()))?;
    let tf = af.orient(&tf);
    let r = tf.roots();
    let pair = two_linkage(g, r.x1, r.x3, r.x2, r.x4)
        .map_err(|e| broke("linkage")(e.to_string()))?
        .ok_or(("linkage", "x1-x3 and x2-x4 cannot be linked".to_string()))?;
    let claim1 = |path: &Path| {
        claim1_assembly(g, &tf, &af.p, path)
            .map(|k| (k, Stage::Claim1))
            .map_err(|e| broke("claim1")(e.to_string()))
    };
    if !pair.l.vertices().iter().any(|&v| af.p.contains(v)) {
        return claim1(&pair.l);
    }
    let lm = match compute_landmarks(&pair.l, &tf, &af).map_err(|e| broke("landmarks")(e.to_string()))? {
        LandmarkOutcome::AvoidsP(path) => return claim1(&path),
        LandmarkOutcome::Ready(lm) => lm,
    };
    if let Some(k) = claim2_assembly(g, &tf, &af, &lm).map_err(|e| broke("claim2")(e.to_string()))? {
        return Ok((k, Stage::Claim2));
    }
    if let Some(k) = claim3_assembly(g, &tf, &af, &lm).map_err(|e| broke("claim3")(e.to_string()))? {
        return Ok((k, Stage::Claim3));
    }
    let f = build_flower(g, &tf, &af, &lm).map_err(|e| broke("flower")(e.to_string()))?;
    let kite = resolve_flower(g, &f, opts.budget).map_err(|e| broke("flower")(e.to_string()))?;
    Ok((kite, Stage::Flower))
}

/// A kite rooted at `roots`. On 7-connected graphs this always succeeds;
/// elsewhere it may still succeed through the exhaustive fallback.
pub fn find_kite(
    g: &Graph,
    roots: &RootQuadruple,
    opts: &FindOptions,
) -> Result<KiteOutcome, ConstructError> {
    let RootQuadruple { x1, x2, x3, x4 } = *roots;
    RootQuadruple::new(x1, x2, x3, x4)?;
    roots.check_in(g)?;
    if opts.verify_connectivity {
        let k = vertex_connectivity(g).map(|c| c.k).unwrap_or(0);
        if k < 7 {
            return Err(ConstructError::NotSevenConnected(k));
        }
    }
    let (stage, reason) = match pipeline(g, roots, opts) {
        Ok((kite, stage)) => {
            debug_assert!(verify_kite(g, roots, &kite).is_ok());
            return Ok(KiteOutcome { kite, stage, diagnostics: Vec::new() });
        }
        Err(b) => b,
    };
    let diagnostic = Diagnostic { stage: stage.to_string(), reason, fingerprint: g.fingerprint(), roots: *roots };
    if !opts.fallback {
        return Err(ConstructError::ConstructionFailed(diagnostic.to_json_line()));
    }
    match find_kite_exhaustive(g, roots, opts.budget) {
        Ok(Some(kite)) => Ok(KiteOutcome { kite, stage: Stage::Fallback, diagnostics: vec![diagnostic] }),
        Ok(None) => Err(ConstructError::ConstructionFailed(diagnostic.to_json_line())),
        Err(OracleError::BudgetExceeded(b)) => Err(ConstructError::BudgetExhausted(b)),
        Err(e) => Err(ConstructError::ConstructionFailed(e.to_string())),
    }
}
