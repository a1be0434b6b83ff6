use super::apex::ApexFan;
use super::claims::single_landing_path;
use super::landmarks::{Landmarks, Layout, UPlace};
use crate::fans::TerminalFan;
use crate::graph::{
    concat_paths, subpath, verify_flower, verify_kite, Flower, FlowerViolation, Graph,
    KiteSubdivision, Path, PathError,
};
use crate::oracle::{KiteSearch, OracleError, SearchBudget};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowerError {
    #[error("flower invalid: {0}")]
    FlowerInvalid(String),
    #[error("flower resolution exhausted after {0} expansions")]
    FlowerResolutionExhausted(u64),
    #[error("no kite exists for the flower's roots")]
    NoKite,
}

impl From<PathError> for FlowerError {
    fn from(e: PathError) -> Self {
        FlowerError::FlowerInvalid(e.to_string())
    }
}

impl From<FlowerViolation> for FlowerError {
    fn from(e: FlowerViolation) -> Self {
        FlowerError::FlowerInvalid(e.to_string())
    }
}

fn join(segments: &[Path]) -> Result<Path, FlowerError> {
    concat_paths(segments)?
        .into_path()
        .ok_or_else(|| FlowerError::FlowerInvalid("path segments close up".into()))
}

fn close(segments: &[Path]) -> Result<crate::graph::Cycle, FlowerError> {
    concat_paths(segments)?
        .into_cycle()
        .ok_or_else(|| FlowerError::FlowerInvalid("cycle segments do not close".into()))
}

/// The flower left over when neither claim assembly applies. `tf` must be
/// oriented to the apex fan's side.
pub fn build_flower(
    g: &Graph,
    tf: &TerminalFan,
    af: &ApexFan,
    lm: &Landmarks,
) -> Result<Flower, FlowerError> {
    let lay = Layout::new(g.n(), tf, af);
    let roots = lay.roots;
    let q1 = single_landing_path(&lay)
        .ok_or_else(|| FlowerError::FlowerInvalid("landings span several Q paths".into()))?;
    let q = &tf.q[q1];
    let pos = |v| q.position(v).expect("landings lie on Q1");
    let mut order: Vec<usize> = (0..af.landings.len()).collect();
    order.sort_by_key(|&l| pos(af.landings[l].at));
    let (first, second) = (&af.landings[order[0]], &af.landings[order[1]]);
    let (w1, w2) = (first.at, second.at);

    let others: Vec<usize> = (0..3).filter(|&i| i != q1).collect();
    let c1 = close(&[tf.q[others[0]].clone(), tf.q[others[1]].clone()])?;
    let c2 = close(&[tf.r[lm.r_order[1]].clone(), tf.r[lm.r_order[2]].clone()])?;
    let p1 = subpath(q, roots.x1, w2)?;

    let to_p = join(&[
        subpath(&lm.l, lm.u, lm.uprime)?,
        subpath(&af.p, lm.uprime, roots.x4)?,
    ])?;
    let (c3, p2, v2) = match lm.u_place {
        UPlace::Q(i) if i == q1 => {
            let c3 = close(&[second.arm.clone(), subpath(q, w2, lm.u)?, to_p])?;
            (c3, subpath(q, roots.x2, lm.u)?, lm.u)
        }
        UPlace::W(k) if k == order[0] => {
            let c3 = close(&[
                second.arm.clone(),
                subpath(q, w2, w1)?,
                subpath(&first.arm, w1, lm.u)?,
                to_p,
            ])?;
            (c3, subpath(q, roots.x2, w1)?, w1)
        }
        other => {
            return Err(FlowerError::FlowerInvalid(format!("u placed at {other:?}")));
        }
    };

    let mut p3 = vec![subpath(&tf.r[lm.r_order[0]], roots.x3, lm.w)?, subpath(&lm.l, lm.w, lm.v)?];
    let v3 = if lay.p_position(lm.v) <= lay.p_position(lm.uprime) {
        lm.v
    } else {
        p3.push(subpath(&af.p, lm.v, lm.uprime)?);
        lm.uprime
    };
    let flower = Flower {
        roots,
        c1,
        c2,
        c3,
        p1,
        p2,
        p3: join(&p3)?,
        v1: w2,
        v2,
        v3,
    };
    verify_flower(g, &flower)?;
    Ok(flower)
}

/// Finds a kite rooted at the flower's roots. The search first stays inside
/// the flower, then opens up to the whole graph, preferring flower
/// vertices throughout.
pub fn resolve_flower(
    g: &Graph,
    f: &Flower,
    budget: SearchBudget,
) -> Result<KiteSubdivision, FlowerError> {
    verify_flower(g, f)?;
    let mut inside = vec![false; g.n()];
    for v in f.vertex_set() {
        inside[v] = true;
    }
    let rank: Vec<usize> = inside.iter().map(|&b| usize::from(!b)).collect();
    let first = (budget.max_expansions / 10).max(1);
    let mut search = KiteSearch::new(g, &f.roots, Some(&inside), Some(&rank), first);
    let spent = match search.run() {
        Ok(Some(kite)) => return checked(g, f, kite),
        Ok(None) | Err(OracleError::BudgetExceeded(_)) => search.expansions(),
        Err(e) => return Err(FlowerError::FlowerInvalid(e.to_string())),
    };
    let left = budget.max_expansions.saturating_sub(spent).max(1);
    let mut search = KiteSearch::new(g, &f.roots, None, Some(&rank), left);
    match search.run() {
        Ok(Some(kite)) => checked(g, f, kite),
        Ok(None) => Err(FlowerError::NoKite),
        Err(_) => Err(FlowerError::FlowerResolutionExhausted(budget.max_expansions)),
    }
}

fn checked(g: &Graph, f: &Flower, kite: KiteSubdivision) -> Result<KiteSubdivision, FlowerError> {
    verify_kite(g, &f.roots, &kite).map_err(|e| FlowerError::FlowerInvalid(e.to_string()))?;
    Ok(kite)
}
