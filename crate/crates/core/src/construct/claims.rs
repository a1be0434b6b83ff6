use super::apex::ApexFan;
use super::landmarks::{Landmarks, Layout, UPlace};
use crate::fans::TerminalFan;
use crate::graph::{concat_paths, subpath, verify_kite, Graph, KiteSubdivision, Path, PathError, Vertex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("assembly failed: {0}")]
    AssemblyFailed(String),
}

impl From<PathError> for AssemblyError {
    fn from(e: PathError) -> Self {
        AssemblyError::AssemblyFailed(e.to_string())
    }
}

fn other_than(taken: &[Option<usize>]) -> usize {
    (0..3).find(|i| !taken.contains(&Some(*i))).expect("three paths, at most two taken")
}

/// Closes `cycle` into a cycle, joins `pendant` into an `x2 -> x4` path and
/// checks the result.
fn assemble(
    g: &Graph,
    tf: &TerminalFan,
    cycle: &[Path],
    pendant: &[Path],
) -> Result<KiteSubdivision, AssemblyError> {
    let roots = tf.roots();
    let cycle = concat_paths(cycle)?
        .into_cycle()
        .ok_or_else(|| AssemblyError::AssemblyFailed("cycle segments do not close".into()))?;
    let pendant = concat_paths(pendant)?
        .into_path()
        .ok_or_else(|| AssemblyError::AssemblyFailed("pendant closes on itself".into()))?;
    let pendant = if pendant.first() == roots.x2 { pendant } else { pendant.reversed() };
    let kite = KiteSubdivision { cycle, pendant };
    verify_kite(g, &roots, &kite).map_err(|e| AssemblyError::AssemblyFailed(e.to_string()))?;
    Ok(kite)
}

/// `p` runs `x4 -> x2` inside the apex fan; `pprime` is an `x1 -> x3` path
/// missing `p`. The last Q vertex before the first R vertex of `pprime`
/// gives a bridge between the two sides.
pub fn claim1_assembly(
    g: &Graph,
    tf: &TerminalFan,
    p: &Path,
    pprime: &Path,
) -> Result<KiteSubdivision, AssemblyError> {
    let roots = tf.roots();
    if pprime.first() != roots.x1 || pprime.last() != roots.x3 {
        return Err(AssemblyError::PreconditionViolated("pprime must run from x1 to x3".into()));
    }
    if let Some(v) = pprime.vertices().iter().find(|&&v| p.contains(v)) {
        return Err(AssemblyError::PreconditionViolated(format!("pprime meets p at {v}")));
    }
    let q_of = |v: Vertex| tf.q.iter().position(|q| q.interior().contains(&v));
    let r_of = |v: Vertex| tf.r.iter().position(|r| r.interior().contains(&v));
    let pv = pprime.vertices();
    let iw = pv.iter().position(|&v| v == roots.x3 || r_of(v).is_some()).expect("x3 ends pprime");
    let iu = pv[..iw].iter().rposition(|&v| v == roots.x1 || q_of(v).is_some()).expect("x1 starts pprime");
    let (u, w) = (pv[iu], pv[iw]);
    let (i, j) = (q_of(u), r_of(w));
    let head = match i {
        Some(i) => subpath(&tf.q[i], roots.x1, u)?,
        None => Path::single(u),
    };
    let tail = match j {
        Some(j) => subpath(&tf.r[j], w, roots.x3)?,
        None => Path::single(w),
    };
    let bridge = Path::new(pv[iu..=iw].to_vec())?;
    let cycle = [
        tf.q[other_than(&[i])].clone(),
        head,
        bridge,
        tail,
        tf.r[other_than(&[j])].reversed(),
    ];
    assemble(g, tf, &cycle, std::slice::from_ref(p))
}

/// `x1 -> u` through Q and W, and the Q path it uses (if any).
fn head_to_u(lay: &Layout, lm: &Landmarks) -> Result<(Vec<Path>, Option<usize>), AssemblyError> {
    let x1 = lay.roots.x1;
    Ok(match lm.u_place {
        UPlace::X1 => (vec![Path::single(x1)], None),
        UPlace::Q(i) => (vec![lay.q_from_x1(i, lm.u)?], Some(i)),
        UPlace::W(i) => {
            let landing = &lay.af.landings[i];
            let arm = subpath(&landing.arm, landing.at, lm.u)?;
            match lay.landing_path(i) {
                Some(j) => (vec![lay.q_from_x1(j, landing.at)?, arm], Some(j)),
                None => (vec![arm], None),
            }
        }
    })
}

/// `W_l ∪ Q_path[w_l, x2]`.
fn pendant_through(lay: &Layout, l: usize, path: usize) -> Result<Vec<Path>, AssemblyError> {
    let landing = &lay.af.landings[l];
    Ok(vec![subpath(&lay.tf.q[path], lay.roots.x2, landing.at)?, landing.arm.clone()])
}

/// Applies when the landings that avoid `x1` lie on at least two Q paths.
/// `tf` must be oriented to the apex fan's side.
pub fn claim2_assembly(
    g: &Graph,
    tf: &TerminalFan,
    af: &ApexFan,
    lm: &Landmarks,
) -> Result<Option<KiteSubdivision>, AssemblyError> {
    let lay = Layout::new(g.n(), tf, af);
    let clear: Vec<(usize, usize)> = (0..af.landings.len())
        .filter_map(|l| lay.landing_path(l).map(|path| (l, path)))
        .collect();
    if clear.iter().all(|&(_, path)| path == clear[0].1) {
        return Ok(None);
    }
    let (head, used) = head_to_u(&lay, lm)?;
    let &(l, lpath) = clear
        .iter()
        .find(|&&(_, path)| Some(path) != used)
        .expect("landings span two paths");
    let k = other_than(&[used, Some(lpath)]);
    let mut cycle = vec![tf.q[k].clone()];
    cycle.extend(head);
    cycle.push(lm.t_path.clone());
    assemble(g, tf, &cycle, &pendant_through(&lay, l, lpath)?).map(Some)
}

/// Applies when every landing avoiding `x1` is on one Q path, call it Q1,
/// and the landings are not all on the `x1` side of `u` (or of `u`'s
/// landing when `u` sits on an arm).
pub fn claim3_assembly(
    g: &Graph,
    tf: &TerminalFan,
    af: &ApexFan,
    lm: &Landmarks,
) -> Result<Option<KiteSubdivision>, AssemblyError> {
    let lay = Layout::new(g.n(), tf, af);
    let q1 = single_landing_path(&lay)
        .ok_or_else(|| AssemblyError::PreconditionViolated("landings span several Q paths".into()))?;
    let pos = |v: Vertex| tf.q[q1].position(v).expect("on Q1");
    let (head, used) = head_to_u(&lay, lm)?;
    let bar = match lm.u_place {
        UPlace::Q(j) if j != q1 => None,
        UPlace::X1 | UPlace::Q(_) => Some(pos(lm.u)),
        UPlace::W(k) => Some(pos(af.landings[k].at)),
    };
    let clear = (0..af.landings.len()).filter(|&l| lay.landing_path(l).is_some());
    let failing = clear
        .filter(|&l| bar.is_none_or(|b| pos(af.landings[l].at) < b))
        .min_by_key(|&l| pos(af.landings[l].at));
    let Some(l) = failing else {
        return Ok(None);
    };
    let k = other_than(&[used, Some(q1)]);
    let mut cycle = vec![tf.q[k].clone()];
    cycle.extend(head);
    cycle.push(lm.t_path.clone());
    assemble(g, tf, &cycle, &pendant_through(&lay, l, q1)?).map(Some)
}

/// The Q path holding every landing that avoids `x1`, if there is just one.
pub(crate) fn single_landing_path(lay: &Layout) -> Option<usize> {
    let mut paths = (0..lay.af.landings.len()).filter_map(|l| lay.landing_path(l));
    let first = paths.next()?;
    paths.all(|p| p == first).then_some(first)
}
