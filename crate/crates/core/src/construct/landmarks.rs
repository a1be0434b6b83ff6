use super::apex::ApexFan;
use crate::fans::TerminalFan;
use crate::graph::{concat_paths, subpath, Path, PathError, RootQuadruple, Vertex};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LandmarkError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("landmark ordering violated: {0}")]
    OrderingViolated(String),
}

impl From<PathError> for LandmarkError {
    fn from(e: PathError) -> Self {
        LandmarkError::OrderingViolated(e.to_string())
    }
}

/// Where the last `Q ∪ W` vertex of `L` sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UPlace {
    X1,
    /// Interior vertex of `Q[i]` (landing vertices included).
    Q(usize),
    /// Vertex of landing arm `i` strictly between `x4` and its landing.
    W(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Landmarks {
    /// The `x1 -> x3` linkage path.
    pub l: Path,
    pub u: Vertex,
    pub v: Vertex,
    pub w: Vertex,
    pub uprime: Vertex,
    pub u_place: UPlace,
    /// R indices relabelled so that `r_order[0]` holds `w`.
    pub r_order: [usize; 3],
    /// `L[u,u'] ∪ P[u',v] ∪ L[v,w] ∪ R1[w,x3] ∪ R2`, from `u` to `x2`.
    pub t_path: Path,
}

impl Landmarks {
    pub fn r1_index(&self) -> usize {
        self.r_order[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LandmarkOutcome {
    Ready(Landmarks),
    /// The ordering premise failed in a way that exhibits an `(x1, x3)`
    /// path missing `P` altogether.
    AvoidsP(Path),
}

/// Membership tables for the oriented terminal fan and apex fan.
pub(crate) struct Layout<'a> {
    pub roots: RootQuadruple,
    pub tf: &'a TerminalFan,
    pub af: &'a ApexFan,
    q_of: Vec<Option<usize>>,
    r_of: Vec<Option<usize>>,
    w_of: Vec<Option<usize>>,
    p_pos: Vec<Option<usize>>,
}

impl<'a> Layout<'a> {
    pub fn new(n: usize, tf: &'a TerminalFan, af: &'a ApexFan) -> Self {
        let mut q_of = vec![None; n];
        let mut r_of = vec![None; n];
        let mut w_of = vec![None; n];
        let mut p_pos = vec![None; n];
        for (i, q) in tf.q.iter().enumerate() {
            q.interior().iter().for_each(|&v| q_of[v] = Some(i));
        }
        for (i, r) in tf.r.iter().enumerate() {
            r.interior().iter().for_each(|&v| r_of[v] = Some(i));
        }
        for (i, l) in af.landings.iter().enumerate() {
            l.arm.interior().iter().for_each(|&v| w_of[v] = Some(i));
        }
        for (i, &v) in af.p.vertices().iter().enumerate() {
            p_pos[v] = Some(i);
        }
        Layout { roots: tf.roots(), tf, af, q_of, r_of, w_of, p_pos }
    }

    pub fn r_index(&self, v: Vertex) -> Option<usize> {
        self.r_of[v]
    }

    pub fn in_q(&self, v: Vertex) -> bool {
        v == self.roots.x1 || self.q_of[v].is_some()
    }

    pub fn in_r(&self, v: Vertex) -> bool {
        v == self.roots.x3 || self.r_of[v].is_some()
    }

    pub fn in_qw(&self, v: Vertex) -> bool {
        self.in_q(v) || self.w_of[v].is_some()
    }

    pub fn on_p(&self, v: Vertex) -> bool {
        self.p_pos[v].is_some()
    }

    /// Position along `P` counted from `x4`.
    pub fn p_position(&self, v: Vertex) -> Option<usize> {
        self.p_pos[v]
    }

    pub fn place_of(&self, u: Vertex) -> Option<UPlace> {
        if u == self.roots.x1 {
            Some(UPlace::X1)
        } else if let Some(i) = self.q_of[u] {
            Some(UPlace::Q(i))
        } else {
            self.w_of[u].map(UPlace::W)
        }
    }

    /// Q path carrying landing `i`, or `None` when it lands on `x1`.
    pub fn landing_path(&self, i: usize) -> Option<usize> {
        self.q_of[self.af.landings[i].at]
    }

    /// `Q[i][x1, v]`, oriented from `x1`.
    pub fn q_from_x1(&self, i: usize, v: Vertex) -> Result<Path, PathError> {
        subpath(&self.tf.q[i], self.roots.x1, v)
    }

    /// A path from `x1` to `u` through `Q ∪ W`.
    pub fn prefix_to(&self, u: Vertex) -> Result<Path, PathError> {
        match self.place_of(u).ok_or(PathError::VertexNotOnPath(u))? {
            UPlace::X1 => Ok(Path::single(u)),
            UPlace::Q(i) => self.q_from_x1(i, u),
            UPlace::W(i) => {
                let landing = &self.af.landings[i];
                let head = match self.landing_path(i) {
                    Some(j) => self.q_from_x1(j, landing.at)?,
                    None => Path::single(landing.at),
                };
                let chain = concat_paths(&[head, subpath(&landing.arm, landing.at, u)?])?;
                chain.into_path().ok_or(PathError::InteriorOverlap(u))
            }
        }
    }
}

fn segment(l: &Path, from: usize, to: usize) -> Path {
    Path::new(l.vertices()[from..=to].to_vec()).expect("slices of a path are paths")
}

fn chain_path(segments: &[Path]) -> Result<Path, LandmarkError> {
    concat_paths(segments)?
        .into_path()
        .ok_or_else(|| LandmarkError::OrderingViolated("segments close into a cycle".into()))
}

/// Locates `u`, `v`, `w` and `u'` on the `x1 -> x3` linkage path `l` and
/// assembles `T`. `tf` and `af` must already be oriented.
pub fn compute_landmarks(
    l: &Path,
    tf: &TerminalFan,
    af: &ApexFan,
) -> Result<LandmarkOutcome, LandmarkError> {
    let n = l.vertices().iter().chain(tf.arms().flat_map(|a| a.vertices())).max().unwrap() + 1;
    let n = n.max(af.p.vertices().iter().chain(af.landings.iter().flat_map(|x| x.arm.vertices())).max().unwrap() + 1);
    let lay = Layout::new(n, tf, af);
    let roots = lay.roots;
    if l.first() != roots.x1 || l.last() != roots.x3 {
        return Err(LandmarkError::PreconditionViolated("L must run from x1 to x3".into()));
    }
    let lv = l.vertices();
    let iv = lv
        .iter()
        .rposition(|&x| lay.on_p(x))
        .ok_or_else(|| LandmarkError::PreconditionViolated("L does not meet P".into()))?;
    let iu = lv.iter().rposition(|&x| lay.in_qw(x)).expect("x1 lies in Q");
    let u = lv[iu];
    if iu > iv {
        // L leaves P for good before its last visit to Q ∪ W
        let tail = segment(l, iu, lv.len() - 1);
        return Ok(LandmarkOutcome::AvoidsP(chain_path(&[lay.prefix_to(u)?, tail])?));
    }
    let iup = (iu + 1..lv.len()).find(|&i| lay.on_p(lv[i])).expect("v follows u");
    if let Some(ir) = (iu + 1..iup).find(|&i| lay.in_r(lv[i])) {
        // L[u, u'] reaches R before P
        let r = lv[ir];
        let k = lay.r_index(r).expect("x3 ends L, so r is interior to R");
        let down = subpath(&tf.r[k], r, roots.x3)?;
        return Ok(LandmarkOutcome::AvoidsP(chain_path(&[
            lay.prefix_to(u)?,
            segment(l, iu, ir),
            down,
        ])?));
    }
    let iw = (iv + 1..lv.len()).find(|&i| lay.in_r(lv[i])).expect("x3 ends L");
    let (v, w, uprime) = (lv[iv], lv[iw], lv[iup]);
    let r1 = lay.r_index(w).unwrap_or(0);
    let rest: Vec<usize> = (0..3).filter(|&i| i != r1).collect();
    let r_order = [r1, rest[0], rest[1]];
    let t_path = chain_path(&[
        segment(l, iu, iup),
        subpath(&af.p, uprime, v)?,
        segment(l, iv, iw),
        subpath(&tf.r[r1], w, roots.x3)?,
        tf.r[r_order[1]].reversed(),
    ])?;
    Ok(LandmarkOutcome::Ready(Landmarks {
        l: l.clone(),
        u,
        v,
        w,
        uprime,
        u_place: lay.place_of(u).expect("u lies in Q ∪ W"),
        r_order,
        t_path,
    }))
}
