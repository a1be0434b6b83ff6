use crate::fans::{extend_fan, Fan, FanError, TerminalFan};
use crate::graph::{Graph, Path, RootQuadruple, Vertex};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApexError {
    #[error("no 7-fan from x4 into the terminal fan")]
    NoSevenFan,
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("apex fan invariant violated: {0}")]
    Invalid(String),
}

/// One arm of the apex fan that lands on the Q side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Landing {
    /// Runs from `x4` to `at`.
    pub arm: Path,
    pub at: Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Original,
    /// `x1` with `x3` and `Q` with `R` were exchanged so that at least
    /// three arms land on the Q side.
    Mirrored,
}

/// The 7-fan from `x4` into `V(Q ∪ R)`: the arm `p` to `x2` plus the arms
/// landing on Q (after the side has been fixed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexFan {
    /// Runs from `x4` to `x2`.
    pub p: Path,
    /// Sorted by landing vertex.
    pub landings: Vec<Landing>,
    pub side: Side,
}

impl TerminalFan {
    pub fn roots(&self) -> RootQuadruple {
        RootQuadruple {
            x1: self.q[0].last(),
            x2: self.hub,
            x3: self.r[0].last(),
            x4: self.s.last(),
        }
    }

    pub(crate) fn mirrored(&self) -> TerminalFan {
        TerminalFan { hub: self.hub, q: self.r.clone(), r: self.q.clone(), s: self.s.clone() }
    }
}

impl ApexFan {
    /// The terminal fan seen from the recorded side.
    pub fn orient(&self, tf: &TerminalFan) -> TerminalFan {
        match self.side {
            Side::Original => tf.clone(),
            Side::Mirrored => tf.mirrored(),
        }
    }

    /// Checks the invariants against the oriented terminal fan.
    pub fn validate(&self, g: &Graph, tf: &TerminalFan) -> Result<(), String> {
        let roots = tf.roots();
        if self.p.first() != roots.x4 || self.p.last() != roots.x2 {
            return Err("p must run from x4 to x2".into());
        }
        let fan = Fan {
            center: roots.x4,
            arms: std::iter::once(self.p.clone())
                .chain(self.landings.iter().map(|l| l.arm.clone()))
                .collect(),
        };
        fan.validate(g, &tf.qr_vertices())?;
        let on_q = |v: Vertex| tf.q.iter().any(|q| q.contains(v));
        if self.landings.iter().any(|l| l.arm.last() != l.at || !on_q(l.at) || l.at == roots.x2) {
            return Err("landing off the Q side".into());
        }
        if self.landings.len() < 3 {
            return Err(format!("only {} landings on the Q side", self.landings.len()));
        }
        let clear = self.landings.iter().filter(|l| l.at != roots.x1).count();
        if clear < 2 {
            return Err("fewer than two landings avoid x1 and x2".into());
        }
        Ok(())
    }
}

/// Extends the reversed `S` arm to a 7-fan from `x4` into `V(Q ∪ R)` that
/// keeps `x2` as an endpoint, then picks the side holding at least three
/// of the remaining six landings.
pub fn apex_fan(g: &Graph, tf: &TerminalFan) -> Result<ApexFan, ApexError> {
    let roots = tf.roots();
    let targets = tf.qr_vertices();
    let base = Fan { center: roots.x4, arms: vec![tf.s.reversed()] };
    let fan = extend_fan(g, roots.x4, &targets, &base, 7)?.ok_or(ApexError::NoSevenFan)?;
    let (mut to_x2, others): (Vec<Path>, Vec<Path>) =
        fan.arms.into_iter().partition(|a| a.last() == roots.x2);
    let p = to_x2.pop().ok_or_else(|| ApexError::Invalid("no arm ends at x2".into()))?;
    let on_q = |v: Vertex| tf.q.iter().any(|q| q.contains(v));
    let (q_side, r_side): (Vec<Path>, Vec<Path>) = others.into_iter().partition(|a| on_q(a.last()));
    let (chosen, side) = if q_side.len() >= 3 {
        (q_side, Side::Original)
    } else {
        (r_side, Side::Mirrored)
    };
    let mut landings: Vec<Landing> =
        chosen.into_iter().map(|arm| Landing { at: arm.last(), arm }).collect();
    landings.sort_by_key(|l| l.at);
    let af = ApexFan { p, landings, side };
    af.validate(g, &af.orient(tf)).map_err(ApexError::Invalid)?;
    Ok(af)
}
