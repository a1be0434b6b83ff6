use super::{Cycle, Graph, Path, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootsError {
    #[error("root vertices must be pairwise distinct")]
    NotDistinct,
    #[error("root {0} out of range")]
    OutOfRange(Vertex),
}

/// The four branch vertices of a rooted kite. `x2` is the degree-3 vertex,
/// `x4` the pendant end, `x1` and `x3` the other two triangle corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[Vertex; 4]", into = "[Vertex; 4]")]
pub struct RootQuadruple {
    pub x1: Vertex,
    pub x2: Vertex,
    pub x3: Vertex,
    pub x4: Vertex,
}

impl RootQuadruple {
    pub fn new(x1: Vertex, x2: Vertex, x3: Vertex, x4: Vertex) -> Result<Self, RootsError> {
        let r = RootQuadruple { x1, x2, x3, x4 };
        let a = r.as_array();
        for i in 0..4 {
            for j in i + 1..4 {
                if a[i] == a[j] {
                    return Err(RootsError::NotDistinct);
                }
            }
        }
        Ok(r)
    }

    pub fn as_array(&self) -> [Vertex; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    pub fn check_in(&self, g: &Graph) -> Result<(), RootsError> {
        match self.as_array().into_iter().find(|&v| v >= g.n()) {
            Some(v) => Err(RootsError::OutOfRange(v)),
            None => Ok(()),
        }
    }

    /// Exchanges the roles of `x1` and `x3`; the kite is symmetric in them.
    pub fn mirrored(&self) -> Self {
        RootQuadruple { x1: self.x3, x2: self.x2, x3: self.x1, x4: self.x4 }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.as_array().contains(&v)
    }
}

impl TryFrom<[Vertex; 4]> for RootQuadruple {
    type Error = RootsError;
    fn try_from(a: [Vertex; 4]) -> Result<Self, RootsError> {
        RootQuadruple::new(a[0], a[1], a[2], a[3])
    }
}

impl From<RootQuadruple> for [Vertex; 4] {
    fn from(r: RootQuadruple) -> Self {
        r.as_array()
    }
}

/// A subdivided kite: a cycle through `x1, x2, x3` and a pendant path from
/// `x2` to `x4` that meets the cycle only at `x2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KiteSubdivision {
    pub cycle: Cycle,
    pub pendant: Path,
}

impl KiteSubdivision {
    pub fn edge_count(&self) -> usize {
        self.cycle.len() + self.pendant.len()
    }

    pub fn vertex_set(&self) -> HashSet<Vertex> {
        self.cycle.vertices().iter().chain(self.pendant.vertices()).copied().collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KiteViolation {
    #[error("roots: {0}")]
    Roots(RootsError),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("cycle has {0} vertices, needs at least 3")]
    ShortCycle(usize),
    #[error("vertex {0} repeats")]
    RepeatedVertex(Vertex),
    #[error("pendant must run from x2 = {x2} to x4 = {x4}, got {first}..{last}")]
    PendantEndpoints { x2: Vertex, x4: Vertex, first: Vertex, last: Vertex },
    #[error("root {role} = {vertex} is not on the cycle")]
    RootNotOnCycle { role: &'static str, vertex: Vertex },
    #[error("pendant meets the cycle at {0} besides x2")]
    PendantTouchesCycle(Vertex),
    #[error("edge {0} {1} is not in the graph")]
    MissingEdge(Vertex, Vertex),
}

/// Checks a kite given as raw vertex sequences, so that malformed input
/// (short or self-intersecting cycles) gets a report instead of a parse
/// failure.
pub fn verify_kite_raw(
    g: &Graph,
    roots: &RootQuadruple,
    cycle: &[Vertex],
    pendant: &[Vertex],
) -> Result<(), KiteViolation> {
    let RootQuadruple { x1, x2, x3, x4 } = *roots;
    RootQuadruple::new(x1, x2, x3, x4).map_err(KiteViolation::Roots)?;
    roots.check_in(g).map_err(KiteViolation::Roots)?;
    if let Some(&v) = cycle.iter().chain(pendant).find(|&&v| v >= g.n()) {
        return Err(KiteViolation::VertexOutOfRange(v));
    }
    if cycle.len() < 3 {
        return Err(KiteViolation::ShortCycle(cycle.len()));
    }
    let mut on_cycle = vec![false; g.n()];
    for &v in cycle {
        if std::mem::replace(&mut on_cycle[v], true) {
            return Err(KiteViolation::RepeatedVertex(v));
        }
    }
    let mut on_pendant = vec![false; g.n()];
    for &v in pendant {
        if std::mem::replace(&mut on_pendant[v], true) {
            return Err(KiteViolation::RepeatedVertex(v));
        }
    }
    for (role, vertex) in [("x1", x1), ("x2", x2), ("x3", x3)] {
        if !on_cycle[vertex] {
            return Err(KiteViolation::RootNotOnCycle { role, vertex });
        }
    }
    match (pendant.first(), pendant.last()) {
        (Some(&first), Some(&last)) if first == x2 && last == x4 => {}
        (first, last) => {
            return Err(KiteViolation::PendantEndpoints {
                x2,
                x4,
                first: first.copied().unwrap_or(usize::MAX),
                last: last.copied().unwrap_or(usize::MAX),
            })
        }
    }
    if let Some(&v) = pendant[1..].iter().find(|&&v| on_cycle[v]) {
        return Err(KiteViolation::PendantTouchesCycle(v));
    }
    let k = cycle.len();
    let cycle_edges = (0..k).map(|i| (cycle[i], cycle[(i + 1) % k]));
    let pendant_edges = pendant.windows(2).map(|w| (w[0], w[1]));
    if let Some((u, v)) = cycle_edges.chain(pendant_edges).find(|&(u, v)| !g.has_edge(u, v)) {
        return Err(KiteViolation::MissingEdge(u, v));
    }
    Ok(())
}

pub fn verify_kite(
    g: &Graph,
    roots: &RootQuadruple,
    kite: &KiteSubdivision,
) -> Result<(), KiteViolation> {
    verify_kite_raw(g, roots, kite.cycle.vertices(), kite.pendant.vertices())
}

/// Three cycles and three connecting paths: `c1` and `c2` meet exactly in
/// `x2`, `c3` carries `x4`, and `p_i` links `x_i` to `v_i` on `c3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flower {
    pub roots: RootQuadruple,
    pub c1: Cycle,
    pub c2: Cycle,
    pub c3: Cycle,
    pub p1: Path,
    pub p2: Path,
    pub p3: Path,
    pub v1: Vertex,
    pub v2: Vertex,
    pub v3: Vertex,
}

impl Flower {
    pub fn vertex_set(&self) -> HashSet<Vertex> {
        [&self.c1, &self.c2, &self.c3]
            .into_iter()
            .flat_map(|c| c.vertices().iter().copied())
            .chain(
                [&self.p1, &self.p2, &self.p3].into_iter().flat_map(|p| p.vertices().iter().copied()),
            )
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowerViolation {
    #[error("roots: {0}")]
    Roots(RootsError),
    #[error("edge {0} {1} is not in the graph")]
    MissingEdge(Vertex, Vertex),
    #[error("{0}")]
    RootPlacement(&'static str),
    #[error("c1 and c2 must meet exactly at x2")]
    PetalsOverlap,
    #[error("c3 meets c1 or c2 at {0}")]
    CentreTouchesPetal(Vertex),
    #[error("p{0} has the wrong endpoints")]
    PathEndpoints(usize),
    #[error("landing vertices v1, v2, v3, x4 must be distinct vertices of c3")]
    LandingsInvalid,
    #[error("p{0} and p{1} share vertex {2}")]
    PathsOverlap(usize, usize, Vertex),
    #[error("p{0} meets a cycle at interior vertex {1}")]
    PathTouchesCycle(usize, Vertex),
    #[error("v1, v2, v3, x4 are not in cyclic order on c3")]
    LandingOrder,
}

pub fn verify_flower(g: &Graph, f: &Flower) -> Result<(), FlowerViolation> {
    let RootQuadruple { x1, x2, x3, x4 } = f.roots;
    RootQuadruple::new(x1, x2, x3, x4).map_err(FlowerViolation::Roots)?;
    f.roots.check_in(g).map_err(FlowerViolation::Roots)?;
    for c in [&f.c1, &f.c2, &f.c3] {
        if let Some((u, v)) = c.edges().find(|&(u, v)| !g.has_edge(u, v)) {
            return Err(FlowerViolation::MissingEdge(u, v));
        }
    }
    for p in [&f.p1, &f.p2, &f.p3] {
        if let Some((u, v)) = p.edges().find(|&(u, v)| !g.has_edge(u, v)) {
            return Err(FlowerViolation::MissingEdge(u, v));
        }
    }
    if !f.c1.contains(x1) {
        return Err(FlowerViolation::RootPlacement("x1 is not on c1"));
    }
    if !f.c2.contains(x3) {
        return Err(FlowerViolation::RootPlacement("x3 is not on c2"));
    }
    if !f.c3.contains(x4) {
        return Err(FlowerViolation::RootPlacement("x4 is not on c3"));
    }
    let common: Vec<Vertex> =
        f.c1.vertices().iter().copied().filter(|&v| f.c2.contains(v)).collect();
    if common != [x2] {
        return Err(FlowerViolation::PetalsOverlap);
    }
    if let Some(&v) = f.c3.vertices().iter().find(|&&v| f.c1.contains(v) || f.c2.contains(v)) {
        return Err(FlowerViolation::CentreTouchesPetal(v));
    }
    let paths = [(&f.p1, x1, f.v1), (&f.p2, x2, f.v2), (&f.p3, x3, f.v3)];
    for (i, &(p, start, end)) in paths.iter().enumerate() {
        if p.first() != start || p.last() != end {
            return Err(FlowerViolation::PathEndpoints(i + 1));
        }
    }
    let marks = [f.v1, f.v2, f.v3, x4];
    let distinct = marks.iter().collect::<HashSet<_>>().len() == 4;
    if !distinct || !marks.iter().all(|&v| f.c3.contains(v)) {
        return Err(FlowerViolation::LandingsInvalid);
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if let Some(&v) = paths[i].0.vertices().iter().find(|&&v| paths[j].0.contains(v)) {
                return Err(FlowerViolation::PathsOverlap(i + 1, j + 1, v));
            }
        }
    }
    for (i, &(p, _, _)) in paths.iter().enumerate() {
        let hit = p.interior().iter().find(|&&v| {
            f.c1.contains(v) || f.c2.contains(v) || f.c3.contains(v)
        });
        if let Some(&v) = hit {
            return Err(FlowerViolation::PathTouchesCycle(i + 1, v));
        }
    }
    if !in_cyclic_order(&f.c3, &marks) {
        return Err(FlowerViolation::LandingOrder);
    }
    Ok(())
}

/// Whether `marks` occur around `c` in this order, in either direction.
fn in_cyclic_order(c: &Cycle, marks: &[Vertex]) -> bool {
    let k = c.len();
    let pos: Vec<usize> = marks.iter().map(|&v| c.position(v).unwrap()).collect();
    let ascending = |step: &dyn Fn(usize) -> usize| {
        let offsets: Vec<usize> = pos.iter().map(|&p| step(p)).collect();
        offsets.windows(2).all(|w| w[0] < w[1])
    };
    ascending(&|p| (p + k - pos[0]) % k) || ascending(&|p| (pos[0] + k - p) % k)
}
