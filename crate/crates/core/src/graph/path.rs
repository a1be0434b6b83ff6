use super::{Graph, Vertex};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("empty vertex sequence")]
    Empty,
    #[error("vertex {0} repeats")]
    RepeatedVertex(Vertex),
    #[error("vertex {0} is not on the path")]
    VertexNotOnPath(Vertex),
    #[error("segment {index} does not continue from vertex {end}")]
    SegmentsNotChainable { index: usize, end: Vertex },
    #[error("segments overlap at vertex {0}")]
    InteriorOverlap(Vertex),
    #[error("cycle needs at least three vertices, got {0}")]
    ShortCycle(usize),
}

/// An ordered sequence of distinct vertices. A single vertex is a legal
/// path with no edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self, PathError> {
        if vertices.is_empty() {
            return Err(PathError::Empty);
        }
        if let Some(v) = first_repeat(&vertices) {
            return Err(PathError::RepeatedVertex(v));
        }
        Ok(Path(vertices))
    }

    pub fn single(v: Vertex) -> Self {
        Path(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        *self.0.last().expect("paths are non-empty")
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    pub fn interior(&self) -> &[Vertex] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    /// True when every consecutive pair is an edge of `g`.
    pub fn is_walk_in(&self, g: &Graph) -> bool {
        self.0.iter().all(|&v| v < g.n()) && self.edges().all(|(a, b)| g.has_edge(a, b))
    }

    pub fn segment(&self, a: Vertex, b: Vertex) -> Result<Path, PathError> {
        subpath(self, a, b)
    }
}

impl TryFrom<Vec<Vertex>> for Path {
    type Error = PathError;
    fn try_from(v: Vec<Vertex>) -> Result<Self, PathError> {
        Path::new(v)
    }
}

impl From<Path> for Vec<Vertex> {
    fn from(p: Path) -> Self {
        p.0
    }
}

/// A cycle stored in canonical form: it starts at its minimum vertex and
/// runs in the direction whose second vertex is smaller.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Cycle(Vec<Vertex>);

impl Cycle {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self, PathError> {
        if vertices.len() < 3 {
            return Err(PathError::ShortCycle(vertices.len()));
        }
        if let Some(v) = first_repeat(&vertices) {
            return Err(PathError::RepeatedVertex(v));
        }
        let k = vertices.len();
        let start = (0..k).min_by_key(|&i| vertices[i]).unwrap();
        let forward = vertices[(start + 1) % k] < vertices[(start + k - 1) % k];
        let canon = (0..k)
            .map(|i| if forward { vertices[(start + i) % k] } else { vertices[(start + k - i) % k] })
            .collect();
        Ok(Cycle(canon))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Number of vertices, which equals the number of edges.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }

    pub fn is_walk_in(&self, g: &Graph) -> bool {
        self.0.iter().all(|&v| v < g.n()) && self.edges().all(|(a, b)| g.has_edge(a, b))
    }
}

impl TryFrom<Vec<Vertex>> for Cycle {
    type Error = PathError;
    fn try_from(v: Vec<Vertex>) -> Result<Self, PathError> {
        Cycle::new(v)
    }
}

impl From<Cycle> for Vec<Vertex> {
    fn from(c: Cycle) -> Self {
        c.0
    }
}

/// Result of chaining segments: closed chains become cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chain {
    Path(Path),
    Cycle(Cycle),
}

impl Chain {
    pub fn into_path(self) -> Option<Path> {
        match self {
            Chain::Path(p) => Some(p),
            Chain::Cycle(_) => None,
        }
    }

    pub fn into_cycle(self) -> Option<Cycle> {
        match self {
            Chain::Cycle(c) => Some(c),
            Chain::Path(_) => None,
        }
    }
}

/// The contiguous stretch of `p` between `a` and `b`, oriented from `a`.
pub fn subpath(p: &Path, a: Vertex, b: Vertex) -> Result<Path, PathError> {
    let i = p.position(a).ok_or(PathError::VertexNotOnPath(a))?;
    let j = p.position(b).ok_or(PathError::VertexNotOnPath(b))?;
    let vertices = if i <= j {
        p.0[i..=j].to_vec()
    } else {
        p.0[j..=i].iter().rev().copied().collect()
    };
    Ok(Path(vertices))
}

/// Joins segments end to end. Each segment may be given in either
/// orientation; it is flipped when only its far end meets the running
/// endpoint. Returns a cycle when the chain closes on itself.
pub fn concat_paths(segments: &[Path]) -> Result<Chain, PathError> {
    let (first, rest) = segments.split_first().ok_or(PathError::Empty)?;
    let mut seq: Vec<Vertex> = match rest.first() {
        Some(next) if !touches(next, first.last()) && touches(next, first.first()) => {
            first.reversed().0
        }
        _ => first.0.clone(),
    };
    for (offset, seg) in rest.iter().enumerate() {
        let end = *seq.last().unwrap();
        if seg.first() == end {
            seq.extend_from_slice(&seg.0[1..]);
        } else if seg.last() == end {
            seq.extend(seg.0.iter().rev().skip(1));
        } else {
            return Err(PathError::SegmentsNotChainable { index: offset + 1, end });
        }
    }
    let closed = seq.len() > 1 && seq[0] == *seq.last().unwrap();
    if closed {
        seq.pop();
        if let Some(v) = first_repeat(&seq) {
            return Err(PathError::InteriorOverlap(v));
        }
        if seq.len() < 3 {
            return Err(PathError::ShortCycle(seq.len()));
        }
        Ok(Chain::Cycle(Cycle::new(seq)?))
    } else {
        if let Some(v) = first_repeat(&seq) {
            return Err(PathError::InteriorOverlap(v));
        }
        Ok(Chain::Path(Path(seq)))
    }
}

fn touches(p: &Path, v: Vertex) -> bool {
    p.first() == v || p.last() == v
}

fn first_repeat(vertices: &[Vertex]) -> Option<Vertex> {
    let mut seen = std::collections::HashSet::with_capacity(vertices.len());
    vertices.iter().copied().find(|&v| !seen.insert(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Path {
        Path::new(v.to_vec()).unwrap()
    }

    #[test]
    fn subpath_examples() {
        assert_eq!(subpath(&p(&[0, 1, 2, 3]), 1, 3).unwrap(), p(&[1, 2, 3]));
        assert_eq!(subpath(&p(&[0, 1, 2, 3]), 2, 2).unwrap(), p(&[2]));
        assert_eq!(subpath(&p(&[0, 1, 2, 3]), 3, 1).unwrap(), p(&[3, 2, 1]));
        assert_eq!(subpath(&p(&[0, 1, 2]), 0, 5), Err(PathError::VertexNotOnPath(5)));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat_paths(&[p(&[0, 1]), p(&[1, 2])]).unwrap(), Chain::Path(p(&[0, 1, 2])));
        assert_eq!(
            concat_paths(&[p(&[0, 1]), p(&[1, 2]), p(&[2, 0])]).unwrap(),
            Chain::Cycle(Cycle::new(vec![0, 1, 2]).unwrap())
        );
        assert!(matches!(
            concat_paths(&[p(&[0, 1]), p(&[2, 3])]),
            Err(PathError::SegmentsNotChainable { index: 1, end: 1 })
        ));
    }

    #[test]
    fn concat_orients_and_handles_degenerate_segments() {
        // first segment reversed, a single-vertex segment in the middle
        let chain = concat_paths(&[p(&[1, 0]), p(&[1, 5]), p(&[5]), p(&[6, 5])]).unwrap();
        assert_eq!(chain, Chain::Path(p(&[0, 1, 5, 6])));
        assert_eq!(
            concat_paths(&[p(&[0, 1, 2]), p(&[2, 1])]),
            Err(PathError::InteriorOverlap(1))
        );
        assert_eq!(concat_paths(&[p(&[0, 1]), p(&[1, 0])]), Err(PathError::ShortCycle(2)));
        assert_eq!(concat_paths(&[]), Err(PathError::Empty));
    }

    #[test]
    fn cycle_canonical_form() {
        let a = Cycle::new(vec![3, 1, 4, 2]).unwrap();
        let b = Cycle::new(vec![2, 4, 1, 3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices(), &[1, 3, 2, 4]);
        assert_eq!(Cycle::new(vec![0, 1]), Err(PathError::ShortCycle(2)));
        assert_eq!(Cycle::new(vec![0, 1, 0]), Err(PathError::RepeatedVertex(0)));
    }

    #[test]
    fn path_rejects_repeats() {
        assert_eq!(Path::new(vec![0, 1, 0]), Err(PathError::RepeatedVertex(0)));
        assert_eq!(Path::new(vec![]), Err(PathError::Empty));
        assert_eq!(p(&[4]).len(), 0);
    }
}
