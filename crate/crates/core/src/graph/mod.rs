//! Simple undirected graphs on dense vertex ids `0..n`, plus the path and
//! cycle algebra and the structural verifiers built on top of them.

mod path;
mod verify;

pub use path::{concat_paths, subpath, Chain, Cycle, Path, PathError};
pub use verify::{
    verify_flower, verify_kite, verify_kite_raw, Flower, FlowerViolation, KiteSubdivision, KiteViolation,
    RootQuadruple, RootsError,
};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: malformed input: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: loop edge at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
}

/// Immutable simple graph. Adjacency lists are kept sorted so that every
/// traversal visits lower-numbered neighbours first.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list, silently dropping duplicates.
    /// Panics on loops or out-of-range endpoints; use [`parse_graph`] for
    /// untrusted input.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            assert_ne!(u, v, "loop at {u}");
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Graph { adj, m: m / 2 }
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path_graph(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Graph {
        Graph::from_edges(self.n(), self.edges().chain(std::iter::once((u, v))))
    }

    pub fn without_edges(&self, removed: &[(Vertex, Vertex)]) -> Graph {
        let drop = |(a, b): (Vertex, Vertex)| {
            removed.iter().any(|&(u, v)| (u, v) == (a, b) || (v, u) == (a, b))
        };
        Graph::from_edges(self.n(), self.edges().filter(|&e| !drop(e)))
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n());
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Connectivity of `g - removed`, ignoring removed vertices.
    pub fn is_connected_without(&self, removed: &[bool]) -> bool {
        let n = self.n();
        let Some(start) = (0..n).find(|&v| !removed[v]) else {
            return true;
        };
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !removed[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == removed.iter().filter(|&&r| !r).count()
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_without(&vec![false; self.n()])
    }

    /// Breadth-first shortest path from `a` to `b` through vertices not
    /// marked `blocked`. Ties resolve toward lower vertex ids.
    pub fn bfs_path(&self, a: Vertex, b: Vertex, blocked: &[bool]) -> Option<Vec<Vertex>> {
        if blocked[a] || blocked[b] {
            return None;
        }
        let n = self.n();
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        parent[a] = a;
        queue.push_back(a);
        while let Some(v) = queue.pop_front() {
            if v == b {
                let mut out = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = parent[cur];
                    out.push(cur);
                }
                out.reverse();
                return Some(out);
            }
            for &w in &self.adj[v] {
                if !blocked[w] && parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Edge-list text, the inverse of [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }

    /// Short stable digest of the edge set, used to label instances in
    /// reports and diagnostics.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect() }
    }
}

struct EdgeCollector {
    n: usize,
    adj: Vec<Vec<Vertex>>,
}

impl EdgeCollector {
    fn new(n: usize) -> Self {
        EdgeCollector { n, adj: vec![Vec::new(); n] }
    }

    fn add(&mut self, line: usize, u: usize, v: usize) -> Result<(), GraphError> {
        for vertex in [u, v] {
            if vertex >= self.n {
                return Err(GraphError::VertexOutOfRange { line, vertex, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::LoopEdge { line, vertex: u });
        }
        if self.adj[u].contains(&v) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    fn finish(self) -> Graph {
        let n = self.n;
        Graph::from_edges(
            n,
            self.adj.into_iter().enumerate().flat_map(|(u, list)| {
                list.into_iter().filter(move |&v| v > u).map(move |v| (u, v))
            }),
        )
    }
}

/// Parses the edge-list format: a header line `n m` followed by exactly
/// `m` lines `u v`. Blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines
        .next()
        .ok_or(GraphError::MalformedLine { line: 1, reason: "missing header".into() })?;
    let (n, m) = parse_pair(line, header)?;
    let mut collector = EdgeCollector::new(n);
    let mut seen = 0;
    for (line, body) in lines {
        let (u, v) = parse_pair(line, body)?;
        collector.add(line, u, v)?;
        seen += 1;
    }
    if seen != m {
        return Err(GraphError::MalformedLine {
            line: 1,
            reason: format!("header declares {m} edges, found {seen}"),
        });
    }
    Ok(collector.finish())
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize), GraphError> {
    let malformed = |reason: &str| GraphError::MalformedLine { line, reason: reason.into() };
    let mut parts = body.split_whitespace();
    let a = parts.next().ok_or_else(|| malformed("expected two integers"))?;
    let b = parts.next().ok_or_else(|| malformed("expected two integers"))?;
    if parts.next().is_some() {
        return Err(malformed("trailing tokens"));
    }
    let a = a.parse().map_err(|_| malformed("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| malformed("not a non-negative integer"))?;
    Ok((a, b))
}

/// Parses the JSON alternative `{"n": .., "edges": [[u, v], ..]}`.
pub fn parse_graph_json(text: &str) -> Result<Graph, GraphError> {
    let parsed: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::MalformedLine {
        line: e.line(),
        reason: e.to_string(),
    })?;
    let mut collector = EdgeCollector::new(parsed.n);
    for (i, [u, v]) in parsed.edges.into_iter().enumerate() {
        collector.add(i + 1, u, v)?;
    }
    Ok(collector.finish())
}

/// Dispatches on the first non-blank character: `{` means JSON.
pub fn parse_graph_any(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph(text)
    }
}
