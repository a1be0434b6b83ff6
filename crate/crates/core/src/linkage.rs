//! Two vertex-disjoint paths between two terminal pairs.
//!
//! [`two_linkage`] enumerates `s1 -> t1` paths depth-first (lowest
//! neighbour first), pruning any prefix after which `s2` and `t2` fall
//! apart or `t1` becomes unreachable, and remembering failed
//! `(frontier, visited)` states. Exact, but exponential in the worst case;
//! intended for graphs of at most a few hundred vertices.

use crate::graph::{Graph, Path, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkageError {
    #[error("terminals must be pairwise distinct and in range")]
    DuplicateTerminals,
    #[error("search budget of {0} expansions exhausted")]
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkagePair {
    pub l: Path,
    pub lprime: Path,
}

impl LinkagePair {
    pub fn validate(&self, g: &Graph, terminals: [Vertex; 4]) -> Result<(), String> {
        let [s1, t1, s2, t2] = terminals;
        if self.l.first() != s1 || self.l.last() != t1 {
            return Err("first path has wrong endpoints".into());
        }
        if self.lprime.first() != s2 || self.lprime.last() != t2 {
            return Err("second path has wrong endpoints".into());
        }
        if !self.l.is_walk_in(g) || !self.lprime.is_walk_in(g) {
            return Err("path uses a non-edge".into());
        }
        if let Some(v) = self.l.vertices().iter().find(|&&v| self.lprime.contains(v)) {
            return Err(format!("paths share vertex {v}"));
        }
        Ok(())
    }
}

fn check_terminals(g: &Graph, t: [Vertex; 4]) -> Result<(), LinkageError> {
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| t[i] != t[j]));
    if !distinct || t.iter().any(|&v| v >= g.n()) {
        return Err(LinkageError::DuplicateTerminals);
    }
    Ok(())
}

struct Search<'a> {
    g: &'a Graph,
    t1: Vertex,
    s2: Vertex,
    t2: Vertex,
    visited: Vec<bool>,
    path: Vec<Vertex>,
    failed: HashSet<(Vertex, Vec<u64>)>,
}

impl Search<'_> {
    fn key(&self, cur: Vertex) -> (Vertex, Vec<u64>) {
        let mut bits = vec![0u64; self.visited.len().div_ceil(64)];
        for (v, _) in self.visited.iter().enumerate().filter(|(_, &b)| b) {
            bits[v / 64] |= 1 << (v % 64);
        }
        (cur, bits)
    }

    /// `t1` reachable from `cur`, and `s2`, `t2` connected, both avoiding
    /// the current prefix.
    fn feasible(&self, cur: Vertex) -> bool {
        let mut blocked = self.visited.clone();
        blocked[cur] = false;
        blocked[self.s2] = true;
        blocked[self.t2] = true;
        if self.g.bfs_path(cur, self.t1, &blocked).is_none() {
            return false;
        }
        self.g.bfs_path(self.s2, self.t2, &self.visited).is_some()
    }

    fn dfs(&mut self, cur: Vertex) -> Option<Path> {
        if cur == self.t1 {
            let tail = self.g.bfs_path(self.s2, self.t2, &self.visited)?;
            return Some(Path::new(tail).expect("bfs paths are simple"));
        }
        if !self.feasible(cur) {
            return None;
        }
        let key = self.key(cur);
        if self.failed.contains(&key) {
            return None;
        }
        for &next in self.g.neighbors(cur) {
            if self.visited[next] || next == self.s2 || next == self.t2 {
                continue;
            }
            self.visited[next] = true;
            self.path.push(next);
            if let Some(found) = self.dfs(next) {
                return Some(found);
            }
            self.path.pop();
            self.visited[next] = false;
        }
        self.failed.insert(key);
        None
    }
}

/// Vertex-disjoint paths `s1 -> t1` and `s2 -> t2`, or `None` if they do
/// not exist.
pub fn two_linkage(
    g: &Graph,
    s1: Vertex,
    t1: Vertex,
    s2: Vertex,
    t2: Vertex,
) -> Result<Option<LinkagePair>, LinkageError> {
    check_terminals(g, [s1, t1, s2, t2])?;
    let mut visited = vec![false; g.n()];
    visited[s1] = true;
    let mut search = Search {
        g,
        t1,
        s2,
        t2,
        visited,
        path: vec![s1],
        failed: HashSet::new(),
    };
    Ok(search.dfs(s1).map(|lprime| LinkagePair {
        l: Path::new(search.path.clone()).expect("dfs paths are simple"),
        lprime,
    }))
}

/// Exhaustive reference: every simple `s1 -> t1` path, and for each every
/// simple `s2 -> t2` path in what remains. No pruning, no memory.
pub fn two_linkage_oracle(
    g: &Graph,
    s1: Vertex,
    t1: Vertex,
    s2: Vertex,
    t2: Vertex,
    max_expansions: u64,
) -> Result<Option<LinkagePair>, LinkageError> {
    check_terminals(g, [s1, t1, s2, t2])?;
    let mut budget = Budget { left: max_expansions, cap: max_expansions };
    let mut used = vec![false; g.n()];
    used[s2] = true;
    used[t2] = true;
    let mut found = None;
    each_path(g, s1, t1, &mut used, &mut vec![s1], &mut budget, &mut |used, first, budget| {
        used[s2] = false;
        used[t2] = false;
        let mut second = None;
        each_path(g, s2, t2, used, &mut vec![s2], budget, &mut |_, p, _| {
            second = Some(p.to_vec());
            Ok(true)
        })?;
        used[s2] = true;
        used[t2] = true;
        if let Some(p) = second {
            found = Some(LinkagePair {
                l: Path::new(first.to_vec()).unwrap(),
                lprime: Path::new(p).unwrap(),
            });
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

struct Budget {
    left: u64,
    cap: u64,
}

type Visit<'f> = dyn FnMut(&mut Vec<bool>, &[Vertex], &mut Budget) -> Result<bool, LinkageError> + 'f;

/// Calls `visit` on each simple path from the end of `prefix` to `target`
/// avoiding `used`; stops early when `visit` returns `true`.
fn each_path(
    g: &Graph,
    cur: Vertex,
    target: Vertex,
    used: &mut Vec<bool>,
    prefix: &mut Vec<Vertex>,
    budget: &mut Budget,
    visit: &mut Visit<'_>,
) -> Result<bool, LinkageError> {
    if budget.left == 0 {
        return Err(LinkageError::BudgetExceeded(budget.cap));
    }
    budget.left -= 1;
    if cur == target {
        let snapshot = prefix.clone();
        used[cur] = true;
        let stop = visit(used, &snapshot, budget);
        used[cur] = false;
        return stop;
    }
    used[cur] = true;
    for &next in g.neighbors(cur) {
        if used[next] {
            continue;
        }
        prefix.push(next);
        let stop = each_path(g, next, target, used, prefix, budget, visit);
        prefix.pop();
        match stop {
            Ok(false) => {}
            other => {
                used[cur] = false;
                return other;
            }
        }
    }
    used[cur] = false;
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: u64 = 1_000_000;

    #[test]
    fn k4_direct_edges() {
        let g = Graph::complete(4);
        let pair = two_linkage(&g, 0, 1, 2, 3).unwrap().unwrap();
        assert_eq!(pair.l.vertices(), &[0, 1]);
        assert_eq!(pair.lprime.vertices(), &[2, 3]);
    }

    #[test]
    fn crossing_terminals_on_c4() {
        let g = Graph::cycle(4);
        assert_eq!(two_linkage(&g, 0, 2, 1, 3).unwrap(), None);
        assert_eq!(two_linkage_oracle(&g, 0, 2, 1, 3, BUDGET).unwrap(), None);
    }

    #[test]
    fn c4_with_chord_still_blocked() {
        let g = Graph::cycle(4).with_edge(0, 2);
        assert_eq!(two_linkage(&g, 0, 2, 1, 3).unwrap(), None);
        assert_eq!(two_linkage_oracle(&g, 0, 2, 1, 3, BUDGET).unwrap(), None);
    }

    #[test]
    fn k5_and_k7_found() {
        let g = Graph::complete(5);
        let pair = two_linkage_oracle(&g, 0, 1, 2, 3, BUDGET).unwrap().unwrap();
        pair.validate(&g, [0, 1, 2, 3]).unwrap();
        let g = Graph::complete(7);
        for t in [[0, 6, 1, 5], [3, 2, 6, 0]] {
            let pair = two_linkage(&g, t[0], t[1], t[2], t[3]).unwrap().unwrap();
            pair.validate(&g, t).unwrap();
        }
    }

    #[test]
    fn terminal_errors() {
        let g = Graph::complete(4);
        assert_eq!(two_linkage(&g, 0, 0, 1, 2), Err(LinkageError::DuplicateTerminals));
        assert_eq!(two_linkage(&g, 0, 1, 2, 9), Err(LinkageError::DuplicateTerminals));
        assert_eq!(two_linkage_oracle(&Graph::complete(9), 0, 1, 2, 3, 2), Err(LinkageError::BudgetExceeded(2)));
    }

    #[test]
    fn shared_cut_vertex_blocks_linkage() {
        // both pairs can only meet through 4 until 0 and 1 get their own edge
        let g = Graph::from_edges(5, [(0, 4), (4, 1), (2, 4), (4, 3)]);
        assert_eq!(two_linkage(&g, 0, 1, 2, 3).unwrap(), None);
        assert_eq!(two_linkage_oracle(&g, 0, 1, 2, 3, BUDGET).unwrap(), None);
        let g = g.with_edge(0, 1);
        let pair = two_linkage(&g, 0, 1, 2, 3).unwrap().unwrap();
        assert_eq!(pair.l.vertices(), &[0, 1]);
        assert_eq!(pair.lprime.vertices(), &[2, 4, 3]);
    }
}
