//! Ground truth for small instances: exhaustive rooted-kite search and the
//! whole-graph kite-linkage decision.
//!
//! The search builds the four branch paths in the order `x1 -> x2`,
//! `x2 -> x3`, `x3 -> x1` and finally the pendant `x2 -> x4`, extending
//! each path depth-first and cutting any branch after which some path
//! still to be built has lost its connection in the unused vertices.

use crate::graph::{Cycle, Graph, KiteSubdivision, Path, RootQuadruple, RootsError, Vertex};
use crate::par::{self, Execution};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

pub const DEFAULT_EXPANSIONS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_expansions: u64,
    pub deterministic: bool,
}

impl SearchBudget {
    pub fn new(max_expansions: u64) -> Self {
        SearchBudget { max_expansions: max_expansions.max(1), deterministic: true }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(DEFAULT_EXPANSIONS)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget of {0} expansions exhausted")]
    BudgetExceeded(u64),
    #[error("roots: {0}")]
    Roots(#[from] RootsError),
    #[error("graph needs at least four vertices")]
    GraphTooSmall,
}

/// Depth-first rooted kite search over a restricted vertex set with a
/// configurable neighbour order.
pub(crate) struct KiteSearch<'a> {
    g: &'a Graph,
    order: Vec<Vec<Vertex>>,
    used: Vec<bool>,
    segments: [(Vertex, Vertex); 4],
    built: Vec<Vec<Vertex>>,
    left: u64,
    cap: u64,
}

impl<'a> KiteSearch<'a> {
    /// `allowed` restricts the non-root vertices the search may use;
    /// `rank` orders neighbours (ties broken by vertex id).
    pub fn new(
        g: &'a Graph,
        roots: &RootQuadruple,
        allowed: Option<&[bool]>,
        rank: Option<&[usize]>,
        max_expansions: u64,
    ) -> Self {
        let n = g.n();
        let mut used = vec![false; n];
        if let Some(mask) = allowed {
            for v in 0..n {
                used[v] = !mask[v];
            }
        }
        for r in roots.as_array() {
            used[r] = true;
        }
        let order = (0..n)
            .map(|v| {
                let mut list = g.neighbors(v).to_vec();
                if let Some(rank) = rank {
                    list.sort_by_key(|&w| (rank[w], w));
                }
                list
            })
            .collect();
        let RootQuadruple { x1, x2, x3, x4 } = *roots;
        KiteSearch {
            g,
            order,
            used,
            segments: [(x1, x2), (x2, x3), (x3, x1), (x2, x4)],
            built: Vec::with_capacity(4),
            left: max_expansions,
            cap: max_expansions,
        }
    }

    pub fn expansions(&self) -> u64 {
        self.cap - self.left
    }

    pub fn run(&mut self) -> Result<Option<KiteSubdivision>, OracleError> {
        if !self.remaining_connected(0, None) {
            return Ok(None);
        }
        let (a, _) = self.segments[0];
        let mut path = vec![a];
        if self.extend(0, &mut path)? {
            Ok(Some(self.assemble()))
        } else {
            Ok(None)
        }
    }

    fn assemble(&self) -> KiteSubdivision {
        let mut cycle = self.built[0].clone();
        cycle.extend_from_slice(&self.built[1][1..]);
        let c = &self.built[2];
        cycle.extend_from_slice(&c[1..c.len() - 1]);
        KiteSubdivision {
            cycle: Cycle::new(cycle).expect("branch paths are disjoint"),
            pendant: Path::new(self.built[3].clone()).expect("pendant is simple"),
        }
    }

    fn extend(&mut self, seg: usize, path: &mut Vec<Vertex>) -> Result<bool, OracleError> {
        if self.left == 0 {
            return Err(OracleError::BudgetExceeded(self.cap));
        }
        self.left -= 1;
        let cur = *path.last().unwrap();
        let target = self.segments[seg].1;
        if cur == target {
            self.built.push(path.clone());
            if seg == 3 {
                return Ok(true);
            }
            if self.remaining_connected(seg + 1, None) {
                let start = self.segments[seg + 1].0;
                let mut next = vec![start];
                if self.extend(seg + 1, &mut next)? {
                    return Ok(true);
                }
            }
            self.built.pop();
            return Ok(false);
        }
        if !self.remaining_connected(seg, Some(cur)) {
            return Ok(false);
        }
        for i in 0..self.order[cur].len() {
            let next = self.order[cur][i];
            if next != target && self.used[next] {
                continue;
            }
            let interior = next != target;
            if interior {
                self.used[next] = true;
            }
            path.push(next);
            let done = self.extend(seg, path);
            path.pop();
            if interior {
                self.used[next] = false;
            }
            if done? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every path from `seg` on (the current one starting at `cur`) can
    /// still reach its target through unused vertices.
    fn remaining_connected(&self, seg: usize, cur: Option<Vertex>) -> bool {
        (seg..4).all(|s| {
            let (a, b) = self.segments[s];
            let from = if s == seg { cur.unwrap_or(a) } else { a };
            self.reachable(from, b)
        })
    }

    fn reachable(&self, from: Vertex, to: Vertex) -> bool {
        if from == to {
            return true;
        }
        let mut seen = vec![false; self.g.n()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &w in self.g.neighbors(v) {
                if w == to {
                    return true;
                }
                if !seen[w] && !self.used[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

/// Searches for a kite rooted at `roots`; returns the lexicographically
/// least solution (branch paths compared in build order).
pub fn find_kite_exhaustive(
    g: &Graph,
    roots: &RootQuadruple,
    budget: SearchBudget,
) -> Result<Option<KiteSubdivision>, OracleError> {
    roots.check_in(g)?;
    KiteSearch::new(g, roots, None, None, budget.max_expansions).run()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkedVerdict {
    pub linked: bool,
    /// First failing assignment in enumeration order.
    pub witness: Option<RootQuadruple>,
    /// Assignments examined: n(n-1)(n-2)(n-3)/2, one per `x1 < x3` pair.
    pub assignments: usize,
}

/// All root assignments with `x1 < x3`, lexicographic in `(x1, x2, x3, x4)`.
pub fn root_assignments(n: usize) -> Vec<RootQuadruple> {
    let mut out = Vec::new();
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in x1 + 1..n {
                for x4 in 0..n {
                    if let Ok(r) = RootQuadruple::new(x1, x2, x3, x4) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

/// Decides whether every injection of the kite into `g` is realised.
/// Swapping `x1` and `x3` maps kites to kites, so only `x1 < x3` is tried.
pub fn is_kite_linked(g: &Graph, budget: SearchBudget) -> Result<LinkedVerdict, OracleError> {
    is_kite_linked_with(g, budget, Execution::default())
}

pub fn is_kite_linked_with(
    g: &Graph,
    budget: SearchBudget,
    exec: Execution,
) -> Result<LinkedVerdict, OracleError> {
    if g.n() < 4 {
        return Err(OracleError::GraphTooSmall);
    }
    let all = root_assignments(g.n());
    let failure = par::find_first_indexed(exec, all.len(), |i| {
        match find_kite_exhaustive(g, &all[i], budget) {
            Ok(Some(_)) => None,
            Ok(None) => Some(Ok(all[i])),
            Err(e) => Some(Err(e)),
        }
    });
    match failure {
        None => Ok(LinkedVerdict { linked: true, witness: None, assignments: all.len() }),
        Some((_, Ok(r))) => Ok(LinkedVerdict { linked: false, witness: Some(r), assignments: all.len() }),
        Some((_, Err(e))) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_kite;

    fn roots(a: [usize; 4]) -> RootQuadruple {
        RootQuadruple::try_from(a).unwrap()
    }

    #[test]
    fn k4_kite() {
        let g = Graph::complete(4);
        let k = find_kite_exhaustive(&g, &roots([0, 1, 2, 3]), SearchBudget::default()).unwrap().unwrap();
        assert_eq!(k.cycle.vertices(), &[0, 1, 2]);
        assert_eq!(k.pendant.vertices(), &[1, 3]);
    }

    #[test]
    fn c5_has_none() {
        let g = Graph::cycle(5);
        for r in root_assignments(5) {
            assert_eq!(find_kite_exhaustive(&g, &r, SearchBudget::default()).unwrap(), None);
        }
    }

    #[test]
    fn k4_minus_edge() {
        let g = Graph::complete(4).without_edges(&[(1, 3)]);
        assert_eq!(find_kite_exhaustive(&g, &roots([0, 1, 2, 3]), SearchBudget::default()).unwrap(), None);
    }

    #[test]
    fn linked_verdicts() {
        let v = is_kite_linked(&Graph::complete(4), SearchBudget::default()).unwrap();
        assert!(v.linked);
        assert_eq!(v.assignments, 12);
        let v = is_kite_linked(&Graph::cycle(5), SearchBudget::default()).unwrap();
        assert!(!v.linked && v.witness.is_some());
        let v = is_kite_linked(&Graph::complete(4).without_edges(&[(1, 3)]), SearchBudget::default()).unwrap();
        assert!(!v.linked);
        assert_eq!(is_kite_linked(&Graph::complete(3), SearchBudget::default()), Err(OracleError::GraphTooSmall));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::complete(8);
        assert_eq!(
            find_kite_exhaustive(&g, &roots([0, 1, 2, 3]), SearchBudget::new(2)),
            Err(OracleError::BudgetExceeded(2))
        );
    }

    #[test]
    fn restricted_search_respects_mask() {
        let g = Graph::complete(6).without_edges(&[(1, 3)]);
        let r = roots([0, 1, 2, 3]);
        let mut allowed = vec![true; 6];
        allowed[4] = false;
        allowed[5] = false;
        let mut s = KiteSearch::new(&g, &r, Some(&allowed), None, 1000);
        assert_eq!(s.run().unwrap(), None);
        let k = find_kite_exhaustive(&g, &r, SearchBudget::default()).unwrap().unwrap();
        verify_kite(&g, &r, &k).unwrap();
        assert_eq!(k.pendant.vertices(), &[1, 4, 3]);
    }
}
