//! Vertex connectivity and Menger fans, computed by max-flow on the
//! vertex-split network: every internal vertex `v` becomes `v_in -> v_out`
//! with capacity one.

use crate::flow::{FlowNetwork, INF};
use crate::graph::{Graph, Path, RootQuadruple, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("graph needs at least two vertices")]
    GraphTooSmall,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid base fan: {0}")]
    InvalidBaseFan(String),
}

/// Internally disjoint paths from `center` to distinct vertices of a
/// target set, each meeting the set only at its last vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub center: Vertex,
    pub arms: Vec<Path>,
}

impl Fan {
    pub fn endpoints(&self) -> Vec<Vertex> {
        self.arms.iter().map(Path::last).collect()
    }

    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }

    /// Checks every fan invariant against `g` and the target set.
    pub fn validate(&self, g: &Graph, targets: &[Vertex]) -> Result<(), String> {
        let n = g.n();
        let mut in_target = vec![false; n];
        for &t in targets {
            if t >= n {
                return Err(format!("target {t} out of range"));
            }
            in_target[t] = true;
        }
        if self.center >= n || in_target[self.center] {
            return Err(format!("center {} must be a vertex outside the target set", self.center));
        }
        let mut used = vec![false; n];
        for arm in &self.arms {
            if arm.first() != self.center {
                return Err(format!("arm {:?} does not start at the center", arm.vertices()));
            }
            if arm.is_empty() {
                return Err("arm has no edges".into());
            }
            if !arm.is_walk_in(g) {
                return Err(format!("arm {:?} uses a non-edge", arm.vertices()));
            }
            for (i, &v) in arm.vertices().iter().enumerate().skip(1) {
                let last = i == arm.len();
                if in_target[v] != last {
                    return Err(format!("arm {:?} meets the target set off its end", arm.vertices()));
                }
                if std::mem::replace(&mut used[v], true) {
                    return Err(format!("vertex {v} shared by two arms"));
                }
            }
        }
        Ok(())
    }
}

/// Vertex connectivity with a witnessing minimum separator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub k: usize,
    /// Absent exactly when the graph is complete.
    pub cut: Option<Vec<Vertex>>,
}

/// The seven arms out of `x2`: three to `x1`, three to `x3`, one to `x4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalFan {
    pub hub: Vertex,
    pub q: [Path; 3],
    pub r: [Path; 3],
    pub s: Path,
}

impl TerminalFan {
    pub fn arms(&self) -> impl Iterator<Item = &Path> {
        self.q.iter().chain(self.r.iter()).chain(std::iter::once(&self.s))
    }

    /// Vertices of `Q ∪ R`, sorted.
    pub fn qr_vertices(&self) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self
            .q
            .iter()
            .chain(self.r.iter())
            .flat_map(|p| p.vertices().iter().copied())
            .collect();
        set.into_iter().collect()
    }

    pub fn validate(&self, g: &Graph, roots: &RootQuadruple) -> Result<(), String> {
        if self.hub != roots.x2 {
            return Err("hub is not x2".into());
        }
        let ends = [(roots.x1, &self.q[..]), (roots.x3, &self.r[..]), (roots.x4, std::slice::from_ref(&self.s))];
        for (end, arms) in ends {
            if arms.iter().any(|a| a.first() != self.hub || a.last() != end || !a.is_walk_in(g)) {
                return Err(format!("arm toward {end} malformed"));
            }
        }
        let mut used = vec![false; g.n()];
        used[self.hub] = true;
        for arm in self.arms() {
            for &v in arm.interior() {
                if roots.contains(v) || std::mem::replace(&mut used[v], true) {
                    return Err(format!("arms overlap at {v}"));
                }
            }
        }
        Ok(())
    }
}

/// Node layout of a vertex-split network: `v_in = 2v`, `v_out = 2v + 1`,
/// and one extra sink node.
struct Split {
    net: FlowNetwork,
    sink: usize,
}

fn v_in(v: Vertex) -> usize {
    2 * v
}

fn v_out(v: Vertex) -> usize {
    2 * v + 1
}

impl Split {
    fn new(n: usize) -> Self {
        Split { net: FlowNetwork::new(2 * n + 1), sink: 2 * n }
    }

    /// Follows flow from `start` out of `center` until it reaches a vertex
    /// whose in-node feeds the sink directly.
    fn trace(&self, center: Vertex, first: Vertex, stops: &[bool]) -> Path {
        let mut vertices = vec![center, first];
        let mut cur = first;
        while !stops[cur] {
            let next = self.net.flow_successors(v_out(cur));
            debug_assert_eq!(next.len(), 1);
            cur = next[0] / 2;
            vertices.push(cur);
        }
        Path::new(vertices).expect("flow paths are simple")
    }

    fn arms_from(&self, center: Vertex, stops: &[bool]) -> Vec<Path> {
        self.net
            .flow_successors(v_out(center))
            .into_iter()
            .map(|node| self.trace(center, node / 2, stops))
            .collect()
    }
}

/// Builds the fan network: `x` emits, target vertices absorb into the sink,
/// everything else passes one unit through.
fn fan_network(g: &Graph, x: Vertex, in_target: &[bool], lower: &[bool]) -> Split {
    let n = g.n();
    let mut split = Split::new(n);
    for v in 0..n {
        if v == x {
            continue;
        }
        if in_target[v] {
            let lo = i64::from(lower[v]);
            split.net.add_bounded_arc(v_in(v), split.sink, lo, 1);
        } else {
            split.net.add_arc(v_in(v), v_out(v), 1);
        }
    }
    for u in (0..n).filter(|&u| u == x || !in_target[u]) {
        for &w in g.neighbors(u) {
            if w != x {
                split.net.add_arc(v_out(u), v_in(w), 1);
            }
        }
    }
    split
}

fn target_mask(g: &Graph, x: Vertex, s: &[Vertex], k: usize) -> Result<Vec<bool>, FanError> {
    let n = g.n();
    if x >= n {
        return Err(FanError::PreconditionViolated(format!("center {x} out of range")));
    }
    let mut mask = vec![false; n];
    for &v in s {
        if v >= n {
            return Err(FanError::PreconditionViolated(format!("target {v} out of range")));
        }
        mask[v] = true;
    }
    if mask[x] {
        return Err(FanError::PreconditionViolated("center lies in the target set".into()));
    }
    let size = mask.iter().filter(|&&b| b).count();
    if k == 0 || size < k {
        return Err(FanError::PreconditionViolated(format!(
            "need 1 <= k <= |S|, got k = {k}, |S| = {size}"
        )));
    }
    Ok(mask)
}

fn sort_arms(arms: &mut [Path]) {
    arms.sort_by(|a, b| (a.last(), a.vertices()).cmp(&(b.last(), b.vertices())));
}

/// A `k`-fan from `x` into `s`, or `None` when none exists.
pub fn find_fan(g: &Graph, x: Vertex, s: &[Vertex], k: usize) -> Result<Option<Fan>, FanError> {
    let mask = target_mask(g, x, s, k)?;
    let mut split = fan_network(g, x, &mask, &vec![false; g.n()]);
    let sink = split.sink;
    if split.net.max_flow(v_out(x), sink, k as i64) < k as i64 {
        return Ok(None);
    }
    let mut arms = split.arms_from(x, &mask);
    sort_arms(&mut arms);
    Ok(Some(Fan { center: x, arms }))
}

/// Size of the largest fan from `x` into `s`.
pub fn max_fan_size(g: &Graph, x: Vertex, s: &[Vertex]) -> Result<usize, FanError> {
    let mask = target_mask(g, x, s, 1)?;
    let mut split = fan_network(g, x, &mask, &vec![false; g.n()]);
    let sink = split.sink;
    Ok(split.net.max_flow(v_out(x), sink, INF) as usize)
}

/// Extends `base` to a `k`-fan into `s` whose endpoints include every
/// endpoint of `base`. Arm interiors may be rerouted. `None` means no
/// `k`-fan into `s` exists at all.
pub fn extend_fan(
    g: &Graph,
    x: Vertex,
    s: &[Vertex],
    base: &Fan,
    k: usize,
) -> Result<Option<Fan>, FanError> {
    let mask = target_mask(g, x, s, k)?;
    if base.center != x {
        return Err(FanError::InvalidBaseFan("center differs from x".into()));
    }
    if base.len() > k {
        return Err(FanError::InvalidBaseFan(format!("{} arms exceed k = {k}", base.len())));
    }
    base.validate(g, s).map_err(FanError::InvalidBaseFan)?;
    let mut keep = vec![false; g.n()];
    for t in base.endpoints() {
        keep[t] = true;
    }
    let mut split = fan_network(g, x, &mask, &keep);
    let sink = split.sink;
    let value = split
        .net
        .bounded_max_flow(v_out(x), sink, k as i64)
        .ok_or_else(|| FanError::InvalidBaseFan("base endpoints cannot be routed".into()))?;
    if value < k as i64 {
        return Ok(None);
    }
    let mut arms = split.arms_from(x, &mask);
    sort_arms(&mut arms);
    Ok(Some(Fan { center: x, arms }))
}

/// Seven internally disjoint paths from `x2`: three ending at `x1`, three
/// at `x3` and one at `x4`.
pub fn terminal_fan(g: &Graph, roots: &RootQuadruple) -> Option<TerminalFan> {
    let RootQuadruple { x1, x2, x3, x4 } = *roots;
    let n = g.n();
    let mut split = Split::new(n);
    let stops: Vec<bool> = (0..n).map(|v| v == x1 || v == x3 || v == x4).collect();
    for v in 0..n {
        match v {
            _ if v == x2 => {}
            _ if v == x1 || v == x3 => {
                split.net.add_arc(v_in(v), split.sink, 3);
            }
            _ if v == x4 => {
                split.net.add_arc(v_in(v), split.sink, 1);
            }
            _ => {
                split.net.add_arc(v_in(v), v_out(v), 1);
            }
        }
    }
    for u in (0..n).filter(|&u| !stops[u]) {
        for &w in g.neighbors(u) {
            if w != x2 {
                split.net.add_arc(v_out(u), v_in(w), 1);
            }
        }
    }
    let sink = split.sink;
    if split.net.max_flow(v_out(x2), sink, 7) < 7 {
        return None;
    }
    let arms = split.arms_from(x2, &stops);
    let mut q: Vec<Path> = arms.iter().filter(|a| a.last() == x1).cloned().collect();
    let mut r: Vec<Path> = arms.iter().filter(|a| a.last() == x3).cloned().collect();
    let s = arms.iter().find(|a| a.last() == x4).cloned()?;
    q.sort();
    r.sort();
    Some(TerminalFan { hub: x2, q: q.try_into().ok()?, r: r.try_into().ok()?, s })
}

/// Minimum number of vertices separating non-adjacent `a` and `b`, capped
/// at `limit`, with the separator when the cap was not reached.
fn local_cut(g: &Graph, a: Vertex, b: Vertex, limit: usize) -> (usize, Option<Vec<Vertex>>) {
    let n = g.n();
    let mut split = Split::new(n);
    for v in 0..n {
        if v != a && v != b {
            split.net.add_arc(v_in(v), v_out(v), 1);
        }
    }
    for u in 0..n {
        for &w in g.neighbors(u) {
            split.net.add_arc(v_out(u), v_in(w), INF);
        }
    }
    let value = split.net.max_flow(v_out(a), v_in(b), limit as i64) as usize;
    if value >= limit {
        return (value, None);
    }
    let reach = split.net.residual_reachable(v_out(a));
    let cut = (0..n)
        .filter(|&v| v != a && v != b && reach[v_in(v)] && !reach[v_out(v)])
        .collect();
    (value, Some(cut))
}

/// Exact vertex connectivity. Pairs `(v_i, v_j)` with `i` up to the
/// current bound and `j > i` are enough: the lowest-indexed vertex outside
/// a minimum separator has index at most κ.
pub fn vertex_connectivity(g: &Graph) -> Result<CutCertificate, FanError> {
    let n = g.n();
    if n < 2 {
        return Err(FanError::GraphTooSmall);
    }
    if g.is_complete() {
        return Ok(CutCertificate { k: n - 1, cut: None });
    }
    let v_min = (0..n).min_by_key(|&v| g.degree(v)).unwrap();
    let mut best = g.degree(v_min);
    let mut cut = g.neighbors(v_min).to_vec();
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            if let (k, Some(c)) = local_cut(g, i, j, best) {
                best = k;
                cut = c;
            }
        }
        i += 1;
    }
    cut.sort_unstable();
    Ok(CutCertificate { k: best, cut: Some(cut) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arms(f: &Fan) -> Vec<Vec<usize>> {
        f.arms.iter().map(|a| a.vertices().to_vec()).collect()
    }

    #[test]
    fn connectivity_small_families() {
        assert_eq!(vertex_connectivity(&Graph::complete(8)).unwrap(), CutCertificate { k: 7, cut: None });
        let c5 = vertex_connectivity(&Graph::cycle(5)).unwrap();
        assert_eq!(c5.k, 2);
        let cut = c5.cut.unwrap();
        let mut removed = vec![false; 5];
        cut.iter().for_each(|&v| removed[v] = true);
        assert!(!Graph::cycle(5).is_connected_without(&removed));
        assert_eq!(vertex_connectivity(&Graph::empty(1)), Err(FanError::GraphTooSmall));
        assert_eq!(vertex_connectivity(&Graph::empty(3)).unwrap().k, 0);
    }

    #[test]
    fn fan_examples() {
        let f = find_fan(&Graph::complete(5), 0, &[1, 2, 3], 3).unwrap().unwrap();
        assert_eq!(arms(&f), vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
        assert_eq!(find_fan(&Graph::path_graph(3), 0, &[1, 2], 2).unwrap(), None);
        let f = find_fan(&Graph::cycle(4), 0, &[1, 3], 2).unwrap().unwrap();
        assert_eq!(arms(&f), vec![vec![0, 1], vec![0, 3]]);
    }

    #[test]
    fn fan_preconditions() {
        let g = Graph::complete(4);
        assert!(matches!(find_fan(&g, 0, &[0, 1], 1), Err(FanError::PreconditionViolated(_))));
        assert!(matches!(find_fan(&g, 0, &[1], 2), Err(FanError::PreconditionViolated(_))));
        assert!(matches!(find_fan(&g, 0, &[1], 0), Err(FanError::PreconditionViolated(_))));
    }

    #[test]
    fn extend_in_k6_keeps_base_endpoint() {
        let g = Graph::complete(6);
        let s = [1, 2, 3, 4, 5];
        let base = Fan { center: 0, arms: vec![Path::new(vec![0, 1]).unwrap()] };
        let f = extend_fan(&g, 0, &s, &base, 3).unwrap().unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.endpoints().contains(&1));
        f.validate(&g, &s).unwrap();
    }

    #[test]
    fn extend_reroutes_to_keep_endpoint() {
        // 0 reaches 3 only through 1 or 2; S = {1, 3}. Base arm [0, 2, 3]
        // keeps 3, and a 2-fan must then also use 1.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (2, 3), (1, 3)]);
        let base = Fan { center: 0, arms: vec![Path::new(vec![0, 2, 3]).unwrap()] };
        let f = extend_fan(&g, 0, &[1, 3], &base, 2).unwrap().unwrap();
        assert_eq!(arms(&f), vec![vec![0, 1], vec![0, 2, 3]]);
    }

    #[test]
    fn extend_not_found_and_invalid_base() {
        let g = Graph::path_graph(3);
        let base = Fan { center: 0, arms: vec![Path::new(vec![0, 1]).unwrap()] };
        assert_eq!(extend_fan(&g, 0, &[1, 2], &base, 2).unwrap(), None);
        let bad = Fan { center: 0, arms: vec![Path::new(vec![0, 1, 2]).unwrap()] };
        assert!(matches!(extend_fan(&g, 0, &[1, 2], &bad, 2), Err(FanError::InvalidBaseFan(_))));
        let wrong_center = Fan { center: 1, arms: vec![] };
        assert!(matches!(
            extend_fan(&g, 0, &[1, 2], &wrong_center, 1),
            Err(FanError::InvalidBaseFan(_))
        ));
    }

    #[test]
    fn terminal_fan_in_k8() {
        let g = Graph::complete(8);
        let roots = RootQuadruple::new(1, 0, 2, 3).unwrap();
        let tf = terminal_fan(&g, &roots).unwrap();
        tf.validate(&g, &roots).unwrap();
        assert_eq!(tf.s.vertices(), &[0, 3]);
    }

    #[test]
    fn terminal_fan_needs_degree_seven() {
        let g = Graph::complete(7);
        assert_eq!(terminal_fan(&g, &RootQuadruple::new(1, 0, 2, 3).unwrap()), None);
    }

    #[test]
    fn terminal_fan_routes_around_missing_edge() {
        // K9 minus the matching {0,1},{2,3},{4,5},{6,7}; x2 = 0, x1 = 1
        let g = Graph::complete(9).without_edges(&[(0, 1), (2, 3), (4, 5), (6, 7)]);
        let roots = RootQuadruple::new(1, 0, 2, 3).unwrap();
        let tf = terminal_fan(&g, &roots).unwrap();
        tf.validate(&g, &roots).unwrap();
        assert!(tf.q.iter().all(|p| p.len() >= 2));
    }
}
