//! Unit-scale max-flow used by the connectivity and fan routines.
//!
//! Augmenting paths are found by breadth-first search over arcs in
//! insertion order, so results depend only on the order in which the
//! network was built. Arcs may carry a lower bound; feasibility is
//! established through the usual auxiliary source/sink reduction before
//! any augmentation toward the real sink.

use std::collections::VecDeque;

pub(crate) const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    rev: usize,
    lower: i64,
    /// Auxiliary arcs from the lower-bound reduction are frozen once
    /// feasibility has been established.
    aux: bool,
    forward: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ArcId {
    node: usize,
    index: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
    /// Net excess demanded by lower bounds, per node.
    demand: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { arcs: vec![Vec::new(); nodes], demand: vec![0; nodes] }
    }

    pub fn add_node(&mut self) -> usize {
        self.arcs.push(Vec::new());
        self.demand.push(0);
        self.arcs.len() - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> ArcId {
        self.add_bounded_arc(from, to, 0, cap)
    }

    /// Arc whose flow must lie in `[lower, cap]`.
    pub fn add_bounded_arc(&mut self, from: usize, to: usize, lower: i64, cap: i64) -> ArcId {
        assert!(0 <= lower && lower <= cap);
        let id = self.push_pair(from, to, cap - lower, false);
        self.arcs[from][id.index].lower = lower;
        self.demand[to] += lower;
        self.demand[from] -= lower;
        id
    }

    fn push_pair(&mut self, from: usize, to: usize, cap: i64, aux: bool) -> ArcId {
        let fwd = self.arcs[from].len();
        let back = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc { to, cap, rev: back, lower: 0, aux, forward: true });
        self.arcs[to].push(Arc { to: from, cap: 0, rev: fwd, lower: 0, aux, forward: false });
        ArcId { node: from, index: fwd }
    }

    /// Flow currently carried by an arc, lower bound included.
    pub fn flow(&self, id: ArcId) -> i64 {
        let arc = &self.arcs[id.node][id.index];
        arc.lower + self.arcs[arc.to][arc.rev].cap
    }

    /// Establishes a flow meeting every lower bound, then augments from
    /// `source` to `sink` until the total reaches `limit` or no augmenting
    /// path remains. Returns `None` when the lower bounds are infeasible,
    /// otherwise the final flow value.
    pub fn bounded_max_flow(&mut self, source: usize, sink: usize, limit: i64) -> Option<i64> {
        let required: i64 = self.demand.iter().filter(|&&d| d > 0).sum();
        let mut value = 0;
        if required > 0 {
            let super_source = self.add_node();
            let super_sink = self.add_node();
            for v in 0..super_source {
                let d = self.demand[v];
                if d > 0 {
                    self.push_pair(super_source, v, d, true);
                } else if d < 0 {
                    self.push_pair(v, super_sink, -d, true);
                }
            }
            let back = self.push_pair(sink, source, INF, true);
            let moved = self.augment(super_source, super_sink, required);
            if moved < required {
                return None;
            }
            value = self.arcs[source][self.arcs[sink][back.index].rev].cap;
            self.freeze_aux();
        }
        Some(value + self.augment(source, sink, limit - value))
    }

    pub fn max_flow(&mut self, source: usize, sink: usize, limit: i64) -> i64 {
        self.bounded_max_flow(source, sink, limit).expect("no lower bounds")
    }

    fn freeze_aux(&mut self) {
        for list in self.arcs.iter_mut() {
            for arc in list.iter_mut().filter(|a| a.aux) {
                arc.cap = 0;
            }
        }
    }

    fn augment(&mut self, source: usize, sink: usize, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit {
            let Some(parent) = self.bfs(source, sink) else { break };
            let mut bottleneck = limit - total;
            let mut v = sink;
            while v != source {
                let (u, i) = parent[v];
                bottleneck = bottleneck.min(self.arcs[u][i].cap);
                v = u;
            }
            let mut v = sink;
            while v != source {
                let (u, i) = parent[v];
                let rev = self.arcs[u][i].rev;
                self.arcs[u][i].cap -= bottleneck;
                self.arcs[v][rev].cap += bottleneck;
                v = u;
            }
            total += bottleneck;
        }
        total
    }

    fn bfs(&self, source: usize, sink: usize) -> Option<Vec<(usize, usize)>> {
        let mut parent = vec![(usize::MAX, 0); self.arcs.len()];
        parent[source] = (source, 0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for (i, arc) in self.arcs[u].iter().enumerate() {
                if arc.cap > 0 && parent[arc.to].0 == usize::MAX {
                    parent[arc.to] = (u, i);
                    if arc.to == sink {
                        return Some(parent);
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        None
    }

    /// Nodes reachable from `source` in the residual network.
    pub fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for arc in &self.arcs[u] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }

    /// Heads of the original arcs out of `node` that carry positive flow,
    /// in insertion order.
    pub fn flow_successors(&self, node: usize) -> Vec<usize> {
        self.arcs[node]
            .iter()
            .enumerate()
            .filter(|(_, a)| a.forward && !a.aux)
            .filter(|&(index, _)| self.flow(ArcId { node, index }) > 0)
            .map(|(_, a)| a.to)
            .collect()
    }
}
