//! Randomised checks of the fast routines against slow definitional ones.

use kitelink::construct::{find_kite, FindOptions};
use kitelink::fans::{extend_fan, find_fan, max_fan_size, vertex_connectivity, Fan};
use kitelink::graph::{verify_kite_raw, Graph, RootQuadruple, Vertex};
use kitelink::harness::{gen_random_kconnected, run_trials_with, to_jsonl, GeneratorSpec, RootPolicy, TrialConfig};
use kitelink::linkage::{two_linkage, two_linkage_oracle};
use kitelink::oracle::{is_kite_linked, SearchBudget};
use kitelink::par::Execution;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.2f64..0.9, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed)))
}

/// Largest set of paths from `x` with distinct ends in `s`, interiors
/// avoiding `s` and pairwise disjoint, by trying every combination.
fn brute_fan(g: &Graph, x: Vertex, s: &[Vertex]) -> usize {
    let mut paths: Vec<Vec<Vertex>> = Vec::new();
    let mut stack = vec![vec![x]];
    while let Some(p) = stack.pop() {
        let cur = *p.last().unwrap();
        if s.contains(&cur) {
            paths.push(p);
            continue;
        }
        for &w in g.neighbors(cur) {
            if !p.contains(&w) {
                let mut q = p.clone();
                q.push(w);
                stack.push(q);
            }
        }
    }
    fn best(paths: &[Vec<Vertex>], from: usize, used: &mut Vec<bool>) -> usize {
        let mut top = 0;
        for i in from..paths.len() {
            let body = &paths[i][1..];
            if body.iter().any(|&v| used[v]) {
                continue;
            }
            body.iter().for_each(|&v| used[v] = true);
            top = top.max(1 + best(paths, i + 1, used));
            body.iter().for_each(|&v| used[v] = false);
        }
        top
    }
    best(&paths, 0, &mut vec![false; g.n()])
}

/// Smallest vertex set whose removal disconnects `g`, by enumeration.
fn brute_connectivity(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n - 1;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best || n - size < 2 {
            continue;
        }
        let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        if !g.is_connected_without(&removed) {
            best = size;
        }
    }
    best
}

/// The edge set spelled out by the two sequences, checked against the
/// shape of a rooted kite: connected, one cycle, `x2` of degree three,
/// `x4` the only leaf, `x1` and `x3` off the pendant.
fn definitional_kite(g: &Graph, r: &RootQuadruple, cycle: &[Vertex], pendant: &[Vertex]) -> bool {
    let n = g.n();
    let distinct = |s: &[Vertex]| (0..s.len()).all(|i| !s[i + 1..].contains(&s[i]));
    if cycle.len() < 3 || !distinct(cycle) || !distinct(pendant) || pendant.len() < 2 {
        return false;
    }
    if pendant[0] != r.x2 || *pendant.last().unwrap() != r.x4 {
        return false;
    }
    let mut edges: Vec<(Vertex, Vertex)> = (0..cycle.len())
        .map(|i| (cycle[i], cycle[(i + 1) % cycle.len()]))
        .chain(pendant.windows(2).map(|w| (w[0], w[1])))
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    let total = edges.len();
    edges.sort();
    edges.dedup();
    if edges.len() != total || edges.iter().any(|&(a, b)| !g.has_edge(a, b)) {
        return false;
    }
    let mut deg = vec![0; n];
    for &(a, b) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let support: Vec<Vertex> = (0..n).filter(|&v| deg[v] > 0).collect();
    if support.len() != edges.len() {
        return false;
    }
    let h = Graph::from_edges(n, edges.iter().copied());
    let off: Vec<bool> = (0..n).map(|v| deg[v] == 0).collect();
    if !h.is_connected_without(&off) {
        return false;
    }
    let shape = support.iter().all(|&v| match v {
        _ if v == r.x2 => deg[v] == 3,
        _ if v == r.x4 => deg[v] == 1,
        _ => deg[v] == 2,
    });
    shape && deg[r.x1] == 2 && deg[r.x3] == 2 && !pendant.contains(&r.x1) && !pendant.contains(&r.x3)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn fan_size_matches_brute_force(g in graph_strategy(7), x in 0usize..7, picks in prop::collection::vec(0usize..7, 1..5)) {
        let n = g.n();
        let x = x % n;
        let mut s: Vec<Vertex> = picks.iter().map(|v| v % n).filter(|&v| v != x).collect();
        s.sort();
        s.dedup();
        prop_assume!(!s.is_empty());
        let size = max_fan_size(&g, x, &s).unwrap();
        prop_assert_eq!(size, brute_fan(&g, x, &s));
        for k in 1..=s.len() {
            let fan = find_fan(&g, x, &s, k).unwrap();
            prop_assert_eq!(fan.is_some(), k <= size);
            if let Some(f) = fan {
                prop_assert_eq!(f.len(), k);
                prop_assert!(f.validate(&g, &s).is_ok());
            }
        }
    }

    #[test]
    fn connectivity_matches_cut_enumeration(g in graph_strategy(8)) {
        let cert = vertex_connectivity(&g).unwrap();
        prop_assert_eq!(cert.k, brute_connectivity(&g));
        if let Some(cut) = cert.cut {
            prop_assert_eq!(cut.len(), cert.k);
            let mut removed = vec![false; g.n()];
            cut.iter().for_each(|&v| removed[v] = true);
            prop_assert!(!g.is_connected_without(&removed));
        }
    }

    #[test]
    fn verifier_matches_definition(seed in any::<u64>(), n in 4usize..=6, cyc in 3usize..=6, pend in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(n, 0.8, &mut rng);
        let mut perm: Vec<Vertex> = (0..n).collect();
        perm.shuffle(&mut rng);
        let cyc = cyc.min(n);
        let mut cycle = perm[..cyc].to_vec();
        let mut pendant = vec![cycle[rng.gen_range(0..cyc)]];
        pendant.extend(perm[cyc..].iter().take(pend));
        if rng.gen_bool(0.2) {
            // stray repeats and overlaps
            let v = rng.gen_range(0..n);
            if rng.gen_bool(0.5) { cycle.push(v) } else { pendant.push(v) }
        }
        let mut others: Vec<Vertex> = cycle.iter().copied().filter(|&v| v != pendant[0]).collect();
        others.shuffle(&mut rng);
        let x4 = *pendant.last().unwrap();
        let mut roots = RootQuadruple::new(others[0], pendant[0], others[1], x4);
        if roots.is_err() || rng.gen_bool(0.15) {
            perm.shuffle(&mut rng);
            roots = RootQuadruple::new(perm[0], perm[1], perm[2], perm[3]);
        }
        let r = roots.unwrap();
        prop_assert_eq!(verify_kite_raw(&g, &r, &cycle, &pendant).is_ok(), definitional_kite(&g, &r, &cycle, &pendant));
    }

    #[test]
    fn linkage_matches_oracle(g in graph_strategy(8), t in prop::collection::vec(0usize..8, 4)) {
        let n = g.n();
        prop_assume!(n >= 4);
        let t: Vec<Vertex> = t.iter().map(|v| v % n).collect();
        let fast = two_linkage(&g, t[0], t[1], t[2], t[3]);
        let slow = two_linkage_oracle(&g, t[0], t[1], t[2], t[3], 50_000_000);
        prop_assert_eq!(fast.is_ok(), slow.is_ok());
        if let (Ok(fast), Ok(slow)) = (fast, slow) {
            prop_assert_eq!(fast.is_some(), slow.is_some());
            if let Some(pair) = fast {
                prop_assert!(pair.validate(&g, [t[0], t[1], t[2], t[3]]).is_ok());
            }
        }
    }

    #[test]
    fn extension_keeps_the_base(g in graph_strategy(8), x in 0usize..8, seed in any::<u64>()) {
        let n = g.n();
        let x = x % n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<Vertex> = (0..n).filter(|&v| v != x && rng.gen_bool(0.6)).collect();
        prop_assume!(!s.is_empty());
        let size = max_fan_size(&g, x, &s).unwrap();
        prop_assume!(size >= 1);
        let base_k = rng.gen_range(1..=size);
        let full = find_fan(&g, x, &s, size).unwrap().unwrap();
        let base = Fan { center: x, arms: full.arms[..base_k].to_vec() };
        for k in base_k..=s.len() {
            let ext = extend_fan(&g, x, &s, &base, k).unwrap();
            prop_assert_eq!(ext.is_some(), k <= size);
            if let Some(f) = ext {
                prop_assert!(f.validate(&g, &s).is_ok());
                let ends = f.endpoints();
                prop_assert!(base.endpoints().iter().all(|t| ends.contains(t)));
            }
        }
    }
}

#[test]
fn constructed_kites_have_kite_degrees() {
    let opts = FindOptions { shortcut: false, ..FindOptions::default() };
    for seed in 0..20 {
        let g = gen_random_kconnected(10 + (seed as usize % 5), 7, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<Vertex> = (0..g.n()).collect();
        perm.shuffle(&mut rng);
        let r = RootQuadruple::new(perm[0], perm[1], perm[2], perm[3]).unwrap();
        let kite = find_kite(&g, &r, &opts).unwrap().kite;
        let mut deg = vec![0; g.n()];
        for (a, b) in kite.cycle.edges().chain(kite.pendant.edges()) {
            deg[a] += 1;
            deg[b] += 1;
        }
        assert_eq!([deg[r.x1], deg[r.x2], deg[r.x3], deg[r.x4]], [2, 3, 2, 1]);
        assert!((0..g.n()).filter(|&v| !r.contains(v)).all(|v| deg[v] == 0 || deg[v] == 2));
    }
}

#[test]
fn kite_linkage_is_invariant_under_relabelling() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..12 {
        let n = rng.gen_range(4..=6);
        let g = random_graph(n, 0.75, &mut rng);
        let mut perm: Vec<Vertex> = (0..n).collect();
        perm.shuffle(&mut rng);
        let a = is_kite_linked(&g, SearchBudget::default()).unwrap();
        let b = is_kite_linked(&g.permuted(&perm), SearchBudget::default()).unwrap();
        assert_eq!(a.linked, b.linked);
    }
}

#[test]
fn adding_edges_never_breaks_kite_linkage() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..12 {
        let n = rng.gen_range(4..=6);
        let g = random_graph(n, 0.7, &mut rng);
        let missing: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
        let Some(&(u, v)) = missing.choose(&mut rng) else { continue };
        let before = is_kite_linked(&g, SearchBudget::default()).unwrap().linked;
        let after = is_kite_linked(&g.with_edge(u, v), SearchBudget::default()).unwrap().linked;
        assert!(!before || after);
    }
}

#[test]
fn runs_are_deterministic() {
    let mut cfg = TrialConfig::new(GeneratorSpec::RandomKConnected { n_min: 10, n_max: 13, k: 7 }, 6, RootPolicy::Sampled { per_graph: 5 }, 2024);
    cfg.shortcut = false;
    cfg.oracle_fraction = 0.2;
    let a = to_jsonl(&run_trials_with(&cfg, Execution::Parallel));
    let b = to_jsonl(&run_trials_with(&cfg, Execution::Parallel));
    let c = to_jsonl(&run_trials_with(&cfg, Execution::Sequential));
    assert_eq!(a, b);
    assert_eq!(a, c);
}
