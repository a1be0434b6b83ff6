use crate::fans::vertex_connectivity;
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no {k}-connected graph on {n} vertices found for seed {seed}")]
    GenerationExhausted { n: usize, k: usize, seed: u64 },
}

/// `K_n` without the matching `{0,1}, {2,3}, ...` of size `m`.
pub fn gen_complete_minus_matching(n: usize, m: usize) -> Result<Graph, GenError> {
    if 2 * m > n {
        return Err(GenError::PreconditionViolated(format!("a matching of size {m} needs {} vertices", 2 * m)));
    }
    let removed: Vec<_> = (0..m).map(|i| (2 * i, 2 * i + 1)).collect();
    Ok(Graph::complete(n).without_edges(&removed))
}

const TRIES_PER_DENSITY: usize = 16;

/// Samples `G(n, p)` for increasing `p` until the sample is
/// `k`-connected. The same seed always yields the same graph.
pub fn gen_random_kconnected(n: usize, k: usize, seed: u64) -> Result<Graph, GenError> {
    if n < k + 1 {
        return Err(GenError::PreconditionViolated(format!("{k}-connectivity needs at least {} vertices", k + 1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = if n > 1 { k as f64 / (n - 1) as f64 } else { 1.0 };
    let mut p = start.min(1.0);
    loop {
        for _ in 0..TRIES_PER_DENSITY {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges);
            if g.min_degree() < k {
                continue;
            }
            if vertex_connectivity(&g).map(|c| c.k >= k).unwrap_or(k == 0) {
                return Ok(g);
            }
        }
        if p >= 1.0 {
            return Err(GenError::GenerationExhausted { n, k, seed });
        }
        p = (p + 0.05).min(1.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_family() {
        let g = gen_complete_minus_matching(9, 4).unwrap();
        assert_eq!(g.m(), 32);
        assert_eq!(g.min_degree(), 7);
        assert_eq!(vertex_connectivity(&g).unwrap().k, 7);
        assert!(gen_complete_minus_matching(8, 0).unwrap().is_complete());
        assert!(matches!(gen_complete_minus_matching(5, 3), Err(GenError::PreconditionViolated(_))));
    }

    #[test]
    fn random_family() {
        let g = gen_random_kconnected(12, 7, 1).unwrap();
        assert!(vertex_connectivity(&g).unwrap().k >= 7);
        assert_eq!(g, gen_random_kconnected(12, 7, 1).unwrap());
        for seed in 0..3 {
            assert!(gen_random_kconnected(8, 7, seed).unwrap().is_complete());
        }
        assert!(matches!(gen_random_kconnected(6, 7, 0), Err(GenError::PreconditionViolated(_))));
    }
}
