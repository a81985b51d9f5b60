//! Euler bounds on contraction minors. Genus never increases under edge
//! contraction, so the Euler bound of any minor is a lower bound for the
//! original graph, and contracting edges that lie on few triangles can raise
//! that bound well above the one for the graph itself.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::blocks::{euler_bound_from, girth};
use super::Budget;
use crate::bitset::BitSet;
use crate::graph::LabeledGraph;

/// A sequence of contractions and the Euler bound of the resulting minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMinor {
    /// Pairs of surviving representatives, merged in order (the second into the first).
    pub contractions: Vec<(usize, usize)>,
    pub girth: Option<usize>,
    pub bound: usize,
}

/// Applies `contractions` to `g`; `None` if some pair is not adjacent at its turn.
pub fn contract(g: &LabeledGraph, contractions: &[(usize, usize)]) -> Option<LabeledGraph> {
    let n = g.vertex_count();
    let mut adj: Vec<BitSet> = (0..n).map(|v| g.neighbor_set(v).clone()).collect();
    let mut alive = vec![true; n];
    for &(u, v) in contractions {
        if u == v || !alive[u] || !alive[v] || !adj[u].contains(v) {
            return None;
        }
        merge(&mut adj, &mut alive, u, v);
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let mut m = LabeledGraph::with_vertices(keep.len());
    for &u in &keep {
        for w in adj[u].iter() {
            if u < w {
                m.add_edge(index[u], index[w]);
            }
        }
    }
    Some(m)
}

fn merge(adj: &mut [BitSet], alive: &mut [bool], u: usize, v: usize) {
    let nv = adj[v].clone();
    for w in nv.iter() {
        adj[w].remove(v);
        if w != u {
            adj[w].insert(u);
        }
    }
    adj[u].union_with(&nv);
    adj[u].remove(u);
    adj[u].remove(v);
    adj[v] = BitSet::new(adj.len());
    alive[v] = false;
}

/// Randomised greedy contraction search on a connected graph. Returns the
/// best minor whose bound exceeds the graph's own Euler bound, stopping
/// early once `target` is reached.
pub fn best_contraction_minor(g: &LabeledGraph, target: usize, budget: &Budget) -> Option<ContractionMinor> {
    let n = g.vertex_count();
    if n < 6 || !g.is_connected() {
        return None;
    }
    let base = euler_bound_from(n, g.edge_count(), girth(g));
    let deadline = budget.deadline();
    let mut best: Option<ContractionMinor> = None;
    let mut spent = 0u64;
    let restarts = 4000u64;
    for restart in 0..restarts {
        if spent >= budget.nodes || deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ (restart << 20) ^ 0x6d696e6f72);
        let mut adj: Vec<BitSet> = (0..n).map(|v| g.neighbor_set(v).clone()).collect();
        let mut alive = vec![true; n];
        let mut vcount = n;
        let mut steps = Vec::new();
        while vcount > 5 {
            let mut cands: Vec<(usize, usize, usize)> = Vec::new();
            for u in (0..n).filter(|&u| alive[u]) {
                for w in adj[u].iter().filter(|&w| w > u) {
                    cands.push((adj[u].intersection_count(&adj[w]), u, w));
                }
            }
            spent += cands.len() as u64;
            if cands.is_empty() {
                break;
            }
            let pick = if rng.gen_bool(0.15) {
                *cands.choose(&mut rng).unwrap()
            } else {
                let low = cands.iter().map(|c| c.0).min().unwrap();
                let pool: Vec<_> = cands.into_iter().filter(|c| c.0 == low).collect();
                *pool.choose(&mut rng).unwrap()
            };
            let (_, u, w) = pick;
            merge(&mut adj, &mut alive, u, w);
            vcount -= 1;
            steps.push((u, w));
            let m = contract(g, &steps).expect("contractions replay");
            let gi = girth(&m);
            spent += (m.vertex_count() * m.edge_count()) as u64;
            let bound = euler_bound_from(m.vertex_count(), m.edge_count(), gi);
            if bound > base && best.as_ref().is_none_or(|b| bound > b.bound) {
                best = Some(ContractionMinor { contractions: steps.clone(), girth: gi, bound });
                if bound >= target {
                    return best;
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_replays() {
        let g = LabeledGraph::cycle(5);
        let m = contract(&g, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(m.vertex_count(), 3);
        assert_eq!(m.edge_count(), 3);
        assert!(contract(&g, &[(0, 2)]).is_none());
    }

    #[test]
    fn minor_beats_plain_euler_on_truncated_k33() {
        // K3,3 with vertex 0 replaced by a triangle 0, 6, 7
        let mut h = LabeledGraph::with_vertices(8);
        for (u, v) in [(0, 3), (6, 4), (7, 5), (0, 6), (6, 7), (7, 0)] {
            h.add_edge(u, v);
        }
        for a in 1..3 {
            for b in 3..6 {
                h.add_edge(a, b);
            }
        }
        assert_eq!(euler_bound_from(8, h.edge_count(), girth(&h)), 0);
        let found = best_contraction_minor(&h, 1, &Budget::default()).unwrap();
        assert_eq!(found.bound, 1);
        let m = contract(&h, &found.contractions).unwrap();
        assert_eq!(euler_bound_from(m.vertex_count(), m.edge_count(), girth(&m)), 1);
    }
}
