//! Biconnected components, girth, and the Euler-formula genus bound.

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// A maximal biconnected subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    /// Edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

/// Biconnected decomposition (Hopcroft–Tarjan with an explicit edge stack).
/// Every edge lies in exactly one block; isolated vertices form no block.
pub fn blocks(g: &LabeledGraph) -> Vec<Block> {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX || adj[root].is_empty() {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut edges = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            edges.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (u, v) {
                                break;
                            }
                        }
                        edges.sort_unstable();
                        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                        vertices.sort_unstable();
                        vertices.dedup();
                        out.push(Block { vertices, edges });
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

/// Length of a shortest cycle, or `None` for a forest.
pub fn girth(g: &LabeledGraph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        dist.fill(usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Euler bound for a connected graph with girth `girth`:
/// every face has at least `girth` sides, so `g >= ceil((E(γ-2)/γ - V + 2) / 2)`.
pub fn euler_bound_from(vertices: usize, edges: usize, girth: Option<usize>) -> usize {
    let Some(gamma) = girth else { return 0 };
    let num = (edges * (gamma - 2)) as i64 - (gamma * vertices) as i64 + 2 * gamma as i64;
    if num <= 0 {
        0
    } else {
        (num as usize).div_ceil(2 * gamma)
    }
}

/// Euler-formula lower bound on the genus of a connected graph.
pub fn euler_lower_bound(g: &LabeledGraph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(euler_bound_from(g.vertex_count(), g.edge_count(), girth(g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_has_two_blocks() {
        let bs = blocks(&LabeledGraph::path(3));
        assert_eq!(bs.len(), 2);
        assert_eq!(bs[0].vertices, vec![0, 1]);
        assert_eq!(bs[1].vertices, vec![1, 2]);
    }

    #[test]
    fn cycle_is_one_block() {
        let bs = blocks(&LabeledGraph::cycle(6));
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].edges.len(), 6);
    }

    #[test]
    fn two_k33_at_a_cut_vertex() {
        let mut g = LabeledGraph::with_vertices(11);
        for a in 0..3 {
            for b in 3..6 {
                g.add_edge(a, b);
            }
        }
        // second copy on {0, 6..11}, sharing vertex 0
        let second = [0, 6, 7, 8, 9, 10];
        for a in 0..3 {
            for b in 3..6 {
                g.add_edge(second[a], second[b]);
            }
        }
        let bs = blocks(&g);
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|b| b.edges.len() == 9));
        assert!(bs.iter().all(|b| b.vertices.contains(&0)));
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&LabeledGraph::complete_bipartite(3, 3)), Some(4));
        assert_eq!(girth(&LabeledGraph::complete(5)), Some(3));
        assert_eq!(girth(&LabeledGraph::path(5)), None);
        assert_eq!(girth(&LabeledGraph::cycle(7)), Some(7));
    }

    #[test]
    fn euler_bounds() {
        assert_eq!(euler_lower_bound(&LabeledGraph::complete(5)).unwrap(), 1);
        assert_eq!(euler_lower_bound(&LabeledGraph::complete_bipartite(3, 3)).unwrap(), 1);
        assert_eq!(euler_lower_bound(&LabeledGraph::complete_bipartite(5, 5)).unwrap(), 3);
        assert_eq!(euler_lower_bound(&LabeledGraph::path(4)).unwrap(), 0);
        assert!(euler_lower_bound(&LabeledGraph::with_vertices(2)).is_err());
    }
}
