//! Topological-minor witnesses: a pattern graph embedded in a host with
//! pattern edges realised as internally disjoint paths.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::formula::{parse_model_name, Model};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// A subdivision of `pattern` inside some host graph. `paths[i]` realises
/// `pattern_edges[i]` and runs from the image of its first endpoint to the
/// image of its second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionWitness {
    pub pattern: String,
    pub pattern_edges: Vec<[usize; 2]>,
    pub branch_map: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

impl SubdivisionWitness {
    /// Host edges used by the witness, each as `(min, max)`.
    pub fn host_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn host_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.paths.iter().flatten().copied().collect();
        out.extend(&self.branch_map);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Renames host vertices through `map` (e.g. from a block back to the whole graph).
    pub fn relabel(&self, map: &[usize]) -> Self {
        SubdivisionWitness {
            pattern: self.pattern.clone(),
            pattern_edges: self.pattern_edges.clone(),
            branch_map: self.branch_map.iter().map(|&v| map[v]).collect(),
            paths: self.paths.iter().map(|p| p.iter().map(|&v| map[v]).collect()).collect(),
        }
    }
}

/// `K5`, `K3,3` and friends. Bipartite parts are `0..m` and `m..m+n`.
pub fn pattern_graph(name: &str) -> Option<LabeledGraph> {
    let g = match parse_model_name(name)? {
        Model::Complete(n) => LabeledGraph::complete(n),
        Model::Bipartite(m, n) => LabeledGraph::complete_bipartite(m, n),
    };
    Some(g.named(name))
}

/// Pattern vertices grouped so that swapping two members of a class is an
/// automorphism (false twins, then true twins).
fn twin_classes(p: &LabeledGraph) -> Vec<usize> {
    let n = p.vertex_count();
    let mut class: Vec<usize> = (0..n).collect();
    for u in 0..n {
        for v in 0..u {
            if class[v] != v {
                continue;
            }
            let mut nu = p.neighbor_set(u).clone();
            let mut nv = p.neighbor_set(v).clone();
            nu.remove(v);
            nv.remove(u);
            if nu == nv {
                class[u] = v;
                break;
            }
        }
    }
    class
}

struct Search<'a> {
    host: &'a LabeledGraph,
    pattern: &'a LabeledGraph,
    pedges: Vec<(usize, usize)>,
    order: Vec<usize>,
    /// For `order[i]`, the previous pattern vertex in `order` of the same twin class.
    prev_twin: Vec<Option<usize>>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    max_internal: usize,
    paths: Vec<Vec<usize>>,
    nodes: u64,
    limit: u64,
    deadline: Option<Instant>,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn new(host: &'a LabeledGraph, pattern: &'a LabeledGraph, forbidden: Option<&BitSet>) -> Self {
        let k = pattern.vertex_count();
        // degree-descending, preferring vertices tied to those already chosen
        let mut order: Vec<usize> = Vec::with_capacity(k);
        let mut chosen = vec![false; k];
        for _ in 0..k {
            let next = (0..k)
                .filter(|&v| !chosen[v])
                .max_by_key(|&v| {
                    let links = pattern.neighbors(v).filter(|&w| chosen[w]).count();
                    (pattern.degree(v), links, std::cmp::Reverse(v))
                })
                .unwrap();
            chosen[next] = true;
            order.push(next);
        }
        let class = twin_classes(pattern);
        let prev_twin = order
            .iter()
            .enumerate()
            .map(|(i, &v)| order[..i].iter().rev().copied().find(|&w| class[w] == class[v]))
            .collect();
        let mut used = vec![false; host.vertex_count()];
        if let Some(f) = forbidden {
            for v in f.iter() {
                used[v] = true;
            }
        }
        Search {
            host,
            pattern,
            pedges: pattern.edges(),
            order,
            prev_twin,
            image: vec![None; k],
            used,
            max_internal: 0,
            paths: Vec::new(),
            nodes: 0,
            limit: u64::MAX,
            deadline: None,
            exhausted: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit
            || (self.nodes % 4096 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d))
        {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn free(&self, v: usize) -> bool {
        !self.used[v]
    }

    fn assign(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return self.route_all();
        }
        let p = self.order[i];
        let need = self.pattern.degree(p);
        let floor = self.prev_twin[i].and_then(|q| self.image[q]);
        let placed: Vec<usize> = self.pattern.neighbors(p).filter_map(|w| self.image[w]).collect();
        let mut cands: Vec<(usize, usize)> = (0..self.host.vertex_count())
            .filter(|&h| self.free(h) && self.host.degree(h) >= need && floor.is_none_or(|f| h > f))
            .map(|h| (placed.iter().filter(|&&x| self.host.has_edge(h, x)).count(), h))
            .filter(|&(hits, _)| self.max_internal > 0 || hits == placed.len())
            .collect();
        cands.sort_by_key(|&(hits, h)| (std::cmp::Reverse(hits), h));
        for (_, h) in cands {
            if self.tick() {
                return false;
            }
            self.image[p] = Some(h);
            self.used[h] = true;
            if self.assign(i + 1) {
                return true;
            }
            self.used[h] = false;
            self.image[p] = None;
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn route_all(&mut self) -> bool {
        let mut pending = Vec::new();
        self.paths = vec![Vec::new(); self.pedges.len()];
        for (i, &(u, v)) in self.pedges.iter().enumerate() {
            let (a, b) = (self.image[u].unwrap(), self.image[v].unwrap());
            if self.host.has_edge(a, b) {
                self.paths[i] = vec![a, b];
            } else {
                pending.push((i, a, b));
            }
        }
        if pending.is_empty() {
            return true;
        }
        if self.max_internal == 0 {
            return false;
        }
        self.route(&pending, 0)
    }

    /// Shortest free path length (in internal vertices) from `a` to `b`.
    fn free_distance(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.host.vertex_count();
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[a] = 0;
        queue.push_back(a);
        while let Some(x) = queue.pop_front() {
            for y in self.host.neighbors(x) {
                if y == b && x != a {
                    return Some(dist[x]);
                }
                if dist[y] == usize::MAX && self.free(y) {
                    dist[y] = dist[x] + 1;
                    if dist[y] <= self.max_internal {
                        queue.push_back(y);
                    }
                }
            }
        }
        None
    }

    fn route(&mut self, pending: &[(usize, usize, usize)], k: usize) -> bool {
        if k == pending.len() {
            return true;
        }
        for &(_, a, b) in &pending[k..] {
            if self.free_distance(a, b).is_none() {
                return false;
            }
        }
        let (idx, a, b) = pending[k];
        for len in 1..=self.max_internal {
            let mut path = vec![a];
            if self.extend(pending, k, idx, b, len, &mut path) {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }

    /// Grows `path` by exactly `left` more internal vertices, then closes at `b`.
    fn extend(
        &mut self,
        pending: &[(usize, usize, usize)],
        k: usize,
        idx: usize,
        b: usize,
        left: usize,
        path: &mut Vec<usize>,
    ) -> bool {
        if self.tick() {
            return false;
        }
        let cur = *path.last().unwrap();
        if left == 0 {
            if path.len() < 2 || !self.host.has_edge(cur, b) {
                return false;
            }
            path.push(b);
            self.paths[idx] = path.clone();
            path.pop();
            return self.route(pending, k + 1);
        }
        let next: Vec<usize> = self.host.neighbors(cur).filter(|&y| self.free(y)).collect();
        for y in next {
            self.used[y] = true;
            path.push(y);
            let ok = self.extend(pending, k, idx, b, left - 1, path);
            path.pop();
            self.used[y] = false;
            if ok {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Limits for [`find_subdivision`].
#[derive(Clone, Debug, Default)]
pub struct SubdivisionOptions<'a> {
    pub nodes: Option<u64>,
    pub deadline: Option<Instant>,
    /// Host vertices the witness may not touch.
    pub forbidden: Option<&'a BitSet>,
    /// Longest path (in internal vertices) to try; unbounded when `None`.
    pub max_internal: Option<usize>,
}

/// Searches `host` for a subdivision of `pattern`, trying all-direct paths
/// first and then allowing longer paths one step at a time. `Ok(None)` means
/// the search finished without a witness (a proof of absence when
/// `max_internal` is unbounded); running out of budget is an error.
pub fn find_subdivision(
    host: &LabeledGraph,
    pattern: &LabeledGraph,
    opts: &SubdivisionOptions<'_>,
) -> Result<Option<SubdivisionWitness>> {
    let k = pattern.vertex_count();
    if k > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return Ok(None);
    }
    let mut s = Search::new(host, pattern, opts.forbidden);
    s.limit = opts.nodes.unwrap_or(u64::MAX);
    s.deadline = opts.deadline;
    let cap = host.vertex_count() - k;
    let top = opts.max_internal.map_or(cap, |m| m.min(cap));
    for depth in 0..=top {
        s.max_internal = depth;
        if s.assign(0) {
            let pedges = s.pedges.clone();
            return Ok(Some(SubdivisionWitness {
                pattern: pattern.name().to_string(),
                pattern_edges: pedges.iter().map(|&(u, v)| [u, v]).collect(),
                branch_map: s.image.iter().map(|x| x.unwrap()).collect(),
                paths: s.paths,
            }));
        }
        if s.exhausted {
            return Err(Error::BudgetExhausted);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subdivide_all(g: &LabeledGraph) -> LabeledGraph {
        let edges = g.edges();
        let n = g.vertex_count();
        let mut h = LabeledGraph::with_vertices(n + edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            h.add_edge(u, n + i);
            h.add_edge(n + i, v);
        }
        h
    }

    fn check(host: &LabeledGraph, w: &SubdivisionWitness) {
        let mut seen = vec![0usize; host.vertex_count()];
        for (e, p) in w.pattern_edges.iter().zip(&w.paths) {
            assert_eq!(p[0], w.branch_map[e[0]]);
            assert_eq!(*p.last().unwrap(), w.branch_map[e[1]]);
            for pair in p.windows(2) {
                assert!(host.has_edge(pair[0], pair[1]));
            }
            for &x in &p[1..p.len() - 1] {
                seen[x] += 1;
            }
        }
        for &b in &w.branch_map {
            assert_eq!(seen[b], 0);
        }
        assert!(seen.iter().all(|&c| c <= 1));
    }

    #[test]
    fn subdivided_k33() {
        let k33 = pattern_graph("K3,3").unwrap();
        let host = subdivide_all(&k33);
        let w = find_subdivision(&host, &k33, &Default::default()).unwrap().unwrap();
        check(&host, &w);
        assert_eq!(w.pattern, "K3,3");
    }

    #[test]
    fn cycle_has_no_k33() {
        let k33 = pattern_graph("K3,3").unwrap();
        let host = LabeledGraph::cycle(5);
        assert_eq!(find_subdivision(&host, &k33, &Default::default()).unwrap(), None);
    }

    #[test]
    fn k5_in_k6() {
        let k5 = pattern_graph("K5").unwrap();
        let host = LabeledGraph::complete(6);
        let w = find_subdivision(&host, &k5, &Default::default()).unwrap().unwrap();
        assert_eq!(w.branch_map, vec![0, 1, 2, 3, 4]);
        check(&host, &w);
    }

    #[test]
    fn planar_graph_has_no_k33() {
        // the 3-cube is planar
        let mut cube = LabeledGraph::with_vertices(8);
        for v in 0..8usize {
            for bit in [1, 2, 4] {
                cube.add_edge(v, v ^ bit);
            }
        }
        let k33 = pattern_graph("K3,3").unwrap();
        assert_eq!(find_subdivision(&cube, &k33, &Default::default()).unwrap(), None);
        let k5 = pattern_graph("K5").unwrap();
        assert_eq!(find_subdivision(&cube, &k5, &Default::default()).unwrap(), None);
    }

    #[test]
    fn budget_is_distinct_from_absence() {
        let k33 = pattern_graph("K3,3").unwrap();
        let host = subdivide_all(&LabeledGraph::complete(6));
        let opts = SubdivisionOptions { nodes: Some(3), ..Default::default() };
        assert!(matches!(find_subdivision(&host, &k33, &opts), Err(Error::BudgetExhausted)));
    }

    #[test]
    fn petersen_contains_k33() {
        let mut p = LabeledGraph::with_vertices(10);
        for i in 0..5 {
            p.add_edge(i, (i + 1) % 5);
            p.add_edge(i, i + 5);
            p.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        let k33 = pattern_graph("K3,3").unwrap();
        let w = find_subdivision(&p, &k33, &Default::default()).unwrap().unwrap();
        check(&p, &w);
    }
}
