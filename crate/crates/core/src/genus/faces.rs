//! Exhaustive embedding search that builds faces one at a time.
//!
//! Rotation successors are chosen lazily while a face is being walked. A
//! target face count `F` allows a total "excess" of `2E - 3F` over all-triangle
//! faces, and any partial assignment whose closed faces already exceed it is
//! abandoned. Proving that no embedding reaches `F` faces proves a genus lower
//! bound.

use std::time::Instant;

use super::rotation::RotationSystem;
use crate::graph::LabeledGraph;

/// Result of [`max_faces_at_least`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceSearch {
    /// An embedding with at least the requested number of faces.
    Found(RotationSystem),
    /// No such embedding exists.
    Impossible,
    /// The node limit or deadline was hit first.
    Unknown,
}

const NONE: usize = usize::MAX;

struct State<'a> {
    g: &'a LabeledGraph,
    n: usize,
    succ: Vec<usize>,
    pred: Vec<usize>,
    /// For a chain of fixed successors at `v` starting at `u`, `tail[v*n+u]` is its last element (and vice versa).
    head: Vec<usize>,
    tail: Vec<usize>,
    set_at: Vec<usize>,
    used: Vec<bool>,
    darts: Vec<(usize, usize)>,
    unused: usize,
    allowed: usize,
    excess: usize,
    faces: usize,
    target: usize,
    nodes: u64,
    limit: u64,
    deadline: Option<Instant>,
    aborted: bool,
    found: Option<Vec<usize>>,
}

impl<'a> State<'a> {
    #[inline]
    fn idx(&self, v: usize, u: usize) -> usize {
        v * self.n + u
    }

    /// Whether successor `w` may follow `u` at `v` without closing a short cycle.
    fn can_link(&self, v: usize, u: usize, w: usize) -> bool {
        let (iu, iw) = (self.idx(v, u), self.idx(v, w));
        if self.succ[iu] != NONE || self.pred[iw] != NONE {
            return false;
        }
        if u == w {
            return self.g.degree(v) == 1;
        }
        // u ends a chain starting at head[iu]; w starts a chain ending at tail[iw]
        if self.tail[iw] == u {
            // closing the cycle is fine only if it covers every neighbour
            return self.set_at[v] + 1 == self.g.degree(v);
        }
        true
    }

    fn link(&mut self, v: usize, u: usize, w: usize) -> (usize, usize) {
        let (iu, iw) = (self.idx(v, u), self.idx(v, w));
        self.succ[iu] = w;
        self.pred[iw] = u;
        self.set_at[v] += 1;
        let h = self.head[iu];
        let t = self.tail[iw];
        let (ih, it) = (self.idx(v, h), self.idx(v, t));
        let saved = (self.tail[ih], self.head[it]);
        self.tail[ih] = t;
        self.head[it] = h;
        saved
    }

    fn unlink(&mut self, v: usize, u: usize, w: usize, saved: (usize, usize)) {
        let (iu, iw) = (self.idx(v, u), self.idx(v, w));
        let h = self.head[iu];
        let t = self.tail[iw];
        let (ih, it) = (self.idx(v, h), self.idx(v, t));
        self.tail[ih] = saved.0;
        self.head[it] = saved.1;
        self.succ[iu] = NONE;
        self.pred[iw] = NONE;
        self.set_at[v] -= 1;
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit || (self.nodes % 8192 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d)) {
            self.aborted = true;
        }
        self.aborted
    }

    /// Starts a new face at the first unused dart, or reports success.
    fn next_face(&mut self) -> bool {
        if self.unused == 0 {
            if self.faces >= self.target {
                self.found = Some(self.succ.clone());
                return true;
            }
            return false;
        }
        // remaining darts can hold at most unused/3 more faces
        if self.faces + self.unused / 3 < self.target {
            return false;
        }
        // most constrained dart first: its successor is fixed or has fewest options
        let (a, b) = self
            .darts
            .iter()
            .copied()
            .filter(|&(a, b)| !self.used[self.idx(a, b)])
            .min_by_key(|&(a, b)| {
                if self.succ[self.idx(b, a)] != NONE {
                    0
                } else {
                    self.g.degree(b) - self.set_at[b]
                }
            })
            .unwrap();
        let i = self.idx(a, b);
        self.used[i] = true;
        self.unused -= 1;
        let ok = self.walk((a, b), (a, b), 1);
        self.used[i] = false;
        self.unused += 1;
        ok
    }

    /// Extends the face that began at `start` and currently ends with dart `(a, b)`.
    fn walk(&mut self, start: (usize, usize), (a, b): (usize, usize), len: usize) -> bool {
        if self.tick() {
            return false;
        }
        if self.excess + len.saturating_sub(3) > self.allowed {
            return false;
        }
        let ib = self.idx(b, a);
        let fixed = self.succ[ib];
        if fixed != NONE {
            return self.step(start, (b, fixed), len);
        }
        let cands: Vec<usize> = self.g.neighbors(b).collect();
        for w in cands {
            if !self.can_link(b, a, w) {
                continue;
            }
            let saved = self.link(b, a, w);
            let ok = self.step(start, (b, w), len);
            self.unlink(b, a, w, saved);
            if ok || self.aborted {
                return ok;
            }
        }
        false
    }

    fn step(&mut self, start: (usize, usize), d: (usize, usize), len: usize) -> bool {
        if d == start {
            if len < 3 && self.g.edge_count() > 1 {
                return false;
            }
            let extra = len.saturating_sub(3);
            self.excess += extra;
            self.faces += 1;
            let ok = self.next_face();
            self.faces -= 1;
            self.excess -= extra;
            return ok;
        }
        let i = self.idx(d.0, d.1);
        if self.used[i] {
            return false;
        }
        self.used[i] = true;
        self.unused -= 1;
        let ok = self.walk(start, d, len + 1);
        self.used[i] = false;
        self.unused += 1;
        ok
    }
}

/// Decides whether the connected graph `g` has an embedding with at least
/// `faces` faces (equivalently genus at most `(2 - V + E - faces) / 2`).
pub fn max_faces_at_least(g: &LabeledGraph, faces: usize, limit: u64, deadline: Option<Instant>) -> (FaceSearch, u64) {
    let n = g.vertex_count();
    let e = g.edge_count();
    if 3 * faces > 2 * e && e > 1 {
        return (FaceSearch::Impossible, 0);
    }
    let mut head = vec![NONE; n * n];
    let mut tail = vec![NONE; n * n];
    let mut darts = Vec::with_capacity(2 * e);
    for v in 0..n {
        for u in g.neighbors(v) {
            head[v * n + u] = u;
            tail[v * n + u] = u;
            darts.push((v, u));
        }
    }
    let mut s = State {
        g,
        n,
        succ: vec![NONE; n * n],
        pred: vec![NONE; n * n],
        head,
        tail,
        set_at: vec![0; n],
        used: vec![false; n * n],
        darts,
        unused: 2 * e,
        allowed: (2 * e).saturating_sub(3 * faces),
        excess: 0,
        faces: 0,
        target: faces,
        nodes: 0,
        limit,
        deadline,
        aborted: false,
        found: None,
    };
    let outcome = if s.next_face() {
        let succ = s.found.take().unwrap();
        let order = (0..n)
            .map(|v| {
                let mut r = Vec::with_capacity(g.degree(v));
                if let Some(first) = g.neighbors(v).next() {
                    let mut u = first;
                    loop {
                        r.push(u);
                        u = succ[v * n + u];
                        if u == first {
                            break;
                        }
                    }
                }
                r
            })
            .collect();
        FaceSearch::Found(RotationSystem::new(order))
    } else if s.aborted {
        FaceSearch::Unknown
    } else {
        FaceSearch::Impossible
    };
    (outcome, s.nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::rotation::trace_faces;

    fn faces_for(g: &LabeledGraph, genus: usize) -> usize {
        (2 + g.edge_count() - g.vertex_count() - 2 * genus) as usize
    }

    fn decide(g: &LabeledGraph, genus: usize) -> FaceSearch {
        max_faces_at_least(g, faces_for(g, genus), u64::MAX, None).0
    }

    #[test]
    fn k5_and_k33_are_not_planar() {
        for g in [LabeledGraph::complete(5), LabeledGraph::complete_bipartite(3, 3)] {
            assert_eq!(decide(&g, 0), FaceSearch::Impossible);
            match decide(&g, 1) {
                FaceSearch::Found(rot) => assert_eq!(trace_faces(&g, &rot).unwrap().genus(), 1),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn k4_planar_and_k6_toroidal() {
        assert!(matches!(decide(&LabeledGraph::complete(4), 0), FaceSearch::Found(_)));
        let k6 = LabeledGraph::complete(6);
        assert_eq!(decide(&k6, 0), FaceSearch::Impossible);
        assert!(matches!(decide(&k6, 1), FaceSearch::Found(_)));
    }

    #[test]
    fn k8_needs_two_handles() {
        let k8 = LabeledGraph::complete(8);
        assert_eq!(decide(&k8, 1), FaceSearch::Impossible);
    }

    #[test]
    fn bipartite_models() {
        let k44 = LabeledGraph::complete_bipartite(4, 4);
        assert_eq!(decide(&k44, 0), FaceSearch::Impossible);
        assert!(matches!(decide(&k44, 1), FaceSearch::Found(_)));
        let k54 = LabeledGraph::complete_bipartite(5, 4);
        assert_eq!(decide(&k54, 1), FaceSearch::Impossible);
        assert!(matches!(decide(&k54, 2), FaceSearch::Found(_)));
    }

    #[test]
    fn k7_triangulates_the_torus() {
        let k7 = LabeledGraph::complete(7);
        match decide(&k7, 1) {
            FaceSearch::Found(rot) => assert_eq!(trace_faces(&k7, &rot).unwrap().face_count(), 14),
            other => panic!("{other:?}"),
        }
    }
}
