//! Searching for low-genus rotation systems.
//!
//! The main strategy is simulated annealing over single-vertex moves (take
//! one neighbour out of a vertex's rotation and reinsert it elsewhere),
//! maximising the face count. Only faces through the moved vertex can change,
//! so each move is evaluated by retracing those faces alone. Restarts run in
//! fixed-size parallel batches and are reduced in restart order, so the result
//! depends only on the seed and the node budget. Small graphs additionally get
//! an exhaustive branch-and-bound pass.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::rotation::RotationSystem;
use super::Budget;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Restarts evaluated per parallel batch.
const BATCH: usize = 8;

/// Product of `(deg - 1)!` over vertices, saturating at `f64::MAX`.
pub fn rotation_count(g: &LabeledGraph) -> f64 {
    (0..g.vertex_count())
        .map(|v| (1..g.degree(v).max(1)).map(|k| k as f64).product::<f64>())
        .product()
}

/// Outcome of [`embed_best`].
#[derive(Clone, Debug)]
pub struct EmbedOutcome {
    pub rotation: RotationSystem,
    pub genus: usize,
    /// The exhaustive pass completed, so `genus` is the true minimum.
    pub optimal: bool,
    pub nodes: u64,
}

/// Faces needed for genus `g` on a connected graph.
fn faces_for_genus(v: usize, e: usize, g: usize) -> i64 {
    2 - 2 * g as i64 - v as i64 + e as i64
}

fn genus_of(v: usize, e: usize, faces: usize) -> usize {
    ((2 - v as i64 + e as i64 - faces as i64) / 2) as usize
}

struct Annealer {
    n: usize,
    rot: Vec<Vec<usize>>,
    pos: Vec<usize>,
    stamp: Vec<u32>,
    generation: u32,
    movable: Vec<usize>,
}

impl Annealer {
    fn new(g: &LabeledGraph, rot: Vec<Vec<usize>>) -> Self {
        let n = g.vertex_count();
        let mut a = Annealer {
            n,
            pos: vec![0; n * n],
            stamp: vec![0; n * n],
            generation: 0,
            movable: (0..n).filter(|&v| g.degree(v) >= 3).collect(),
            rot,
        };
        for v in 0..n {
            a.reindex(v);
        }
        a
    }

    fn reindex(&mut self, v: usize) {
        for (i, &u) in self.rot[v].iter().enumerate() {
            self.pos[v * self.n + u] = i;
        }
    }

    #[inline]
    fn next(&self, a: usize, b: usize) -> usize {
        let r = &self.rot[b];
        let i = self.pos[b * self.n + a] + 1;
        if i == r.len() {
            r[0]
        } else {
            r[i]
        }
    }

    fn bump(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.fill(0);
            self.generation = 1;
        }
    }

    fn all_faces(&mut self) -> usize {
        self.bump();
        let n = self.n;
        let mut faces = 0;
        for u in 0..n {
            for i in 0..self.rot[u].len() {
                let v = self.rot[u][i];
                if self.stamp[u * n + v] == self.generation {
                    continue;
                }
                faces += 1;
                let (mut a, mut b) = (u, v);
                while self.stamp[a * n + b] != self.generation {
                    self.stamp[a * n + b] = self.generation;
                    let c = self.next(a, b);
                    (a, b) = (b, c);
                }
            }
        }
        faces
    }

    /// Number of distinct faces through darts entering `v`.
    fn faces_at(&mut self, v: usize) -> usize {
        self.bump();
        let n = self.n;
        let mut faces = 0;
        for i in 0..self.rot[v].len() {
            let u = self.rot[v][i];
            if self.stamp[u * n + v] == self.generation {
                continue;
            }
            faces += 1;
            let (mut a, mut b) = (u, v);
            while self.stamp[a * n + b] != self.generation {
                self.stamp[a * n + b] = self.generation;
                let c = self.next(a, b);
                (a, b) = (b, c);
            }
        }
        faces
    }

    fn relocate(&mut self, v: usize, from: usize, to: usize) {
        let x = self.rot[v].remove(from);
        self.rot[v].insert(to, x);
        let (lo, hi) = (from.min(to), from.max(to));
        for i in lo..=hi {
            let u = self.rot[v][i];
            self.pos[v * self.n + u] = i;
        }
    }

    /// One annealing run. Returns (best faces, best rotation, moves used).
    fn run(
        &mut self,
        rng: &mut ChaCha8Rng,
        moves: u64,
        target_faces: i64,
        deadline: Option<Instant>,
    ) -> (usize, Vec<Vec<usize>>, u64) {
        let mut cur = self.all_faces();
        let mut best = cur;
        let mut best_rot = self.rot.clone();
        if self.movable.is_empty() || cur as i64 >= target_faces {
            return (best, best_rot, 0);
        }
        let (t0, t1) = (0.7f64, 0.06f64);
        let cool = (t1 / t0).powf(1.0 / moves.max(1) as f64);
        let mut temp = t0;
        let mut used = 0;
        while used < moves {
            used += 1;
            if used % 4096 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                break;
            }
            let v = self.movable[rng.gen_range(0..self.movable.len())];
            let d = self.rot[v].len();
            let from = rng.gen_range(0..d);
            let mut to = rng.gen_range(0..d - 1);
            if to >= from {
                to += 1;
            }
            let before = self.faces_at(v);
            self.relocate(v, from, to);
            let after = self.faces_at(v);
            let delta = after as i64 - before as i64;
            if delta >= 0 || rng.gen::<f64>() < (delta as f64 / temp).exp() {
                cur = (cur as i64 + delta) as usize;
                if cur > best {
                    best = cur;
                    best_rot.clone_from(&self.rot);
                    if best as i64 >= target_faces {
                        break;
                    }
                }
            } else {
                self.relocate(v, to, from);
            }
            temp *= cool;
        }
        (best, best_rot, used)
    }
}

fn restart_seed(seed: u64, restart: u64) -> u64 {
    seed ^ restart.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn initial_rotation(g: &LabeledGraph, rng: &mut ChaCha8Rng, shuffle: bool) -> Vec<Vec<usize>> {
    (0..g.vertex_count())
        .map(|v| {
            let mut r: Vec<usize> = g.neighbors(v).collect();
            if shuffle {
                for i in (1..r.len()).rev() {
                    r.swap(i, rng.gen_range(0..=i));
                }
            }
            r
        })
        .collect()
}

/// Best embedding found for a connected graph, stopping early once genus
/// `target` is reached.
pub fn embed_best(g: &LabeledGraph, target: usize, budget: &Budget) -> EmbedOutcome {
    let (v, e) = (g.vertex_count(), g.edge_count());
    let identity = RotationSystem::identity(g);
    if e + 1 <= v || v <= 4 && rotation_count(g) <= 1.0 {
        // trees and cycles-at-most embed in the plane with any rotation
        let genus = super::rotation::rotation_genus(g, &identity).unwrap_or(0);
        if genus == 0 {
            return EmbedOutcome { rotation: identity, genus, optimal: true, nodes: 0 };
        }
    }
    let target_faces = faces_for_genus(v, e, target);
    let deadline = budget.deadline();
    let moves = budget.restart_moves.unwrap_or_else(|| (4000 * e as u64).clamp(50_000, 2_000_000));

    let mut best_faces = 0usize;
    let mut best_rot = identity.clone().into_inner();
    let mut nodes = 0u64;
    let mut restart = 0u64;
    let exhaustive_ok = rotation_count(g) <= budget.exhaustive_limit;
    // leave room for the exhaustive pass on small graphs
    let anneal_nodes = if exhaustive_ok { budget.nodes / 2 } else { budget.nodes };

    while nodes < anneal_nodes && (best_faces as i64) < target_faces {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let batch: Vec<u64> = (restart..restart + BATCH as u64).collect();
        restart += BATCH as u64;
        let results: Vec<(usize, Vec<Vec<usize>>, u64)> = batch
            .par_iter()
            .map(|&r| {
                let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(budget.seed, r));
                let init = initial_rotation(g, &mut rng, r != 0);
                Annealer::new(g, init).run(&mut rng, moves, target_faces, deadline)
            })
            .collect();
        for (faces, rot, used) in results {
            nodes += used;
            if faces > best_faces || best_faces == 0 {
                best_faces = faces;
                best_rot = rot;
            }
        }
    }

    let mut optimal = false;
    if (best_faces as i64) < target_faces && exhaustive_ok {
        let remaining = budget.nodes.saturating_sub(nodes).max(budget.nodes / 2);
        let mut bb = BranchAndBound::new(g, best_faces, target_faces, remaining, deadline);
        let complete = bb.search();
        nodes += bb.nodes;
        if let Some(rot) = bb.best_rot.take() {
            best_faces = bb.best_faces;
            best_rot = rot;
        }
        optimal = complete;
    }
    let rotation = RotationSystem::new(best_rot);
    EmbedOutcome { genus: genus_of(v, e, best_faces), rotation, optimal, nodes }
}

/// Branch-and-bound alone: the least-genus embedding, or the first one of
/// genus at most `target`. `optimal` is set when the search space was exhausted.
pub fn exhaustive_embedding(g: &LabeledGraph, target: usize, nodes: u64, deadline: Option<Instant>) -> EmbedOutcome {
    let (v, e) = (g.vertex_count(), g.edge_count());
    let mut bb = BranchAndBound::new(g, 0, faces_for_genus(v, e, target), nodes, deadline);
    let complete = bb.search();
    let rotation = RotationSystem::new(bb.best_rot.take().unwrap_or_else(|| RotationSystem::identity(g).into_inner()));
    let faces = if bb.best_faces == 0 { super::rotation::trace_faces(g, &rotation).map_or(0, |t| t.face_count()) } else { bb.best_faces };
    EmbedOutcome { rotation, genus: genus_of(v, e, faces), optimal: complete, nodes: bb.nodes }
}

/// Rotation system of genus at most `target` for a connected graph.
pub fn search_embedding(g: &LabeledGraph, target: usize, budget: &Budget) -> Result<RotationSystem> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let out = embed_best(g, target, budget);
    if out.genus <= target {
        Ok(out.rotation)
    } else {
        Err(Error::BudgetExhausted)
    }
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Exhaustive search over rotations, vertex by vertex. A partial assignment
/// is pruned when the closed faces plus `open darts / 3` cannot beat the
/// incumbent.
struct BranchAndBound<'a> {
    g: &'a LabeledGraph,
    n: usize,
    order: Vec<usize>,
    assigned: Vec<bool>,
    rot: Vec<Vec<usize>>,
    pos: Vec<usize>,
    best_faces: usize,
    best_rot: Option<Vec<Vec<usize>>>,
    target_faces: i64,
    nodes: u64,
    limit: u64,
    deadline: Option<Instant>,
    aborted: bool,
    seen: Vec<bool>,
}

impl<'a> BranchAndBound<'a> {
    fn new(g: &'a LabeledGraph, incumbent: usize, target_faces: i64, limit: u64, deadline: Option<Instant>) -> Self {
        let n = g.vertex_count();
        // BFS from a maximum-degree vertex so faces close early
        let start = (0..n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
        let mut order = vec![start];
        let mut inq = vec![false; n];
        inq[start] = true;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            let mut nb: Vec<usize> = g.neighbors(u).filter(|&w| !inq[w]).collect();
            nb.sort_by_key(|&w| std::cmp::Reverse(g.degree(w)));
            for w in nb {
                inq[w] = true;
                order.push(w);
            }
        }
        order.extend((0..n).filter(|&v| !inq[v]));
        BranchAndBound {
            g,
            n,
            order,
            assigned: vec![false; n],
            rot: (0..n).map(|v| g.neighbors(v).collect()).collect(),
            pos: vec![0; n * n],
            best_faces: incumbent,
            best_rot: None,
            target_faces,
            nodes: 0,
            limit,
            deadline,
            aborted: false,
            seen: vec![false; n * n],
        }
    }

    fn set_rotation(&mut self, v: usize, r: &[usize]) {
        self.rot[v].clear();
        self.rot[v].extend_from_slice(r);
        for (i, &u) in r.iter().enumerate() {
            self.pos[v * self.n + u] = i;
        }
    }

    /// (closed faces, open darts) under the current partial assignment.
    fn partial_faces(&mut self) -> (usize, usize) {
        let n = self.n;
        self.seen.fill(false);
        let mut closed = 0;
        let mut open = 0;
        for u in 0..n {
            for i in 0..self.rot[u].len() {
                let v = self.rot[u][i];
                if self.seen[u * n + v] {
                    continue;
                }
                // walk forward while heads are assigned
                let (mut a, mut b) = (u, v);
                let mut len = 0;
                let mut is_closed = false;
                loop {
                    if self.seen[a * n + b] {
                        is_closed = (a, b) == (u, v);
                        break;
                    }
                    self.seen[a * n + b] = true;
                    len += 1;
                    if !self.assigned[b] {
                        break;
                    }
                    let r = &self.rot[b];
                    let c = r[(self.pos[b * n + a] + 1) % r.len()];
                    (a, b) = (b, c);
                }
                if is_closed {
                    closed += 1;
                } else {
                    open += len;
                }
            }
        }
        (closed, open)
    }

    fn search(&mut self) -> bool {
        self.descend(0);
        !self.aborted
    }

    fn done(&self) -> bool {
        self.aborted || self.best_faces as i64 >= self.target_faces
    }

    fn descend(&mut self, depth: usize) {
        if self.done() {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.limit || (self.nodes % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d)) {
            self.aborted = true;
            return;
        }
        let (closed, open) = self.partial_faces();
        if closed + open / 3 <= self.best_faces {
            return;
        }
        if depth == self.order.len() {
            self.best_faces = closed;
            self.best_rot = Some(self.rot.clone());
            return;
        }
        let v = self.order[depth];
        let nb: Vec<usize> = self.g.neighbors(v).collect();
        self.assigned[v] = true;
        if nb.len() <= 2 {
            self.set_rotation(v, &nb);
            self.descend(depth + 1);
        } else {
            let first = nb[0];
            let mut tail = nb[1..].to_vec();
            let mut r = Vec::with_capacity(nb.len());
            loop {
                r.clear();
                r.push(first);
                r.extend_from_slice(&tail);
                self.set_rotation(v, &r);
                self.descend(depth + 1);
                if self.done() || !next_permutation(&mut tail) {
                    break;
                }
            }
        }
        self.assigned[v] = false;
    }
}

/// Minimum genus by exhaustive enumeration (no pruning); for tests and tiny graphs.
pub fn brute_force_genus(g: &LabeledGraph) -> usize {
    let mut bb = BranchAndBound::new(g, 0, i64::MAX, u64::MAX, None);
    bb.search();
    let v = g.vertex_count();
    genus_of(v, g.edge_count(), bb.best_faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::rotation::rotation_genus;

    fn budget() -> Budget {
        Budget { nodes: 2_000_000, ..Budget::default() }
    }

    #[test]
    fn permutations() {
        let mut xs = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut xs) {
            count += 1;
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn k4_planar() {
        let g = LabeledGraph::complete(4);
        let rot = search_embedding(&g, 0, &budget()).unwrap();
        assert_eq!(rotation_genus(&g, &rot).unwrap(), 0);
    }

    #[test]
    fn k33_toroidal() {
        let g = LabeledGraph::complete_bipartite(3, 3);
        let rot = search_embedding(&g, 1, &budget()).unwrap();
        let t = crate::genus::rotation::trace_faces(&g, &rot).unwrap();
        assert_eq!(t.face_count(), 3);
        assert!(search_embedding(&g, 0, &budget()).is_err());
    }

    #[test]
    fn exhaustive_proves_k5_nonplanar() {
        let g = LabeledGraph::complete(5);
        let out = embed_best(&g, 0, &budget());
        assert_eq!(out.genus, 1);
        assert!(out.optimal);
        assert_eq!(brute_force_genus(&g), 1);
    }

    #[test]
    fn deterministic() {
        let g = LabeledGraph::complete(7);
        let a = embed_best(&g, 1, &budget());
        let b = embed_best(&g, 1, &budget());
        assert_eq!(a.rotation, b.rotation);
        assert_eq!(a.genus, 1);
    }
}
