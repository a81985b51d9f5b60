//! Rotation systems and face tracing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Cyclic order of neighbours around every vertex. Together with the graph
/// this determines an orientable cellular embedding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationSystem {
    order: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(order: Vec<Vec<usize>>) -> Self {
        RotationSystem { order }
    }

    /// Neighbours in increasing index order.
    pub fn identity(g: &LabeledGraph) -> Self {
        Self::new((0..g.vertex_count()).map(|v| g.neighbors(v).collect()).collect())
    }

    pub fn around(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    pub fn as_slices(&self) -> &[Vec<usize>] {
        &self.order
    }

    pub fn into_inner(self) -> Vec<Vec<usize>> {
        self.order
    }

    /// Checks that every vertex lists each of its neighbours exactly once.
    pub fn validate(&self, g: &LabeledGraph) -> Result<()> {
        if self.order.len() != g.vertex_count() {
            return Err(Error::MalformedRotation(format!(
                "{} rotations for {} vertices",
                self.order.len(),
                g.vertex_count()
            )));
        }
        for (v, rot) in self.order.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            let expected: Vec<usize> = g.neighbors(v).collect();
            if sorted != expected {
                return Err(Error::MalformedRotation(format!(
                    "rotation at vertex {v} is not a permutation of its neighbours"
                )));
            }
        }
        Ok(())
    }
}

/// Result of tracing every face of an embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTrace {
    /// Each face as its cyclic sequence of darts `(tail, head)`.
    pub faces: Vec<Vec<(usize, usize)>>,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub isolated: usize,
}

impl FaceTrace {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// `sum over components of (2 - V_c + E_c - F_c) / 2`, counting an
    /// isolated vertex as a sphere with one face.
    pub fn genus(&self) -> usize {
        let euler = 2 * self.components as i64 - self.vertices as i64 + self.edges as i64
            - (self.faces.len() + self.isolated) as i64;
        debug_assert!(euler >= 0 && euler % 2 == 0, "euler characteristic defect {euler}");
        (euler / 2) as usize
    }
}

/// Traces faces: from dart `(u, v)` the next dart is `(v, w)` where `w`
/// follows `u` in the rotation at `v`. Each dart is used exactly once.
pub fn trace_faces(g: &LabeledGraph, rot: &RotationSystem) -> Result<FaceTrace> {
    rot.validate(g)?;
    let n = g.vertex_count();
    let mut pos = vec![usize::MAX; n * n];
    for (v, r) in rot.order.iter().enumerate() {
        for (i, &u) in r.iter().enumerate() {
            pos[v * n + u] = i;
        }
    }
    let mut used = vec![false; n * n];
    let mut faces = Vec::new();
    for u in 0..n {
        for &v in &rot.order[u] {
            if used[u * n + v] {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            while !used[a * n + b] {
                used[a * n + b] = true;
                face.push((a, b));
                let r = &rot.order[b];
                let next = r[(pos[b * n + a] + 1) % r.len()];
                (a, b) = (b, next);
            }
            faces.push(face);
        }
    }
    let isolated = (0..n).filter(|&v| g.degree(v) == 0).count();
    Ok(FaceTrace {
        faces,
        vertices: n,
        edges: g.edge_count(),
        components: g.components().len(),
        isolated,
    })
}

/// Genus of the embedding given by `rot`.
pub fn rotation_genus(g: &LabeledGraph, rot: &RotationSystem) -> Result<usize> {
    Ok(trace_faces(g, rot)?.genus())
}

/// Joins embeddings of edge-disjoint subgraphs that pairwise meet in at most
/// cut vertices (blocks or components) into one rotation system: at a shared
/// vertex the parts' rotations are concatenated, which adds their genera.
pub fn merge_rotations(n: usize, parts: &[(Vec<usize>, RotationSystem)]) -> RotationSystem {
    let mut order = vec![Vec::new(); n];
    for (verts, rot) in parts {
        for (local, &v) in verts.iter().enumerate() {
            order[v].extend(rot.around(local).iter().map(|&w| verts[w]));
        }
    }
    RotationSystem::new(order)
}
