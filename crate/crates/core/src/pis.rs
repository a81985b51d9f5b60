//! The prime ideal sum graph: vertices are the nonzero proper ideals, and
//! two distinct ideals are adjacent when their sum is a prime ideal.

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::ring::{
    build_ring_with_cap, decompose_ideal, enumerate_ideals, factor_rings, parse_ring_spec, Factor,
    FiniteRing, IdealLattice, DEFAULT_ORDER_CAP,
};

/// Builds PIS(R). Vertices are the nonzero proper ideals in canonical
/// lattice order, labelled by [`ideal_labels`].
pub fn build_pis(r: &FiniteRing, l: &IdealLattice) -> LabeledGraph {
    let factors = factor_rings(r).ok();
    build_pis_with_factors(r, l, factors.as_deref())
}

fn build_pis_with_factors(r: &FiniteRing, l: &IdealLattice, factors: Option<&[Factor]>) -> LabeledGraph {
    let vertices = proper_nonzero(l);
    let labels = ideal_labels(r, l, factors);
    let mut g = LabeledGraph::new(vertices.iter().map(|&i| labels[i].clone()).collect())
        .named(r.descriptor().to_string());
    for (a, &i) in vertices.iter().enumerate() {
        for (b, &j) in vertices.iter().enumerate().skip(a + 1) {
            if l.is_prime(l.ideal_sum(i, j)) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Lattice indices of the nonzero proper ideals, in canonical order.
pub fn proper_nonzero(l: &IdealLattice) -> Vec<usize> {
    (l.zero() + 1..l.full()).collect()
}

/// Printable name of every ideal in `l`.
///
/// In a product ring each coordinate is named separately and joined with
/// `" x "`: the full factor prints as `F<i>` (field) or `R<i>`, the zero
/// ideal as `0`, and anything else by its generators, e.g. `(2) x 0 x F3`.
pub fn ideal_labels(r: &FiniteRing, l: &IdealLattice, factors: Option<&[Factor]>) -> Vec<String> {
    let simple = |i: usize| l.ideal_name(r, i, "R");
    let Some(factors) = factors.filter(|f| f.len() > 1) else {
        return (0..l.len()).map(simple).collect();
    };
    let full_names: Vec<String> = factors
        .iter()
        .enumerate()
        .map(|(k, f)| format!("{}{}", if f.is_field() { "F" } else { "R" }, k + 1))
        .collect();
    (0..l.len())
        .map(|i| match decompose_ideal(r, l.ideal(i), factors) {
            Some(coords) => coords
                .iter()
                .zip(factors)
                .zip(&full_names)
                .map(|((&c, f), name)| f.lattice.ideal_name(&f.ring, c, name))
                .collect::<Vec<_>>()
                .join(" x "),
            None => simple(i),
        })
        .collect()
}

/// A ring together with everything derived from it on the way to PIS(R).
#[derive(Clone, Debug)]
pub struct PisInstance {
    pub ring: FiniteRing,
    pub lattice: IdealLattice,
    pub factors: Vec<Factor>,
    pub graph: LabeledGraph,
}

impl PisInstance {
    pub fn from_spec(text: &str) -> Result<Self> {
        Self::from_spec_with_cap(text, DEFAULT_ORDER_CAP)
    }

    pub fn from_spec_with_cap(text: &str, cap: usize) -> Result<Self> {
        let d = parse_ring_spec(text)?;
        let ring = build_ring_with_cap(&d, cap)?;
        let lattice = enumerate_ideals(&ring);
        let factors = factor_rings(&ring)?;
        if let Some(k) = factors.iter().position(|f| !f.lattice.is_local_ring()) {
            return Err(Error::NotLocal(k));
        }
        let graph = build_pis_with_factors(&ring, &lattice, Some(&factors));
        Ok(PisInstance { ring, lattice, factors, graph })
    }

    /// Lattice index of graph vertex `v`.
    pub fn vertex_ideal(&self, v: usize) -> usize {
        v + 1
    }
}
