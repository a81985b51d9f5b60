//! Ideals as element bitsets and the full ideal lattice of a finite ring.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::FiniteRing;
use crate::bitset::BitSet;

/// An ideal given by its member set, with a generating set that is known to
/// generate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    members: BitSet,
    size: usize,
    generators: Vec<usize>,
}

impl Ideal {
    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }
}

/// Grows the additive subgroup `(set, list)` until it contains `g`.
fn adjoin(r: &FiniteRing, set: &mut BitSet, list: &mut Vec<usize>, g: usize) {
    if set.contains(g) {
        return;
    }
    let base_len = list.len();
    let mut rep = g;
    // H + <g> is the union of the cosets H + k*g; stop once a coset repeats
    loop {
        for idx in 0..base_len {
            let e = r.add(list[idx], rep);
            if set.insert(e) {
                list.push(e);
            }
        }
        rep = r.add(rep, g);
        if set.contains(rep) {
            break;
        }
    }
}

fn closure_of(r: &FiniteRing, seeds: impl IntoIterator<Item = usize>) -> (BitSet, Vec<usize>) {
    let mut set = BitSet::new(r.order());
    set.insert(0);
    let mut list = vec![0];
    for g in seeds {
        adjoin(r, &mut set, &mut list, g);
    }
    (set, list)
}

/// The ideal `aR`.
pub fn principal_ideal(r: &FiniteRing, a: usize) -> Ideal {
    let (members, list) = closure_of(r, (0..r.order()).map(|x| r.mul(x, a)));
    Ideal { size: list.len(), members, generators: vec![a] }
}

fn ideal_sum_members(r: &FiniteRing, i: &Ideal, j: &Ideal) -> Ideal {
    let (big, small) = if i.size >= j.size { (i, j) } else { (j, i) };
    let mut set = big.members.clone();
    let mut list: Vec<usize> = big.members.iter().collect();
    for b in small.members.iter() {
        adjoin(r, &mut set, &mut list, b);
    }
    let mut generators = big.generators.clone();
    generators.extend(small.generators.iter().filter(|g| !big.members.contains(**g)));
    Ideal { size: list.len(), members: set, generators }
}

/// Brute-force primality: `I != R` and `ab in I` implies `a in I` or `b in I`.
pub fn is_prime_ideal(r: &FiniteRing, ideal: &Ideal) -> bool {
    if ideal.size == r.order() {
        return false;
    }
    let outside: Vec<usize> = (0..r.order()).filter(|&a| !ideal.contains(a)).collect();
    for (k, &a) in outside.iter().enumerate() {
        for &b in &outside[k..] {
            if ideal.contains(r.mul(a, b)) {
                return false;
            }
        }
    }
    true
}

/// Every ideal of a ring, in canonical order, with sum and product tables.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    ideals: Vec<Ideal>,
    sum_table: Vec<usize>,
    product_table: Vec<usize>,
    prime: Vec<bool>,
    maximal: Vec<bool>,
    principal: Vec<bool>,
    eta: Vec<Option<u32>>,
    /// Index of the principal ideal generated by each element.
    principal_of: Vec<usize>,
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn ideal(&self, i: usize) -> &Ideal {
        &self.ideals[i]
    }

    /// Index of the zero ideal (always first in canonical order).
    pub fn zero(&self) -> usize {
        0
    }

    /// Index of the whole ring (always last in canonical order).
    pub fn full(&self) -> usize {
        self.ideals.len() - 1
    }

    pub fn index_of(&self, members: &BitSet) -> Option<usize> {
        self.ideals.iter().position(|i| &i.members == members)
    }

    pub fn ideal_sum(&self, i: usize, j: usize) -> usize {
        self.sum_table[i * self.len() + j]
    }

    pub fn ideal_product(&self, i: usize, j: usize) -> usize {
        self.product_table[i * self.len() + j]
    }

    pub fn is_prime(&self, i: usize) -> bool {
        self.prime[i]
    }

    pub fn is_maximal_ideal(&self, i: usize) -> bool {
        self.maximal[i]
    }

    pub fn is_principal(&self, i: usize) -> bool {
        self.principal[i]
    }

    /// Least `n` with `I^n = 0`, or `None` when `I` is not nilpotent.
    pub fn nilpotency_index(&self, i: usize) -> Option<u32> {
        self.eta[i]
    }

    pub fn principal_of(&self, a: usize) -> usize {
        self.principal_of[a]
    }

    pub fn is_principal_ring(&self) -> bool {
        self.principal.iter().all(|&p| p)
    }

    pub fn maximal_ideals(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.maximal[i]).collect()
    }

    pub fn is_local_ring(&self) -> bool {
        self.maximal_ideals().len() == 1
    }

    pub fn contains_ideal(&self, outer: usize, inner: usize) -> bool {
        self.ideals[inner].is_subset(&self.ideals[outer])
    }

    /// A small generating set for ideal `i`: one element if principal, else
    /// the first pair in element order that generates it, else a greedy set.
    pub fn minimal_generators(&self, i: usize) -> Vec<usize> {
        let ideal = &self.ideals[i];
        if i == self.zero() {
            return vec![0];
        }
        if let Some(a) = ideal.elements().find(|&a| self.principal_of[a] == i) {
            return vec![a];
        }
        let members: Vec<usize> = ideal.elements().collect();
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                if self.ideal_sum(self.principal_of[a], self.principal_of[b]) == i {
                    return vec![a, b];
                }
            }
        }
        let mut cur = self.zero();
        let mut gens = Vec::new();
        for &a in &members {
            let pa = self.principal_of[a];
            if !self.contains_ideal(cur, pa) {
                cur = self.ideal_sum(cur, pa);
                gens.push(a);
                if cur == i {
                    break;
                }
            }
        }
        gens
    }

    /// Name of ideal `i`: `0`, `full_name`, or its generators in parentheses.
    pub fn ideal_name(&self, r: &FiniteRing, i: usize, full_name: &str) -> String {
        if i == self.zero() {
            "0".into()
        } else if i == self.full() {
            full_name.into()
        } else {
            let gens: Vec<&str> = self.minimal_generators(i).into_iter().map(|g| r.label(g)).collect();
            format!("({})", gens.join(","))
        }
    }

    pub fn to_document(&self, r: &FiniteRing) -> LatticeDocument {
        let ideals = (0..self.len())
            .map(|i| {
                let ideal = &self.ideals[i];
                IdealEntry {
                    index: i,
                    name: self.ideal_name(r, i, "R"),
                    size: ideal.size,
                    members: ideal.elements().map(|a| r.label(a).to_string()).collect(),
                    generators: self
                        .minimal_generators(i)
                        .into_iter()
                        .map(|a| r.label(a).to_string())
                        .collect(),
                    prime: self.prime[i],
                    maximal: self.maximal[i],
                    principal: self.principal[i],
                    eta: self.eta[i],
                }
            })
            .collect();
        let n = self.len();
        let rows = |t: &[usize]| t.chunks(n).map(|c| c.to_vec()).collect();
        LatticeDocument {
            version: LATTICE_SCHEMA_VERSION,
            ring: r.descriptor().to_string(),
            order: r.order(),
            local: self.is_local_ring(),
            principal_ring: self.is_principal_ring(),
            ideals,
            sum_table: rows(&self.sum_table),
            product_table: rows(&self.product_table),
        }
    }
}

pub const LATTICE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealEntry {
    pub index: usize,
    pub name: String,
    pub size: usize,
    pub members: Vec<String>,
    pub generators: Vec<String>,
    pub prime: bool,
    pub maximal: bool,
    pub principal: bool,
    pub eta: Option<u32>,
}

/// JSON export of an ideal lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub version: u32,
    pub ring: String,
    pub order: usize,
    pub local: bool,
    pub principal_ring: bool,
    pub ideals: Vec<IdealEntry>,
    pub sum_table: Vec<Vec<usize>>,
    pub product_table: Vec<Vec<usize>>,
}

/// Enumerates every ideal: principal ideals first, then closure under
/// pairwise sums (every ideal of a finite ring is a finite sum of principal
/// ideals).
pub fn enumerate_ideals(r: &FiniteRing) -> IdealLattice {
    let n = r.order();
    let mut found: Vec<Ideal> = Vec::new();
    let mut index: HashMap<BitSet, usize> = HashMap::new();
    let mut principal_raw = vec![0usize; n];
    for a in 0..n {
        let p = principal_ideal(r, a);
        let idx = *index.entry(p.members.clone()).or_insert_with(|| {
            found.push(p);
            found.len() - 1
        });
        principal_raw[a] = idx;
    }
    let principal_count = found.len();

    let mut frontier = 0;
    while frontier < found.len() {
        let end = found.len();
        for i in 0..end {
            for j in frontier.max(i)..end {
                let s = ideal_sum_members(r, &found[i], &found[j]);
                if !index.contains_key(&s.members) {
                    index.insert(s.members.clone(), found.len());
                    found.push(s);
                }
            }
        }
        frontier = end;
    }

    // canonical order: cardinality, then lexicographic member list
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| {
        found[a].size.cmp(&found[b].size).then_with(|| found[a].members.lex_cmp(&found[b].members))
    });
    let mut rank = vec![0usize; found.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let principal = order.iter().map(|&old| old < principal_count).collect();
    let ideals: Vec<Ideal> = order.iter().map(|&old| found[old].clone()).collect();
    let principal_of: Vec<usize> = principal_raw.iter().map(|&old| rank[old]).collect();
    let lookup: HashMap<&BitSet, usize> =
        ideals.iter().enumerate().map(|(i, id)| (&id.members, i)).collect();

    let m = ideals.len();
    let mut sum_table = vec![0usize; m * m];
    for i in 0..m {
        for j in i..m {
            let s = if ideals[i].is_subset(&ideals[j]) {
                j
            } else if ideals[j].is_subset(&ideals[i]) {
                i
            } else {
                lookup[&ideal_sum_members(r, &ideals[i], &ideals[j]).members]
            };
            sum_table[i * m + j] = s;
            sum_table[j * m + i] = s;
        }
    }
    // IJ is generated by products of generators
    let mut product_table = vec![0usize; m * m];
    for i in 0..m {
        for j in i..m {
            let mut acc = 0;
            for &g in &ideals[i].generators {
                for &h in &ideals[j].generators {
                    acc = sum_table[acc * m + principal_of[r.mul(g, h)]];
                }
            }
            product_table[i * m + j] = acc;
            product_table[j * m + i] = acc;
        }
    }
    let prime: Vec<bool> = ideals.iter().map(|id| is_prime_ideal(r, id)).collect();
    let full = m - 1;
    let maximal = (0..m)
        .map(|i| {
            i != full
                && !(0..m).any(|j| {
                    j != i && j != full && ideals[i].is_subset(&ideals[j])
                })
        })
        .collect();
    let eta = (0..m)
        .map(|i| {
            let mut power = i;
            let mut k = 1;
            while power != 0 {
                let next = product_table[power * m + i];
                if next == power {
                    return None;
                }
                power = next;
                k += 1;
            }
            Some(k)
        })
        .collect();

    IdealLattice { ideals, sum_table, product_table, prime, maximal, principal, eta, principal_of }
}
