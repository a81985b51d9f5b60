#![allow(dead_code)]

//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's ideal enumeration, PIS construction or genus code; only the
//! ring operation tables are borrowed.

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;

use pisgenus::classify::FactorProfile;
use pisgenus::pis::PisInstance;
use pisgenus::ring::FiniteRing;

pub const CRITERIA_RINGS: [&str; 14] = [
    "GF(2) x GF(3)",
    "GF(2) x GF(3) x GF(5)",
    "Z/4 x Z/4",
    "GF(2) x Z/8",
    "Z/4 x GF(2) x GF(3)",
    "Z/8 x Z/4",
    "Z/16 x Z/4",
    "Z/32 x Z/4",
    "GF(2)[x,y]/(x2,y2) x GF(2)",
    "GF(2) x GF(3) x GF(5) x GF(7) x GF(11)",
    "Z/64 x Z/4",
    "Z/8 x Z/8",
    "GF(2)[x,y]/(x2,y2) x Z/4",
    "GF(2) x GF(3) x GF(5) x GF(7)",
];

type Members = Vec<usize>;

/// Smallest subset containing `gens` that is closed under addition and
/// under multiplication by ring elements.
pub fn generated(r: &FiniteRing, gens: &[usize]) -> Members {
    let n = r.order();
    let mut inside = vec![false; n];
    let mut members = vec![0];
    inside[0] = true;
    let mut queue: Vec<usize> = gens.to_vec();
    while let Some(x) = queue.pop() {
        if inside[x] {
            continue;
        }
        inside[x] = true;
        members.push(x);
        for s in 0..n {
            let y = r.mul(s, x);
            if !inside[y] {
                queue.push(y);
            }
        }
        for i in 0..members.len() {
            let y = r.add(members[i], x);
            if !inside[y] {
                queue.push(y);
            }
        }
    }
    members.sort_unstable();
    members
}

/// Every ideal of `r` with at most two generators. Panics unless that
/// family is closed under sums, which makes it every ideal of `r`.
pub fn oracle_ideals(r: &FiniteRing) -> BTreeSet<Members> {
    let n = r.order();
    let mut all = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            all.insert(generated(r, &[a, b]));
        }
    }
    let list: Vec<&Members> = all.iter().collect();
    for (i, a) in list.iter().enumerate() {
        for b in &list[i + 1..] {
            assert!(all.contains(&element_sum(r, a, b)), "{}: an ideal needs three generators", r.descriptor());
        }
    }
    all
}

/// `{a + b : a in I, b in J}`.
pub fn element_sum(r: &FiniteRing, i: &[usize], j: &[usize]) -> Members {
    let s: BTreeSet<usize> = i.iter().flat_map(|&a| j.iter().map(move |&b| r.add(a, b))).collect();
    s.into_iter().collect()
}

/// `P != R`, and `ab in P` forces `a in P` or `b in P`.
pub fn element_prime(r: &FiniteRing, p: &[usize]) -> bool {
    let n = r.order();
    if p.len() == n {
        return false;
    }
    let mut inside = vec![false; n];
    for &a in p {
        inside[a] = true;
    }
    let outside: Vec<usize> = (0..n).filter(|&a| !inside[a]).collect();
    outside.iter().all(|&a| outside.iter().all(|&b| !inside[r.mul(a, b)]))
}

/// Ideals of the product ring built coordinatewise from each factor's ideals.
pub fn product_ideals(inst: &PisInstance) -> BTreeSet<Members> {
    let r = &inst.ring;
    let per_factor: Vec<Vec<Members>> =
        inst.factors.iter().map(|f| oracle_ideals(&f.ring).into_iter().collect()).collect();
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; per_factor.len()];
    loop {
        let mut members: Vec<Vec<usize>> = vec![Vec::new()];
        for (k, &c) in choice.iter().enumerate() {
            members = members
                .into_iter()
                .flat_map(|prefix| {
                    per_factor[k][c].iter().map(move |&x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        let mut flat: Members = members.iter().map(|cs| r.from_components(cs)).collect();
        flat.sort_unstable();
        out.insert(flat);
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < per_factor[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Product ring operations agree with the factor rings coordinatewise.
pub fn check_projection(inst: &PisInstance) -> Result<(), String> {
    let r = &inst.ring;
    let n = r.order();
    let proj: Vec<Vec<usize>> = (0..n).map(|a| r.factor_projection(a)).collect();
    for a in 0..n {
        for b in 0..n {
            for (k, f) in inst.factors.iter().enumerate() {
                if proj[r.mul(a, b)][k] != f.ring.mul(proj[a][k], proj[b][k])
                    || proj[r.add(a, b)][k] != f.ring.add(proj[a][k], proj[b][k])
                {
                    return Err(format!("{}: coordinate {k} disagrees at ({a},{b})", r.descriptor()));
                }
            }
        }
    }
    Ok(())
}

/// The library lattice equals both the direct oracle and the product oracle.
pub fn check_lattice(inst: &PisInstance) -> Result<(), String> {
    let lib: BTreeSet<Members> = inst.lattice.ideals().iter().map(|i| i.elements().collect()).collect();
    if lib.len() != inst.lattice.len() {
        return Err("library lattice repeats an ideal".into());
    }
    let product = product_ideals(inst);
    if lib != product {
        return Err(format!("{} ideals in the library, {} from the product oracle", lib.len(), product.len()));
    }
    if inst.ring.order() <= 64 {
        let direct = oracle_ideals(&inst.ring);
        if lib != direct {
            return Err(format!("{} ideals in the library, {} from the direct oracle", lib.len(), direct.len()));
        }
    }
    Ok(())
}

/// Adjacency of the library graph equals the element-level definition.
pub fn check_pis(inst: &PisInstance) -> Result<(), String> {
    let r = &inst.ring;
    let n = r.order();
    let vertices: Vec<Members> = inst
        .lattice
        .ideals()
        .iter()
        .map(|i| i.elements().collect::<Members>())
        .filter(|m| m.len() > 1 && m.len() < n)
        .collect();
    let g = &inst.graph;
    if vertices.len() != g.vertex_count() {
        return Err(format!("{} vertices, expected {}", g.vertex_count(), vertices.len()));
    }
    for (v, m) in vertices.iter().enumerate() {
        let lib: Members = inst.lattice.ideal(inst.vertex_ideal(v)).elements().collect();
        if &lib != m {
            return Err(format!("vertex {v} is not the {v}-th nonzero proper ideal"));
        }
    }
    let mut prime_cache: HashMap<Members, bool> = HashMap::new();
    let mut edges = 0;
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let s = element_sum(r, &vertices[a], &vertices[b]);
            let prime = *prime_cache.entry(s.clone()).or_insert_with(|| element_prime(r, &s));
            if prime != g.has_edge(a, b) {
                return Err(format!("edge {a}-{b}: definition says {prime}"));
            }
            edges += prime as usize;
        }
    }
    if edges != g.edge_count() {
        return Err(format!("{} edges, expected {edges}", g.edge_count()));
    }
    Ok(())
}

/// Faces of the rotation system `rot` (neighbour lists in cyclic order).
/// The dart after `(u, v)` is `(v, w)` with `w` following `u` around `v`.
pub fn face_lengths(rot: &[Vec<usize>]) -> Vec<usize> {
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut lens = Vec::new();
    for u in 0..rot.len() {
        for &v in &rot[u] {
            if seen.contains(&(u, v)) {
                continue;
            }
            let (mut a, mut b) = (u, v);
            let mut len = 0;
            while seen.insert((a, b)) {
                len += 1;
                let pos = rot[b].iter().position(|&x| x == a).unwrap();
                let c = rot[b][(pos + 1) % rot[b].len()];
                (a, b) = (b, c);
            }
            lens.push(len);
        }
    }
    lens
}

/// Orientable genus of a connected graph by trying every rotation system.
pub fn brute_genus(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    // fix the first neighbour of every vertex; cycle the rest
    let mut perms: Vec<Vec<Vec<usize>>> = Vec::new();
    for list in &adj {
        let mut out = Vec::new();
        if list.len() <= 2 {
            out.push(list.clone());
        } else {
            let mut rest = list[1..].to_vec();
            rest.sort_unstable();
            loop {
                let mut p = vec![list[0]];
                p.extend(&rest);
                out.push(p);
                if !next_permutation(&mut rest) {
                    break;
                }
            }
        }
        perms.push(out);
    }
    let mut idx = vec![0usize; n];
    let mut best_faces = 0;
    loop {
        let rot: Vec<Vec<usize>> = (0..n).map(|v| perms[v][idx[v]].clone()).collect();
        best_faces = best_faces.max(face_lengths(&rot).len());
        let mut k = 0;
        loop {
            if k == n {
                return (2 - n as i64 + edges.len() as i64 - best_faces as i64) as usize / 2;
            }
            idx[k] += 1;
            if idx[k] < perms[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

pub fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub fn bipartite_edges(m: usize, n: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|u| (0..n).map(move |v| (u, m + v))).collect()
}

/// Random simple graph with its edge list.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = complete_edges(n);
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            (n, edges)
        })
    })
}

/// Random graph together with a random rotation system on it.
pub fn arb_rotation(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<Vec<usize>>)> {
    (arb_graph(max_n), any::<u64>()).prop_map(|((n, edges), seed)| {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rot = vec![Vec::new(); n];
        for &(u, v) in &edges {
            rot[u].push(v);
            rot[v].push(u);
        }
        for list in &mut rot {
            list.shuffle(&mut rng);
        }
        (n, edges, rot)
    })
}

/// Profiles that some finite local ring could have: fields have no proper
/// ideal and index 1, principal rings are chains with `count = eta - 1`,
/// and the nilsquare flag needs a two-generated maximal ideal.
pub fn arb_profile() -> impl Strategy<Value = FactorProfile> {
    prop_oneof![
        Just(FactorProfile::field()),
        (2u32..=6).prop_map(FactorProfile::chain),
        (2u32..=6, 2usize..=6, any::<bool>())
            .prop_filter("a non-chain lattice has more ideals than its index", |(eta, c, _)| *c >= *eta as usize)
            .prop_map(|(eta, c, ns)| FactorProfile::synthetic(false, false, c, eta, ns)),
    ]
}

pub fn arb_profiles() -> impl Strategy<Value = Vec<FactorProfile>> {
    proptest::collection::vec(arb_profile(), 2..=5)
}

/// Every profile with index at most 6 and at most 6 proper ideals that
/// respects the field invariants: a field has no proper ideal and index 1,
/// anything else has index at least 2 and at least one proper ideal. A
/// principal ring is a chain, so its count is its index minus one, and the
/// nilsquare flag is only set on non-principal rings.
pub fn all_profiles() -> Vec<FactorProfile> {
    let mut out = vec![FactorProfile::field()];
    for eta in 2..=6u32 {
        out.push(FactorProfile::chain(eta));
        for count in 1..=6usize {
            for ns in [false, true] {
                out.push(FactorProfile::synthetic(false, false, count, eta, ns));
            }
        }
    }
    out
}
