//! Closed-form genus of complete and complete bipartite graphs
//! (Ringel–Youngs).

/// `g(K_n) = ceil((n-3)(n-4)/12)` for `n >= 3`, and 0 below.
pub fn kn_genus(n: usize) -> usize {
    if n <= 4 {
        0
    } else {
        ((n - 3) * (n - 4)).div_ceil(12)
    }
}

/// `g(K_{m,n}) = ceil((m-2)(n-2)/4)` for `m, n >= 2`, and 0 otherwise.
pub fn kmn_genus(m: usize, n: usize) -> usize {
    if m < 2 || n < 2 {
        0
    } else {
        ((m - 2) * (n - 2)).div_ceil(4)
    }
}

/// Genus of a named model graph (`K5`, `K3,3`, ...), if the name is one.
pub fn named_genus(name: &str) -> Option<usize> {
    match parse_model_name(name)? {
        Model::Complete(n) => Some(kn_genus(n)),
        Model::Bipartite(m, n) => Some(kmn_genus(m, n)),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Complete(usize),
    Bipartite(usize, usize),
}

pub fn parse_model_name(name: &str) -> Option<Model> {
    let rest = name.strip_prefix('K')?;
    match rest.split_once(',') {
        Some((a, b)) => Some(Model::Bipartite(a.parse().ok()?, b.parse().ok()?)),
        None => Some(Model::Complete(rest.parse().ok()?)),
    }
}
