//! Independent re-verification of genus certificates.
//!
//! Nothing here calls into the genus solver. Certificates are read as raw
//! JSON, and face tracing, blocks, girth, the Euler bound, the model genus
//! formulas, contraction and the exhaustive face search are all implemented
//! again from scratch on a plain edge list.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

type Edge = (usize, usize);

fn bad(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

/// Undirected simple graph as sorted adjacency lists.
#[derive(Clone, Debug)]
struct Plain {
    adj: Vec<Vec<usize>>,
}

impl Plain {
    fn new(n: usize, edges: &BTreeSet<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Plain { adj }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Component id per vertex, skipping `banned`.
    fn components_without(&self, banned: Option<usize>) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if comp[s] != usize::MAX || Some(s) == banned {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if comp[y] == usize::MAX && Some(y) != banned {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Vertices with at least one edge, and whether they are all connected.
    fn non_isolated_connected(&self) -> bool {
        let comp = self.components_without(None);
        let ids: BTreeSet<usize> = (0..self.n()).filter(|&v| !self.adj[v].is_empty()).map(|v| comp[v]).collect();
        ids.len() <= 1
    }

    fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n() {
            let mut dist = vec![usize::MAX; self.n()];
            let mut from = vec![usize::MAX; self.n()];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &self.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        from[y] = x;
                        q.push_back(y);
                    } else if from[x] != y {
                        let c = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }
}

/// `ceil((E(g-2)/g - V + 2) / 2)`, floored at 0, in exact integer arithmetic.
fn euler(v: usize, e: usize, girth: Option<usize>) -> usize {
    let Some(g) = girth else { return 0 };
    let num = (e * (g - 2)) as i64 - (g * v) as i64 + 2 * g as i64;
    let den = 2 * g as i64;
    if num <= 0 {
        0
    } else {
        ((num + den - 1) / den) as usize
    }
}

/// Genus and canonical edge list of `K_n` / `K_{m,n}` named as `K5` or `K3,3`.
fn model(name: &str) -> Result<(usize, Vec<[usize; 2]>)> {
    let body = name.strip_prefix('K').ok_or_else(|| bad(format!("unknown pattern {name}")))?;
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("unknown pattern {name}")));
    if let Some((a, b)) = body.split_once(',') {
        let (m, n) = (num(a)?, num(b)?);
        let edges = (0..m).flat_map(|i| (m..m + n).map(move |j| [i, j])).collect();
        let genus = if m < 2 || n < 2 { 0 } else { ((m - 2) * (n - 2)).div_ceil(4) };
        Ok((genus, edges))
    } else {
        let n = num(body)?;
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| [i, j])).collect();
        let genus = if n < 5 { 0 } else { ((n - 3) * (n - 4)).div_ceil(12) };
        Ok((genus, edges))
    }
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what}: expected a non-negative integer")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what}: expected an array")))?
        .iter()
        .map(|x| as_usize(x, what))
        .collect()
}

fn pair_list(v: &Value, what: &str) -> Result<Vec<(usize, usize)>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what}: expected an array")))?
        .iter()
        .map(|p| {
            let xs = usize_list(p, what)?;
            match xs[..] {
                [a, b] => Ok((a, b)),
                _ => Err(bad(format!("{what}: expected pairs"))),
            }
        })
        .collect()
}

fn optional_usize(v: &Value, what: &str) -> Result<Option<usize>> {
    if v.is_null() {
        Ok(None)
    } else {
        as_usize(v, what).map(Some)
    }
}

struct Checker<'a> {
    host: &'a Plain,
    log: Vec<String>,
    exhaustive_nodes: u64,
}

impl Checker<'_> {
    fn edge_set(&self, pairs: &[(usize, usize)], what: &str) -> Result<BTreeSet<Edge>> {
        let mut out = BTreeSet::new();
        for &(u, v) in pairs {
            if u >= self.host.n() || v >= self.host.n() || !self.host.has(u, v) {
                return Err(bad(format!("{what}: ({u}, {v}) is not a host edge")));
            }
            out.insert((u.min(v), u.max(v)));
        }
        Ok(out)
    }

    /// Verifies one lower certificate and returns its genus and the host edges it uses.
    fn lower(&mut self, c: &Value) -> Result<(usize, BTreeSet<Edge>)> {
        let kind = field(c, "kind")?.as_str().ok_or_else(|| bad("kind must be a string"))?;
        let claimed = |c: &Value| -> Result<usize> {
            match c.get("genus") {
                Some(g) => as_usize(g, "genus"),
                None => Ok(0),
            }
        };
        let (genus, edges) = match kind {
            "trivial" => (0, BTreeSet::new()),
            "euler_bound" => {
                let edges = self.edge_set(&pair_list(field(c, "edges")?, "edges")?, "euler_bound")?;
                let sub = Plain::new(self.host.n(), &edges);
                if !sub.non_isolated_connected() {
                    return Err(bad("euler_bound: subgraph is not connected"));
                }
                let gi = sub.girth();
                if gi != optional_usize(field(c, "girth")?, "girth")? {
                    return Err(bad(format!("euler_bound: girth is {gi:?}")));
                }
                let vs = (0..sub.n()).filter(|&v| !sub.adj[v].is_empty()).count();
                let g = euler(vs, edges.len(), gi);
                self.log.push(format!("euler bound: V={vs} E={} girth={gi:?} -> {g}", edges.len()));
                (g, edges)
            }
            "subdivision" => self.subdivision(field(c, "witness")?)?,
            "minor" => {
                let edges = self.edge_set(&pair_list(field(c, "edges")?, "edges")?, "minor")?;
                let steps = pair_list(field(c, "contractions")?, "contractions")?;
                let (v, e, gi) = contract(self.host.n(), &edges, &steps)?;
                if gi != optional_usize(field(c, "girth")?, "girth")? {
                    return Err(bad(format!("minor: girth is {gi:?}")));
                }
                let g = euler(v, e, gi);
                self.log.push(format!("minor after {} contractions: V={v} E={e} girth={gi:?} -> {g}", steps.len()));
                (g, edges)
            }
            "exhaustive" => {
                let edges = self.edge_set(&pair_list(field(c, "edges")?, "edges")?, "exhaustive")?;
                let target = claimed(c)?;
                let sub = Plain::new(self.host.n(), &edges);
                if !sub.non_isolated_connected() {
                    return Err(bad("exhaustive: subgraph is not connected"));
                }
                if target > 0 {
                    let vs = (0..sub.n()).filter(|&v| !sub.adj[v].is_empty()).count();
                    let want = (2 + edges.len() + 2) as i64 - vs as i64 - 2 * target as i64;
                    let (exists, nodes) = faces_reachable(&sub, want.max(0) as usize);
                    self.exhaustive_nodes += nodes;
                    if exists {
                        return Err(bad(format!("exhaustive: an embedding of genus {} exists", target - 1)));
                    }
                    self.log.push(format!("exhaustive: no embedding of genus {} ({nodes} nodes)", target - 1));
                }
                (target, edges)
            }
            "block_sum" => {
                let parts = field(c, "parts")?.as_array().ok_or_else(|| bad("parts must be an array"))?;
                let mut sets = Vec::new();
                let mut total = 0;
                for p in parts {
                    let (g, es) = self.lower(p)?;
                    total += g;
                    sets.push(es);
                }
                check_distinct_blocks(self.host.n(), &sets)?;
                self.log.push(format!("block sum of {} parts -> {total}", sets.len()));
                let union = sets.into_iter().flatten().collect();
                (total, union)
            }
            other => return Err(bad(format!("unknown certificate kind {other}"))),
        };
        let stated = claimed(c)?;
        if stated != genus {
            return Err(bad(format!("{kind}: claims genus {stated}, checks as {genus}")));
        }
        Ok((genus, edges))
    }

    fn subdivision(&mut self, w: &Value) -> Result<(usize, BTreeSet<Edge>)> {
        let name = field(w, "pattern")?.as_str().ok_or_else(|| bad("pattern must be a string"))?;
        let (genus, canonical) = model(name)?;
        let pedges = pair_list(field(w, "pattern_edges")?, "pattern_edges")?;
        let listed: Vec<[usize; 2]> = pedges.iter().map(|&(a, b)| [a, b]).collect();
        if listed != canonical {
            return Err(bad(format!("{name}: pattern edges differ from the model")));
        }
        let branch = usize_list(field(w, "branch_map")?, "branch_map")?;
        let k = canonical.iter().flatten().max().map_or(0, |m| m + 1);
        if branch.len() != k || branch.iter().any(|&b| b >= self.host.n()) {
            return Err(bad(format!("{name}: branch map has wrong size or range")));
        }
        if branch.iter().collect::<BTreeSet<_>>().len() != k {
            return Err(bad(format!("{name}: branch map is not injective")));
        }
        let paths = field(w, "paths")?.as_array().ok_or_else(|| bad("paths must be an array"))?;
        if paths.len() != canonical.len() {
            return Err(bad(format!("{name}: one path per pattern edge required")));
        }
        let branch_set: BTreeSet<usize> = branch.iter().copied().collect();
        let mut interior = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for (p, &[a, b]) in paths.iter().zip(&canonical) {
            let p = usize_list(p, "path")?;
            if p.len() < 2 || p[0] != branch[a] || p[p.len() - 1] != branch[b] {
                return Err(bad(format!("{name}: path for edge ({a}, {b}) has wrong ends")));
            }
            for x in &p[1..p.len() - 1] {
                if branch_set.contains(x) || !interior.insert(*x) {
                    return Err(bad(format!("{name}: paths are not internally disjoint at vertex {x}")));
                }
            }
            let steps: Vec<(usize, usize)> = p.windows(2).map(|s| (s[0], s[1])).collect();
            edges.extend(self.edge_set(&steps, name)?);
        }
        self.log.push(format!("{name} subdivision with {} interior vertices -> {genus}", interior.len()));
        Ok((genus, edges))
    }
}

/// Contracts in order and returns (vertices, edges, girth) of the simple minor.
fn contract(n: usize, edges: &BTreeSet<Edge>, steps: &[(usize, usize)]) -> Result<(usize, usize, Option<usize>)> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let touched: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    for &(a, b) in steps {
        if !touched.contains(&a) || !touched.contains(&b) {
            return Err(bad(format!("minor: ({a}, {b}) is outside the subgraph")));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(bad(format!("minor: ({a}, {b}) already merged")));
        }
        let joined = edges.iter().any(|&(u, v)| {
            let (ru, rv) = (find(&mut parent.clone(), u), find(&mut parent.clone(), v));
            (ru, rv) == (ra, rb) || (ru, rv) == (rb, ra)
        });
        if !joined {
            return Err(bad(format!("minor: ({a}, {b}) are not adjacent when contracted")));
        }
        parent[rb] = ra;
    }
    let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in &touched {
        let r = find(&mut parent, v);
        let next = reps.len();
        reps.entry(r).or_insert(next);
    }
    let mut minor = BTreeSet::new();
    for &(u, v) in edges {
        let (a, b) = (reps[&find(&mut parent, u)], reps[&find(&mut parent, v)]);
        if a != b {
            minor.insert((a.min(b), a.max(b)));
        }
    }
    let m = Plain::new(reps.len(), &minor);
    if !m.non_isolated_connected() {
        return Err(bad("minor: result is not connected"));
    }
    Ok((reps.len(), minor.len(), m.girth()))
}

/// Every block of the union of `sets` must hold edges of at most one set.
/// Two edges share a block iff they meet at a vertex `v` whose other ends
/// stay connected once `v` is removed (closed transitively).
fn check_distinct_blocks(n: usize, sets: &[BTreeSet<Edge>]) -> Result<()> {
    let mut owner: BTreeMap<Edge, usize> = BTreeMap::new();
    for (i, s) in sets.iter().enumerate() {
        for &e in s {
            if owner.insert(e, i).is_some_and(|j| j != i) {
                return Err(bad(format!("block_sum: edge {e:?} used by two parts")));
            }
        }
    }
    let union: BTreeSet<Edge> = owner.keys().copied().collect();
    let g = Plain::new(n, &union);
    let index: BTreeMap<Edge, usize> = union.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut uf: Vec<usize> = (0..union.len()).collect();
    fn root(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for v in 0..n {
        if g.adj[v].len() < 2 {
            continue;
        }
        let comp = g.components_without(Some(v));
        for (i, &u) in g.adj[v].iter().enumerate() {
            for &w in &g.adj[v][i + 1..] {
                if comp[u] == comp[w] {
                    let a = index[&(v.min(u), v.max(u))];
                    let b = index[&(v.min(w), v.max(w))];
                    let (ra, rb) = (root(&mut uf, a), root(&mut uf, b));
                    uf[ra] = rb;
                }
            }
        }
    }
    let mut block_owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (e, &i) in &index {
        let r = root(&mut uf, i);
        let part = owner[e];
        if *block_owner.entry(r).or_insert(part) != part {
            return Err(bad("block_sum: two parts share a block of their union"));
        }
    }
    Ok(())
}

/// Face-by-face search for an embedding of `g` with at least `want` faces.
/// Returns whether one exists and the number of search steps.
fn faces_reachable(g: &Plain, want: usize) -> (bool, u64) {
    let e = g.edge_count();
    if 3 * want > 2 * e {
        return (false, 0);
    }
    let mut search = FaceWalk {
        g,
        next: g.adj.iter().map(|a| vec![None; a.len()]).collect(),
        prev: g.adj.iter().map(|a| vec![None; a.len()]).collect(),
        fixed: vec![0; g.n()],
        done: BTreeSet::new(),
        slack: 2 * e - 3 * want,
        want,
        steps: 0,
    };
    let found = search.open(0, 0);
    (found, search.steps)
}

struct FaceWalk<'a> {
    g: &'a Plain,
    /// `next[v][i]`: position (in `adj[v]`) of the neighbour after `adj[v][i]` around `v`.
    next: Vec<Vec<Option<usize>>>,
    prev: Vec<Vec<Option<usize>>>,
    fixed: Vec<usize>,
    done: BTreeSet<(usize, usize)>,
    slack: usize,
    want: usize,
    steps: u64,
}

impl FaceWalk<'_> {
    fn pos(&self, v: usize, u: usize) -> usize {
        self.g.adj[v].binary_search(&u).unwrap()
    }

    /// Whether setting next(i) = j at `v` keeps the partial rotation a union of paths
    /// (or completes it into one full cycle).
    fn allowed(&self, v: usize, i: usize, j: usize) -> bool {
        if self.next[v][i].is_some() || self.prev[v][j].is_some() {
            return false;
        }
        let d = self.g.adj[v].len();
        if i == j {
            return d == 1;
        }
        // follow the chain forward from j; reaching i would close a cycle
        let mut x = j;
        let mut len = 1;
        while let Some(y) = self.next[v][x] {
            x = y;
            len += 1;
        }
        if x == i {
            return len == d;
        }
        true
    }

    fn open(&mut self, faces: usize, excess: usize) -> bool {
        let total = 2 * self.g.edge_count();
        let left = total - self.done.len();
        if left == 0 {
            return faces >= self.want;
        }
        if faces + left / 3 < self.want {
            return false;
        }
        let mut best: Option<((usize, usize), usize)> = None;
        for v in 0..self.g.n() {
            for &u in &self.g.adj[v] {
                if self.done.contains(&(v, u)) {
                    continue;
                }
                let at = self.pos(u, v);
                let freedom = if self.next[u][at].is_some() { 0 } else { self.g.adj[u].len() - self.fixed[u] };
                if best.is_none_or(|(_, f)| freedom < f) {
                    best = Some(((v, u), freedom));
                }
            }
        }
        let (start, _) = best.unwrap();
        self.done.insert(start);
        let ok = self.extend(start, start, 1, faces, excess);
        self.done.remove(&start);
        ok
    }

    fn extend(&mut self, start: (usize, usize), (a, b): (usize, usize), len: usize, faces: usize, excess: usize) -> bool {
        self.steps += 1;
        if excess + len.saturating_sub(3) > self.slack {
            return false;
        }
        let i = self.pos(b, a);
        let options: Vec<usize> = match self.next[b][i] {
            Some(j) => vec![j],
            None => (0..self.g.adj[b].len()).filter(|&j| self.allowed(b, i, j)).collect(),
        };
        let forced = self.next[b][i].is_some();
        for j in options {
            if !forced {
                self.next[b][i] = Some(j);
                self.prev[b][j] = Some(i);
                self.fixed[b] += 1;
            }
            let d = (b, self.g.adj[b][j]);
            let ok = if d == start {
                len >= 3 && self.open(faces + 1, excess + len - 3)
            } else if self.done.insert(d) {
                let r = self.extend(start, d, len + 1, faces, excess);
                self.done.remove(&d);
                r
            } else {
                false
            };
            if !forced {
                self.next[b][i] = None;
                self.prev[b][j] = None;
                self.fixed[b] -= 1;
            }
            if ok {
                return true;
            }
        }
        false
    }
}

/// Traces the faces of a rotation system given as per-vertex neighbour lists.
fn trace(g: &Plain, rot: &[Vec<usize>]) -> Result<usize> {
    if rot.len() != g.n() {
        return Err(bad("rotation: wrong number of vertices"));
    }
    let mut succ: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (v, r) in rot.iter().enumerate() {
        let mut sorted = r.clone();
        sorted.sort_unstable();
        if sorted != g.adj[v] {
            return Err(bad(format!("rotation at {v} is not a permutation of its neighbours")));
        }
        for (k, &u) in r.iter().enumerate() {
            succ.insert((v, u), r[(k + 1) % r.len()]);
        }
    }
    let mut seen = BTreeSet::new();
    let mut faces = 0;
    for (v, r) in rot.iter().enumerate() {
        for &u in r {
            if seen.contains(&(v, u)) {
                continue;
            }
            faces += 1;
            let (mut a, mut b) = (v, u);
            while seen.insert((a, b)) {
                let c = succ[&(b, a)];
                (a, b) = (b, c);
            }
        }
    }
    Ok(faces)
}

/// Outcome of a successful check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub lower: usize,
    pub upper: Option<usize>,
    pub faces: Option<usize>,
    /// Genus certified by each supporting certificate.
    pub supporting: Vec<usize>,
    pub steps: Vec<String>,
}

/// Re-derives both bounds of a genus certificate (a `GenusBounds` document,
/// or any document with a `bounds` field holding one) against `graph`, and
/// fails unless they equal the stated ones.
pub fn check_certificate(graph: &LabeledGraph, cert: &Value) -> Result<CheckReport> {
    let cert = cert.get("bounds").unwrap_or(cert);
    let n = graph.vertex_count();
    let mut edges = BTreeSet::new();
    for (u, v) in graph.edges() {
        edges.insert((u.min(v), u.max(v)));
    }
    let host = Plain::new(n, &edges);
    let mut checker = Checker { host: &host, log: Vec::new(), exhaustive_nodes: 0 };

    let (lower, _) = checker.lower(field(cert, "lower_certificate")?)?;
    if lower != as_usize(field(cert, "lower")?, "lower")? {
        return Err(bad(format!("stated lower bound differs from certified {lower}")));
    }
    let stated_upper = optional_usize(field(cert, "upper")?, "upper")?;
    let (upper, faces) = match cert.get("upper_certificate").filter(|v| !v.is_null()) {
        None => (None, None),
        Some(u) => {
            let rot: Vec<Vec<usize>> = field(u, "rotation")?
                .as_array()
                .ok_or_else(|| bad("rotation must be an array"))?
                .iter()
                .map(|r| usize_list(r, "rotation"))
                .collect::<Result<_>>()?;
            let faces = trace(&host, &rot)?;
            if faces != as_usize(field(u, "faces")?, "faces")? {
                return Err(bad(format!("rotation has {faces} faces, not the stated count")));
            }
            let comps = host.components_without(None);
            let c = (0..n).map(|v| comps[v]).collect::<BTreeSet<_>>().len();
            let isolated = (0..n).filter(|&v| host.adj[v].is_empty()).count();
            let chi = 2 * c as i64 - n as i64 + host.edge_count() as i64 - (faces + isolated) as i64;
            if chi < 0 || chi % 2 != 0 {
                return Err(bad(format!("rotation gives odd or negative Euler defect {chi}")));
            }
            checker.log.push(format!("rotation: V={n} E={} F={faces} -> genus {}", host.edge_count(), chi / 2));
            (Some((chi / 2) as usize), Some(faces))
        }
    };
    if upper != stated_upper {
        return Err(bad(format!("stated upper bound {stated_upper:?} differs from traced {upper:?}")));
    }
    if let Some(u) = upper {
        if lower > u {
            return Err(bad(format!("lower bound {lower} exceeds upper bound {u}")));
        }
    }
    let mut supporting = Vec::new();
    for c in cert.get("supporting").and_then(Value::as_array).into_iter().flatten() {
        let (g, _) = checker.lower(c)?;
        if upper.is_some_and(|u| g > u) {
            return Err(bad(format!("supporting certificate for genus {g} exceeds the upper bound")));
        }
        supporting.push(g);
    }
    Ok(CheckReport { lower, upper, faces, supporting, steps: checker.log })
}

/// Reads a graph file (JSON or edge list) and a certificate file, then checks.
pub fn check_files(graph_path: &Path, cert_path: &Path) -> Result<CheckReport> {
    let graph = LabeledGraph::parse_any(&std::fs::read_to_string(graph_path)?)?;
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(cert_path)?)?;
    check_certificate(&graph, &cert)
}

/// Checks every supporting certificate too; returns their certified genera.
pub fn check_supporting(graph: &LabeledGraph, cert: &Value) -> Result<Vec<usize>> {
    let cert = cert.get("bounds").unwrap_or(cert);
    let mut edges = BTreeSet::new();
    for (u, v) in graph.edges() {
        edges.insert((u.min(v), u.max(v)));
    }
    let host = Plain::new(graph.vertex_count(), &edges);
    let mut checker = Checker { host: &host, log: Vec::new(), exhaustive_nodes: 0 };
    match cert.get("supporting").and_then(Value::as_array) {
        None => Ok(Vec::new()),
        Some(list) => list.iter().map(|c| checker.lower(c).map(|(g, _)| g)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn k33() -> LabeledGraph {
        LabeledGraph::complete_bipartite(3, 3)
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler(5, 10, Some(3)), 1);
        assert_eq!(euler(6, 9, Some(4)), 1);
        assert_eq!(euler(10, 25, Some(4)), 3);
        assert_eq!(euler(4, 3, None), 0);
    }

    #[test]
    fn accepts_direct_k33() {
        let g = k33();
        let edges: Vec<[usize; 2]> = g.edges().into_iter().map(|(u, v)| [u, v]).collect();
        let paths: Vec<Vec<usize>> = edges.iter().map(|e| e.to_vec()).collect();
        let cert = json!({
            "lower": 1, "upper": 1,
            "lower_certificate": {"kind": "subdivision", "genus": 1, "witness": {
                "pattern": "K3,3", "pattern_edges": edges, "branch_map": [0,1,2,3,4,5], "paths": paths}},
            "upper_certificate": {"rotation": [[3,4,5],[3,4,5],[3,4,5],[0,1,2],[0,1,2],[0,1,2]], "faces": 3}
        });
        let r = check_certificate(&g, &cert).unwrap();
        assert_eq!((r.lower, r.upper), (1, Some(1)));
    }

    #[test]
    fn rejects_wrong_claims() {
        let g = k33();
        let cert = json!({"lower": 1, "upper": null, "lower_certificate": {"kind": "trivial"}});
        assert!(check_certificate(&g, &cert).is_err());
        let cert = json!({"lower": 0, "upper": 0, "lower_certificate": {"kind": "trivial"},
            "upper_certificate": {"rotation": [[3,4,5],[3,4,5],[3,4,5],[0,1,2],[0,1,2],[0,1,2]], "faces": 3}});
        assert!(check_certificate(&g, &cert).is_err());
        let cert = json!({"lower": 1, "upper": null,
            "lower_certificate": {"kind": "exhaustive", "genus": 2, "edges": [[0,3],[0,4],[0,5],[1,3],[1,4],[1,5],[2,3],[2,4],[2,5]]}});
        assert!(check_certificate(&g, &cert).is_err());
    }

    #[test]
    fn exhaustive_search_matches_known_genera() {
        let k5 = LabeledGraph::complete(5);
        let mut es = BTreeSet::new();
        for (u, v) in k5.edges() {
            es.insert((u, v));
        }
        let p = Plain::new(5, &es);
        assert!(!faces_reachable(&p, 7).0);
        assert!(faces_reachable(&p, 5).0);
    }

    #[test]
    fn blocks_must_be_distinct() {
        // two triangles sharing vertex 0 are separate blocks; a 4-cycle is one
        let a: BTreeSet<Edge> = [(0, 1), (1, 2), (0, 2)].into();
        let b: BTreeSet<Edge> = [(0, 3), (3, 4), (0, 4)].into();
        assert!(check_distinct_blocks(5, &[a, b]).is_ok());
        let c: BTreeSet<Edge> = [(0, 1), (1, 2)].into();
        let d: BTreeSet<Edge> = [(2, 3), (0, 3)].into();
        assert!(check_distinct_blocks(4, &[c, d]).is_err());
    }
}
