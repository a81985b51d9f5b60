//! Certified genus intervals.
//!
//! Each block is handled on its own: an Euler bound first, then an embedding
//! search for the upper end, then progressively stronger lower certificates
//! (subdivisions of model graphs, glued model gadgets whose pieces fall into
//! distinct blocks, Euler bounds on contraction minors) until the interval
//! closes or the budget runs out. Block results add up.

use serde::{Deserialize, Serialize};

use super::blocks::{blocks, euler_bound_from, girth};
use super::embed::embed_best;
use super::faces::{max_faces_at_least, FaceSearch};
use super::formula::named_genus;
use super::minor::best_contraction_minor;
use super::rotation::{merge_rotations, trace_faces, RotationSystem};
use super::subdivision::{find_subdivision, pattern_graph, SubdivisionOptions, SubdivisionWitness};
use super::Budget;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Why the genus is at least some value. Vertex indices refer to the host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LowerCertificate {
    /// Genus 0 needs no evidence.
    Trivial,
    /// Euler bound of the connected subgraph spanned by `edges`.
    EulerBound { edges: Vec<[usize; 2]>, girth: Option<usize>, genus: usize },
    /// A subdivision of a model graph of known genus.
    Subdivision { witness: SubdivisionWitness, genus: usize },
    /// Euler bound of the minor obtained from the subgraph spanned by `edges`
    /// by merging each listed pair in turn.
    Minor { edges: Vec<[usize; 2]>, contractions: Vec<[usize; 2]>, girth: Option<usize>, genus: usize },
    /// The subgraph spanned by `edges` has no embedding of genus below
    /// `genus`, as established by an exhaustive search that the checker
    /// repeats independently.
    Exhaustive { edges: Vec<[usize; 2]>, genus: usize },
    /// Certificates whose subgraphs lie in pairwise distinct blocks of their union.
    BlockSum { parts: Vec<LowerCertificate>, genus: usize },
}

impl LowerCertificate {
    pub fn genus(&self) -> usize {
        match self {
            LowerCertificate::Trivial => 0,
            LowerCertificate::EulerBound { genus, .. }
            | LowerCertificate::Subdivision { genus, .. }
            | LowerCertificate::Minor { genus, .. }
            | LowerCertificate::Exhaustive { genus, .. }
            | LowerCertificate::BlockSum { genus, .. } => *genus,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LowerCertificate::Trivial => "trivial",
            LowerCertificate::EulerBound { .. } => "euler_bound",
            LowerCertificate::Subdivision { .. } => "subdivision",
            LowerCertificate::Minor { .. } => "minor",
            LowerCertificate::Exhaustive { .. } => "exhaustive",
            LowerCertificate::BlockSum { .. } => "block_sum",
        }
    }

    /// Every subdivision witness inside this certificate.
    pub fn witnesses(&self) -> Vec<&SubdivisionWitness> {
        match self {
            LowerCertificate::Subdivision { witness, .. } => vec![witness],
            LowerCertificate::BlockSum { parts, .. } => parts.iter().flat_map(|p| p.witnesses()).collect(),
            _ => Vec::new(),
        }
    }

    fn relabel(&self, map: &[usize]) -> Self {
        let edges = |es: &[[usize; 2]]| -> Vec<[usize; 2]> {
            let mut out: Vec<[usize; 2]> = es
                .iter()
                .map(|&[u, v]| [map[u].min(map[v]), map[u].max(map[v])])
                .collect();
            out.sort_unstable();
            out
        };
        match self {
            LowerCertificate::Trivial => LowerCertificate::Trivial,
            LowerCertificate::Exhaustive { edges: es, genus } => {
                LowerCertificate::Exhaustive { edges: edges(es), genus: *genus }
            }
            LowerCertificate::EulerBound { edges: es, girth, genus } => {
                LowerCertificate::EulerBound { edges: edges(es), girth: *girth, genus: *genus }
            }
            LowerCertificate::Subdivision { witness, genus } => {
                LowerCertificate::Subdivision { witness: witness.relabel(map), genus: *genus }
            }
            LowerCertificate::Minor { edges: es, contractions, girth, genus } => LowerCertificate::Minor {
                edges: edges(es),
                contractions: contractions.iter().map(|&[u, v]| [map[u], map[v]]).collect(),
                girth: *girth,
                genus: *genus,
            },
            LowerCertificate::BlockSum { parts, genus } => LowerCertificate::BlockSum {
                parts: parts.iter().map(|p| p.relabel(map)).collect(),
                genus: *genus,
            },
        }
    }
}

/// An embedding witnessing the upper bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperCertificate {
    pub rotation: RotationSystem,
    pub faces: usize,
}

/// A certified interval for the orientable genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusBounds {
    #[serde(default = "certificate_version")]
    pub version: u32,
    pub lower: usize,
    /// `None` when no embedding was found within budget.
    pub upper: Option<usize>,
    pub lower_certificate: LowerCertificate,
    pub upper_certificate: Option<UpperCertificate>,
    /// Further lower certificates found along the way (weaker or equal to the main one).
    #[serde(default)]
    pub supporting: Vec<LowerCertificate>,
    /// Search diagnostics, e.g. which certificate searches ran out of budget.
    #[serde(default)]
    pub notes: Vec<String>,
}

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

fn certificate_version() -> u32 {
    CERTIFICATE_SCHEMA_VERSION
}

impl GenusBounds {
    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }
}

/// Several model graphs glued at single vertices along a tree, so each model
/// is its own block and the gadget's genus is the sum of theirs. A model name
/// ending in `'` has its first edge subdivided once; the new vertex gets the
/// next free model index and may serve as a glue point.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub name: String,
    pub graph: LabeledGraph,
    pub pieces: Vec<Piece>,
}

#[derive(Clone, Debug)]
pub struct Piece {
    pub model: String,
    /// Gadget vertex of each model vertex.
    pub map: Vec<usize>,
    /// The subdivided model edge and the gadget vertex splitting it.
    pub split: Option<((usize, usize), usize)>,
}

impl Gadget {
    /// Glues `models` in order; `joins[i] = (earlier model, its vertex, vertex of model i+1)`.
    pub fn glue(models: &[&str], joins: &[(usize, usize, usize)]) -> Gadget {
        let joins: Vec<_> = joins.iter().copied().map(Some).collect();
        Self::build(models, &joins)
    }

    /// Models side by side with nothing shared.
    pub fn disjoint(models: &[&str]) -> Gadget {
        Self::build(models, &vec![None; models.len() - 1])
    }

    fn build(models: &[&str], joins: &[Option<(usize, usize, usize)>]) -> Gadget {
        assert_eq!(joins.len() + 1, models.len());
        let mut pieces: Vec<Piece> = Vec::new();
        let mut full_maps: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        let mut edges = Vec::new();
        for (i, m) in models.iter().enumerate() {
            let base = m.trim_end_matches('\'');
            let p = pattern_graph(base).expect("model name");
            let mut pedges = p.edges();
            let k = p.vertex_count();
            let split_edge = (base != *m).then(|| pedges.remove(0));
            if let Some((u, v)) = split_edge {
                pedges.push((u, k));
                pedges.push((k, v));
            }
            let total = k + usize::from(split_edge.is_some());
            let shared = if i == 0 { None } else { joins[i - 1] };
            let mut map: Vec<usize> = Vec::with_capacity(total);
            for v in 0..total {
                match shared {
                    Some((j, theirs, mine)) if mine == v => map.push(full_maps[j][theirs]),
                    _ => {
                        map.push(next);
                        next += 1;
                    }
                }
            }
            edges.extend(pedges.iter().map(|&(u, v)| (map[u], map[v])));
            pieces.push(Piece {
                model: base.to_string(),
                map: map[..k].to_vec(),
                split: split_edge.map(|e| (e, map[k])),
            });
            full_maps.push(map);
        }
        let name = models.join("+");
        let graph = LabeledGraph::from_edges(next, edges).named(name.clone());
        Gadget { name, graph, pieces }
    }

    pub fn genus(&self) -> usize {
        self.pieces.iter().map(|p| named_genus(&p.model).unwrap()).sum()
    }

    /// Splits a witness for the whole gadget into one witness per model.
    pub fn split(&self, w: &SubdivisionWitness) -> Vec<SubdivisionWitness> {
        let path_between = |a: usize, b: usize| -> Vec<usize> {
            let i = w
                .pattern_edges
                .iter()
                .position(|e| (e[0], e[1]) == (a, b) || (e[0], e[1]) == (b, a))
                .expect("gadget edge");
            let mut path = w.paths[i].clone();
            if w.pattern_edges[i][0] != a {
                path.reverse();
            }
            path
        };
        self.pieces
            .iter()
            .map(|piece| {
                let p = pattern_graph(&piece.model).unwrap();
                let pattern_edges: Vec<[usize; 2]> = p.edges().into_iter().map(|(u, v)| [u, v]).collect();
                let paths = pattern_edges
                    .iter()
                    .map(|&[u, v]| {
                        let (a, b) = (piece.map[u], piece.map[v]);
                        match piece.split {
                            Some(((su, sv), mid)) if (su, sv) == (u, v) => {
                                let mut path = path_between(a, mid);
                                path.extend_from_slice(&path_between(mid, b)[1..]);
                                path
                            }
                            _ => path_between(a, b),
                        }
                    })
                    .collect();
                SubdivisionWitness {
                    pattern: piece.model.clone(),
                    pattern_edges,
                    branch_map: piece.map.iter().map(|&v| w.branch_map[v]).collect(),
                    paths,
                }
            })
            .collect()
    }
}

/// Single models and gadgets tried as lower certificates.
pub fn candidate_patterns() -> Vec<Gadget> {
    let mut out = vec![
        Gadget::glue(&["K3,3"], &[]),
        Gadget::glue(&["K5"], &[]),
        Gadget::glue(&["K5,4"], &[]),
        Gadget::glue(&["K5,5"], &[]),
    ];
    // two genus-one models meeting in one vertex, which is a branch vertex
    // or an interior path vertex on either side
    for (a, b) in [("K3,3", "K3,3"), ("K5", "K3,3"), ("K5", "K5")] {
        out.push(Gadget::glue(&[a, b], &[(0, 0, 0)]));
        let (a2, b2) = (format!("{a}'"), format!("{b}'"));
        let ka = pattern_graph(a).unwrap().vertex_count();
        let kb = pattern_graph(b).unwrap().vertex_count();
        out.push(Gadget::glue(&[a, &b2], &[(0, 0, kb)]));
        if a != b {
            out.push(Gadget::glue(&[&a2, b], &[(0, ka, 0)]));
        }
        out.push(Gadget::glue(&[&a2, &b2], &[(0, ka, kb)]));
    }
    out.extend([
        Gadget::disjoint(&["K5", "K5"]),
        Gadget::disjoint(&["K5", "K3,3"]),
        Gadget::disjoint(&["K3,3", "K3,3"]),
        Gadget::glue(&["K3,3", "K3,3", "K3,3"], &[(0, 0, 0), (1, 1, 0)]),
        Gadget::glue(&["K3,3", "K3,3", "K3,3"], &[(0, 0, 0), (1, 3, 0)]),
        Gadget::glue(&["K3,3", "K3,3", "K3,3"], &[(0, 0, 0), (0, 0, 0)]),
        Gadget::glue(&["K5,4", "K3,3"], &[(0, 0, 0)]),
        Gadget::glue(&["K5,4", "K3,3"], &[(0, 5, 0)]),
    ]);
    out
}

fn edge_list(g: &LabeledGraph) -> Vec<[usize; 2]> {
    g.edges().into_iter().map(|(u, v)| [u, v]).collect()
}

/// Certificate for a gadget witness.
fn gadget_certificate(gadget: &Gadget, w: &SubdivisionWitness) -> LowerCertificate {
    let pieces = gadget.split(w);
    if pieces.len() == 1 {
        let genus = named_genus(&pieces[0].pattern).unwrap();
        return LowerCertificate::Subdivision { witness: pieces.into_iter().next().unwrap(), genus };
    }
    let parts: Vec<LowerCertificate> = pieces
        .into_iter()
        .map(|p| {
            let genus = named_genus(&p.pattern).unwrap();
            LowerCertificate::Subdivision { witness: p, genus }
        })
        .collect();
    LowerCertificate::BlockSum { genus: parts.iter().map(|p| p.genus()).sum(), parts }
}

/// Face-search steps allowed per budget node; a step is far cheaper than an
/// annealing move or a rotation-search node.
const FACE_NODES_PER_NODE: u64 = 20;

/// Blocks with more edges skip the face search.
const FACE_SEARCH_MAX_EDGES: usize = 96;

struct BlockResult {
    lower: LowerCertificate,
    supporting: Vec<LowerCertificate>,
    upper: Option<(usize, RotationSystem)>,
}

/// Bounds for one biconnected graph (local vertex indices).
fn block_bounds(h: &LabeledGraph, budget: &Budget, notes: &mut Vec<String>, tag: &str) -> BlockResult {
    let gi = girth(h);
    let euler = euler_bound_from(h.vertex_count(), h.edge_count(), gi);
    let mut lower = if euler > 0 {
        LowerCertificate::EulerBound { edges: edge_list(h), girth: gi, genus: euler }
    } else {
        LowerCertificate::Trivial
    };
    let mut supporting = Vec::new();

    // a cheap first embedding tells the certificate search how far to reach
    let quick = Budget { nodes: (budget.nodes / 20).max(1), ..budget.clone() };
    let mut emb = embed_best(h, lower.genus(), &quick);
    let mut patterns = candidate_patterns();
    patterns.sort_by_key(|p| std::cmp::Reverse(p.genus()));
    let mut tried = vec![false; patterns.len()];
    let mut minor_tried = 0;
    for round in 0..2 {
        while lower.genus() < emb.genus {
            let cert = pattern_certificate(h, &patterns, &mut tried, lower.genus(), emb.genus, budget, notes, tag);
            let cert = match cert {
                Some(c) => Some(c),
                None if minor_tried < emb.genus => {
                    minor_tried = emb.genus;
                    minor_certificate(h, lower.genus(), emb.genus, budget, notes, tag)
                }
                None => None,
            };
            match cert {
                Some(c) => supporting.push(std::mem::replace(&mut lower, c)),
                None => break,
            }
        }
        if round == 0 && lower.genus() < emb.genus && !emb.optimal {
            let full = embed_best(h, lower.genus(), budget);
            if full.genus < emb.genus || full.optimal {
                emb = full;
            }
        }
    }
    if emb.optimal && lower.genus() < emb.genus {
        notes.push(format!("{tag}: rotation branch-and-bound proves genus {}", emb.genus));
        supporting.push(std::mem::replace(&mut lower, LowerCertificate::Exhaustive { edges: edge_list(h), genus: emb.genus }));
    }
    // last resort: decide genus <= lower outright by building faces exhaustively
    if lower.genus() < emb.genus && h.edge_count() > FACE_SEARCH_MAX_EDGES {
        notes.push(format!(
            "{tag}: {} edges is past the face-search limit of {FACE_SEARCH_MAX_EDGES}; gap [{}, {}] remains",
            h.edge_count(),
            lower.genus(),
            emb.genus
        ));
    }
    while lower.genus() < emb.genus && h.edge_count() <= FACE_SEARCH_MAX_EDGES {
        let (v, e) = (h.vertex_count(), h.edge_count());
        let want = 2 + e - v - 2 * lower.genus();
        let limit = budget.nodes.saturating_mul(FACE_NODES_PER_NODE);
        match max_faces_at_least(h, want, limit, budget.deadline()).0 {
            FaceSearch::Impossible => {
                let c = LowerCertificate::Exhaustive { edges: edge_list(h), genus: lower.genus() + 1 };
                supporting.push(std::mem::replace(&mut lower, c));
            }
            FaceSearch::Found(rot) => {
                emb.genus = lower.genus();
                emb.rotation = rot;
            }
            FaceSearch::Unknown => {
                notes.push(format!(
                    "{tag}: exhaustive face search for genus {} ran out of budget; gap [{}, {}] remains",
                    lower.genus(),
                    lower.genus(),
                    emb.genus
                ));
                break;
            }
        }
    }
    let upper = emb.genus;
    supporting.retain(|c| !matches!(c, LowerCertificate::Trivial));
    BlockResult { lower, supporting, upper: Some((upper, emb.rotation)) }
}

/// Strongest untried pattern with genus in `(lower, upper]` that the graph contains.
#[allow(clippy::too_many_arguments)]
fn pattern_certificate(
    h: &LabeledGraph,
    patterns: &[Gadget],
    tried: &mut [bool],
    lower: usize,
    upper: usize,
    budget: &Budget,
    notes: &mut Vec<String>,
    tag: &str,
) -> Option<LowerCertificate> {
    let nodes = (budget.nodes / 10).max(10_000);
    for (i, gadget) in patterns.iter().enumerate() {
        let gg = gadget.genus();
        if tried[i] || gg <= lower || gg > upper {
            continue;
        }
        tried[i] = true;
        let opts = SubdivisionOptions { nodes: Some(nodes), deadline: budget.deadline(), ..Default::default() };
        match find_subdivision(h, &gadget.graph, &opts) {
            Ok(Some(w)) => return Some(gadget_certificate(gadget, &w)),
            Ok(None) => notes.push(format!("{tag}: no {} subdivision exists", gadget.name)),
            Err(_) => notes.push(format!("{tag}: {} subdivision search ran out of budget", gadget.name)),
        }
    }
    None
}

fn minor_certificate(
    h: &LabeledGraph,
    lower: usize,
    upper: usize,
    budget: &Budget,
    notes: &mut Vec<String>,
    tag: &str,
) -> Option<LowerCertificate> {
    match best_contraction_minor(h, upper, budget) {
        Some(m) if m.bound > lower => Some(LowerCertificate::Minor {
            edges: edge_list(h),
            contractions: m.contractions.iter().map(|&(u, v)| [u, v]).collect(),
            girth: m.girth,
            genus: m.bound,
        }),
        _ => {
            notes.push(format!("{tag}: contraction minors gave no bound above {lower}"));
            None
        }
    }
}

/// Certified genus interval of any simple graph.
pub fn genus_bounds(g: &LabeledGraph, budget: &Budget) -> Result<GenusBounds> {
    let n = g.vertex_count();
    let mut notes = Vec::new();
    let mut lowers = Vec::new();
    let mut supporting = Vec::new();
    let mut uppers: Vec<(Vec<usize>, RotationSystem)> = Vec::new();
    let mut upper_total = Some(0usize);
    for (bi, b) in blocks(g).iter().enumerate() {
        if b.edges.len() < 3 {
            // a bridge
            let map = b.vertices.clone();
            let local = g.induced(&map);
            uppers.push((map, RotationSystem::identity(&local)));
            continue;
        }
        let (sub, map) = g.edge_subgraph(&b.edges);
        let res = block_bounds(&sub, budget, &mut notes, &format!("block {bi}"));
        if res.lower.genus() > 0 {
            lowers.push(res.lower.relabel(&map));
        }
        supporting.extend(res.supporting.iter().map(|c| c.relabel(&map)));
        match res.upper {
            Some((u, rot)) => {
                upper_total = upper_total.map(|t| t + u);
                uppers.push((map, rot));
            }
            None => upper_total = None,
        }
    }
    let lower_certificate = match lowers.len() {
        0 => LowerCertificate::Trivial,
        1 => lowers.pop().unwrap(),
        _ => LowerCertificate::BlockSum { genus: lowers.iter().map(|c| c.genus()).sum(), parts: lowers },
    };
    let lower = lower_certificate.genus();
    let upper_certificate = match upper_total {
        Some(_) => {
            let rotation = merge_rotations(n, &uppers);
            let trace = trace_faces(g, &rotation)?;
            Some(UpperCertificate { faces: trace.face_count(), rotation })
        }
        None => None,
    };
    let upper = upper_certificate.as_ref().map(|_| upper_total.unwrap());
    if let Some(u) = upper {
        if u < lower {
            return Err(Error::Certificate(format!("upper bound {u} below lower bound {lower}")));
        }
    }
    Ok(GenusBounds { version: CERTIFICATE_SCHEMA_VERSION, lower, upper, lower_certificate, upper_certificate, supporting, notes })
}
