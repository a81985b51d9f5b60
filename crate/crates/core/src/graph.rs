//! Simple undirected graphs with labelled vertices, stored as dense
//! adjacency bitsets, plus their JSON and DOT forms.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    name: String,
    labels: Vec<String>,
    adj: Vec<BitSet>,
}

impl LabeledGraph {
    pub fn new(labels: Vec<String>) -> Self {
        let n = labels.len();
        LabeledGraph { name: String::new(), labels, adj: vec![BitSet::new(n); n] }
    }

    /// Graph on `n` vertices labelled `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::with_vertices(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// `K_{m,n}` with parts `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        Self::from_edges(m + n, (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))))
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count()).sum::<usize>() / 2
    }

    /// Adds `{u, v}`; loops are ignored. Returns true if the edge is new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        self.adj[v].insert(u);
        self.adj[u].insert(v)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbor_set(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Connected components in order of their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> LabeledGraph {
        let mut g = LabeledGraph::new(vertices.iter().map(|&v| self.labels[v].clone()).collect());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Subgraph on the endpoints of `edges` (renumbered in increasing order
    /// of original index). Returns the subgraph and the original indices.
    pub fn edge_subgraph(&self, edges: &[(usize, usize)]) -> (LabeledGraph, Vec<usize>) {
        let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let pos = |x: usize| verts.binary_search(&x).unwrap();
        let mut g = LabeledGraph::new(verts.iter().map(|&v| self.labels[v].clone()).collect());
        for &(u, v) in edges {
            g.add_edge(pos(u), pos(v));
        }
        (g, verts)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            version: GRAPH_SCHEMA_VERSION,
            name: self.name.clone(),
            vertices: self.labels.clone(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        if doc.version != GRAPH_SCHEMA_VERSION {
            return Err(Error::MalformedGraph(format!("unsupported schema version {}", doc.version)));
        }
        let n = doc.vertices.len();
        let mut g = LabeledGraph::new(doc.vertices.clone()).named(doc.name.clone());
        for &[u, v] in &doc.edges {
            if u >= n || v >= n {
                return Err(Error::MalformedGraph(format!("edge [{u},{v}] out of range")));
            }
            if u == v {
                return Err(Error::MalformedGraph(format!("loop at vertex {u}")));
            }
            if !g.add_edge(u, v) {
                return Err(Error::MalformedGraph(format!("repeated edge [{u},{v}]")));
            }
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graph serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_document(&serde_json::from_str(text)?)
    }

    pub fn to_dot(&self) -> String {
        let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
        let mut out = format!("graph \"{}\" {{\n", esc(&self.name));
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{}\"];", esc(l));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Parses a whitespace-separated edge list, one `u v` pair per line.
    /// Blank lines and lines starting with `#` are skipped; the vertex count
    /// is one more than the largest index unless a `n <count>` line is given.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::MalformedGraph(format!("line {}: `{line}`", lineno + 1));
            match parts.as_slice() {
                ["n", c] => n = n.max(c.parse().map_err(|_| bad())?),
                [a, b] => {
                    let u: usize = a.parse().map_err(|_| bad())?;
                    let v: usize = b.parse().map_err(|_| bad())?;
                    if u == v {
                        return Err(bad());
                    }
                    n = n.max(u + 1).max(v + 1);
                    edges.push((u, v));
                }
                _ => return Err(bad()),
            }
        }
        Ok(Self::from_edges(n, edges))
    }

    /// Reads either the JSON document form or a plain edge list.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_edge_list(text)
        }
    }
}

pub const GRAPH_SCHEMA_VERSION: u32 = 1;

/// JSON form of a graph: `{"version":1,"name":..,"vertices":[labels],"edges":[[i,j],..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub version: u32,
    #[serde(default)]
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

pub fn export_graph(g: &LabeledGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => g.to_dot(),
        GraphFormat::Json => g.to_json(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_json() {
        let g = LabeledGraph::with_vertices(0);
        let doc: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(doc["vertices"].as_array().unwrap().len(), 0);
        assert_eq!(doc["edges"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn single_edge_dot() {
        let g = LabeledGraph::from_edges(2, [(0, 1)]).named("K2");
        let dot = g.to_dot();
        assert_eq!(dot.matches("--").count(), 1);
        assert!(dot.starts_with("graph \"K2\" {"));
    }

    #[test]
    fn unknown_format() {
        assert!(matches!("svg".parse::<GraphFormat>(), Err(Error::UnknownFormat(_))));
        assert_eq!("DOT".parse::<GraphFormat>().unwrap(), GraphFormat::Dot);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = r#"{"version":1,"vertices":["a","b"],"edges":[[0,2]]}"#;
        assert!(LabeledGraph::from_json(bad).is_err());
        let dup = r#"{"version":1,"vertices":["a","b"],"edges":[[0,1],[1,0]]}"#;
        assert!(LabeledGraph::from_json(dup).is_err());
        let ver = r#"{"version":9,"vertices":[],"edges":[]}"#;
        assert!(LabeledGraph::from_json(ver).is_err());
    }

    #[test]
    fn edge_list() {
        let g = LabeledGraph::parse_any("# K3\n0 1\n1 2\n2 0\nn 4\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn constructors() {
        assert_eq!(LabeledGraph::complete(5).edge_count(), 10);
        assert_eq!(LabeledGraph::complete_bipartite(5, 4).edge_count(), 20);
        assert_eq!(LabeledGraph::cycle(5).edge_count(), 5);
        assert!(LabeledGraph::path(4).is_connected());
    }
}
