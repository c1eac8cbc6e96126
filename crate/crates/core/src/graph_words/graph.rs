use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertices are stored as positions in the declared vertex list, so the
/// natural order on `Vertex` is the graph's total order.
pub type Vertex = usize;

/// Undirected loop-free graph with a fixed total order on its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    adj: Vec<Vec<bool>>,
}

/// On-disk form: `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

impl SimplicialGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(',') {
                return Err(Error::InvalidGraph(format!("bad vertex name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{n}`")));
            }
        }
        let mut adj = vec![vec![false; names.len()]; names.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index.get(a).ok_or_else(|| {
                Error::InvalidGraph(format!("edge endpoint `{a}` is not a vertex"))
            })?;
            let v = *index.get(b).ok_or_else(|| {
                Error::InvalidGraph(format!("edge endpoint `{b}` is not a vertex"))
            })?;
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at `{a}`")));
            }
            if adj[u][v] {
                return Err(Error::InvalidGraph(format!("duplicate edge `{a}`-`{b}`")));
            }
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Ok(SimplicialGraph { names, index, adj })
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let edges: Vec<(&str, &str)> = spec
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let vertices: Vec<&str> = spec.vertices.iter().map(String::as_str).collect();
        Self::new(&vertices, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GraphSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> GraphSpec {
        let mut edges = Vec::new();
        for u in 0..self.len() {
            for v in u + 1..self.len() {
                if self.adj[u][v] {
                    edges.push([self.names[u].clone(), self.names[v].clone()]);
                }
            }
        }
        GraphSpec {
            vertices: self.names.clone(),
            edges,
        }
    }

    /// Vertices named `1..=n` with no edges.
    pub fn edgeless(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        Self::new::<String>(&names, &[]).expect("edgeless graph")
    }

    pub fn complete(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
        Self::new(&names, &edges).expect("complete graph")
    }

    /// The n-cycle on vertices `1..=n` (n ≥ 3).
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let edges: Vec<(String, String)> = (0..n)
            .map(|i| (names[i].clone(), names[(i + 1) % n].clone()))
            .collect();
        Self::new(&names, &edges).expect("cycle graph")
    }

    pub fn pentagon() -> Self {
        Self::cycle(5)
    }

    /// Build from an adjacency predicate on `0..n`; vertices are named `1..=n`.
    pub fn from_adjacency(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    edges.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        Self::new(&names, &edges).expect("adjacency graph")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u][v]
    }

    #[inline]
    pub fn in_star(&self, center: Vertex, u: Vertex) -> bool {
        center == u || self.adj[center][u]
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.iter().filter(|&&b| b).count())
            .sum::<usize>()
            / 2
    }

    pub fn link(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        Ok(self.vertices().filter(|&u| self.adj[v][u]).collect())
    }

    pub fn star(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        Ok(self.vertices().filter(|&u| self.in_star(v, u)).collect())
    }

    /// All complete subgraphs on exactly `s` vertices, each listed in
    /// increasing order; `s = 0` yields the single empty clique.
    pub fn cliques(&self, s: usize) -> Vec<Vec<Vertex>> {
        fn grow(
            g: &SimplicialGraph,
            s: usize,
            from: Vertex,
            cur: &mut Vec<Vertex>,
            out: &mut Vec<Vec<Vertex>>,
        ) {
            if cur.len() == s {
                out.push(cur.clone());
                return;
            }
            for v in from..g.len() {
                if cur.iter().all(|&u| g.adj[u][v]) {
                    cur.push(v);
                    grow(g, s, v + 1, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        grow(self, s, 0, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.adj[u][v]))
    }

    /// Parse a comma separated list of vertex names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Vertex>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        text.split(',').map(|s| self.vertex(s.trim())).collect()
    }

    pub fn format_word(&self, w: &[Vertex]) -> String {
        w.iter()
            .map(|&v| self.names[v].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parse a vertex subset given by names; duplicates are rejected.
    pub fn parse_subset(&self, names: &[String]) -> Result<Vec<Vertex>> {
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let v = self.vertex(n)?;
            if out.contains(&v) {
                return Err(Error::InvalidGraph(format!("vertex `{n}` listed twice")));
            }
            out.push(v);
        }
        out.sort_unstable();
        Ok(out)
    }
}
