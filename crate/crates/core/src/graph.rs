//! Finite directed graphs and their paths.
//!
//! Paths compose right to left: a path `e₁e₂…eₙ` requires
//! `s(eᵢ) = r(eᵢ₊₁)`, has range `r(e₁)` and source `s(eₙ)`.

use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate {kind} name '{name}'")]
    DuplicateName { kind: &'static str, name: String },
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("unknown edge '{0}'")]
    UnknownEdge(String),
    #[error("edges {0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("index {0} out of range")]
    OutOfRange(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<String>,
    range: Vec<usize>,
    source: Vec<usize>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    by_range: Vec<Vec<usize>>,
}

pub type EdgeSeq = SmallVec<[u32; 12]>;

/// A composable edge sequence; a length-0 path is a vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Path {
    range: u32,
    source: u32,
    edges: EdgeSeq,
}

impl Path {
    pub fn vertex(v: usize) -> Path {
        Path {
            range: v as u32,
            source: v as u32,
            edges: EdgeSeq::new(),
        }
    }

    pub fn edge(graph: &Graph, e: usize) -> Path {
        Path {
            range: graph.range(e) as u32,
            source: graph.source(e) as u32,
            edges: smallvec::smallvec![e as u32],
        }
    }

    /// Checks composability.
    pub fn new(graph: &Graph, edges: &[usize]) -> Result<Path, GraphError> {
        let Some((&first, _)) = edges.split_first() else {
            return Err(GraphError::OutOfRange(0));
        };
        for &e in edges {
            if e >= graph.num_edges() {
                return Err(GraphError::OutOfRange(e));
            }
        }
        for w in edges.windows(2) {
            if graph.source(w[0]) != graph.range(w[1]) {
                return Err(GraphError::NotComposable(
                    graph.edge_name(w[0]).to_string(),
                    graph.edge_name(w[1]).to_string(),
                ));
            }
        }
        Ok(Path {
            range: graph.range(first) as u32,
            source: graph.source(*edges.last().unwrap()) as u32,
            edges: edges.iter().map(|&e| e as u32).collect(),
        })
    }

    pub(crate) fn from_parts(range: usize, source: usize, edges: EdgeSeq) -> Path {
        Path {
            range: range as u32,
            source: source as u32,
            edges,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self) -> usize {
        self.range as usize
    }

    pub fn source(&self) -> usize {
        self.source as usize
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.edges.iter().map(|&e| e as usize)
    }

    pub fn edge_seq(&self) -> &EdgeSeq {
        &self.edges
    }

    pub fn first_edge(&self) -> Option<usize> {
        self.edges.first().map(|&e| e as usize)
    }

    /// `self · other` when `s(self) = r(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.source != other.range {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path {
            range: self.range,
            source: other.source,
            edges,
        })
    }

    /// The remainder ρ′ with `self = prefix · ρ′`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if self.range != prefix.range || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            range: prefix.source,
            source: self.source,
            edges: self.edges[prefix.edges.len()..].into(),
        })
    }

    /// Splits off the first edge: `self = e · rest`.
    pub fn split_first(&self, graph: &Graph) -> Option<(usize, Path)> {
        let (&e, rest) = self.edges.split_first()?;
        Some((
            e as usize,
            Path {
                range: graph.source(e as usize) as u32,
                source: self.source,
                edges: rest.into(),
            },
        ))
    }

    /// `e · self` when `s(e) = r(self)`.
    pub fn prepend(&self, graph: &Graph, e: usize) -> Option<Path> {
        if graph.source(e) != self.range() {
            return None;
        }
        let mut edges = EdgeSeq::with_capacity(self.edges.len() + 1);
        edges.push(e as u32);
        edges.extend_from_slice(&self.edges);
        Some(Path {
            range: graph.range(e) as u32,
            source: self.source,
            edges,
        })
    }

    /// Splits into the prefix of length `k` and the remainder.
    pub fn split_at(&self, graph: &Graph, k: usize) -> (Path, Path) {
        assert!(k <= self.len());
        if k == 0 {
            return (Path::vertex(self.range()), self.clone());
        }
        let mid = graph.source(self.edges[k - 1] as usize) as u32;
        (
            Path {
                range: self.range,
                source: mid,
                edges: self.edges[..k].into(),
            },
            Path {
                range: mid,
                source: self.source,
                edges: self.edges[k..].into(),
            },
        )
    }
}

impl Graph {
    pub fn new<S: Into<String>>(
        vertices: Vec<S>,
        edges: Vec<(S, S, S)>,
    ) -> Result<Graph, GraphError> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateName {
                    kind: "vertex",
                    name: v.clone(),
                });
            }
        }
        let mut names = Vec::new();
        let mut range = Vec::new();
        let mut source = Vec::new();
        let mut edge_index = HashMap::new();
        for (name, r, s) in edges {
            let (name, r, s): (String, String, String) = (name.into(), r.into(), s.into());
            let ri = *vertex_index.get(&r).ok_or(GraphError::UnknownVertex(r))?;
            let si = *vertex_index.get(&s).ok_or(GraphError::UnknownVertex(s))?;
            if edge_index.insert(name.clone(), names.len()).is_some() {
                return Err(GraphError::DuplicateName {
                    kind: "edge",
                    name,
                });
            }
            names.push(name);
            range.push(ri);
            source.push(si);
        }
        let mut by_range = vec![Vec::new(); vertices.len()];
        for (e, &r) in range.iter().enumerate() {
            by_range[r].push(e);
        }
        Ok(Graph {
            vertices,
            edges: names,
            range,
            source,
            vertex_index,
            edge_index,
            by_range,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn range(&self, e: usize) -> usize {
        self.range[e]
    }

    pub fn source(&self, e: usize) -> usize {
        self.source[e]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, GraphError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn edge_index(&self, name: &str) -> Result<usize, GraphError> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(name.to_string()))
    }

    /// Edges with range `v`, i.e. r⁻¹(v).
    pub fn edges_into(&self, v: usize) -> &[usize] {
        &self.by_range[v]
    }

    /// All composable paths of length ≤ `max_len`, vertices first, then by
    /// length and lexicographically by edge index.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.num_vertices()).map(Path::vertex).collect();
        let mut layer: Vec<Path> = Vec::new();
        if max_len >= 1 {
            layer = (0..self.num_edges()).map(|e| Path::edge(self, e)).collect();
        }
        for _ in 1..max_len {
            out.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for p in &layer {
                for e in 0..self.num_edges() {
                    if self.range(e) == p.source() {
                        let mut edges = p.edges.clone();
                        edges.push(e as u32);
                        next.push(Path {
                            range: p.range,
                            source: self.source(e) as u32,
                            edges,
                        });
                    }
                }
            }
            layer = next;
        }
        if max_len >= 1 {
            out.extend(layer);
        }
        out
    }

    /// (regular vertices r(E¹), sources), both ascending.
    pub fn classify_vertices(&self) -> (Vec<usize>, Vec<usize>) {
        (0..self.num_vertices()).partition(|&v| !self.by_range[v].is_empty())
    }

    pub fn is_regular(&self, v: usize) -> bool {
        !self.by_range[v].is_empty()
    }

    /// Always true: only finite graphs are represented.
    pub fn is_row_finite(&self) -> bool {
        true
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.is_vertex() {
            return self.vertex_name(p.range()).to_string();
        }
        let compact = p.edges().all(|e| self.edge_name(e).chars().count() == 1);
        let names = p.edges().map(|e| self.edge_name(e));
        if compact {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(".")
        }
    }

    /// Parses a path label: a vertex name, or edge names separated by `.`;
    /// when every edge name is a single character the separators may be
    /// omitted.
    pub fn parse_path(&self, text: &str) -> Result<Path, GraphError> {
        let t = text.trim();
        if let Ok(v) = self.vertex_index(t) {
            return Ok(Path::vertex(v));
        }
        let parts: Vec<&str> = if t.contains('.') {
            t.split('.').collect()
        } else if self.edge_index(t).is_ok() {
            vec![t]
        } else {
            t.char_indices().map(|(i, c)| &t[i..i + c.len_utf8()]).collect()
        };
        let edges = parts
            .iter()
            .map(|p| self.edge_index(p))
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(self, &edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph({} vertices, {} edges)", self.num_vertices(), self.num_edges())
    }
}
