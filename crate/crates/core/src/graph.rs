//! Graphs with Euclidean edges.
//!
//! A graph is a finite, simple, connected network whose edges carry a length.
//! Every edge `(u, v)` is identified with the interval `[0, length]`, oriented
//! from `u` to `v`, so any point of the continuum is either a vertex or an
//! `(edge, offset)` pair with the offset strictly inside the interval.
//!
//! Construction validates the graph: the shortest vertex-to-vertex route along
//! the network must equal the edge length for every edge. All-pairs vertex
//! distances are computed once and cached on the graph.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance of the distance-consistency check, scaled by the
/// longest edge.
pub const CONSISTENCY_RTOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: String,
    pub u: VertexId,
    pub v: VertexId,
    pub length: f64,
}

impl Edge {
    /// The endpoint opposite to `w`.
    pub fn other(&self, w: VertexId) -> VertexId {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

/// A location on the graph continuum.
///
/// Boundary offsets never appear here: [`EuclideanGraph::point_on_edge`]
/// maps offsets `0` and `length` to the corresponding vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphPoint {
    Vertex(VertexId),
    Edge { edge: EdgeId, offset: f64 },
}

/// Wire form of a graph: `{"vertices": [...], "edges": [{"id","u","v","length"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub u: String,
    pub v: String,
    pub length: f64,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, u: impl Into<String>, v: impl Into<String>, length: f64) -> Self {
        EdgeSpec {
            id: id.into(),
            u: u.into(),
            v: v.into(),
            length,
        }
    }
}

/// Wire form of a point: `{"vertex":"A"}` or `{"edge":"e1","offset":0.3}`,
/// each with an optional display `label`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Edge {
        edge: String,
        offset: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Vertex {
        vertex: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

impl PointSpec {
    pub fn vertex(name: impl Into<String>) -> Self {
        PointSpec::Vertex {
            vertex: name.into(),
            label: None,
        }
    }

    pub fn on_edge(edge: impl Into<String>, offset: f64) -> Self {
        PointSpec::Edge {
            edge: edge.into(),
            offset,
            label: None,
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            PointSpec::Edge { label, .. } | PointSpec::Vertex { label, .. } => label.as_deref(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EuclideanGraph {
    labels: Vec<String>,
    label_index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeId>,
    adjacency: Vec<Vec<EdgeId>>,
    /// Row-major all-pairs shortest vertex distances.
    apsp: Vec<f64>,
}

impl EuclideanGraph {
    /// Builds and validates a graph from labels and edge records.
    pub fn new(vertices: Vec<String>, edges: Vec<EdgeSpec>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut label_index = HashMap::with_capacity(vertices.len());
        for (i, label) in vertices.iter().enumerate() {
            if label_index.insert(label.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateVertex(label.clone()));
            }
        }

        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut pairs = HashSet::with_capacity(edges.len());
        let mut built = Vec::with_capacity(edges.len());
        for spec in edges {
            let u = *label_index
                .get(&spec.u)
                .ok_or_else(|| Error::UnknownVertex(spec.u.clone()))?;
            let v = *label_index
                .get(&spec.v)
                .ok_or_else(|| Error::UnknownVertex(spec.v.clone()))?;
            if !(spec.length.is_finite() && spec.length > 0.0) {
                return Err(Error::NonPositiveLength {
                    edge: spec.id,
                    length: spec.length,
                });
            }
            if u == v || !pairs.insert((u.min(v), u.max(v))) {
                return Err(Error::MultiEdgeOrLoop { edge: spec.id });
            }
            let id = EdgeId(built.len());
            if edge_index.insert(spec.id.clone(), id).is_some() {
                return Err(Error::DuplicateEdgeId(spec.id));
            }
            adjacency[u.0].push(id);
            adjacency[v.0].push(id);
            built.push(Edge {
                id: spec.id,
                u,
                v,
                length: spec.length,
            });
        }

        let mut graph = EuclideanGraph {
            labels: vertices,
            label_index,
            edges: built,
            edge_index,
            adjacency,
            apsp: Vec::new(),
        };
        graph.check_connected()?;
        graph.apsp = graph.all_pairs_shortest_paths();
        graph.check_distance_consistency()?;
        Ok(graph)
    }

    pub fn from_spec(spec: GraphSpec) -> Result<Self> {
        Self::new(spec.vertices, spec.edges)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    u: self.labels[e.u.0].clone(),
                    v: self.labels[e.v.0].clone(),
                    length: e.length,
                })
                .collect(),
        }
    }

    fn check_connected(&self) -> Result<()> {
        let mut seen = vec![false; self.labels.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(w) = stack.pop() {
            for &e in &self.adjacency[w] {
                let x = self.edges[e.0].other(VertexId(w)).0;
                if !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(i) => Err(Error::NotConnected {
                unreachable: self.labels[i].clone(),
            }),
            None => Ok(()),
        }
    }

    fn check_distance_consistency(&self) -> Result<()> {
        let tol = CONSISTENCY_RTOL * self.max_edge_length();
        for e in &self.edges {
            let shortest = self.vertex_distance(e.u, e.v);
            if shortest < e.length - tol {
                return Err(Error::DistanceInconsistent {
                    edge: e.id.clone(),
                    length: e.length,
                    shortest,
                });
            }
        }
        Ok(())
    }

    fn all_pairs_shortest_paths(&self) -> Vec<f64> {
        let n = self.labels.len();
        let mut out = Vec::with_capacity(n * n);
        for s in 0..n {
            out.extend(self.dijkstra(VertexId(s)));
        }
        // mirror the upper triangle so the table is exactly symmetric
        for i in 0..n {
            for j in 0..i {
                out[i * n + j] = out[j * n + i];
            }
        }
        out
    }

    /// Single-source shortest vertex distances.
    pub fn dijkstra(&self, source: VertexId) -> Vec<f64> {
        #[derive(PartialEq)]
        struct Entry(f64, usize);
        impl Eq for Entry {}
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> Ordering {
                other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
            }
        }

        let mut dist = vec![f64::INFINITY; self.labels.len()];
        let mut heap = BinaryHeap::new();
        dist[source.0] = 0.0;
        heap.push(Entry(0.0, source.0));
        while let Some(Entry(d, w)) = heap.pop() {
            if d > dist[w] {
                continue;
            }
            for &e in &self.adjacency[w] {
                let edge = &self.edges[e.0];
                let x = edge.other(VertexId(w)).0;
                let nd = d + edge.length;
                if nd < dist[x] {
                    dist[x] = nd;
                    heap.push(Entry(nd, x));
                }
            }
        }
        dist
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.labels.len()).map(VertexId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_id(&self, label: &str) -> Result<VertexId> {
        self.label_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn edge_id(&self, id: &str) -> Result<EdgeId> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    /// Cached shortest-path distance between two vertices.
    pub fn vertex_distance(&self, a: VertexId, b: VertexId) -> f64 {
        self.apsp[a.0 * self.labels.len() + b.0]
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).fold(0.0, f64::max)
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// A connected graph is a tree iff it has exactly `|V| - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.labels.len()
    }

    /// Canonical point at `offset` along `edge`, measured from its `u` end.
    pub fn point_on_edge(&self, edge: EdgeId, offset: f64) -> Result<GraphPoint> {
        let e = &self.edges[edge.0];
        if !offset.is_finite() || offset < 0.0 || offset > e.length {
            return Err(Error::OffsetOutOfRange {
                edge: e.id.clone(),
                offset,
                length: e.length,
            });
        }
        Ok(if offset == 0.0 {
            GraphPoint::Vertex(e.u)
        } else if offset == e.length {
            GraphPoint::Vertex(e.v)
        } else {
            GraphPoint::Edge { edge, offset }
        })
    }

    pub fn resolve(&self, spec: &PointSpec) -> Result<GraphPoint> {
        match spec {
            PointSpec::Vertex { vertex, .. } => Ok(GraphPoint::Vertex(self.vertex_id(vertex)?)),
            PointSpec::Edge { edge, offset, .. } => self.point_on_edge(self.edge_id(edge)?, *offset),
        }
    }

    pub fn point_spec(&self, p: GraphPoint) -> PointSpec {
        match p {
            GraphPoint::Vertex(v) => PointSpec::vertex(self.label(v)),
            GraphPoint::Edge { edge, offset } => PointSpec::on_edge(self.edge(edge).id.clone(), offset),
        }
    }

    /// Default display label: the vertex name, or `edge@offset`.
    pub fn point_label(&self, p: GraphPoint) -> String {
        match p {
            GraphPoint::Vertex(v) => self.labels[v.0].clone(),
            GraphPoint::Edge { edge, offset } => format!("{}@{}", self.edges[edge.0].id, offset),
        }
    }

    /// Endpoints `(lower, upper)` of the edge carrying `p` together with the
    /// relative position of `p` along it. A vertex is its own pair with
    /// position 0.
    pub fn anchors(&self, p: GraphPoint) -> (VertexId, VertexId, f64) {
        match p {
            GraphPoint::Vertex(v) => (v, v, 0.0),
            GraphPoint::Edge { edge, offset } => {
                let e = &self.edges[edge.0];
                (e.u, e.v, offset / e.length)
            }
        }
    }

    /// Replaces `edge` by two edges meeting at a new vertex `offset` from its
    /// `u` end. Returns the new graph and the new vertex.
    pub fn split_edge(&self, edge: EdgeId, offset: f64) -> Result<(EuclideanGraph, VertexId)> {
        let e = &self.edges[edge.0];
        if !(offset.is_finite() && offset > 0.0 && offset < e.length) {
            return Err(Error::OffsetOutOfRange {
                edge: e.id.clone(),
                offset,
                length: e.length,
            });
        }
        let mut spec = self.to_spec();
        let label = unique_name(&format!("{}@{}", e.id, offset), |s| {
            self.label_index.contains_key(s)
        });
        let first = unique_name(&format!("{}.a", e.id), |s| self.edge_index.contains_key(s));
        let second = unique_name(&format!("{}.b", e.id), |s| {
            self.edge_index.contains_key(s) || s == first
        });
        let (u, v) = (self.labels[e.u.0].clone(), self.labels[e.v.0].clone());
        spec.vertices.push(label.clone());
        spec.edges[edge.0] = EdgeSpec::new(first, u, label.clone(), offset);
        spec.edges.push(EdgeSpec::new(second, label, v, e.length - offset));
        let g = EuclideanGraph::from_spec(spec)?;
        let new_vertex = VertexId(g.n_vertices() - 1);
        Ok((g, new_vertex))
    }

    /// Removes a degree-two vertex, joining its two edges into one whose
    /// length is their sum.
    pub fn merge_at_degree_two(&self, v: VertexId) -> Result<EuclideanGraph> {
        let incident = &self.adjacency[v.0];
        if incident.len() != 2 {
            return Err(Error::NotDegreeTwo {
                vertex: self.labels[v.0].clone(),
                degree: incident.len(),
            });
        }
        let (e1, e2) = (&self.edges[incident[0].0], &self.edges[incident[1].0]);
        let (a, b) = (e1.other(v), e2.other(v));
        if a == b || self.edges.iter().any(|e| (e.u == a && e.v == b) || (e.u == b && e.v == a)) {
            return Err(Error::WouldCreateMultiEdgeOrLoop {
                vertex: self.labels[v.0].clone(),
            });
        }

        let merged_id = merged_edge_id(&e1.id, &e2.id, |s| {
            self.edge_index.contains_key(s) && s != e1.id && s != e2.id
        });
        let merged = EdgeSpec::new(
            merged_id,
            self.labels[a.0].clone(),
            self.labels[b.0].clone(),
            e1.length + e2.length,
        );

        let (lo, hi) = (incident[0].0.min(incident[1].0), incident[0].0.max(incident[1].0));
        let mut spec = self.to_spec();
        spec.edges.remove(hi);
        spec.edges[lo] = merged;
        spec.vertices.remove(v.0);
        EuclideanGraph::from_spec(spec)
    }
}

impl GraphPoint {
    fn sort_key(self) -> (usize, usize, u64) {
        match self {
            GraphPoint::Vertex(v) => (0, v.0, 0),
            GraphPoint::Edge { edge, offset } => (1, edge.0, offset.to_bits()),
        }
    }

    /// The pair in a fixed order, so pairwise quantities can be evaluated
    /// bit-identically regardless of argument order.
    pub fn ordered(p: GraphPoint, q: GraphPoint) -> (GraphPoint, GraphPoint) {
        if p.sort_key() <= q.sort_key() {
            (p, q)
        } else {
            (q, p)
        }
    }
}

impl fmt::Display for EuclideanGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EuclideanGraph(|V|={}, |E|={})", self.n_vertices(), self.n_edges())
    }
}

fn unique_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}#{k}"))
        .find(|s| !taken(s))
        .expect("unbounded counter")
}

/// Undoes the `.a`/`.b` suffixes added by [`EuclideanGraph::split_edge`]
/// when both halves come from the same parent edge.
fn merged_edge_id(first: &str, second: &str, taken: impl Fn(&str) -> bool) -> String {
    let parent = |s: &str| s.strip_suffix(".a").or_else(|| s.strip_suffix(".b")).map(str::to_string);
    match (parent(first), parent(second)) {
        (Some(p), Some(q)) if p == q && !taken(&p) => p,
        _ => unique_name(&format!("{first}+{second}"), taken),
    }
}
