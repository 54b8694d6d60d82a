//! Geodesic and resistance metrics on the continuum of a graph.

mod oracle;
mod resistance;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EuclideanGraph, GraphPoint, VertexId};

pub use oracle::oracle_effective_resistance;
pub use resistance::{r_edge, ResistanceContext, DENSE_INVERSE_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Geodesic,
    Resistance,
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricKind::Geodesic => "geodesic",
            MetricKind::Resistance => "resistance",
        })
    }
}

impl FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "geodesic" => Ok(MetricKind::Geodesic),
            "resistance" => Ok(MetricKind::Resistance),
            other => Err(format!("unknown metric `{other}` (expected geodesic or resistance)")),
        }
    }
}

/// Position along the carrying edge as a fraction of its length; 0 at vertices.
pub fn relative_position(g: &EuclideanGraph, p: GraphPoint) -> f64 {
    g.anchors(p).2
}

/// Distances from `p` to the endpoints of its edge (a vertex is its own
/// single endpoint).
fn exits(g: &EuclideanGraph, p: GraphPoint) -> ([(usize, f64); 2], usize) {
    match p {
        GraphPoint::Vertex(v) => ([(v.0, 0.0), (v.0, 0.0)], 1),
        GraphPoint::Edge { edge, offset } => {
            let e = g.edge(edge);
            ([(e.u.0, offset), (e.v.0, e.length - offset)], 2)
        }
    }
}

/// Length of the shortest path between two points.
pub fn geodesic_distance(g: &EuclideanGraph, p: GraphPoint, q: GraphPoint) -> f64 {
    if p == q {
        return 0.0;
    }
    let (p, q) = GraphPoint::ordered(p, q);
    let (pe, np) = exits(g, p);
    let (qe, nq) = exits(g, q);
    let mut best = f64::INFINITY;
    for &(x, dx) in &pe[..np] {
        for &(y, dy) in &qe[..nq] {
            let via = dx + g.vertex_distance(VertexId(x), VertexId(y)) + dy;
            best = best.min(via);
        }
    }
    if let (GraphPoint::Edge { edge: a, offset: s }, GraphPoint::Edge { edge: b, offset: t }) = (p, q) {
        if a == b {
            best = best.min((s - t).abs());
        }
    }
    best
}

pub(crate) fn ensure_distinct(points: &[GraphPoint]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if let Some(j) = points[..i].iter().position(|q| q == p) {
            return Err(Error::DuplicatePoints { first: j, second: i });
        }
    }
    Ok(())
}

fn fill_symmetric(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = f(i, j);
            m[(i, j)] = d;
            m[(j, i)] = d;
        }
    }
    m
}

/// Pairwise geodesic distances; no uniqueness check.
pub fn geodesic_matrix(g: &EuclideanGraph, points: &[GraphPoint]) -> DMatrix<f64> {
    fill_symmetric(points.len(), |i, j| geodesic_distance(g, points[i], points[j]))
}

/// Pairwise distances under `kind` with a zero diagonal. The resistance
/// metric uses a context with the default origin.
pub fn distance_matrix(g: &EuclideanGraph, points: &[GraphPoint], kind: MetricKind) -> Result<DMatrix<f64>> {
    match kind {
        MetricKind::Geodesic => {
            ensure_distinct(points)?;
            Ok(geodesic_matrix(g, points))
        }
        MetricKind::Resistance => ResistanceContext::new(g, None)?.distance_matrix(points, kind),
    }
}

impl ResistanceContext<'_> {
    /// Same as [`distance_matrix`] but reuses this context's factorization.
    pub fn distance_matrix(&self, points: &[GraphPoint], kind: MetricKind) -> Result<DMatrix<f64>> {
        ensure_distinct(points)?;
        Ok(match kind {
            MetricKind::Geodesic => geodesic_matrix(self.graph(), points),
            MetricKind::Resistance => {
                fill_symmetric(points.len(), |i, j| self.resistance_distance(points[i], points[j]))
            }
        })
    }

    pub fn distance(&self, p: GraphPoint, q: GraphPoint, kind: MetricKind) -> f64 {
        match kind {
            MetricKind::Geodesic => geodesic_distance(self.graph(), p, q),
            MetricKind::Resistance => self.resistance_distance(p, q),
        }
    }
}
