//! The resistance metric as the variogram of the canonical Gaussian field.
//!
//! The field is a vertex Gaussian with covariance `L⁻¹`, linearly
//! interpolated along edges, plus an independent Brownian bridge on every
//! edge. `L` is the weighted graph Laplacian (conductance `1/length`) with 1
//! added at the origin vertex, which makes it strictly positive definite.

use std::cmp::Ordering;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::error::{Error, Result};
use crate::graph::{EuclideanGraph, GraphPoint, VertexId};
use crate::metrics::geodesic_distance;

/// Largest vertex count for which `L⁻¹` is materialized; larger graphs solve
/// against the Cholesky factor on demand.
pub const DENSE_INVERSE_LIMIT: usize = 2000;

pub struct ResistanceContext<'g> {
    graph: &'g EuclideanGraph,
    origin: VertexId,
    laplacian: DMatrix<f64>,
    factor: Cholesky<f64, Dyn>,
    inverse: Option<DMatrix<f64>>,
}

impl<'g> ResistanceContext<'g> {
    /// Assembles and factors `L`. The origin defaults to the vertex with the
    /// lexicographically smallest label.
    pub fn new(graph: &'g EuclideanGraph, origin: Option<VertexId>) -> Result<Self> {
        let origin = origin.unwrap_or_else(|| {
            graph
                .vertices()
                .min_by(|&a, &b| graph.label(a).cmp(graph.label(b)))
                .expect("graph has at least one vertex")
        });
        let laplacian = assemble_laplacian(graph, origin);
        let factor = Cholesky::new(laplacian.clone()).ok_or(Error::FactorizationFailed)?;
        // positive pivots certify strict positive definiteness
        if factor.l_dirty().diagonal().iter().any(|&d| !d.is_finite() || d <= 0.0) {
            return Err(Error::FactorizationFailed);
        }
        let inverse = (graph.n_vertices() <= DENSE_INVERSE_LIMIT).then(|| factor.inverse());
        Ok(ResistanceContext {
            graph,
            origin,
            laplacian,
            factor,
            inverse,
        })
    }

    pub fn graph(&self) -> &'g EuclideanGraph {
        self.graph
    }

    pub fn origin(&self) -> VertexId {
        self.origin
    }

    pub fn laplacian(&self) -> &DMatrix<f64> {
        &self.laplacian
    }

    /// Lower-triangular `M` with `L = M Mᵀ`.
    pub fn factor_l(&self) -> DMatrix<f64> {
        self.factor.l()
    }

    pub fn inverse(&self) -> Option<&DMatrix<f64>> {
        self.inverse.as_ref()
    }

    /// `L⁻¹(a, b)`.
    pub fn inverse_entry(&self, a: VertexId, b: VertexId) -> f64 {
        match &self.inverse {
            Some(inv) => inv[(a.0, b.0)],
            None => self.inverse_column(b)[a.0],
        }
    }

    fn inverse_column(&self, b: VertexId) -> DVector<f64> {
        let mut e = DVector::zeros(self.graph.n_vertices());
        e[b.0] = 1.0;
        self.factor.solve(&e)
    }

    /// Covariance of the interpolated vertex field.
    pub fn r_mu(&self, p: GraphPoint, q: GraphPoint) -> f64 {
        let (p_lo, p_hi, dp) = self.graph.anchors(p);
        let (q_lo, q_hi, dq) = self.graph.anchors(q);
        let (lo_lo, lo_hi, hi_lo, hi_hi) = match &self.inverse {
            Some(inv) => (
                inv[(p_lo.0, q_lo.0)],
                inv[(p_lo.0, q_hi.0)],
                inv[(p_hi.0, q_lo.0)],
                inv[(p_hi.0, q_hi.0)],
            ),
            None => {
                let col_lo = self.inverse_column(q_lo);
                let col_hi = if q_hi == q_lo { col_lo.clone() } else { self.inverse_column(q_hi) };
                (col_lo[p_lo.0], col_hi[p_lo.0], col_lo[p_hi.0], col_hi[p_hi.0])
            }
        };
        dp * dq * hi_hi + (1.0 - dp) * (1.0 - dq) * lo_lo + dp * (1.0 - dq) * hi_lo + (1.0 - dp) * dq * lo_hi
    }

    /// Covariance of the canonical field: `r_mu + r_edge`.
    pub fn r_graph(&self, p: GraphPoint, q: GraphPoint) -> f64 {
        self.r_mu(p, q) + r_edge(self.graph, p, q)
    }

    /// Variogram of the canonical field, `R(p,p) + R(q,q) - 2R(p,q)`.
    pub fn resistance_distance(&self, p: GraphPoint, q: GraphPoint) -> f64 {
        if p == q {
            return 0.0;
        }
        let (p, q) = GraphPoint::ordered(p, q);
        (self.r_graph(p, p) + self.r_graph(q, q) - 2.0 * self.r_graph(p, q)).max(0.0)
    }

    /// Closed form of `r_graph` on a tree:
    /// `1 + (d(p, o) + d(q, o) - d(p, q)) / 2` with `o` the origin.
    pub fn tree_kernel_closed_form(&self, p: GraphPoint, q: GraphPoint) -> Result<f64> {
        if !self.graph.is_tree() {
            return Err(Error::NotATree);
        }
        let o = GraphPoint::Vertex(self.origin);
        let g = self.graph;
        Ok(1.0 + 0.5 * (geodesic_distance(g, p, o) + geodesic_distance(g, q, o) - geodesic_distance(g, p, q)))
    }
}

/// Brownian-bridge covariance: nonzero only for two interior points of the
/// same edge.
pub fn r_edge(g: &EuclideanGraph, p: GraphPoint, q: GraphPoint) -> f64 {
    match (p, q) {
        (GraphPoint::Edge { edge: a, offset: s }, GraphPoint::Edge { edge: b, offset: t }) if a == b => {
            let len = g.edge(a).length;
            let (ds, dt) = (s / len, t / len);
            let m = match ds.partial_cmp(&dt) {
                Some(Ordering::Greater) => dt,
                _ => ds,
            };
            (m - ds * dt) * len
        }
        _ => 0.0,
    }
}

fn assemble_laplacian(g: &EuclideanGraph, origin: VertexId) -> DMatrix<f64> {
    let n = g.n_vertices();
    let mut l = DMatrix::zeros(n, n);
    for e in g.edges() {
        let c = 1.0 / e.length;
        let (u, v) = (e.u.0, e.v.0);
        l[(u, u)] += c;
        l[(v, v)] += c;
        l[(u, v)] -= c;
        l[(v, u)] -= c;
    }
    l[(origin.0, origin.0)] += 1.0;
    l
}
