//! # netfield
//!
//! Statistics on graphs with Euclidean edges.
//!
//! A [`EuclideanGraph`] is a finite connected network whose edges are line
//! segments with a length. Points of the network continuum ([`GraphPoint`])
//! are vertices or positions inside an edge. On this continuum the crate
//! provides:
//!
//! - the geodesic (shortest-path) metric and the resistance metric, the
//!   latter defined as the variogram of a canonical Gaussian field and equal
//!   to classical effective resistance on vertices ([`metrics`]);
//! - four families of isotropic covariance functions with eigenvalue
//!   certificates, the Theta-graph counterexample for the geodesic metric and
//!   star-graph necessary conditions ([`kernels`]);
//! - block decomposition to decide when geodesic kernels are safe
//!   ([`blocks`]);
//! - seeded simulation of Gaussian fields and empirical variograms
//!   ([`simulate`]).
//!
//! ```
//! use netfield::{EuclideanGraph, EdgeSpec, ResistanceContext};
//!
//! let g = EuclideanGraph::new(
//!     vec!["a".into(), "b".into()],
//!     vec![EdgeSpec::new("e1", "a", "b", 1.0)],
//! ).unwrap();
//! let e = g.edge_id("e1").unwrap();
//! let (p, q) = (g.point_on_edge(e, 0.25).unwrap(), g.point_on_edge(e, 0.75).unwrap());
//! let ctx = ResistanceContext::new(&g, None).unwrap();
//! assert!((ctx.resistance_distance(p, q) - 0.5).abs() < 1e-12);
//! ```

pub mod blocks;
pub mod error;
pub mod graph;
pub mod io;
pub mod kernels;
pub mod metrics;
pub mod simulate;

pub use blocks::{block_decomposition, geodesic_validity_class, Block, BlockDecomposition, BlockKind, GeodesicClass};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, EdgeSpec, EuclideanGraph, GraphPoint, GraphSpec, PointSpec, VertexId};
pub use kernels::{covariance_matrix, CovarianceMatrix, Family, KernelSpec};
pub use metrics::{distance_matrix, geodesic_distance, MetricKind, ResistanceContext};
