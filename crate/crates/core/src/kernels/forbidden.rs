//! Explicit certificate that the exponential kernel of the geodesic metric
//! fails on graphs with three disjoint paths between two points.
//!
//! The witness lives on a Theta graph with six marked vertices `u1..u6`:
//!
//! ```text
//!   u1 --t-- u2 --(1-t)-- u3 --t-- u6 --t-- u5
//!   |                      \                /|
//!   |                       r --- u4 --- r   |
//!   +-------------------- 1 -----------------+
//! ```
//!
//! `u3` and `u5` are joined by three internally disjoint routes of lengths
//! `2t`, `2r` and `2`. The Gram matrix of the geodesic distances about `u1`
//! has quadratic form `ξ(rξ - 2t)` at `(-1, -ξ, ξ, -1, 1)`, negative for
//! `0 < ξ < 2t/r`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, EuclideanGraph, GraphPoint};
use crate::kernels::{gram_from_distances, psd_check, PSD_REL_TOL};
use crate::metrics::geodesic_matrix;

/// Number of log-spaced β values scanned on `[1e-3, 1e3]`.
pub const BETA_GRID_LEN: usize = 200;
const BETA_LOG10_MIN: f64 = -3.0;
const BETA_LOG10_MAX: f64 = 3.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForbiddenWitness {
    pub t: f64,
    pub r: f64,
    pub xi_value: f64,
    pub quadratic_form: f64,
    pub beta_found: Option<f64>,
    pub negative_eigenvalue: Option<f64>,
}

impl ForbiddenWitness {
    pub fn is_valid(&self) -> bool {
        self.quadratic_form < 0.0
    }
}

fn check_params(t: f64, r: f64) -> Result<()> {
    if !(t > 0.0 && t <= 0.5) {
        return Err(Error::ParamOutOfRange {
            field: "t",
            value: t,
            allowed: "0 < t <= 1/2",
        });
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::ParamOutOfRange {
            field: "r",
            value: r,
            allowed: "0 < r <= 1",
        });
    }
    // with r < t the route through u4 becomes the shortest u3-u5 path and
    // the distance table no longer holds
    if r < t {
        return Err(Error::ParamOutOfRange {
            field: "r",
            value: r,
            allowed: "r >= t",
        });
    }
    Ok(())
}

/// The Theta graph and its six marked points `u1..u6`.
pub fn theta_configuration(t: f64, r: f64) -> Result<(EuclideanGraph, Vec<GraphPoint>)> {
    check_params(t, r)?;
    let vertices = (1..=6).map(|i| format!("u{i}")).collect();
    let g = EuclideanGraph::new(
        vertices,
        vec![
            EdgeSpec::new("u1u2", "u1", "u2", t),
            EdgeSpec::new("u2u3", "u2", "u3", 1.0 - t),
            EdgeSpec::new("u3u6", "u3", "u6", t),
            EdgeSpec::new("u6u5", "u6", "u5", t),
            EdgeSpec::new("u5u1", "u5", "u1", 1.0),
            EdgeSpec::new("u3u4", "u3", "u4", r),
            EdgeSpec::new("u4u5", "u4", "u5", r),
        ],
    )?;
    let points = g.vertices().map(GraphPoint::Vertex).collect();
    Ok((g, points))
}

/// Builds the witness and scans β for a failing `exp(-β d_G)` matrix.
pub fn forbidden_certificate(t: f64, r: f64) -> Result<ForbiddenWitness> {
    let (g, points) = theta_configuration(t, r)?;
    let d = geodesic_matrix(&g, &points);

    let gram = gram_from_distances(&d, 0);
    let sigma = gram.view((1, 1), (5, 5)).into_owned();
    let xi = t / r;
    let v = DVector::from_column_slice(&[-1.0, -xi, xi, -1.0, 1.0]);
    let quadratic_form = v.dot(&(&sigma * &v));

    let mut beta_found = None;
    let mut negative_eigenvalue = None;
    for k in 0..BETA_GRID_LEN {
        let exponent = BETA_LOG10_MIN + (BETA_LOG10_MAX - BETA_LOG10_MIN) * k as f64 / (BETA_GRID_LEN - 1) as f64;
        let beta = 10f64.powf(exponent);
        let cov: DMatrix<f64> = d.map(|x| (-beta * x).exp());
        let report = psd_check(&cov, PSD_REL_TOL)?;
        if !report.is_psd() {
            beta_found = Some(beta);
            negative_eigenvalue = Some(report.min_eig);
            break;
        }
    }

    Ok(ForbiddenWitness {
        t,
        r,
        xi_value: xi,
        quadratic_form,
        beta_found,
        negative_eigenvalue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(t: f64, r: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(
            6,
            6,
            &[
                0.0, t, 1.0, r + 1.0, 1.0, t + 1.0, //
                t, 0.0, 1.0 - t, r - t + 1.0, t + 1.0, 1.0, //
                1.0, 1.0 - t, 0.0, r, 2.0 * t, t, //
                r + 1.0, r - t + 1.0, r, 0.0, r, r + t, //
                1.0, t + 1.0, 2.0 * t, r, 0.0, t, //
                t + 1.0, 1.0, t, r + t, t, 0.0,
            ],
        )
    }

    #[test]
    fn theta_realizes_distance_table() {
        for &(t, r) in &[(0.5, 1.0), (0.25, 1.0), (0.1, 0.3), (0.4, 0.4)] {
            let (g, pts) = theta_configuration(t, r).unwrap();
            let d = geodesic_matrix(&g, &pts);
            assert!((d - table(t, r)).abs().max() < 1e-14, "t={t} r={r}");
        }
    }

    #[test]
    fn gram_matches_sigma() {
        let (t, r) = (0.3, 0.8);
        let (g, pts) = theta_configuration(t, r).unwrap();
        let gram = gram_from_distances(&geodesic_matrix(&g, &pts), 0);
        let sigma = DMatrix::from_row_slice(
            5,
            5,
            &[
                t, t, t, 0.0, t, //
                t, 1.0, 1.0, 1.0 - t, 1.0, //
                t, 1.0, r + 1.0, 1.0, 1.0, //
                0.0, 1.0 - t, 1.0, 1.0, 1.0, //
                t, 1.0, 1.0, 1.0, t + 1.0,
            ],
        );
        assert!((gram.view((1, 1), (5, 5)) - sigma).abs().max() < 1e-14);
    }

    #[test]
    fn plug_in_values() {
        let w = forbidden_certificate(0.5, 1.0).unwrap();
        assert_eq!(w.xi_value, 0.5);
        assert_eq!(w.quadratic_form, -0.25);
        assert!(w.is_valid());
        assert!(w.negative_eigenvalue.unwrap() < 0.0);
        assert!(w.beta_found.is_some());

        let w = forbidden_certificate(0.25, 1.0).unwrap();
        assert_eq!(w.quadratic_form, -0.0625);
    }

    #[test]
    fn parameter_range() {
        assert!(forbidden_certificate(0.6, 1.0).is_err());
        assert!(forbidden_certificate(0.0, 1.0).is_err());
        assert!(forbidden_certificate(0.5, 1.5).is_err());
        assert!(forbidden_certificate(0.5, 0.25).is_err());
    }
}
