//! Isotropic covariance families and their validity checks.
//!
//! Four radial profiles `C(t)` with `C(0) = 1`: power exponential, Matérn,
//! generalized Cauchy and Dagum. Inside their parameter ranges each one gives
//! a positive definite function of the resistance metric on every graph, and
//! of the geodesic metric on 1-sums of cycles and trees.

mod bessel;
mod forbidden;
mod psd;
mod star;

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::graph::{EuclideanGraph, GraphPoint};
use crate::metrics::{distance_matrix, MetricKind};

pub use bessel::bessel_k;
pub use forbidden::{forbidden_certificate, theta_configuration, ForbiddenWitness, BETA_GRID_LEN};
pub use psd::{psd_check, PsdReport, PsdVerdict, PSD_REL_TOL};
pub use star::{smoothness_bound, star_graph, star_inequality_check, StarReport, StarRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    #[serde(alias = "powexp", alias = "power-exponential")]
    PowerExponential,
    Matern,
    #[serde(rename = "cauchy", alias = "generalized_cauchy")]
    GeneralizedCauchy,
    Dagum,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::PowerExponential => "power_exponential",
            Family::Matern => "matern",
            Family::GeneralizedCauchy => "cauchy",
            Family::Dagum => "dagum",
        })
    }
}

/// Kernel JSON: `{"family":"matern","alpha":0.5,"beta":1.0}`, with `xi`
/// required for `cauchy` and `dagum`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub family: Family,
    pub alpha: f64,
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
}

fn out_of_range(field: &'static str, value: f64, allowed: &'static str) -> Error {
    Error::ParamOutOfRange { field, value, allowed }
}

impl KernelSpec {
    pub fn power_exponential(alpha: f64, beta: f64) -> Self {
        KernelSpec {
            family: Family::PowerExponential,
            alpha,
            beta,
            xi: None,
        }
    }

    pub fn matern(alpha: f64, beta: f64) -> Self {
        KernelSpec {
            family: Family::Matern,
            alpha,
            beta,
            xi: None,
        }
    }

    pub fn cauchy(alpha: f64, beta: f64, xi: f64) -> Self {
        KernelSpec {
            family: Family::GeneralizedCauchy,
            alpha,
            beta,
            xi: Some(xi),
        }
    }

    pub fn dagum(alpha: f64, beta: f64, xi: f64) -> Self {
        KernelSpec {
            family: Family::Dagum,
            alpha,
            beta,
            xi: Some(xi),
        }
    }

    /// Checks the family's admissible parameter range.
    pub fn validate(&self) -> Result<()> {
        let (alpha_max, alpha_range) = match self.family {
            Family::Matern => (0.5, "0 < alpha <= 1/2"),
            _ => (1.0, "0 < alpha <= 1"),
        };
        if !(self.alpha > 0.0 && self.alpha <= alpha_max) {
            return Err(out_of_range("alpha", self.alpha, alpha_range));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(out_of_range("beta", self.beta, "beta > 0"));
        }
        match (self.family, self.xi) {
            (Family::GeneralizedCauchy, Some(xi)) if !(xi > 0.0 && xi.is_finite()) => {
                Err(out_of_range("xi", xi, "xi > 0"))
            }
            (Family::Dagum, Some(xi)) if !(xi > 0.0 && xi <= 1.0) => Err(out_of_range("xi", xi, "0 < xi <= 1")),
            (Family::GeneralizedCauchy, None) => Err(out_of_range("xi", f64::NAN, "xi > 0 (required)")),
            (Family::Dagum, None) => Err(out_of_range("xi", f64::NAN, "0 < xi <= 1 (required)")),
            _ => Ok(()),
        }
    }

    /// `C(t)`. Does not validate; call [`KernelSpec::validate`] first.
    pub fn radial_profile(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 1.0;
        }
        let (alpha, beta) = (self.alpha, self.beta);
        let xi = self.xi.unwrap_or(f64::NAN);
        match self.family {
            Family::PowerExponential => (-beta * t.powf(alpha)).exp(),
            Family::Matern => {
                // (βt)^α K_α(βt) → 2^{α-1} Γ(α) as t → 0
                let s = beta * t;
                let k = bessel_k(alpha, s);
                if k == 0.0 {
                    return 0.0;
                }
                s.powf(alpha) * k / (2f64.powf(alpha - 1.0) * gamma(alpha))
            }
            Family::GeneralizedCauchy => (beta * t.powf(alpha) + 1.0).powf(-xi / alpha),
            Family::Dagum => {
                let b = beta * t.powf(alpha);
                1.0 - (b / (1.0 + b)).powf(xi / alpha)
            }
        }
    }
}

/// Validates `spec` and evaluates `C(t)`.
pub fn radial_profile(spec: &KernelSpec, t: f64) -> Result<f64> {
    spec.validate()?;
    if t.is_nan() || t < 0.0 {
        return Err(out_of_range("t", t, "t >= 0"));
    }
    Ok(spec.radial_profile(t))
}

/// Covariance matrix `C(d(pᵢ, pⱼ))` over a labeled point set.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    pub labels: Vec<String>,
    pub values: DMatrix<f64>,
    pub metric: MetricKind,
    pub psd_certificate: Option<PsdReport>,
}

impl CovarianceMatrix {
    /// Applies the profile entrywise to a distance matrix. The diagonal is
    /// set to `C(0) = 1`.
    pub fn from_distances(labels: Vec<String>, distances: &DMatrix<f64>, spec: &KernelSpec, metric: MetricKind) -> Result<Self> {
        spec.validate()?;
        let mut values = distances.map(|d| spec.radial_profile(d));
        values.fill_diagonal(1.0);
        Ok(CovarianceMatrix {
            labels,
            values,
            metric,
            psd_certificate: None,
        })
    }

    /// Runs [`psd_check`] and stores the result.
    pub fn certify(&mut self, rel_tol: f64) -> Result<PsdReport> {
        let report = psd_check(&self.values, rel_tol)?;
        self.psd_certificate = Some(report);
        Ok(report)
    }
}

pub fn covariance_matrix(g: &EuclideanGraph, points: &[GraphPoint], spec: &KernelSpec, kind: MetricKind) -> Result<CovarianceMatrix> {
    spec.validate()?;
    let d = distance_matrix(g, points, kind)?;
    let labels = points.iter().map(|&p| g.point_label(p)).collect();
    CovarianceMatrix::from_distances(labels, &d, spec, kind)
}

/// Schoenberg Gram matrix `½[d(pᵢ,p₀) + d(pⱼ,p₀) − d(pᵢ,pⱼ)]` of a distance
/// matrix about the point `base`. PSD iff `√d` embeds isometrically in a
/// Hilbert space.
pub fn gram_from_distances(d: &DMatrix<f64>, base: usize) -> DMatrix<f64> {
    let n = d.nrows();
    DMatrix::from_fn(n, n, |i, j| 0.5 * (d[(i, base)] + d[(base, j)] - d[(i, j)]))
}

pub fn embedding_gram(g: &EuclideanGraph, points: &[GraphPoint], base: usize, kind: MetricKind) -> Result<DMatrix<f64>> {
    if base >= points.len() {
        return Err(out_of_range("base_index", base as f64, "index into the point list"));
    }
    let d = distance_matrix(g, points, kind)?;
    Ok(gram_from_distances(&d, base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSpec;

    fn all_specs() -> Vec<KernelSpec> {
        vec![
            KernelSpec::power_exponential(0.5, 2.0),
            KernelSpec::matern(0.3, 1.5),
            KernelSpec::cauchy(0.8, 1.0, 2.0),
            KernelSpec::dagum(0.6, 0.7, 0.4),
        ]
    }

    #[test]
    fn table_ranges() {
        assert!(KernelSpec::power_exponential(1.0, 2.0).validate().is_ok());
        assert!(matches!(
            KernelSpec::matern(0.7, 1.0).validate(),
            Err(Error::ParamOutOfRange { field: "alpha", .. })
        ));
        assert!(matches!(
            KernelSpec::dagum(0.5, 1.0, 1.5).validate(),
            Err(Error::ParamOutOfRange { field: "xi", .. })
        ));
        assert!(KernelSpec::dagum(1.0, 1.0, 1.0).validate().is_ok());
        assert!(KernelSpec::matern(0.5, 1.0).validate().is_ok());
        assert!(KernelSpec::power_exponential(0.0, 1.0).validate().is_err());
        assert!(KernelSpec::power_exponential(1.0, 0.0).validate().is_err());
        assert!(KernelSpec::cauchy(1.0, 1.0, 0.0).validate().is_err());
        let missing = KernelSpec {
            xi: None,
            ..KernelSpec::cauchy(1.0, 1.0, 1.0)
        };
        assert!(missing.validate().is_err());
    }

    #[test]
    fn profile_values() {
        for spec in all_specs() {
            assert_eq!(spec.radial_profile(0.0), 1.0);
        }
        let pe = KernelSpec::power_exponential(1.0, 1.0);
        assert!((pe.radial_profile(2f64.ln()) - 0.5).abs() < 1e-15);
        let dagum = KernelSpec::dagum(1.0, 1.0, 1.0);
        assert!((dagum.radial_profile(1.0) - 0.5).abs() < 1e-15);
        let cauchy = KernelSpec::cauchy(1.0, 1.0, 2.0);
        assert!((cauchy.radial_profile(1.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn matern_half_is_exponential() {
        let m = KernelSpec::matern(0.5, 1.0);
        for k in 1..=50 {
            let t = 0.2 * k as f64;
            assert!((m.radial_profile(t) - (-t).exp()).abs() < 1e-10);
        }
    }

    #[test]
    fn matern_small_argument_limit() {
        let m = KernelSpec::matern(0.25, 1.0);
        assert!((m.radial_profile(1e-9) - 1.0).abs() < 1e-3);
        assert!(m.radial_profile(1e-9) < 1.0);
    }

    #[test]
    fn profiles_decrease_and_stay_positive() {
        for spec in all_specs() {
            let mut prev = 1.0;
            for k in 1..200 {
                let c = spec.radial_profile(0.05 * k as f64);
                assert!(c > 0.0 && c < prev, "{spec:?} at step {k}");
                prev = c;
            }
        }
    }

    #[test]
    fn path_covariance_under_geodesic() {
        let g = EuclideanGraph::new(
            vec!["A".into(), "B".into(), "C".into()],
            vec![EdgeSpec::new("ab", "A", "B", 1.0), EdgeSpec::new("bc", "B", "C", 2.0)],
        )
        .unwrap();
        let pts: Vec<GraphPoint> = g.vertices().map(GraphPoint::Vertex).collect();
        let spec = KernelSpec::power_exponential(1.0, 1.0);
        let c = covariance_matrix(&g, &pts, &spec, MetricKind::Geodesic).unwrap();
        let e = |x: f64| (-x).exp();
        let expected = DMatrix::from_row_slice(3, 3, &[1.0, e(1.0), e(3.0), e(1.0), 1.0, e(2.0), e(3.0), e(2.0), 1.0]);
        assert!((c.values - expected).abs().max() < 1e-15);
        assert_eq!(c.labels, vec!["A", "B", "C"]);

        let single = covariance_matrix(&g, &pts[..1], &spec, MetricKind::Resistance).unwrap();
        assert_eq!(single.values, DMatrix::from_element(1, 1, 1.0));
    }

    #[test]
    fn spec_json() {
        let s: KernelSpec = serde_json::from_str(r#"{"family":"matern","alpha":0.5,"beta":1.0}"#).unwrap();
        assert_eq!(s, KernelSpec::matern(0.5, 1.0));
        let s: KernelSpec = serde_json::from_str(r#"{"family":"cauchy","alpha":1,"beta":1,"xi":2}"#).unwrap();
        assert_eq!(s, KernelSpec::cauchy(1.0, 1.0, 2.0));
        let s: KernelSpec = serde_json::from_str(r#"{"family":"power_exponential","alpha":1,"beta":1}"#).unwrap();
        assert_eq!(s.family, Family::PowerExponential);
        assert_eq!(
            serde_json::to_string(&KernelSpec::dagum(1.0, 2.0, 0.5)).unwrap(),
            r#"{"family":"dagum","alpha":1.0,"beta":2.0,"xi":0.5}"#
        );
    }

    #[test]
    fn gram_of_tree_geodesic_equals_resistance() {
        let g = EuclideanGraph::new(
            vec!["A".into(), "B".into(), "C".into(), "D".into()],
            vec![
                EdgeSpec::new("ab", "A", "B", 1.0),
                EdgeSpec::new("bc", "B", "C", 2.0),
                EdgeSpec::new("bd", "B", "D", 0.5),
            ],
        )
        .unwrap();
        let mut pts: Vec<GraphPoint> = g.vertices().map(GraphPoint::Vertex).collect();
        pts.push(g.point_on_edge(g.edge_id("bc").unwrap(), 0.7).unwrap());
        let gg = embedding_gram(&g, &pts, 0, MetricKind::Geodesic).unwrap();
        let gr = embedding_gram(&g, &pts, 0, MetricKind::Resistance).unwrap();
        assert!((&gg - &gr).abs().max() < 1e-12);
        assert!(psd_check(&gg, PSD_REL_TOL).unwrap().is_psd());
        assert!(embedding_gram(&g, &pts, 9, MetricKind::Geodesic).is_err());
    }
}
