//! Necessary conditions on radial profiles from star-shaped trees.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, EuclideanGraph};

/// Largest variogram exponent admissible on a star with `n` arms:
/// `log(2n/(n-1)) / log 2`.
pub fn smoothness_bound(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::NOutOfRange(n));
    }
    let n = n as f64;
    Ok((2.0 * n / (n - 1.0)).ln() / 2f64.ln())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarRow {
    pub t: f64,
    pub c0: f64,
    pub ct: f64,
    pub c2t: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub product_ok: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarReport {
    pub n: usize,
    pub rows: Vec<StarRow>,
    pub pass: bool,
}

/// Checks, for each `t`,
/// `-C(0)/(n-1) <= C(2t) <= C(0)` and `(nC(t)² - C(0)²)/(n-1) <= C(0)C(2t)`.
///
/// A slack of `1e-12 · max(C(0)², 1)` absorbs rounding where the
/// inequalities are tight (e.g. constant profiles).
pub fn star_inequality_check(profile: impl Fn(f64) -> f64, n: usize, t_values: &[f64]) -> Result<StarReport> {
    if n < 2 {
        return Err(Error::NOutOfRange(n));
    }
    let c0 = profile(0.0);
    if !c0.is_finite() {
        return Err(Error::NonFinite);
    }
    let slack = 1e-12 * (c0 * c0).max(1.0);
    let nf = n as f64;
    let rows: Vec<StarRow> = t_values
        .iter()
        .map(|&t| {
            let ct = profile(t);
            let c2t = profile(2.0 * t);
            let lower_ok = -c0 / (nf - 1.0) <= c2t + slack;
            let upper_ok = c2t <= c0 + slack;
            let product_ok = (nf * ct * ct - c0 * c0) / (nf - 1.0) <= c0 * c2t + slack;
            StarRow {
                t,
                c0,
                ct,
                c2t,
                lower_ok,
                upper_ok,
                product_ok,
                pass: lower_ok && upper_ok && product_ok,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    Ok(StarReport { n, rows, pass })
}

/// Star with hub `hub` and leaves `leaf1..leafN`, all arms of equal length.
pub fn star_graph(n: usize, arm_length: f64) -> Result<EuclideanGraph> {
    if n < 1 {
        return Err(Error::NOutOfRange(n));
    }
    let mut vertices = vec!["hub".to_string()];
    vertices.extend((1..=n).map(|i| format!("leaf{i}")));
    let edges = (1..=n)
        .map(|i| EdgeSpec::new(format!("arm{i}"), "hub", format!("leaf{i}"), arm_length))
        .collect();
    EuclideanGraph::new(vertices, edges)
}
