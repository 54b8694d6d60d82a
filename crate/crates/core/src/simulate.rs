//! Gaussian field simulation at finite point sets.
//!
//! Random streams are ChaCha8 keyed by the user seed. Stream derivation:
//!
//! * `sample_from_covariance`: draw `k` reads stream `k`.
//! * `sample_canonical_field`: with `m` edges, draw `k` reads the vertex
//!   normals from stream `k·(m+1)` and the bridge normals of edge `e` from
//!   stream `k·(m+1) + 1 + e`.
//!
//! Every draw is therefore a pure function of `(seed, k)`, independent of the
//! order in which draws are produced.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::graph::{EuclideanGraph, GraphPoint};
use crate::kernels::{psd_check, PSD_REL_TOL};
use crate::metrics::ResistanceContext;

/// Diagonal jitter, relative to the largest diagonal entry, added when a PSD
/// matrix is too singular for a plain Cholesky factorization.
pub const JITTER_REL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct FieldSample {
    pub labels: Vec<String>,
    /// `n_samples × n_points`.
    pub draws: DMatrix<f64>,
    pub seed: u64,
    /// Diagonal jitter added before factorizing, if any.
    pub jitter: Option<f64>,
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn normals(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_iterator(n, (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)))
}

/// Lower-triangular `M` with `M Mᵀ = a`, zeroing columns whose pivot falls
/// below `tol`. Used only as a last resort for rank-deficient PSD input.
fn semidefinite_cholesky(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = a.nrows();
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        let pivot = a[(j, j)] - (0..j).map(|k| m[(j, k)] * m[(j, k)]).sum::<f64>();
        if pivot <= tol {
            continue;
        }
        let d = pivot.sqrt();
        m[(j, j)] = d;
        for i in (j + 1)..n {
            let s = a[(i, j)] - (0..j).map(|k| m[(i, k)] * m[(j, k)]).sum::<f64>();
            m[(i, j)] = s / d;
        }
    }
    m
}

/// `n` independent zero-mean draws with covariance `cov`.
pub fn sample_from_covariance(cov: &DMatrix<f64>, labels: Vec<String>, n: usize, seed: u64) -> Result<FieldSample> {
    let report = psd_check(cov, PSD_REL_TOL)?;
    if !report.is_psd() {
        return Err(Error::NotPsd {
            min_eig: report.min_eig,
        });
    }
    let p = cov.nrows();
    let sym = (cov + cov.transpose()) * 0.5;
    let (factor, jitter) = match sym.clone().cholesky() {
        Some(c) => (c.l(), None),
        None => {
            let max_diag = sym.diagonal().max().max(0.0);
            let eps = JITTER_REL * max_diag;
            let mut jittered = sym.clone();
            for i in 0..p {
                jittered[(i, i)] += eps;
            }
            let l = match jittered.clone().cholesky() {
                Some(c) => c.l(),
                None => semidefinite_cholesky(&jittered, eps),
            };
            (l, Some(eps))
        }
    };

    let mut draws = DMatrix::zeros(n, p);
    for k in 0..n {
        let w = normals(&mut stream(seed, k as u64), p);
        let z = &factor * w;
        draws.row_mut(k).copy_from(&z.transpose());
    }
    Ok(FieldSample {
        labels,
        draws,
        seed,
        jitter,
    })
}

/// Constructive sampler for the canonical field: vertex values from
/// `N(0, L⁻¹)`, linear interpolation along edges, plus an independent
/// Brownian bridge per edge evaluated exactly at the requested offsets.
pub fn sample_canonical_field(ctx: &ResistanceContext<'_>, points: &[GraphPoint], n: usize, seed: u64) -> Result<FieldSample> {
    let g: &EuclideanGraph = ctx.graph();
    let n_vertices = g.n_vertices();
    let n_edges = g.n_edges();
    // L = M Mᵀ, so z = M⁻ᵀ w has covariance L⁻¹
    let upper = ctx.factor_l().transpose();

    // distinct interior offsets per edge, ascending
    let mut stops: Vec<Vec<f64>> = vec![Vec::new(); n_edges];
    for p in points {
        if let GraphPoint::Edge { edge, offset } = *p {
            stops[edge.0].push(offset);
        }
    }
    for s in &mut stops {
        s.sort_by(f64::total_cmp);
        s.dedup();
    }

    let anchors: Vec<_> = points.iter().map(|&p| g.anchors(p)).collect();
    let per_draw = n_edges as u64 + 1;
    let mut draws = DMatrix::zeros(n, points.len());
    let mut bridges: Vec<Vec<f64>> = stops.iter().map(|s| vec![0.0; s.len()]).collect();
    for k in 0..n {
        let base = k as u64 * per_draw;
        let w = normals(&mut stream(seed, base), n_vertices);
        let z = upper.solve_upper_triangular(&w).ok_or(Error::FactorizationFailed)?;

        for (e, offsets) in stops.iter().enumerate() {
            if offsets.is_empty() {
                continue;
            }
            let len = g.edges()[e].length;
            let mut rng = stream(seed, base + 1 + e as u64);
            let (mut prev, mut value) = (0.0, 0.0);
            for (slot, &s) in offsets.iter().enumerate() {
                // bridge on [0, len] with covariance min(a,b) - ab/len
                let rest = len - prev;
                let mean = value * (len - s) / rest;
                let var = (s - prev) * (len - s) / rest;
                value = mean + var.sqrt() * rng.sample::<f64, _>(StandardNormal);
                bridges[e][slot] = value;
                prev = s;
            }
        }

        for (j, (&p, &(lo, hi, d))) in points.iter().zip(&anchors).enumerate() {
            let mut x = (1.0 - d) * z[lo.0] + d * z[hi.0];
            if let GraphPoint::Edge { edge, offset } = p {
                let slot = stops[edge.0]
                    .binary_search_by(|s| s.total_cmp(&offset))
                    .expect("offset recorded above");
                x += bridges[edge.0][slot];
            }
            draws[(k, j)] = x;
        }
    }

    Ok(FieldSample {
        labels: points.iter().map(|&p| g.point_label(p)).collect(),
        draws,
        seed,
        jitter: None,
    })
}

/// Matrix of sample variances of `Z(pᵢ) - Z(pⱼ)` across draws.
pub fn empirical_variogram(sample: &FieldSample) -> Result<DMatrix<f64>> {
    let n = sample.draws.nrows();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let p = sample.draws.ncols();
    let mut out = DMatrix::zeros(p, p);
    for i in 0..p {
        for j in (i + 1)..p {
            let diff = sample.draws.column(i) - sample.draws.column(j);
            let mean = diff.mean();
            let var = diff.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
            out[(i, j)] = var;
            out[(j, i)] = var;
        }
    }
    Ok(out)
}

/// Sample covariance of the columns of a draw matrix.
pub fn sample_covariance(draws: &DMatrix<f64>) -> DMatrix<f64> {
    let n = draws.nrows();
    let means = draws.row_mean();
    let mut centered = draws.clone();
    for mut row in centered.row_iter_mut() {
        row -= &means;
    }
    centered.transpose() * &centered / (n as f64 - 1.0)
}
