use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance for the PSD certificate.
pub const PSD_REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsdVerdict {
    Psd,
    NotPsd,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsdReport {
    pub verdict: PsdVerdict,
    pub min_eig: f64,
    pub max_eig: f64,
}

impl PsdReport {
    pub fn is_psd(&self) -> bool {
        self.verdict == PsdVerdict::Psd
    }
}

/// Eigenvalue certificate for a symmetric matrix.
///
/// The input is symmetrized as `(M + Mᵀ)/2`. The verdict is PSD iff
/// `min_eig >= -rel_tol * max(|max_eig|, 1)`.
pub fn psd_check(m: &DMatrix<f64>, rel_tol: f64) -> Result<PsdReport> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    if m.is_empty() {
        return Ok(PsdReport {
            verdict: PsdVerdict::Psd,
            min_eig: 0.0,
            max_eig: 0.0,
        });
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigenvalues();
    let min_eig = eig.min();
    let max_eig = eig.max();
    let verdict = if min_eig >= -rel_tol * max_eig.abs().max(1.0) {
        PsdVerdict::Psd
    } else {
        PsdVerdict::NotPsd
    };
    Ok(PsdReport {
        verdict,
        min_eig,
        max_eig,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_psd() {
        let r = psd_check(&DMatrix::identity(3, 3), PSD_REL_TOL).unwrap();
        assert!(r.is_psd());
        assert!((r.min_eig - 1.0).abs() < 1e-15);
    }

    #[test]
    fn indefinite_two_by_two() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        let r = psd_check(&m, PSD_REL_TOL).unwrap();
        assert_eq!(r.verdict, PsdVerdict::NotPsd);
        assert!((r.min_eig + 1.0).abs() < 1e-12);
        assert!((r.max_eig - 3.0).abs() < 1e-12);
    }

    #[test]
    fn zero_is_on_the_boundary() {
        let r = psd_check(&DMatrix::zeros(1, 1), PSD_REL_TOL).unwrap();
        assert!(r.is_psd());
        assert_eq!(r.min_eig, 0.0);
    }

    #[test]
    fn asymmetric_input_is_symmetrized() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 1.0]);
        let r = psd_check(&m, PSD_REL_TOL).unwrap();
        assert!((r.min_eig - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bad_input() {
        let m = DMatrix::from_row_slice(1, 1, &[f64::NAN]);
        assert_eq!(psd_check(&m, PSD_REL_TOL), Err(Error::NonFinite));
        assert!(matches!(
            psd_check(&DMatrix::zeros(2, 3), PSD_REL_TOL),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn report_json_shape() {
        let r = PsdReport {
            verdict: PsdVerdict::NotPsd,
            min_eig: -1.0,
            max_eig: 3.0,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"verdict":"not_psd","min_eig":-1.0,"max_eig":3.0}"#
        );
    }
}
