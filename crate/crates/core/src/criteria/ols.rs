//! Least squares via Householder QR.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Smallest admissible |r_ii| relative to the largest.
pub const RANK_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    /// Unbiased estimate RSS / (rows − columns).
    pub residual_variance: f64,
}

pub fn ols_fit(design: &DMatrix<f64>, response: &DVector<f64>) -> Result<OlsFit> {
    let (rows, cols) = design.shape();
    if rows != response.len() {
        return Err(Error::LengthMismatch {
            left: rows,
            right: response.len(),
        });
    }
    if cols == 0 || rows < cols + 1 {
        return Err(Error::SeriesTooShort {
            needed: cols + 1,
            got: rows,
        });
    }

    let qr = design.clone().qr();
    let r = qr.r();
    let diag = r.diagonal().map(f64::abs);
    let (dmin, dmax) = (diag.min(), diag.max());
    if dmax.is_nan() || dmax <= 0.0 || dmin < RANK_RTOL * dmax {
        return Err(Error::RankDeficient {
            ratio: if dmax > 0.0 { dmin / dmax } else { 0.0 },
        });
    }

    let qty = qr.q().transpose() * response;
    let beta = r
        .solve_upper_triangular(&qty)
        .ok_or(Error::RankDeficient { ratio: 0.0 })?;
    let resid = response - design * &beta;
    let residual_variance = resid.norm_squared() / (rows - cols) as f64;

    // (XᵀX)⁻¹ = R⁻¹ R⁻ᵀ, so se_i = s · ‖row i of R⁻¹‖
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(cols, cols))
        .ok_or(Error::RankDeficient { ratio: 0.0 })?;
    let s = residual_variance.sqrt();
    let standard_errors = r_inv.row_iter().map(|row| s * row.norm()).collect();

    Ok(OlsFit {
        coefficients: beta.iter().copied().collect(),
        standard_errors,
        residual_variance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_fit_recovers_coefficients() {
        let x = DMatrix::from_fn(12, 3, |i, j| ((i + 1) as f64).powi(j as i32) + (i * j) as f64 * 0.1);
        let c = DVector::from_vec(vec![0.5, -2.0, 3.25]);
        let y = &x * &c;
        let fit = ols_fit(&x, &y).unwrap();
        for (a, b) in fit.coefficients.iter().zip(c.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(fit.residual_variance < 1e-20);
    }

    #[test]
    fn simple_line() {
        let x = DMatrix::from_fn(6, 2, |i, j| if j == 0 { 1.0 } else { i as f64 });
        let y = DVector::from_fn(6, |i, _| 2.0 * i as f64 + 1.0);
        let fit = ols_fit(&x, &y).unwrap();
        assert!((fit.coefficients[0] - 1.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn collinear_columns_are_rank_deficient() {
        let x = DMatrix::from_fn(8, 3, |i, j| match j {
            0 => 1.0,
            1 => i as f64,
            _ => 3.0 * i as f64 - 2.0,
        });
        let y = DVector::from_fn(8, |i, _| (i * i) as f64);
        assert!(matches!(ols_fit(&x, &y), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn too_few_rows() {
        let x = DMatrix::from_element(2, 2, 1.0);
        let y = DVector::from_element(2, 1.0);
        assert!(matches!(ols_fit(&x, &y), Err(Error::SeriesTooShort { .. })));
    }
}
