//! Augmented Dickey-Fuller unit-root test, constant plus linear trend.
//!
//! Regression:
//! `Δy(i) = α + β·i + γ·y(i−1) + Σ_{m=1..p} δ_m Δy(i−m) + ε(i)`
//! with `p = n_lags`. The statistic is the t-ratio of γ; p-values come from
//! MacKinnon's (1994) response surface for one I(1) series.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::criteria::ols::ols_fit;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdfVariant {
    ConstantTrend,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdfResult {
    pub gamma_hat: f64,
    pub t_stat: f64,
    pub p_value: f64,
    pub n_lags: usize,
    pub variant: AdfVariant,
    /// Rows of the regression after differencing and lagging.
    pub n_obs: usize,
}

// Constant-plus-trend, N = 1 rows of MacKinnon (1994), Tables 3 and 4.
const TAU_MAX_CT: f64 = 0.7;
const TAU_MIN_CT: f64 = -16.18;
const TAU_STAR_CT: f64 = -2.89;
const TAU_CT_SMALLP: [f64; 3] = [3.2512, 1.6047, 4.9588e-2];
const TAU_CT_LARGEP: [f64; 4] = [2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2];

/// Minimum series length beyond the lag count.
pub const MIN_EXTRA_POINTS: usize = 10;

/// Approximate p-value of an ADF t-statistic for the constant-plus-trend
/// regression. Statistics outside the fitted range map to 0 or 1.
pub fn mackinnon_pvalue_ct(t_stat: f64) -> f64 {
    if t_stat.is_nan() {
        return f64::NAN;
    }
    if t_stat > TAU_MAX_CT {
        return 1.0;
    }
    if t_stat < TAU_MIN_CT {
        return 0.0;
    }
    let z = if t_stat <= TAU_STAR_CT {
        horner(&TAU_CT_SMALLP, t_stat)
    } else {
        horner(&TAU_CT_LARGEP, t_stat)
    };
    standard_normal().cdf(z)
}

/// Evaluates `c[0] + c[1] x + c[2] x² + ...`.
fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

fn standard_normal() -> Normal {
    Normal::standard()
}

pub fn adf_test(series: &TimeSeries, n_lags: usize) -> Result<AdfResult> {
    let y = series.values();
    let n = y.len();
    if n < n_lags + MIN_EXTRA_POINTS {
        return Err(Error::SeriesTooShort {
            needed: n_lags + MIN_EXTRA_POINTS,
            got: n,
        });
    }
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    // regression rows are i = n_lags+1 .. n-1; dy[i-1] = Δy(i)
    let first = n_lags + 1;
    let n_obs = n - first;
    let cols = 3 + n_lags;
    let design = DMatrix::from_fn(n_obs, cols, |r, c| {
        let i = first + r;
        match c {
            0 => y[i - 1],
            c if c <= n_lags => dy[i - 1 - c],
            c if c == n_lags + 1 => 1.0,
            _ => (r + 1) as f64,
        }
    });
    let response = DVector::from_fn(n_obs, |r, _| dy[first + r - 1]);
    let fit = ols_fit(&design, &response)?;
    let gamma_hat = fit.coefficients[0];
    let t_stat = gamma_hat / fit.standard_errors[0];
    Ok(AdfResult {
        gamma_hat,
        t_stat,
        p_value: mackinnon_pvalue_ct(t_stat),
        n_lags,
        variant: AdfVariant::ConstantTrend,
        n_obs,
    })
}
