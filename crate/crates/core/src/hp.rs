//! Hodrick-Prescott trend.
//!
//! The trend `H` minimises `Σ (Y − H)² + λ Σ (Δ²H)²`, i.e. solves the
//! pentadiagonal SPD system `(I + λ DᵀD) H = Y` with `D` the second
//! difference operator. The solver works on the residual
//! `e = Y − H`, which satisfies `(I + λ DᵀD) e = λ DᵀD Y`; this keeps
//! inputs with zero second differences exactly fixed.

use crate::error::{Error, Result};
use crate::series::TimeSeries;

pub const DEFAULT_LAMBDA: f64 = 1600.0;

#[derive(Debug, Clone, PartialEq)]
pub struct HpResult {
    pub trend: TimeSeries,
    pub residual: TimeSeries,
    pub lambda: f64,
}

pub fn validate_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidLambda(lambda))
    }
}

pub fn hp_trend(series: &TimeSeries, lambda: f64) -> Result<HpResult> {
    validate_lambda(lambda)?;
    let y = series.values();
    let n = y.len();
    if lambda == 0.0 || n < 3 {
        return Ok(HpResult {
            trend: series.clone(),
            residual: TimeSeries::from_trusted(vec![0.0; n]),
            lambda,
        });
    }

    let mut rhs = gram_apply(y);
    rhs.iter_mut().for_each(|v| *v *= lambda);
    let system = Pentadiagonal::hp_system(n, lambda);
    let e = system.solve(rhs);

    let trend = TimeSeries::from_trusted(y.iter().zip(&e).map(|(a, b)| a - b).collect());
    let residual = series.residual_from(&trend)?;
    Ok(HpResult {
        trend,
        residual,
        lambda,
    })
}

/// `max_i |((I + λDᵀD) H − Y)_i|`, the normal-equation residual.
pub fn normal_equation_residual(series: &TimeSeries, trend: &TimeSeries, lambda: f64) -> f64 {
    let h = trend.values();
    let penalty = gram_apply(h);
    h.iter()
        .zip(&penalty)
        .zip(series.values())
        .map(|((h, p), y)| (h + lambda * p - y).abs())
        .fold(0.0, f64::max)
}

/// Value of the HP objective `Σ (Y − H)² + λ Σ (Δ²H)²`.
pub fn hp_objective(series: &TimeSeries, trend: &[f64], lambda: f64) -> f64 {
    let fit: f64 = series
        .values()
        .iter()
        .zip(trend)
        .map(|(y, h)| (y - h).powi(2))
        .sum();
    let smooth: f64 = trend
        .windows(3)
        .map(|w| (w[2] - 2.0 * w[1] + w[0]).powi(2))
        .sum();
    fit + lambda * smooth
}

/// High-pass gain `4λ(1 − cos ω)² / (1 + 4λ(1 − cos ω)²)`.
///
/// This is the response of the residual `Y − H` to a sinusoid of angular
/// frequency `ω`; the trend's gain is `1 − hp_gain`.
pub fn hp_gain(omega: f64, lambda: f64) -> f64 {
    let c = 4.0 * lambda * (1.0 - omega.cos()).powi(2);
    c / (1.0 + c)
}

pub fn hp_trend_gain(omega: f64, lambda: f64) -> f64 {
    1.0 - hp_gain(omega, lambda)
}

/// `DᵀD x` for the (n−2)×n second-difference operator `D`.
fn gram_apply(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut out = vec![0.0; n];
    for r in 0..n.saturating_sub(2) {
        let d = x[r] - 2.0 * x[r + 1] + x[r + 2];
        out[r] += d;
        out[r + 1] -= 2.0 * d;
        out[r + 2] += d;
    }
    out
}

/// Symmetric matrix with bandwidth two, stored by diagonals.
struct Pentadiagonal {
    d0: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl Pentadiagonal {
    fn hp_system(n: usize, lambda: f64) -> Self {
        let mut d0 = vec![1.0; n];
        let mut d1 = vec![0.0; n - 1];
        let mut d2 = vec![0.0; n - 2];
        const C: [f64; 3] = [1.0, -2.0, 1.0];
        for r in 0..n - 2 {
            for a in 0..3 {
                d0[r + a] += lambda * C[a] * C[a];
                if a + 1 < 3 {
                    d1[r + a] += lambda * C[a] * C[a + 1];
                }
            }
            d2[r] += lambda * C[0] * C[2];
        }
        Self { d0, d1, d2 }
    }

    /// LDLᵀ factorisation followed by forward, diagonal and backward
    /// substitution. The matrix must be SPD.
    fn solve(&self, mut x: Vec<f64>) -> Vec<f64> {
        let n = self.d0.len();
        let mut d = vec![0.0; n];
        // l1[i] = L[i+1][i], l2[i] = L[i+2][i]
        let mut l1 = vec![0.0; n.saturating_sub(1)];
        let mut l2 = vec![0.0; n.saturating_sub(2)];
        for i in 0..n {
            let mut di = self.d0[i];
            if i >= 2 {
                l2[i - 2] = self.d2[i - 2] / d[i - 2];
                di -= l2[i - 2] * l2[i - 2] * d[i - 2];
            }
            if i >= 1 {
                let mut a = self.d1[i - 1];
                if i >= 2 {
                    a -= l2[i - 2] * d[i - 2] * l1[i - 2];
                }
                l1[i - 1] = a / d[i - 1];
                di -= l1[i - 1] * l1[i - 1] * d[i - 1];
            }
            debug_assert!(di > 0.0, "matrix is not positive definite");
            d[i] = di;
        }
        for i in 1..n {
            x[i] -= l1[i - 1] * x[i - 1];
            if i >= 2 {
                x[i] -= l2[i - 2] * x[i - 2];
            }
        }
        for (xi, di) in x.iter_mut().zip(&d) {
            *xi /= di;
        }
        for i in (0..n.saturating_sub(1)).rev() {
            x[i] -= l1[i] * x[i + 1];
            if i + 2 < n {
                x[i] -= l2[i] * x[i + 2];
            }
        }
        x
    }
}
