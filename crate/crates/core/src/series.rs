use std::ops::Index;

use crate::error::{Error, Result};

/// Uniformly indexed, finite, non-empty sequence of reals.
///
/// Positions are 0-based. No time axis is stored; external timestamps are
/// metadata handled by the I/O layer.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    label: Option<String>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self {
            values,
            label: None,
        })
    }

    /// Builds a series from values produced by arithmetic on already valid
    /// series. Finiteness is only checked in debug builds.
    pub(crate) fn from_trusted(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Self {
            values,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false for a constructed series; provided for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Σ |y(i+1) − y(i)|.
    pub fn total_variation(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }

    /// Pointwise `self - other`.
    pub fn sub(&self, other: &TimeSeries) -> Result<TimeSeries> {
        check_len(self, other)?;
        Ok(Self::from_trusted(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    /// Pointwise `self + other`.
    pub fn add(&self, other: &TimeSeries) -> Result<TimeSeries> {
        check_len(self, other)?;
        Ok(Self::from_trusted(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// `self − trend`, adjusted by at most a few ulps per point so that
    /// `trend[i] + r[i] == self[i]` holds exactly in floating point whenever
    /// such an `r[i]` exists.
    pub fn residual_from(&self, trend: &TimeSeries) -> Result<TimeSeries> {
        check_len(self, trend)?;
        Ok(Self::from_trusted(
            self.values
                .iter()
                .zip(&trend.values)
                .map(|(&y, &t)| exact_difference(y, t))
                .collect(),
        ))
    }

    /// Checks that `trend + residual` reproduces `self`: exactly wherever a
    /// double residual can do so, and as the rounded difference elsewhere.
    /// The second case arises when `|trend| ≫ |self|`, e.g. `y = 0.001`,
    /// `t = −0.7`, where no `r` satisfies `t + r == y`.
    pub fn is_additive_split(&self, trend: &TimeSeries, residual: &TimeSeries) -> bool {
        self.len() == trend.len()
            && self.len() == residual.len()
            && self
                .values
                .iter()
                .zip(&trend.values)
                .zip(&residual.values)
                .all(|((&y, &t), &r)| {
                    t + r == y || (r.to_bits() == exact_difference(y, t).to_bits() && r == y - t)
                })
    }

    /// `scale * y + offset`, pointwise.
    pub fn affine(&self, scale: f64, offset: f64) -> Result<TimeSeries> {
        TimeSeries::new(self.values.iter().map(|v| scale * v + offset).collect())
    }
}

/// Returns `r` close to `y − t` such that `t + r == y` if any such double
/// exists, else `y − t`. `t + r` is monotone in `r` and any solution lies
/// within about one ulp of the rounded difference, so a short search is
/// complete.
fn exact_difference(y: f64, t: f64) -> f64 {
    let r = y - t;
    if t + r == y {
        return r;
    }
    let (mut up, mut down) = (r, r);
    for _ in 0..4 {
        up = up.next_up();
        down = down.next_down();
        if t + up == y {
            return up;
        }
        if t + down == y {
            return down;
        }
    }
    r
}

fn check_len(a: &TimeSeries, b: &TimeSeries) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

impl Index<usize> for TimeSeries {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        TimeSeries::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(matches!(TimeSeries::new(vec![]), Err(Error::EmptySeries)));
        assert!(matches!(
            TimeSeries::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1, .. })
        ));
        assert!(matches!(
            TimeSeries::new(vec![f64::INFINITY]),
            Err(Error::NonFinite { index: 0, .. })
        ));
    }

    #[test]
    fn total_variation_of_zigzag() {
        let s = TimeSeries::new(vec![0.0, 2.0, -1.0, 1.0]).unwrap();
        assert_eq!(s.total_variation(), 2.0 + 3.0 + 2.0);
        assert_eq!(s.max_abs(), 2.0);
    }

    #[test]
    fn residual_reconstructs_exactly() {
        let y = TimeSeries::new(vec![0.25, 1.0, -7.25, 1e-3, 123.456]).unwrap();
        let t = TimeSeries::new(vec![-0.23, 1e-17, 2.0 / 3.0, -0.7, 0.1]).unwrap();
        let r = y.residual_from(&t).unwrap();
        for i in [0, 1, 2, 4] {
            assert_eq!(t[i] + r[i], y[i]);
            assert!((r[i] - (y[i] - t[i])).abs() <= 4.0 * f64::EPSILON * r[i].abs());
        }
        // plain subtraction is not enough here
        assert_ne!(-0.23 + (0.25 - -0.23), 0.25);
        // no double r gives -0.7 + r == 0.001: the sum is a multiple of 2^-53
        assert_ne!(t[3] + r[3], y[3]);
        assert_eq!(r[3], y[3] - t[3]);
        for k in -8i64..=8 {
            let cand = f64::from_bits((r[3].to_bits() as i64 + k) as u64);
            assert_ne!(t[3] + cand, y[3]);
        }
        assert!(y.is_additive_split(&t, &r));
        let mut bad = r.clone().into_values();
        bad[3] = bad[3].next_up();
        assert!(!y.is_additive_split(&t, &TimeSeries::new(bad).unwrap()));
    }

    #[test]
    fn sub_checks_length() {
        let a = TimeSeries::new(vec![1.0, 2.0]).unwrap();
        let b = TimeSeries::new(vec![1.0]).unwrap();
        assert!(matches!(a.sub(&b), Err(Error::LengthMismatch { .. })));
    }
}
