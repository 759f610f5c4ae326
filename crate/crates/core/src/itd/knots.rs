use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::itd::extrema::ExtremaSet;
use crate::series::TimeSeries;

/// How the two endpoint knots are updated at each step.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryPolicy {
    /// Each endpoint is averaged with its adjacent knot.
    #[default]
    Free,
    /// Both endpoints become the average of the first and last knot.
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Knot {
    pub tau: usize,
    pub value: f64,
}

/// Knots of a baseline: extremum positions bracketed by both endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotSet {
    knots: Vec<Knot>,
    boundary: BoundaryPolicy,
}

impl KnotSet {
    pub fn new(knots: Vec<Knot>, boundary: BoundaryPolicy) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidParameter {
                name: "knots",
                reason: format!("need at least 2 knots, got {}", knots.len()),
            });
        }
        if knots.windows(2).any(|w| w[0].tau >= w[1].tau) {
            return Err(Error::InvalidParameter {
                name: "knots",
                reason: "positions must be strictly increasing".into(),
            });
        }
        Ok(Self { knots, boundary })
    }

    /// Samples `series` at every entry of `extrema` (endpoints included).
    pub fn from_extrema(series: &TimeSeries, extrema: &ExtremaSet, boundary: BoundaryPolicy) -> Self {
        let knots = extrema
            .entries()
            .iter()
            .map(|e| Knot {
                tau: e.position,
                value: series[e.position],
            })
            .collect();
        Self { knots, boundary }
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn boundary(&self) -> BoundaryPolicy {
        self.boundary
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.knots.iter().map(|k| k.tau)
    }
}

/// Produces the next-level knot values at unchanged positions.
///
/// Interior knots move halfway towards the chord joining their two
/// neighbours, evaluated at their own position:
///
/// `b'_k = ½ [b_{k−1} + (τ_k − τ_{k−1}) / (τ_{k+1} − τ_{k−1}) · (b_{k+1} − b_{k−1})] + ½ b_k`
///
/// All right-hand sides use the old values.
pub fn knot_update(knots: &KnotSet) -> KnotSet {
    let old = &knots.knots;
    let n = old.len();
    assert!(n >= 2, "knot_update needs at least two knots");
    let mut new = old.clone();
    for k in 1..n - 1 {
        let (prev, cur, next) = (old[k - 1], old[k], old[k + 1]);
        let span = (next.tau - prev.tau) as f64;
        debug_assert!(span > 0.0);
        let w = (cur.tau - prev.tau) as f64 / span;
        new[k].value = 0.5 * (prev.value + w * (next.value - prev.value)) + 0.5 * cur.value;
    }
    match knots.boundary {
        BoundaryPolicy::Free => {
            new[0].value = 0.5 * (old[1].value + old[0].value);
            new[n - 1].value = 0.5 * (old[n - 2].value + old[n - 1].value);
        }
        BoundaryPolicy::Periodic => {
            let v = 0.5 * (old[0].value + old[n - 1].value);
            new[0].value = v;
            new[n - 1].value = v;
        }
    }
    KnotSet {
        knots: new,
        boundary: knots.boundary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[(usize, f64)], boundary: BoundaryPolicy) -> KnotSet {
        KnotSet::new(
            pts.iter().map(|&(tau, value)| Knot { tau, value }).collect(),
            boundary,
        )
        .unwrap()
    }

    fn values(k: &KnotSet) -> Vec<f64> {
        k.knots().iter().map(|k| k.value).collect()
    }

    #[test]
    fn collinear_interior_is_fixed_point() {
        let k = knot_update(&set(&[(0, 0.0), (1, 1.0), (2, 2.0)], BoundaryPolicy::Free));
        assert_eq!(k.knots()[1].value, 1.0);
    }

    #[test]
    fn interior_formula() {
        // ½[0 + (5/10)(0 − 0)] + ½·4 = 2
        let k = knot_update(&set(&[(0, 0.0), (5, 4.0), (10, 0.0)], BoundaryPolicy::Free));
        assert_eq!(k.knots()[1].value, 2.0);
        // uneven spacing: ½[1 + (2/8)(5 − 1)] + ½·(−3) = 1 − 1.5 = −0.5
        let k = knot_update(&set(&[(0, 1.0), (2, -3.0), (8, 5.0)], BoundaryPolicy::Free));
        assert_eq!(k.knots()[1].value, -0.5);
    }

    #[test]
    fn free_boundary_averages_with_neighbour() {
        let k = knot_update(&set(&[(0, 1.0), (3, 3.0), (6, 7.0), (9, 5.0)], BoundaryPolicy::Free));
        assert_eq!(k.knots()[0].value, 2.0);
        assert_eq!(k.knots()[3].value, 6.0);
    }

    #[test]
    fn periodic_boundary_shares_endpoint_average() {
        let k = knot_update(&set(&[(0, 1.0), (3, 3.0), (6, 7.0), (9, 5.0)], BoundaryPolicy::Periodic));
        assert_eq!(k.knots()[0].value, 3.0);
        assert_eq!(k.knots()[3].value, 3.0);
    }

    #[test]
    fn positions_unchanged() {
        let before = set(&[(0, 1.0), (4, -2.0), (5, 9.0), (11, 0.0)], BoundaryPolicy::Free);
        let after = knot_update(&before);
        assert_eq!(
            before.positions().collect::<Vec<_>>(),
            after.positions().collect::<Vec<_>>()
        );
        assert_eq!(values(&after).len(), 4);
    }

    #[test]
    fn rejects_unordered_knots() {
        let r = KnotSet::new(
            vec![Knot { tau: 3, value: 0.0 }, Knot { tau: 3, value: 1.0 }],
            BoundaryPolicy::Free,
        );
        assert!(r.is_err());
    }
}
