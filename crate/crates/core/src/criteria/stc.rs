//! Stationarity-test criterion.

use crate::criteria::adf::adf_test;
use crate::criteria::{Criterion, CriterionTrace, LevelScore};
use crate::error::{Error, Result};
use crate::itd::ItdDecomposition;
use crate::series::TimeSeries;

/// ADF p-value of a rotation. A rotation whose regression is rank deficient
/// (constant or exactly linear) cannot reject the unit root and scores 1.
pub fn rotation_pvalue(rotation: &TimeSeries, n_lags: usize) -> Result<f64> {
    match adf_test(rotation, n_lags) {
        Ok(r) => Ok(r.p_value),
        Err(Error::RankDeficient { .. }) => Ok(1.0),
        Err(e) => Err(e),
    }
}

/// Chooses the smallest `j ≥ 1` whose next rotation `R^{j+1}` is no longer
/// stationary at level `p_star`, i.e. has ADF p-value above it. Falls back
/// to `D` when every tested rotation is stationary.
///
/// The trace holds `(j, p(R^{j+1}))` for `j = 1..D−1`.
pub fn stc_select(decomp: &ItdDecomposition, p_star: f64, n_lags: usize) -> Result<CriterionTrace> {
    let depth = decomp.depth();
    if depth == 0 {
        return Err(Error::EmptyDecomposition);
    }
    if !(0.0..=1.0).contains(&p_star) {
        return Err(Error::InvalidParameter {
            name: "p_star",
            reason: format!("{p_star} is not in [0, 1]"),
        });
    }
    let per_level = (1..depth)
        .map(|j| {
            let r = decomp.rotation(j + 1).expect("level in range");
            rotation_pvalue(r, n_lags).map(|score| LevelScore { level: j, score })
        })
        .collect::<Result<Vec<_>>>()?;
    let exceed = per_level.iter().find(|s| s.score > p_star).map(|s| s.level);
    Ok(CriterionTrace {
        criterion: Criterion::Stc,
        chosen: exceed.unwrap_or(depth),
        fallback_used: exceed.is_none(),
        per_level,
    })
}

/// Re-applies the threshold to an existing trace without recomputing ADF.
pub fn stc_choice(trace: &CriterionTrace, depth: usize, p_star: f64) -> (usize, bool) {
    match trace.per_level.iter().find(|s| s.score > p_star) {
        Some(s) => (s.level, false),
        None => (depth, true),
    }
}
