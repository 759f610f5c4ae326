//! Extrema prominence and the MaxEP criterion.

use crate::criteria::{Criterion, CriterionTrace, LevelScore};
use crate::error::{Error, Result};
use crate::itd::{find_extrema, ExtremaSet, ItdDecomposition};
use crate::series::TimeSeries;

/// `min(|y(τ_k) − y(τ_{k−1})|, |y(τ_k) − y(τ_{k+1})|)` for the interior
/// extremum at `position`. Endpoints serve as neighbours.
pub fn prominence(series: &TimeSeries, position: usize) -> Result<f64> {
    let extrema = find_extrema(series);
    let k = extrema
        .entry_index(position)
        .ok_or(Error::NotAnExtremum { position })?;
    Ok(prominence_at(series, &extrema, k))
}

fn prominence_at(series: &TimeSeries, extrema: &ExtremaSet, k: usize) -> f64 {
    let e = extrema.entries();
    let here = series[e[k].position];
    let left = (here - series[e[k - 1].position]).abs();
    let right = (here - series[e[k + 1].position]).abs();
    left.min(right)
}

/// Largest prominence over all interior extrema; 0 if there are none.
pub fn maxep(series: &TimeSeries) -> f64 {
    let extrema = find_extrema(series);
    let n = extrema.entries().len();
    (1..n.saturating_sub(1))
        .map(|k| prominence_at(series, &extrema, k))
        .fold(0.0, f64::max)
}

/// Sum of absolute differences between consecutive knots (extrema and
/// endpoints). Equals the total variation since the series is monotone in
/// between.
pub fn extrema_variation(series: &TimeSeries) -> f64 {
    let extrema = find_extrema(series);
    extrema
        .entries()
        .windows(2)
        .map(|w| (series[w[1].position] - series[w[0].position]).abs())
        .sum()
}

/// Picks the level just before the steepest fall of MaxEP across
/// baselines: `argmin_{j=0..D−1} (m_{j+1} − m_j)`, smallest `j` on ties.
pub fn maxep_select(decomp: &ItdDecomposition) -> Result<CriterionTrace> {
    let depth = decomp.depth();
    if depth == 0 {
        return Err(Error::EmptyDecomposition);
    }
    let scores: Vec<f64> = (0..=depth)
        .map(|j| maxep(decomp.baseline(j).expect("level in range")))
        .collect();
    let mut chosen = 0;
    let mut best = f64::INFINITY;
    for (j, w) in scores.windows(2).enumerate() {
        let drop = w[1] - w[0];
        if drop < best {
            best = drop;
            chosen = j;
        }
    }
    Ok(CriterionTrace {
        criterion: Criterion::MaxEp,
        per_level: scores
            .into_iter()
            .enumerate()
            .map(|(level, score)| LevelScore { level, score })
            .collect(),
        chosen,
        fallback_used: false,
    })
}
