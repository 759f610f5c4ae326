//! Intrinsic time decomposition.
//!
//! Each step replaces a baseline by a piecewise-linear function of itself,
//! anchored on its extrema (the knots), and records the removed detail as a
//! rotation. The process repeats until the baseline is free of interior
//! extrema, giving `Y = B^D + Σ_j R^j` exactly up to round-off.
//!
//! Levels are numbered from 1; level 0 denotes the input.

mod extrema;
mod knots;

pub use extrema::{find_extrema, Extremum, ExtremaSet, ExtremumKind};
pub use knots::{knot_update, BoundaryPolicy, Knot, KnotSet};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Relative threshold under which a segment's knot values count as equal.
pub const DEGENERATE_SEGMENT_RTOL: f64 = 1e-12;

/// Safety cap on the number of levels. The extrema count never increases
/// between levels; the cap only guards against pathological stalls.
const MAX_LEVELS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineStep {
    pub baseline: TimeSeries,
    pub rotation: TimeSeries,
    /// Knot positions of the parent with the values of the new baseline.
    pub knots: KnotSet,
    /// Segments whose parent knot values were equal within tolerance and
    /// were therefore interpolated linearly in the index.
    pub degenerate_segments: usize,
}

/// One application of the baseline operator.
///
/// Returns [`Error::NoInteriorExtrema`] when `baseline` has nothing left to
/// rotate.
pub fn baseline_step(baseline: &TimeSeries, boundary: BoundaryPolicy) -> Result<BaselineStep> {
    step(baseline, boundary, DEGENERATE_SEGMENT_RTOL * baseline.max_abs())
}

fn step(parent: &TimeSeries, boundary: BoundaryPolicy, eps: f64) -> Result<BaselineStep> {
    let extrema = find_extrema(parent);
    if extrema.interior_count() == 0 {
        return Err(Error::NoInteriorExtrema);
    }
    let old = KnotSet::from_extrema(parent, &extrema, boundary);
    let new = knot_update(&old);
    let y = parent.values();

    let mut out = vec![0.0; y.len()];
    out[0] = new.knots()[0].value;
    let mut degenerate_segments = 0;
    for (o, n) in old.knots().windows(2).zip(new.knots().windows(2)) {
        let (lo, hi) = (o[0], o[1]);
        let (nlo, nhi) = (n[0].value, n[1].value);
        let den = hi.value - lo.value;
        let degenerate = den == 0.0 || den.abs() < eps;
        if degenerate {
            degenerate_segments += 1;
        }
        let width = (hi.tau - lo.tau) as f64;
        for i in lo.tau + 1..hi.tau {
            let t = if degenerate {
                (i - lo.tau) as f64 / width
            } else {
                (y[i] - lo.value) / den
            };
            out[i] = nlo * (1.0 - t) + nhi * t;
        }
        // right endpoint of the segment is the knot itself
        out[hi.tau] = nhi;
    }

    let rotation = y.iter().zip(&out).map(|(a, b)| a - b).collect();
    Ok(BaselineStep {
        baseline: TimeSeries::from_trusted(out),
        rotation: TimeSeries::from_trusted(rotation),
        knots: new,
        degenerate_segments,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ItdLevel {
    pub level: usize,
    pub baseline: TimeSeries,
    pub rotation: TimeSeries,
    pub baseline_knots: KnotSet,
    pub degenerate_segments: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ItdDecomposition {
    input: TimeSeries,
    levels: Vec<ItdLevel>,
    boundary: BoundaryPolicy,
}

impl ItdDecomposition {
    pub fn input(&self) -> &TimeSeries {
        &self.input
    }

    pub fn levels(&self) -> &[ItdLevel] {
        &self.levels
    }

    pub fn boundary(&self) -> BoundaryPolicy {
        self.boundary
    }

    /// Number of levels D.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// `B^j` for `j = 0..=D`; `B^0` is the input.
    pub fn baseline(&self, j: usize) -> Option<&TimeSeries> {
        match j {
            0 => Some(&self.input),
            _ => self.levels.get(j - 1).map(|l| &l.baseline),
        }
    }

    /// `R^j` for `j = 1..=D`.
    pub fn rotation(&self, j: usize) -> Option<&TimeSeries> {
        j.checked_sub(1)
            .and_then(|k| self.levels.get(k))
            .map(|l| &l.rotation)
    }

    pub fn final_baseline(&self) -> &TimeSeries {
        self.levels.last().map_or(&self.input, |l| &l.baseline)
    }

    pub fn degenerate_segments(&self) -> usize {
        self.levels.iter().map(|l| l.degenerate_segments).sum()
    }

    pub fn reconstruct(&self) -> TimeSeries {
        reconstruct(self)
    }
}

/// Decomposes `series` until the baseline has no interior extrema.
///
/// Series shorter than three points have no interior and yield `D = 0`.
pub fn decompose(series: &TimeSeries, boundary: BoundaryPolicy) -> ItdDecomposition {
    let eps = DEGENERATE_SEGMENT_RTOL * series.max_abs();
    let mut levels: Vec<ItdLevel> = Vec::new();
    if series.len() >= 3 {
        loop {
            let current = levels.last().map_or(series, |l| &l.baseline);
            let next = match step(current, boundary, eps) {
                Ok(s) => s,
                Err(Error::NoInteriorExtrema) => break,
                Err(e) => unreachable!("baseline step failed: {e}"),
            };
            levels.push(ItdLevel {
                level: levels.len() + 1,
                baseline: next.baseline,
                rotation: next.rotation,
                baseline_knots: next.knots,
                degenerate_segments: next.degenerate_segments,
            });
            if levels.len() >= MAX_LEVELS {
                break;
            }
        }
    }
    ItdDecomposition {
        input: series.clone(),
        levels,
        boundary,
    }
}

/// `B^D + Σ_{j=1..D} R^j`, summed from the coarsest rotation down.
pub fn reconstruct(decomp: &ItdDecomposition) -> TimeSeries {
    let mut acc = decomp.final_baseline().values().to_vec();
    for level in decomp.levels.iter().rev() {
        for (a, r) in acc.iter_mut().zip(level.rotation.values()) {
            *a += r;
        }
    }
    TimeSeries::from_trusted(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn tent_collapses_to_constant_in_one_step() {
        // knots (0,0) (1,2) (2,0) (3,2) (4,0); every update evaluates to 1
        let d = decompose(&ts(&[0.0, 2.0, 0.0, 2.0, 0.0]), BoundaryPolicy::Free);
        assert_eq!(d.depth(), 1);
        assert_eq!(d.baseline(1).unwrap().values(), &[1.0; 5]);
        assert_eq!(
            d.rotation(1).unwrap().values(),
            &[-1.0, 1.0, -1.0, 1.0, -1.0]
        );
    }

    #[test]
    fn hand_computed_step_with_interpolated_samples() {
        // extrema: max at 2 (4), min at 3 (1)
        // knots: b0 = ½(4+0) = 2, b2 = ½[0 + ⅔(1−0)] + 2 = 7/3,
        //        b3 = ½[4 + ½(3−4)] + ½ = 9/4, b4 = ½(1+3) = 2
        // sample 1 sits halfway (in value) between knots 0 and 2: (2 + 7/3)/2
        let s = baseline_step(&ts(&[0.0, 2.0, 4.0, 1.0, 3.0]), BoundaryPolicy::Free).unwrap();
        let expected = [2.0, 13.0 / 6.0, 7.0 / 3.0, 9.0 / 4.0, 2.0];
        for (got, want) in s.baseline.values().iter().zip(expected) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
        assert_eq!(s.degenerate_segments, 0);
    }

    #[test]
    fn knot_values_hit_exactly() {
        let y = ts(&[0.3, 1.7, -0.2, 0.9, 0.91, 0.1, 2.2, -1.3, 0.0]);
        let s = baseline_step(&y, BoundaryPolicy::Free).unwrap();
        for k in s.knots.knots() {
            assert_eq!(s.baseline[k.tau].to_bits(), k.value.to_bits());
        }
    }

    #[test]
    fn monotone_input_is_rejected_by_step() {
        assert!(matches!(
            baseline_step(&ts(&[0.0, 1.0, 2.0]), BoundaryPolicy::Free),
            Err(Error::NoInteriorExtrema)
        ));
    }

    #[test]
    fn constant_and_short_inputs_have_no_levels() {
        for v in [&[4.0; 10][..], &[1.0], &[1.0, -1.0]] {
            let d = decompose(&ts(v), BoundaryPolicy::Free);
            assert_eq!(d.depth(), 0);
            assert_eq!(d.reconstruct(), ts(v));
            assert_eq!(d.final_baseline(), d.input());
        }
    }

    #[test]
    fn periodic_boundary_pins_both_ends_together() {
        let d = decompose(&ts(&[0.0, 3.0, -1.0, 2.0, 5.0, 1.0]), BoundaryPolicy::Periodic);
        for l in d.levels() {
            assert_eq!(l.baseline[0], l.baseline[5]);
        }
    }

    #[test]
    fn degenerate_segment_falls_back_to_index_interpolation() {
        // knots at 1 (max 2) and 3 (min 1)... segment from 3 to 5 has old
        // values 1 -> 1 + tiny difference
        let y = ts(&[0.0, 2.0, 1.5, 1.0, 1.0 + 1e-14, 1.0 + 2e-14]);
        let e = find_extrema(&y);
        assert_eq!(e.interior_count(), 2);
        let s = baseline_step(&y, BoundaryPolicy::Free).unwrap();
        assert_eq!(s.degenerate_segments, 1);
        // last segment is linear in the index between its new knot values
        let (a, b) = (s.baseline[3], s.baseline[5]);
        assert!((s.baseline[4] - 0.5 * (a + b)).abs() < 1e-15);
    }

    #[test]
    fn level_accessors() {
        let d = decompose(&ts(&[0.0, 2.0, 0.0, 2.0, 0.0]), BoundaryPolicy::Free);
        assert!(d.rotation(0).is_none());
        assert!(d.rotation(2).is_none());
        assert!(d.baseline(2).is_none());
        assert_eq!(d.levels()[0].level, 1);
    }
}
