//! Interior extrema with the rightmost-plateau rule.

use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Min,
    Max,
    /// First or last sample. Endpoints are knots but not extrema.
    Endpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extremum {
    pub position: usize,
    pub kind: ExtremumKind,
}

/// Ordered extrema of a series, bracketed by its two endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremaSet {
    entries: Vec<Extremum>,
    includes_endpoints: bool,
}

impl ExtremaSet {
    pub fn entries(&self) -> &[Extremum] {
        &self.entries
    }

    pub fn includes_endpoints(&self) -> bool {
        self.includes_endpoints
    }

    pub fn interior(&self) -> &[Extremum] {
        match self.entries.len() {
            0..=2 => &[],
            n => &self.entries[1..n - 1],
        }
    }

    pub fn interior_count(&self) -> usize {
        self.interior().len()
    }

    /// Positions of all entries, endpoints included.
    pub fn positions(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.position).collect()
    }

    /// Index into `entries` of the interior extremum at `position`.
    pub(crate) fn entry_index(&self, position: usize) -> Option<usize> {
        let k = self
            .entries
            .binary_search_by_key(&position, |e| e.position)
            .ok()?;
        (self.entries[k].kind != ExtremumKind::Endpoint).then_some(k)
    }
}

/// Finds all interior strict extrema.
///
/// A run of equal values forms a single extremum located at its rightmost
/// sample, provided the samples on both sides of the run lie on the same
/// side of it. Runs touching either endpoint are never extrema. Comparisons
/// are exact.
pub fn find_extrema(series: &TimeSeries) -> ExtremaSet {
    let y = series.values();
    let n = y.len();
    let mut entries = Vec::with_capacity(8);
    entries.push(Extremum {
        position: 0,
        kind: ExtremumKind::Endpoint,
    });
    // value immediately left of the plateau containing i
    let mut left: Option<f64> = None;
    for i in 1..n.saturating_sub(1) {
        if y[i] != y[i - 1] {
            left = Some(y[i - 1]);
        }
        if y[i] == y[i + 1] {
            continue;
        }
        let Some(l) = left else { continue };
        let kind = if y[i] > l && y[i] > y[i + 1] {
            ExtremumKind::Max
        } else if y[i] < l && y[i] < y[i + 1] {
            ExtremumKind::Min
        } else {
            continue;
        };
        entries.push(Extremum { position: i, kind });
    }
    if n > 1 {
        entries.push(Extremum {
            position: n - 1,
            kind: ExtremumKind::Endpoint,
        });
    }
    debug_assert!(entries
        .windows(2)
        .filter(|w| w[0].kind != ExtremumKind::Endpoint && w[1].kind != ExtremumKind::Endpoint)
        .all(|w| w[0].kind != w[1].kind));
    ExtremaSet {
        entries,
        includes_endpoints: true,
    }
}
