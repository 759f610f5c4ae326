//! Tendency selection: which ITD baseline summarises the series.
//!
//! Two criteria are available. [`Criterion::Stc`] keeps removing rotations
//! while they test as stationary; [`Criterion::MaxEp`] stops just before
//! the largest extrema are smoothed away. Either way the series splits as
//! `Y = T + r` with `T = B^{j*}` and `r = Y − T = Σ_{j ≤ j*} R^j`.

mod adf;
mod ols;
mod prominence;
mod stc;

pub use adf::{adf_test, mackinnon_pvalue_ct, AdfResult, AdfVariant, MIN_EXTRA_POINTS};
pub use ols::{ols_fit, OlsFit, RANK_RTOL};
pub use prominence::{extrema_variation, maxep, maxep_select, prominence};
pub use stc::{rotation_pvalue, stc_choice, stc_select};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::itd::{decompose, BoundaryPolicy, ItdDecomposition};
use crate::series::TimeSeries;

#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum,
)]
pub enum Criterion {
    #[default]
    #[serde(rename = "stc")]
    #[value(name = "stc")]
    Stc,
    #[serde(rename = "maxep")]
    #[value(name = "maxep")]
    MaxEp,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::Stc => "stc",
            Criterion::MaxEp => "maxep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelScore {
    pub level: usize,
    pub score: f64,
}

/// Per-level scores behind a choice: ADF p-values of `R^{j+1}` for STC,
/// MaxEP of `B^j` for MaxEP.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionTrace {
    pub criterion: Criterion,
    pub per_level: Vec<LevelScore>,
    pub chosen: usize,
    pub fallback_used: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TendencyParams {
    pub p_star: f64,
    pub n_lags: usize,
}

impl Default for TendencyParams {
    fn default() -> Self {
        Self {
            p_star: 0.05,
            n_lags: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TendencySplit {
    pub j_star: usize,
    pub tendency: TimeSeries,
    pub residual: TimeSeries,
    pub trace: CriterionTrace,
}

/// Applies `criterion` to an existing decomposition.
///
/// A decomposition without levels gives `j* = 0`, `T = Y`, `r = 0`.
pub fn select_tendency(
    decomp: &ItdDecomposition,
    criterion: Criterion,
    params: TendencyParams,
) -> Result<TendencySplit> {
    let trace = if decomp.depth() == 0 {
        CriterionTrace {
            criterion,
            per_level: Vec::new(),
            chosen: 0,
            fallback_used: false,
        }
    } else {
        match criterion {
            Criterion::Stc => stc_select(decomp, params.p_star, params.n_lags)?,
            Criterion::MaxEp => maxep_select(decomp)?,
        }
    };
    let j_star = trace.chosen;
    let tendency = decomp.baseline(j_star).expect("chosen level in range").clone();
    let residual = decomp.input().residual_from(&tendency)?;
    Ok(TendencySplit {
        j_star,
        tendency,
        residual,
        trace,
    })
}

/// Decomposes `series` and selects its tendency.
pub fn tendency(
    series: &TimeSeries,
    criterion: Criterion,
    boundary: BoundaryPolicy,
    params: TendencyParams,
) -> Result<TendencySplit> {
    select_tendency(&decompose(series, boundary), criterion, params)
}
