//! Batch runners over many series, seeds or smoothing parameters.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs
//! on the rayon pool; without it every call runs sequentially. Results are
//! always returned in input order, so output does not depend on the mode.

use crate::criteria::{tendency, Criterion, TendencyParams, TendencySplit};
use crate::error::Result;
use crate::hp::{hp_trend, HpResult};
use crate::itd::{decompose, BoundaryPolicy, ItdDecomposition};
use crate::series::TimeSeries;
use crate::signals::GeneratorSpec;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether [`Execution::Parallel`] actually uses more than one thread.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn join<A, B, RA, RB>(exec: Execution, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => rayon::join(a, b),
        _ => (a(), b()),
    }
}

pub fn generate_batch(exec: Execution, specs: &[GeneratorSpec]) -> Vec<Result<TimeSeries>> {
    map(exec, specs, GeneratorSpec::generate)
}

pub fn decompose_batch(
    exec: Execution,
    series: &[TimeSeries],
    boundary: BoundaryPolicy,
) -> Vec<ItdDecomposition> {
    map(exec, series, |s| decompose(s, boundary))
}

pub fn tendency_batch(
    exec: Execution,
    series: &[TimeSeries],
    criterion: Criterion,
    boundary: BoundaryPolicy,
    params: TendencyParams,
) -> Vec<Result<TendencySplit>> {
    map(exec, series, |s| tendency(s, criterion, boundary, params))
}

/// HP filter of one series at each of `lambdas`.
pub fn hp_sweep(exec: Execution, series: &TimeSeries, lambdas: &[f64]) -> Vec<Result<HpResult>> {
    map(exec, lambdas, |&l| hp_trend(series, l))
}
