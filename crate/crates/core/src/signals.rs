//! Seeded synthetic signals.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64`; normal
//! variates use the ziggurat sampler of `rand_distr::StandardNormal`.
//! Draw order is part of the output contract.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// |y| beyond which an SDE path is declared divergent.
pub const BLOWUP_THRESHOLD: f64 = 1e6;

pub const SDE_DEFAULT_N: usize = 2000;
pub const SDE_DEFAULT_DT: f64 = 0.05;
pub const SDE_DEFAULT_Y0: f64 = 0.5;
/// ⌊200π⌋ samples at spacing 0.01 cover one period of the sine.
pub const NOISY_SINE_LEN: usize = 628;
pub const NOISY_SINE_VARIANCE: f64 = 0.1;
pub const MULTISCALE_DEFAULT_N: usize = 1000;
pub const CHIRP_LEN: usize = 201;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SignalKind {
    Sde,
    NoisySine,
    Multiscale,
    Chirp,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Overrides {
    pub n: Option<usize>,
    pub dt: Option<f64>,
    pub y0: Option<f64>,
    pub noise_variance: Option<f64>,
    /// Multiscale only: which of the 1/10/100 layers contribute.
    pub layers: Option<[bool; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: SignalKind,
    pub seed: u64,
    #[serde(default)]
    pub overrides: Overrides,
}

impl GeneratorSpec {
    pub fn new(kind: SignalKind, seed: u64) -> Self {
        Self {
            kind,
            seed,
            overrides: Overrides::default(),
        }
    }

    pub fn generate(&self) -> Result<TimeSeries> {
        let o = &self.overrides;
        let series = match self.kind {
            SignalKind::Sde => gen_sde_with(
                self.seed,
                SdeParams {
                    n: o.n.unwrap_or(SDE_DEFAULT_N),
                    dt: o.dt.unwrap_or(SDE_DEFAULT_DT),
                    y0: o.y0.unwrap_or(SDE_DEFAULT_Y0),
                    noise_variance: o.noise_variance.unwrap_or(1.0),
                },
            )?,
            SignalKind::NoisySine => gen_noisy_sine_with(
                self.seed,
                o.n.unwrap_or(NOISY_SINE_LEN),
                o.noise_variance.unwrap_or(NOISY_SINE_VARIANCE),
            )?,
            SignalKind::Multiscale => gen_multiscale_with(
                self.seed,
                o.n.unwrap_or(MULTISCALE_DEFAULT_N),
                o.layers.unwrap_or([true; 3]),
            )?,
            SignalKind::Chirp => gen_chirp(),
        };
        Ok(series)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdeParams {
    /// Number of Euler-Maruyama steps; the path has `n + 1` points.
    pub n: usize,
    pub dt: f64,
    pub y0: f64,
    /// Variance of the Wiener increment per unit time.
    pub noise_variance: f64,
}

impl Default for SdeParams {
    fn default() -> Self {
        Self {
            n: SDE_DEFAULT_N,
            dt: SDE_DEFAULT_DT,
            y0: SDE_DEFAULT_Y0,
            noise_variance: 1.0,
        }
    }
}

fn sde_drift(y: f64) -> f64 {
    -(y.powi(5) - 2.0 * y.powi(4) + 3.0 * y * y)
}

/// Euler-Maruyama path of `dY = −(Y⁵ − 2Y⁴ + 3Y²) dt + dW`.
pub fn gen_sde(seed: u64, n: usize, dt: f64, y0: f64) -> Result<TimeSeries> {
    gen_sde_with(
        seed,
        SdeParams {
            n,
            dt,
            y0,
            noise_variance: 1.0,
        },
    )
}

pub fn gen_sde_with(seed: u64, p: SdeParams) -> Result<TimeSeries> {
    if p.n < 1 {
        return Err(invalid("n", "must be at least 1"));
    }
    if !(p.dt > 0.0 && p.dt.is_finite()) {
        return Err(invalid("dt", "must be positive and finite"));
    }
    if !p.y0.is_finite() {
        return Err(invalid("y0", "must be finite"));
    }
    check_variance(p.noise_variance)?;
    let mut rng = rng(seed);
    let scale = (p.noise_variance * p.dt).sqrt();
    let mut out = Vec::with_capacity(p.n + 1);
    let mut y = p.y0;
    out.push(y);
    for step in 1..=p.n {
        let xi: f64 = rng.sample(StandardNormal);
        y += sde_drift(y) * p.dt + scale * xi;
        if y.is_nan() || y.abs() > BLOWUP_THRESHOLD {
            return Err(Error::NumericalBlowup { step, value: y.abs() });
        }
        out.push(y);
    }
    TimeSeries::new(out).map(|s| s.with_label("sde"))
}

/// `sin(0.01 i) + ε_i`, `i = 0..628`, `ε ~ N(0, 0.1)`.
pub fn gen_noisy_sine(seed: u64) -> Result<TimeSeries> {
    gen_noisy_sine_with(seed, NOISY_SINE_LEN, NOISY_SINE_VARIANCE)
}

pub fn gen_noisy_sine_with(seed: u64, n: usize, variance: f64) -> Result<TimeSeries> {
    if n < 1 {
        return Err(invalid("n", "must be at least 1"));
    }
    check_variance(variance)?;
    let sd = variance.sqrt();
    let mut rng = rng(seed);
    let values = (0..n)
        .map(|i| {
            let e: f64 = rng.sample(StandardNormal);
            (0.01 * i as f64).sin() + sd * e
        })
        .collect();
    TimeSeries::new(values).map(|s| s.with_label("noisy-sine"))
}

/// Three superposed piecewise-constant uniform layers:
/// `Y(i) = Σ_{k=1..3} 10^{k−1} U(k, ⌊i / 10^{k−1}⌋)`.
///
/// Layers are drawn in order k = 1, 2, 3, each consuming one uniform per
/// block, whether or not it is enabled.
pub fn gen_multiscale(seed: u64, n: usize) -> Result<TimeSeries> {
    gen_multiscale_with(seed, n, [true; 3])
}

pub fn gen_multiscale_with(seed: u64, n: usize, layers: [bool; 3]) -> Result<TimeSeries> {
    if n < 1 {
        return Err(invalid("n", "must be at least 1"));
    }
    let mut rng = rng(seed);
    let mut values = vec![0.0; n];
    for (k, enabled) in layers.iter().enumerate() {
        let block = 10usize.pow(k as u32);
        let amplitude = block as f64;
        let draws: Vec<f64> = (0..n.div_ceil(block)).map(|_| rng.random::<f64>()).collect();
        if *enabled {
            for (i, v) in values.iter_mut().enumerate() {
                *v += amplitude * draws[i / block];
            }
        }
    }
    TimeSeries::new(values).map(|s| s.with_label("multiscale"))
}

/// `10 t³ cos(13 t³) sin(31π t)` on `t = 0, 0.01, …, 2`.
pub fn gen_chirp() -> TimeSeries {
    let values = (0..CHIRP_LEN)
        .map(|i| {
            let t = 0.01 * i as f64;
            let t3 = t * t * t;
            10.0 * t3 * (13.0 * t3).cos() * (31.0 * std::f64::consts::PI * t).sin()
        })
        .collect();
    TimeSeries::from_trusted(values).with_label("chirp")
}

/// i.i.d. standard normal draws.
pub fn white_noise(seed: u64, n: usize) -> Result<TimeSeries> {
    let mut rng = rng(seed);
    TimeSeries::new((0..n).map(|_| rng.sample(StandardNormal)).collect())
}

/// Cumulative sum of standard normal steps, starting from the first step.
pub fn random_walk(seed: u64, n: usize) -> Result<TimeSeries> {
    let steps = white_noise(seed, n)?;
    let mut acc = 0.0;
    TimeSeries::new(
        steps
            .values()
            .iter()
            .map(|s| {
                acc += s;
                acc
            })
            .collect(),
    )
}

fn check_variance(v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid("noise_variance", "must be non-negative and finite"))
    }
}

fn invalid(name: &'static str, reason: &str) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.to_string(),
    }
}
