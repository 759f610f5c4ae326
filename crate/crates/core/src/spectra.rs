//! DFT moduli for residual comparisons.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

pub const DEFAULT_MAX_BIN: usize = 250;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub frequencies: Vec<usize>,
    pub modulus: Vec<f64>,
    pub label: String,
}

impl SpectrumReport {
    /// Keeps bins `< max_bin`.
    pub fn truncated(&self, max_bin: usize) -> SpectrumReport {
        let keep = max_bin.min(self.modulus.len());
        SpectrumReport {
            frequencies: self.frequencies[..keep].to_vec(),
            modulus: self.modulus[..keep].to_vec(),
            label: self.label.clone(),
        }
    }
}

/// `X_k = Σ_i y(i) e^{−2πi·ik/N}` for `k = 0..N−1`, unnormalised, no window.
pub fn dft(values: &[f64]) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    if buf.is_empty() {
        return buf;
    }
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

pub fn dft_modulus(series: &TimeSeries) -> SpectrumReport {
    let modulus: Vec<f64> = dft(series.values()).iter().map(|c| c.norm()).collect();
    SpectrumReport {
        frequencies: (0..modulus.len()).collect(),
        modulus,
        label: series.label().unwrap_or("series").to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualSpectra {
    pub original: SpectrumReport,
    pub itd_residual: SpectrumReport,
    pub hp_residual: SpectrumReport,
}

/// Spectra of a series and of two of its residuals, truncated to bins
/// `< max_bin`.
pub fn residual_spectrum_report(
    original: &TimeSeries,
    itd_residual: &TimeSeries,
    hp_residual: &TimeSeries,
    max_bin: usize,
) -> Result<ResidualSpectra> {
    for other in [itd_residual, hp_residual] {
        if other.len() != original.len() {
            return Err(Error::LengthMismatch {
                left: original.len(),
                right: other.len(),
            });
        }
    }
    let spectrum = |s: &TimeSeries, label: &str| {
        let mut r = dft_modulus(s).truncated(max_bin);
        r.label = label.to_string();
        r
    };
    Ok(ResidualSpectra {
        original: spectrum(original, "original"),
        itd_residual: spectrum(itd_residual, "itd_residual"),
        hp_residual: spectrum(hp_residual, "hp_residual"),
    })
}
