#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use tendex::signals::{gen_chirp, GeneratorSpec, SignalKind};
use tendex::TimeSeries;

/// One of several random series shapes with length 50..=2000.
pub fn random_series(seed: u64) -> TimeSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + seed);
    let n = rng.random_range(50..=2000usize);
    let mut normal = || -> f64 { rng.sample(StandardNormal) };
    let values: Vec<f64> = match seed % 5 {
        0 => (0..n).map(|_| normal()).collect(),
        1 => {
            let mut acc = 0.0;
            (0..n)
                .map(|_| {
                    acc += normal();
                    acc
                })
                .collect()
        }
        // coarse quantisation produces plateaus and ties
        2 => (0..n).map(|_| (normal() * 2.0).round() * 0.25).collect(),
        3 => {
            let f: Vec<f64> = (0..3).map(|k| 0.003 * 10f64.powi(k) * (1.0 + normal().abs())).collect();
            (0..n)
                .map(|i| {
                    let t = i as f64;
                    1e3 * (f[0] * t).sin() + 50.0 * (f[1] * t).cos() + 2.0 * (f[2] * t).sin() + 0.1 * normal()
                })
                .collect()
        }
        _ => (0..n)
            .map(|i| {
                let spike = if normal() > 2.5 { 100.0 * normal() } else { 0.0 };
                1e-6 * i as f64 + spike
            })
            .collect(),
    };
    TimeSeries::new(values).unwrap()
}

pub fn named_signals() -> Vec<(&'static str, TimeSeries)> {
    vec![
        ("sde", GeneratorSpec::new(SignalKind::Sde, 0).generate().unwrap()),
        ("noisy-sine", GeneratorSpec::new(SignalKind::NoisySine, 0).generate().unwrap()),
        ("multiscale", GeneratorSpec::new(SignalKind::Multiscale, 0).generate().unwrap()),
        ("chirp", gen_chirp()),
    ]
}

/// 200 random series followed by the four named signals.
pub fn corpus() -> Vec<TimeSeries> {
    let mut all: Vec<TimeSeries> = (0..200).map(random_series).collect();
    all.extend(named_signals().into_iter().map(|(_, s)| s));
    all
}

/// Most frequent value and its count; ties go to the smaller value.
pub fn mode(values: &[usize]) -> (usize, usize) {
    let mut counts = std::collections::BTreeMap::new();
    for v in values {
        *counts.entry(*v).or_insert(0usize) += 1;
    }
    counts
        .into_iter()
        .fold((0, 0), |best, (v, c)| if c > best.1 { (v, c) } else { best })
}

pub fn histogram(values: &[usize]) -> String {
    let mut counts = std::collections::BTreeMap::new();
    for v in values {
        *counts.entry(*v).or_insert(0usize) += 1;
    }
    counts.iter().map(|(k, n)| format!("{k}:{n}")).collect::<Vec<_>>().join(" ")
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Rows of a golden CSV, skipping `#` comments and the header.
pub fn golden_rows(name: &str) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(golden_path(name)).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}
