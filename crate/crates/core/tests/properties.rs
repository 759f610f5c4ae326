use proptest::prelude::*;

use tendex::criteria::{extrema_variation, maxep, maxep_select, stc_choice, stc_select};
use tendex::dataio::format_value;
use tendex::hp::{hp_objective, hp_trend};
use tendex::itd::{decompose, find_extrema, BoundaryPolicy};
use tendex::signals::{GeneratorSpec, SignalKind};
use tendex::spectra::dft;
use tendex::TimeSeries;

fn series(len: std::ops::Range<usize>) -> impl Strategy<Value = TimeSeries> {
    prop::collection::vec(-1e3f64..1e3, len).prop_map(|v| TimeSeries::new(v).unwrap())
}

/// Multiples of 1/1024 in a small range, so scaling by powers of two and
/// shifting by integers is exact.
fn dyadic_series(len: std::ops::Range<usize>) -> impl Strategy<Value = TimeSeries> {
    prop::collection::vec(-4096i32..4096, len)
        .prop_map(|v| TimeSeries::new(v.into_iter().map(|k| k as f64 / 1024.0).collect()).unwrap())
}

fn boundary() -> impl Strategy<Value = BoundaryPolicy> {
    prop_oneof![Just(BoundaryPolicy::Free), Just(BoundaryPolicy::Periodic)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reconstruction_is_lossless(y in series(1..400), b in boundary()) {
        let back = decompose(&y, b).reconstruct();
        let tol = 1e-9 * y.max_abs();
        for (a, c) in y.values().iter().zip(back.values()) {
            prop_assert!((a - c).abs() <= tol);
        }
    }

    #[test]
    fn rotations_are_baseline_differences(y in series(3..300), b in boundary()) {
        let d = decompose(&y, b);
        let tol = 1e-12 * y.max_abs();
        for j in 1..=d.depth() {
            let (prev, cur, rot) = (d.baseline(j - 1).unwrap(), d.baseline(j).unwrap(), d.rotation(j).unwrap());
            for i in 0..y.len() {
                prop_assert!((prev[i] - cur[i] - rot[i]).abs() <= tol);
            }
        }
    }

    #[test]
    fn rotations_monotone_between_parent_extrema(y in series(3..300), b in boundary()) {
        let d = decompose(&y, b);
        let tol = 1e-12 * y.max_abs();
        for j in 1..=d.depth() {
            let r = d.rotation(j).unwrap().values();
            for w in find_extrema(d.baseline(j - 1).unwrap()).positions().windows(2) {
                let seg = &r[w[0]..=w[1]];
                let up = seg.windows(2).all(|p| p[1] - p[0] >= -tol);
                let down = seg.windows(2).all(|p| p[1] - p[0] <= tol);
                prop_assert!(up || down, "level {j}, segment {w:?}");
            }
        }
    }

    #[test]
    fn extrema_count_strictly_decreases(y in series(3..400)) {
        let d = decompose(&y, BoundaryPolicy::Free);
        let counts: Vec<usize> = (0..=d.depth()).map(|j| find_extrema(d.baseline(j).unwrap()).interior_count()).collect();
        prop_assert!(counts.windows(2).all(|w| w[1] < w[0]), "{counts:?}");
        prop_assert_eq!(*counts.last().unwrap(), 0);
    }

    #[test]
    fn affine_equivariance(y in dyadic_series(3..200), k in -4i32..=4, neg in any::<bool>(), shift in -50i32..50) {
        let a = if neg { -(2f64.powi(k)) } else { 2f64.powi(k) };
        let offset = shift as f64;
        let z = y.affine(a, offset).unwrap();
        let (dy, dz) = (decompose(&y, BoundaryPolicy::Free), decompose(&z, BoundaryPolicy::Free));
        prop_assert_eq!(dy.depth(), dz.depth());
        let tol = 1e-10 * (a.abs() * y.max_abs() + offset.abs()).max(1.0);
        for j in 0..=dy.depth() {
            let (by, bz) = (dy.baseline(j).unwrap(), dz.baseline(j).unwrap());
            for i in 0..y.len() {
                prop_assert!((a * by[i] + offset - bz[i]).abs() <= tol);
            }
        }
    }

    #[test]
    fn total_variation_from_extrema(y in series(1..500)) {
        let tv = y.total_variation();
        prop_assert!((extrema_variation(&y) - tv).abs() <= 1e-10 * tv.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn maxep_scales_with_amplitude(y in dyadic_series(3..200), k in -4i32..=4) {
        let c = 2f64.powi(k);
        let z = y.affine(c, 0.0).unwrap();
        prop_assert!((maxep(&z) - c * maxep(&y)).abs() <= 1e-12 * c * y.max_abs());
        let neg = y.affine(-1.0, 0.0).unwrap();
        prop_assert_eq!(maxep(&neg), maxep(&y));
        let (dy, dz) = (decompose(&y, BoundaryPolicy::Free), decompose(&z, BoundaryPolicy::Free));
        if dy.depth() > 0 {
            prop_assert_eq!(maxep_select(&dy).unwrap().chosen, maxep_select(&dz).unwrap().chosen);
        }
    }

    #[test]
    fn hp_preserves_mean(y in series(3..300), lambda in 0.0f64..1e5) {
        let h = hp_trend(&y, lambda).unwrap();
        let n = y.len() as f64;
        let (my, mh) = (y.values().iter().sum::<f64>() / n, h.trend.values().iter().sum::<f64>() / n);
        prop_assert!((my - mh).abs() <= 1e-9 * y.max_abs().max(1.0));
    }

    #[test]
    fn hp_trend_minimises_objective(y in series(3..200), lambda in 1.0f64..1e4, at in any::<prop::sample::Index>(), delta in prop_oneof![-1e-3f64..-1e-6, 1e-6f64..1e-3]) {
        let h = hp_trend(&y, lambda).unwrap();
        let best = hp_objective(&y, h.trend.values(), lambda);
        let mut moved = h.trend.values().to_vec();
        let k = at.index(moved.len());
        moved[k] += delta * y.max_abs();
        prop_assert!(hp_objective(&y, &moved, lambda) >= best * (1.0 - 1e-12));
    }

    #[test]
    fn hp_trend_exact_split(y in series(1..300), lambda in 0.0f64..1e6) {
        let h = hp_trend(&y, lambda).unwrap();
        prop_assert!(y.is_additive_split(&h.trend, &h.residual));
    }

    #[test]
    fn format_round_trip(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        prop_assert_eq!(format_value(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
    }

    #[test]
    fn dft_linear_and_parseval(x in prop::collection::vec(-10.0f64..10.0, 1..128), s in -3.0f64..3.0) {
        let y: Vec<f64> = x.iter().enumerate().map(|(i, v)| (i as f64).sin() - v).collect();
        let combo: Vec<f64> = x.iter().zip(&y).map(|(a, b)| s * a + b).collect();
        let (fx, fy, fc) = (dft(&x), dft(&y), dft(&combo));
        let scale = fx.iter().chain(&fy).map(|c| c.norm()).fold(1.0, f64::max);
        for k in 0..x.len() {
            prop_assert!((fc[k] - (fx[k] * s + fy[k])).norm() <= 1e-10 * scale * (1.0 + s.abs()));
        }
        let energy: f64 = x.iter().map(|v| v * v).sum();
        let spectral: f64 = fx.iter().map(|c| c.norm_sqr()).sum::<f64>() / x.len() as f64;
        prop_assert!((energy - spectral).abs() <= 1e-10 * energy.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stc_choice_monotone_in_threshold(y in series(60..300), p1 in 0.0f64..1.0, p2 in 0.0f64..1.0) {
        let d = decompose(&y, BoundaryPolicy::Free);
        prop_assume!(d.depth() > 0);
        let trace = stc_select(&d, 0.05, 1).unwrap();
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let (j_lo, _) = stc_choice(&trace, d.depth(), lo);
        let (j_hi, _) = stc_choice(&trace, d.depth(), hi);
        prop_assert!(j_lo <= j_hi);
        prop_assert_eq!(stc_select(&d, hi, 1).unwrap().chosen, j_hi);
    }

    #[test]
    fn hp_large_lambda_approaches_line(y in series(5..40)) {
        let n = y.len();
        let h = hp_trend(&y, 1e12).unwrap();
        // least-squares line through the data
        let xs: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let (mx, my) = (xs.iter().sum::<f64>() / n as f64, y.values().iter().sum::<f64>() / n as f64);
        let sxy: f64 = xs.iter().zip(y.values()).map(|(x, v)| (x - mx) * (v - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let slope = sxy / sxx;
        for (i, x) in xs.iter().enumerate() {
            let line = my + slope * (x - mx);
            prop_assert!((h.trend[i] - line).abs() <= 1e-3 * y.max_abs(), "i {i}: {} vs {line}", h.trend[i]);
        }
    }

    #[test]
    fn hp_gain_on_sinusoids(omega in 0.08f64..0.6) {
        let (n, lambda) = (3000, 1600.0);
        let y = TimeSeries::new((0..n).map(|i| (omega * i as f64).cos()).collect()).unwrap();
        let e = hp_trend(&y, lambda).unwrap().residual;
        let mid = n / 4..3 * n / 4;
        let (mut num, mut den) = (0.0, 0.0);
        for i in mid {
            num += e[i] * y[i];
            den += y[i] * y[i];
        }
        let c = 4.0 * lambda * (1.0 - omega.cos()).powi(2);
        let expected = c / (1.0 + c);
        prop_assert!((num / den - expected).abs() <= 0.05 * expected);
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>()) {
        for kind in [SignalKind::NoisySine, SignalKind::Multiscale] {
            let spec = GeneratorSpec::new(kind, seed);
            prop_assert_eq!(spec.generate().unwrap(), spec.generate().unwrap());
        }
    }
}
