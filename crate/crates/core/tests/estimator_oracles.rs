//! Estimators against fBm with known Hurst exponent, summarized as the median
//! over an ensemble of seeds.

use fracdim::estimators::{dfa, ghe, spectral, DfaConfig, Flag, GheConfig, SpectralConfig};
use fracdim::generators::{fbm, FbmSpec};
use fracdim::harness::derive_seed;
use fracdim::numerics::median;

const N: usize = 1 << 16;

fn ensemble<F: Fn(&[f64]) -> (f64, f64)>(hurst: f64, tag: &str, f: F) -> (f64, f64) {
    let (raw, dim): (Vec<f64>, Vec<f64>) = (0..16u64)
        .map(|s| {
            let seed = derive_seed(7, &[tag, &s.to_string()]);
            f(fbm(&FbmSpec::new(hurst, N, seed)).unwrap().samples())
        })
        .unzip();
    (median(&raw).unwrap(), median(&dim).unwrap())
}

#[test]
fn ghe_recovers_hurst_07() {
    let (h, d) = ensemble(0.7, "ghe", |x| {
        let r = ghe(x, &GheConfig::default()).unwrap();
        (r.raw_exponent, r.dimension)
    });
    assert!((h - 0.7).abs() <= 0.05, "H = {h}");
    assert!((d - 1.3).abs() <= 0.05, "D = {d}");
}

#[test]
fn dfa_non_stationary_branch() {
    let (delta, d) = ensemble(0.6, "dfa", |x| {
        let r = dfa(x, &DfaConfig::default()).unwrap();
        assert!(!r.flags.contains(Flag::DeltaAmbiguous));
        (r.raw_exponent, r.dimension)
    });
    assert!((delta - 1.6).abs() <= 0.1, "delta = {delta}");
    assert!((d - 1.4).abs() <= 0.1, "D = {d}");
}

/// Full-band least-squares slope of the exact spectrum of sampled Brownian
/// motion, `1 / (4 sin^2(pi f))`, over `f = k/N, k = 1..N/2` at `N = 2^16`.
/// The sine flattens the spectrum towards Nyquist, so the full-band fit
/// lands below the continuous-time value of 2.
const FULL_BAND_BM_BETA: f64 = 1.8045;

#[test]
fn spectral_brownian_motion_full_band() {
    let (beta, d) = ensemble(0.5, "spectral", |x| {
        let r = spectral(x, &SpectralConfig::default()).unwrap();
        (r.raw_exponent, r.dimension)
    });
    assert!((beta - FULL_BAND_BM_BETA).abs() <= 0.05, "beta = {beta}");
    assert!((d - (5.0 - FULL_BAND_BM_BETA) / 2.0).abs() <= 0.025, "D = {d}");
}

#[test]
fn spectral_brownian_motion_low_band() {
    let cfg = SpectralConfig { freq_range: Some((1.0 / N as f64, 0.1)), ..Default::default() };
    let (beta, d) = ensemble(0.5, "spectral", |x| {
        let r = spectral(x, &cfg).unwrap();
        (r.raw_exponent, r.dimension)
    });
    assert!((beta - 2.0).abs() <= 0.15, "beta = {beta}");
    assert!((d - 1.5).abs() <= 0.08, "D = {d}");
}

#[test]
fn spectral_tracks_persistent_fbm() {
    // without end matching the wrap-around jump caps beta near 2
    let cfg = SpectralConfig::default();
    let raw = SpectralConfig { end_match: false, ..cfg };
    let x = fbm(&FbmSpec::new(0.8, N, 11)).unwrap();
    let matched = spectral(x.samples(), &cfg).unwrap().raw_exponent;
    let plain = spectral(x.samples(), &raw).unwrap().raw_exponent;
    assert!((matched - 2.6).abs() < 0.2, "beta = {matched}");
    assert!(plain < matched);
}
