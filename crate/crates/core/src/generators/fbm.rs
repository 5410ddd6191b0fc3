use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::fft_forward;
use crate::series::{GeneratorKind, Provenance, TimeSeries};

/// Eigenvalues this far below zero (relative to the largest) are rounding
/// noise of an exactly nonnegative spectrum.
const EIGEN_ROUNDING: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FbmSpec {
    pub hurst: f64,
    pub length: usize,
    pub seed: u64,
    /// Increment variance at unit lag.
    pub scale: f64,
}

impl FbmSpec {
    pub fn new(hurst: f64, length: usize, seed: u64) -> Self {
        FbmSpec { hurst, length, seed, scale: 1.0 }
    }

    pub fn from_dimension(dimension: f64, length: usize, seed: u64) -> Self {
        FbmSpec::new(2.0 - dimension, length, seed)
    }
}

/// Fractional Brownian motion path starting at 0.
///
/// Fractional Gaussian noise is synthesized exactly by circulant embedding
/// (Davies-Harte) and cumulatively summed.
pub fn fbm(spec: &FbmSpec) -> Result<TimeSeries> {
    let h = spec.hurst;
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::InvalidParameter(format!("hurst {h} outside (0, 1)")));
    }
    if spec.length < 2 {
        return Err(Error::InvalidParameter(format!("length {} < 2", spec.length)));
    }
    if !(spec.scale > 0.0 && spec.scale.is_finite()) {
        return Err(Error::InvalidParameter(format!("scale {} must be positive", spec.scale)));
    }

    let increments = fgn(h, spec.length - 1, spec.scale, spec.seed)?;
    let mut path = Vec::with_capacity(spec.length);
    let mut acc = 0.0;
    path.push(acc);
    for dx in increments {
        acc += dx;
        path.push(acc);
    }

    let meta = Provenance::generated(GeneratorKind::Fbm, 2.0 - h, Some(spec.seed));
    TimeSeries::new(path, meta)
}

/// Autocovariance of unit-lag-variance `scale` fractional Gaussian noise.
fn fgn_autocovariance(hurst: f64, lag: usize, scale: f64) -> f64 {
    let k = lag as f64;
    let e = 2.0 * hurst;
    0.5 * scale * ((k + 1.0).powf(e) - 2.0 * k.powf(e) + (k - 1.0).abs().powf(e))
}

fn fgn(hurst: f64, n: usize, scale: f64, seed: u64) -> Result<Vec<f64>> {
    let m = 2 * n;
    let mut row = vec![Complex64::new(0.0, 0.0); m];
    for j in 0..=n {
        row[j].re = fgn_autocovariance(hurst, j, scale);
    }
    for j in 1..n {
        row[m - j].re = row[j].re;
    }
    fft_forward(&mut row);

    let largest = row.iter().map(|c| c.re).fold(0.0, f64::max);
    let mut weights = Vec::with_capacity(m);
    for (index, c) in row.iter().enumerate() {
        let value = c.re;
        if value < -EIGEN_ROUNDING * largest {
            return Err(Error::NegativeEigenvalue { index, value });
        }
        weights.push((value.max(0.0) / m as f64).sqrt());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buf: Vec<Complex64> = weights
        .iter()
        .map(|w| {
            let a: f64 = StandardNormal.sample(&mut rng);
            let b: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(w * a, w * b)
        })
        .collect();
    fft_forward(&mut buf);
    Ok(buf[..n].iter().map(|c| c.re).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lag1_autocorrelation(x: &[f64]) -> f64 {
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let var: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
        let cov: f64 = x.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
        cov / var
    }

    #[test]
    fn brownian_increments_uncorrelated() {
        let len = 320_000;
        let ts = fbm(&FbmSpec::new(0.5, len, 11)).unwrap();
        assert_eq!(ts.samples()[0], 0.0);
        let inc: Vec<f64> = ts.samples().windows(2).map(|w| w[1] - w[0]).collect();
        let rho = lag1_autocorrelation(&inc);
        assert!(rho.abs() < 3.0 / (len as f64).sqrt(), "rho = {rho}");
    }

    #[test]
    fn persistent_increments_match_fgn_correlation() {
        // lag-1 correlation of fGn is 2^(2H-1) - 1
        let h = 0.8;
        let ts = fbm(&FbmSpec::new(h, 1 << 17, 5)).unwrap();
        let inc: Vec<f64> = ts.samples().windows(2).map(|w| w[1] - w[0]).collect();
        let rho = lag1_autocorrelation(&inc);
        let expected = 2f64.powf(2.0 * h - 1.0) - 1.0;
        assert!((rho - expected).abs() < 0.02, "rho = {rho}, expected {expected}");
    }

    #[test]
    fn two_point_path() {
        // single increment ~ N(0, v): check the ensemble variance
        let v = 2.5;
        let draws: Vec<f64> = (0..4000)
            .map(|seed| {
                let ts = fbm(&FbmSpec { hurst: 0.3, length: 2, seed, scale: v }).unwrap();
                assert_eq!(ts.len(), 2);
                ts.samples()[1]
            })
            .collect();
        let var = draws.iter().map(|x| x * x).sum::<f64>() / draws.len() as f64;
        assert!((var / v - 1.0).abs() < 0.1, "var = {var}");
    }

    #[test]
    fn seeding() {
        let a = fbm(&FbmSpec::new(0.3, 1000, 1)).unwrap();
        let b = fbm(&FbmSpec::new(0.3, 1000, 1)).unwrap();
        let c = fbm(&FbmSpec::new(0.3, 1000, 2)).unwrap();
        assert_eq!(a.samples(), b.samples());
        assert_ne!(a.samples(), c.samples());
        assert_eq!(a.meta().seed, Some(1));
        assert!((a.meta().target_dimension.unwrap() - 1.7).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_spec() {
        assert!(fbm(&FbmSpec::new(0.0, 100, 1)).is_err());
        assert!(fbm(&FbmSpec::new(1.0, 100, 1)).is_err());
        assert!(fbm(&FbmSpec::new(0.5, 1, 1)).is_err());
        assert!(fbm(&FbmSpec { scale: 0.0, ..FbmSpec::new(0.5, 10, 1) }).is_err());
    }

    #[test]
    fn embedding_spectrum_nonnegative_over_hurst_range() {
        for h in [0.05, 0.2, 0.5, 0.8, 0.95] {
            assert!(fgn(h, 4097, 1.0, 0).is_ok());
        }
    }
}
