use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// One-sided raw periodogram over `k / N`, `k = 1..=N/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    pub frequencies: Vec<f64>,
    pub power: Vec<f64>,
}

impl PowerSpectrum {
    pub fn len(&self) -> usize {
        self.power.len()
    }

    pub fn is_empty(&self) -> bool {
        self.power.is_empty()
    }
}

/// In-place unnormalized forward DFT for any length.
pub(crate) fn fft_forward(buf: &mut [Complex64]) {
    if buf.is_empty() {
        return;
    }
    let fft = FftPlanner::new().plan_fft_forward(buf.len());
    fft.process(buf);
}

/// `|X_k|^2 / N` at the positive frequencies. With this normalization
/// the sum over all `N` bins equals the sum of squared samples.
pub fn periodogram(samples: &[f64], remove_mean: bool) -> Result<PowerSpectrum> {
    let n = samples.len();
    if n < 4 {
        return Err(Error::TooShort { needed: 4, got: n });
    }
    let mean = if remove_mean { samples.iter().sum::<f64>() / n as f64 } else { 0.0 };
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x - mean, 0.0)).collect();
    fft_forward(&mut buf);
    let half = n / 2;
    let frequencies = (1..=half).map(|k| k as f64 / n as f64).collect();
    let power = buf[1..=half].iter().map(|c| c.norm_sqr() / n as f64).collect();
    Ok(PowerSpectrum { frequencies, power })
}
