use serde::{Deserialize, Serialize};

use super::{check_input, dimension_from_beta, EstimateResult, Flag, Flags, Method};
use crate::error::{Error, Result};
use crate::numerics::{log_log_fit, periodogram};

/// Bins below this fraction of the peak are at rounding level and treated
/// as zero power.
const ZERO_POWER_RATIO: f64 = 1e-24;
const MIN_BINS: usize = 4;
const SHORT_BINS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectralConfig {
    /// Fit range as fractions of the sampling rate; `None` uses all
    /// positive frequencies up to Nyquist.
    pub freq_range: Option<(f64, f64)>,
    pub detrend_mean: bool,
    /// Subtract the straight line through the first and last samples before
    /// the transform. Without it the jump between the end and the start of a
    /// non-stationary series leaks an `f^-2` tail into every bin, which pins
    /// `beta` near 2 for any persistent signal.
    pub end_match: bool,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig { freq_range: None, detrend_mean: true, end_match: true }
    }
}

/// Spectral decay `beta` from a log-log fit of the raw periodogram;
/// `D = (5 - beta) / 2`.
pub fn spectral(x: &[f64], cfg: &SpectralConfig) -> Result<EstimateResult> {
    if let Some((lo, hi)) = cfg.freq_range {
        if !(lo > 0.0 && lo < hi && hi <= 0.5) {
            return Err(Error::InvalidParameter(format!(
                "frequency range ({lo}, {hi}) must satisfy 0 < lo < hi <= 1/2"
            )));
        }
    }
    check_input(x, 16)?;
    let spectrum = if cfg.end_match {
        periodogram(&end_matched(x), cfg.detrend_mean)?
    } else {
        periodogram(x, cfg.detrend_mean)?
    };
    let peak = spectrum.power.iter().copied().fold(0.0, f64::max);
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let energy: f64 = x.iter().map(|v| (v - mean) * (v - mean)).sum();
    if peak <= energy * ZERO_POWER_RATIO {
        return Err(Error::Degenerate("no spectral power above rounding level".into()));
    }
    let floor = peak * ZERO_POWER_RATIO;
    let (fs, ps): (Vec<f64>, Vec<f64>) = spectrum
        .frequencies
        .iter()
        .zip(&spectrum.power)
        .filter(|(f, p)| {
            **p > floor && cfg.freq_range.is_none_or(|(lo, hi)| **f >= lo && **f <= hi)
        })
        .map(|(f, p)| (*f, *p))
        .unzip();
    if fs.len() < MIN_BINS {
        return Err(Error::Degenerate(format!("{} usable spectrum bins", fs.len())));
    }
    let fit = log_log_fit(&fs, &ps)?;
    let beta = -fit.slope;
    let mut flags = Flags::default();
    if fs.len() < SHORT_BINS {
        flags.insert(Flag::ShortInput);
    }
    Ok(EstimateResult::new(Method::Spectral, dimension_from_beta(beta), beta, fit, flags))
}

fn end_matched(x: &[f64]) -> Vec<f64> {
    let (first, last) = (x[0], x[x.len() - 1]);
    let step = (last - first) / (x.len() - 1) as f64;
    x.iter().enumerate().map(|(i, v)| v - first - step * i as f64).collect()
}
