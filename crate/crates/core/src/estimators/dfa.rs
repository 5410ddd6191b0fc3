use serde::{Deserialize, Serialize};

use super::{check_input, dimension_from_hurst, EstimateResult, Flag, Flags, Method};
use crate::error::{Error, Result};
use crate::numerics::log_log_fit;

const AMBIGUITY_BAND: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DfaConfig {
    pub l_min: usize,
    /// Largest box is `N / l_max_divisor`.
    pub l_max_divisor: usize,
    pub num_sizes: usize,
}

impl Default for DfaConfig {
    fn default() -> Self {
        DfaConfig { l_min: 4, l_max_divisor: 4, num_sizes: 20 }
    }
}

/// Maps the fluctuation exponent to a Hurst exponent.
///
/// `0 < delta < 1` is the stationary branch (`H = delta`), `1 < delta < 2`
/// the non-stationary one (`H = delta - 1`). Within 0.02 of 1 the stationary
/// branch is used and the second value is `true`.
pub fn hurst_from_delta(delta: f64) -> (f64, bool) {
    if (delta - 1.0).abs() < AMBIGUITY_BAND {
        (delta, true)
    } else if delta < 1.0 {
        (delta, false)
    } else {
        (delta - 1.0, false)
    }
}

/// Log-spaced box sizes between `l_min` and `n / l_max_divisor`, rounded
/// and deduplicated.
pub fn dfa_box_sizes(n: usize, cfg: &DfaConfig) -> Vec<usize> {
    let lo = cfg.l_min;
    let hi = n / cfg.l_max_divisor.max(1);
    if hi < lo || cfg.num_sizes == 0 {
        return Vec::new();
    }
    if cfg.num_sizes == 1 || hi == lo {
        return vec![lo];
    }
    let ratio = (hi as f64 / lo as f64).ln();
    let mut sizes: Vec<usize> = (0..cfg.num_sizes)
        .map(|i| {
            let t = i as f64 / (cfg.num_sizes - 1) as f64;
            ((lo as f64 * (ratio * t).exp()).round() as usize).clamp(lo, hi)
        })
        .collect();
    sizes.dedup();
    sizes
}

/// Mean squared residual of a least-squares line through `y` against
/// `0..len`.
fn detrended_variance(y: &[f64]) -> f64 {
    let l = y.len() as f64;
    let mean_x = (l - 1.0) / 2.0;
    let mean_y = y.iter().sum::<f64>() / l;
    let (mut sxy, mut syy) = (0.0, 0.0);
    for (j, &v) in y.iter().enumerate() {
        let dy = v - mean_y;
        sxy += (j as f64 - mean_x) * dy;
        syy += dy * dy;
    }
    let sxx = l * (l * l - 1.0) / 12.0;
    ((syy - sxy * sxy / sxx) / l).max(0.0)
}

/// `F(l)` over the profile, pooling boxes anchored at both ends.
fn fluctuation(profile: &[f64], l: usize) -> f64 {
    let len = profile.len();
    let boxes = len / l;
    let mut total = 0.0;
    for b in 0..boxes {
        total += detrended_variance(&profile[b * l..(b + 1) * l]);
        let end = len - b * l;
        total += detrended_variance(&profile[end - l..end]);
    }
    (total / (2 * boxes) as f64).sqrt()
}

/// Detrended fluctuation analysis with linear detrending.
///
/// The profile is the cumulative sum of the mean-removed signal including
/// its leading zero, `Y_0 = 0, ..., Y_N`, so that reversing the input
/// reverses (and negates) the profile and the two anchoring passes swap.
pub fn dfa(x: &[f64], cfg: &DfaConfig) -> Result<EstimateResult> {
    if cfg.l_min < 4 {
        return Err(Error::InvalidParameter(format!("l_min {} < 4", cfg.l_min)));
    }
    if cfg.l_max_divisor == 0 {
        return Err(Error::InvalidParameter("l_max_divisor must be >= 1".into()));
    }
    check_input(x, 4 * cfg.l_min)?;
    let sizes = dfa_box_sizes(x.len(), cfg);
    if sizes.len() < 2 {
        return Err(Error::TooShort { needed: 4 * cfg.l_min + cfg.l_max_divisor, got: x.len() });
    }

    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let mut profile = Vec::with_capacity(x.len() + 1);
    let mut acc = 0.0;
    profile.push(acc);
    for v in x {
        acc += v - mean;
        profile.push(acc);
    }

    let f: Vec<f64> = sizes.iter().map(|&l| fluctuation(&profile, l)).collect();
    if f.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::Degenerate("zero fluctuation (constant input)".into()));
    }
    let ls: Vec<f64> = sizes.iter().map(|&l| l as f64).collect();
    let fit = log_log_fit(&ls, &f)?;
    let delta = fit.slope;
    let (h, ambiguous) = hurst_from_delta(delta);

    let mut flags = Flags::default();
    if ambiguous {
        flags.insert(Flag::DeltaAmbiguous);
    }
    if sizes.len() < cfg.num_sizes {
        flags.insert(Flag::ShortInput);
    }
    Ok(EstimateResult::new(Method::Dfa, dimension_from_hurst(h), delta, fit, flags))
}
