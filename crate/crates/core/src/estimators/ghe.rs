use serde::{Deserialize, Serialize};

use super::{check_input, dimension_from_hurst, EstimateResult, Flags, Method};
use crate::error::{Error, Result};
use crate::numerics::log_log_fit;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GheConfig {
    pub q: f64,
    pub tau_max: usize,
}

impl Default for GheConfig {
    fn default() -> Self {
        GheConfig { q: 1.0, tau_max: 25 }
    }
}

fn abs_pow(v: f64, q: f64) -> f64 {
    if q == 1.0 {
        v.abs()
    } else {
        v.abs().powf(q)
    }
}

/// Generalized Hurst exponent from the scaling of
/// `K_q(tau) = <|X(t+tau) - X(t)|^q> / <|X(t)|^q>` over `tau = 1..=tau_max`.
///
/// One slope is fitted over all lags; `H = slope / q`.
pub fn ghe(x: &[f64], cfg: &GheConfig) -> Result<EstimateResult> {
    let q = cfg.q;
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!("q {q} must be positive")));
    }
    if cfg.tau_max < 2 {
        return Err(Error::InvalidParameter(format!("tau_max {} < 2", cfg.tau_max)));
    }
    check_input(x, cfg.tau_max + 1)?;

    let n = x.len();
    let denom = x.iter().map(|&v| abs_pow(v, q)).sum::<f64>() / n as f64;
    if !(denom > 0.0) {
        return Err(Error::Degenerate("all-zero series".into()));
    }
    let mut ks = Vec::with_capacity(cfg.tau_max);
    for tau in 1..=cfg.tau_max {
        let num = x[tau..]
            .iter()
            .zip(x)
            .map(|(a, b)| abs_pow(a - b, q))
            .sum::<f64>()
            / (n - tau) as f64;
        if !(num > 0.0) {
            return Err(Error::Degenerate(format!("zero increment moment at lag {tau}")));
        }
        ks.push(num / denom);
    }
    let taus: Vec<f64> = (1..=cfg.tau_max).map(|t| t as f64).collect();
    let fit = log_log_fit(&taus, &ks)?;
    let h = fit.slope / q;
    Ok(EstimateResult::new(Method::Ghe, dimension_from_hurst(h), h, fit, Flags::default()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_ramp_has_unit_hurst() {
        let x: Vec<f64> = (1..=2000).map(|t| t as f64).collect();
        let r = ghe(&x, &GheConfig::default()).unwrap();
        assert!((r.raw_exponent - 1.0).abs() < 1e-12);
        assert!((r.dimension - 1.0).abs() < 1e-12);
        assert_eq!(r.fit.n_points, 25);
    }

    #[test]
    fn q_two_on_ramp() {
        let x: Vec<f64> = (1..=500).map(|t| 3.0 * t as f64).collect();
        let r = ghe(&x, &GheConfig { q: 2.0, tau_max: 10 }).unwrap();
        assert!((r.raw_exponent - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(ghe(&[0.0; 100], &GheConfig::default()), Err(Error::Degenerate(_))));
        assert!(matches!(ghe(&[2.0; 100], &GheConfig::default()), Err(Error::Degenerate(_))));
        assert!(matches!(ghe(&[1.0; 25], &GheConfig::default()), Err(Error::TooShort { .. })));
        assert!(ghe(&[1.0, 2.0, 3.0, 4.0], &GheConfig { q: 0.0, tau_max: 2 }).is_err());
    }
}
