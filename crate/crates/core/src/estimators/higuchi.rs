use serde::{Deserialize, Serialize};

use super::{check_input, EstimateResult, Flags, Method};
use crate::error::{Error, Result};
use crate::numerics::log_log_fit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HiguchiConfig {
    pub k_max: usize,
}

impl Default for HiguchiConfig {
    fn default() -> Self {
        HiguchiConfig { k_max: 15 }
    }
}

/// Mean normalized curve length `L(k)` for `k = 1..=k_max`.
///
/// For each offset `m` the subsampled curve `X(m), X(m+k), ...` has length
/// `sum |X(m+ik) - X(m+(i-1)k)| * (N-1) / (floor((N-m)/k) k^2)`, and `L(k)`
/// averages over `m = 1..=k`.
pub fn higuchi_curve_lengths(x: &[f64], k_max: usize) -> Vec<f64> {
    let n = x.len();
    (1..=k_max)
        .map(|k| {
            let total: f64 = (0..k)
                .map(|m| {
                    let steps = (n - 1 - m) / k;
                    if steps == 0 {
                        return 0.0;
                    }
                    let sum: f64 = (1..=steps)
                        .map(|i| (x[m + i * k] - x[m + (i - 1) * k]).abs())
                        .sum();
                    sum * (n - 1) as f64 / (steps * k * k) as f64
                })
                .sum();
            total / k as f64
        })
        .collect()
}

pub fn higuchi(x: &[f64], cfg: &HiguchiConfig) -> Result<EstimateResult> {
    if cfg.k_max < 2 {
        return Err(Error::InvalidParameter(format!("k_max {} < 2", cfg.k_max)));
    }
    check_input(x, 2 * cfg.k_max)?;
    let lengths = higuchi_curve_lengths(x, cfg.k_max);
    if lengths.iter().any(|&l| !(l > 0.0)) {
        return Err(Error::Degenerate("zero curve length (constant or periodic input)".into()));
    }
    let ks: Vec<f64> = (1..=cfg.k_max).map(|k| k as f64).collect();
    let fit = log_log_fit(&ks, &lengths)?;
    let d = -fit.slope;
    Ok(EstimateResult::new(Method::Higuchi, d, d, fit, Flags::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn straight_line_has_dimension_one() {
        let x: Vec<f64> = (1..=1000).map(|i| 0.37 * i as f64).collect();
        let r = higuchi(&x, &HiguchiConfig::default()).unwrap();
        assert!((r.dimension - 1.0).abs() < 1e-9, "{}", r.dimension);
        assert_eq!(r.raw_exponent, r.dimension);
        assert_eq!(r.fit.n_points, 15);
        assert!(r.flags.is_empty());
    }

    #[test]
    fn white_noise_fills_the_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let x: Vec<f64> = (0..100_000).map(|_| StandardNormal.sample(&mut rng)).collect();
        let r = higuchi(&x, &HiguchiConfig::default()).unwrap();
        assert!((r.dimension - 2.0).abs() < 0.1, "{}", r.dimension);
    }

    #[test]
    fn rejects_constant_and_short() {
        assert!(matches!(higuchi(&[4.0; 100], &HiguchiConfig::default()), Err(Error::Degenerate(_))));
        assert!(matches!(higuchi(&[1.0; 29], &HiguchiConfig::default()), Err(Error::TooShort { .. })));
        assert!(higuchi(&[1.0, 2.0, 0.0, 5.0], &HiguchiConfig { k_max: 1 }).is_err());
    }

    #[test]
    fn curve_length_by_hand() {
        // N = 5, k = 2: m=1 -> |x3-x1|+|x5-x3| with floor(4/2)=2 steps,
        // m=2 -> |x4-x2| with floor(3/2)=1 step
        let x = [0.0, 1.0, 3.0, 2.0, 6.0];
        let l = higuchi_curve_lengths(&x, 2);
        let m1 = (3.0 + 3.0) * 4.0 / (2.0 * 4.0);
        let m2 = 1.0 * 4.0 / (1.0 * 4.0);
        assert!((l[1] - (m1 + m2) / 2.0).abs() < 1e-15);
        assert!((l[0] - (1.0 + 2.0 + 1.0 + 4.0)).abs() < 1e-15);
    }
}
