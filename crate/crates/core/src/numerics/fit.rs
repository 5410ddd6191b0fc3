use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordinary least-squares line `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

pub fn linear_least_squares(points: &[(f64, f64)]) -> Result<FitResult> {
    let n = points.len();
    if n < 2 {
        return Err(Error::DegenerateFit);
    }
    let nf = n as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if !(sxx > 0.0) {
        return Err(Error::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        let ss_res: f64 = points
            .iter()
            .map(|&(x, y)| (y - (slope * x + intercept)).powi(2))
            .sum();
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(FitResult { slope, intercept, r_squared, n_points: n })
}

/// Fits `ln y` against `ln x`.
pub(crate) fn log_log_fit(xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    let points: Vec<(f64, f64)> = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.ln())).collect();
    linear_least_squares(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_line() {
        let f = linear_least_squares(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]).unwrap();
        assert_eq!((f.slope, f.intercept, f.r_squared, f.n_points), (1.0, 0.0, 1.0, 3));
    }

    #[test]
    fn constant_y_has_unit_r_squared() {
        let f = linear_least_squares(&[(0.0, 1.0), (1.0, 1.0)]).unwrap();
        assert_eq!((f.slope, f.intercept, f.r_squared), (0.0, 1.0, 1.0));
    }

    #[test]
    fn hand_computed_triple() {
        // x̄ = 1, ȳ = 4/3, Sxx = 2, Sxy = 2, Syy = 8/3, SSres = 2/3
        let f = linear_least_squares(&[(0.0, 0.0), (1.0, 2.0), (2.0, 2.0)]).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-15);
        assert!((f.intercept - 1.0 / 3.0).abs() < 1e-15);
        assert!((f.r_squared - 0.75).abs() < 1e-15);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(linear_least_squares(&[(1.0, 0.0), (1.0, 2.0)]), Err(Error::DegenerateFit)));
        assert!(matches!(linear_least_squares(&[(1.0, 0.0)]), Err(Error::DegenerateFit)));
        assert!(matches!(linear_least_squares(&[]), Err(Error::DegenerateFit)));
    }

    proptest! {
        #[test]
        fn residuals_orthogonal(pts in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..60)) {
            let fit = match linear_least_squares(&pts) { Ok(f) => f, Err(_) => return Ok(()) };
            let scale: f64 = pts.iter().map(|p| p.0.abs().max(1.0) * p.1.abs().max(1.0)).sum();
            let r: Vec<f64> = pts.iter().map(|&(x, y)| y - fit.slope * x - fit.intercept).collect();
            let s0: f64 = r.iter().sum();
            let s1: f64 = r.iter().zip(&pts).map(|(r, p)| r * p.0).sum();
            prop_assert!(s0.abs() <= 1e-9 * scale);
            prop_assert!(s1.abs() <= 1e-9 * scale);
            prop_assert!((0.0..=1.0).contains(&fit.r_squared));
            prop_assert_eq!(fit.n_points, pts.len());
        }
    }
}
