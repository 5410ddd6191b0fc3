//! Fractal dimension of self-affine signals.
//!
//! Two ground-truth generators with exactly known dimension (the
//! Weierstrass function and fractional Brownian motion) and four
//! estimators (Higuchi, generalized Hurst exponent, detrended fluctuation
//! analysis, spectral decay), plus an experiment runner that sweeps signal
//! length, coarse sampling and additive noise.
//!
//! ```
//! use fracdim::estimators::{higuchi, HiguchiConfig};
//! use fracdim::generators::{weierstrass, WeierstrassSpec};
//!
//! let spec = WeierstrassSpec { dimension: 1.5, num_points: 20_000, n_max: 200 };
//! let wf = weierstrass(&spec).unwrap();
//! let est = higuchi(wf.samples(), &HiguchiConfig::default()).unwrap();
//! assert!((est.dimension - 1.5).abs() < 0.1);
//! ```

pub mod error;
pub mod estimators;
pub mod exec;
pub mod generators;
pub mod harness;
pub mod numerics;
pub mod series;

pub use error::{Error, Result};
pub use estimators::{EstimateResult, Method};
pub use exec::Execution;
pub use series::{GeneratorKind, Provenance, TimeSeries};
