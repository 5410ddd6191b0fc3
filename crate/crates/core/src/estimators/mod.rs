//! The four fractal-dimension estimators. Each reduces to a log-log line
//! fit and a conversion through `D = 2 - H = (5 - beta) / 2`.

mod dfa;
mod ghe;
mod higuchi;
mod spectral;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::FitResult;

pub use dfa::{dfa, dfa_box_sizes, hurst_from_delta, DfaConfig};
pub use ghe::{ghe, GheConfig};
pub use higuchi::{higuchi, higuchi_curve_lengths, HiguchiConfig};
pub use spectral::{spectral, SpectralConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Higuchi,
    Ghe,
    Dfa,
    Spectral,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Higuchi, Method::Ghe, Method::Dfa, Method::Spectral];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Higuchi => "higuchi",
            Method::Ghe => "ghe",
            Method::Dfa => "dfa",
            Method::Spectral => "spectral",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "higuchi" => Ok(Method::Higuchi),
            "ghe" => Ok(Method::Ghe),
            "dfa" => Ok(Method::Dfa),
            "spectral" => Ok(Method::Spectral),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flag {
    /// Dimension outside `[1, 2]`.
    OutOfRange,
    /// DFA exponent within 0.02 of 1, where the stationary and
    /// non-stationary mappings meet.
    DeltaAmbiguous,
    /// The fit used fewer scales than configured.
    ShortInput,
}

impl Flag {
    fn bit(self) -> u8 {
        match self {
            Flag::OutOfRange => 1,
            Flag::DeltaAmbiguous => 2,
            Flag::ShortInput => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::OutOfRange => "out_of_range",
            Flag::DeltaAmbiguous => "delta_ambiguous",
            Flag::ShortInput => "short_input",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Flags(u8);

impl Flags {
    pub fn insert(&mut self, flag: Flag) {
        self.0 |= flag.bit();
    }

    pub fn contains(self, flag: Flag) -> bool {
        self.0 & flag.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Flag> {
        [Flag::OutOfRange, Flag::DeltaAmbiguous, Flag::ShortInput]
            .into_iter()
            .filter(move |f| self.contains(*f))
    }
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Flag::as_str).collect();
        f.write_str(&names.join(","))
    }
}

/// One estimator run. `dimension` is never clamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateResult {
    pub method: Method,
    pub dimension: f64,
    /// D for Higuchi, H for GHE, delta for DFA, beta for spectral.
    pub raw_exponent: f64,
    pub fit: FitResult,
    pub flags: Flags,
}

impl EstimateResult {
    pub(crate) fn new(method: Method, dimension: f64, raw_exponent: f64, fit: FitResult, mut flags: Flags) -> Self {
        if !(1.0..=2.0).contains(&dimension) {
            flags.insert(Flag::OutOfRange);
        }
        EstimateResult { method, dimension, raw_exponent, fit, flags }
    }
}

pub fn dimension_from_hurst(h: f64) -> f64 {
    2.0 - h
}

pub fn dimension_from_beta(beta: f64) -> f64 {
    (5.0 - beta) / 2.0
}

/// Per-method settings bundled for dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimatorConfig {
    pub higuchi: HiguchiConfig,
    pub ghe: GheConfig,
    pub dfa: DfaConfig,
    pub spectral: SpectralConfig,
}

pub fn estimate(method: Method, samples: &[f64], cfg: &EstimatorConfig) -> Result<EstimateResult> {
    match method {
        Method::Higuchi => higuchi(samples, &cfg.higuchi),
        Method::Ghe => ghe(samples, &cfg.ghe),
        Method::Dfa => dfa(samples, &cfg.dfa),
        Method::Spectral => spectral(samples, &cfg.spectral),
    }
}

fn check_input(samples: &[f64], needed: usize) -> Result<()> {
    if samples.len() < needed.max(2) {
        return Err(Error::TooShort { needed: needed.max(2), got: samples.len() });
    }
    if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    Ok(())
}
