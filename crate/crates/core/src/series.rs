//! Sampled signals and the provenance that travels with them.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Weierstrass,
    Fbm,
    External,
}

impl GeneratorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::Weierstrass => "weierstrass",
            GeneratorKind::Fbm => "fbm",
            GeneratorKind::External => "external",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weierstrass" | "wf" => Ok(GeneratorKind::Weierstrass),
            "fbm" => Ok(GeneratorKind::Fbm),
            "external" => Ok(GeneratorKind::External),
            other => Err(Error::Parse(format!("unknown generator `{other}`"))),
        }
    }
}

/// Where a series came from and which experimental condition it represents.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub generator: GeneratorKind,
    pub target_dimension: Option<f64>,
    pub stride: usize,
    pub snr_db: Option<f64>,
    pub seed: Option<u64>,
    pub segment_index: Option<usize>,
}

impl Provenance {
    pub fn external() -> Self {
        Provenance {
            generator: GeneratorKind::External,
            target_dimension: None,
            stride: 1,
            snr_db: None,
            seed: None,
            segment_index: None,
        }
    }

    pub fn generated(generator: GeneratorKind, target_dimension: f64, seed: Option<u64>) -> Self {
        Provenance {
            generator,
            target_dimension: Some(target_dimension),
            seed,
            ..Provenance::external()
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(d) = self.target_dimension {
            if !(d > 1.0 && d < 2.0) {
                return Err(Error::InvalidParameter(format!(
                    "target dimension {d} outside (1, 2)"
                )));
            }
        }
        if self.stride == 0 {
            return Err(Error::InvalidParameter("stride must be >= 1".into()));
        }
        Ok(())
    }

    /// Single-line `key=value` rendering used as the CSV `#` header.
    pub fn to_header(&self) -> String {
        let mut parts = vec![format!("generator={}", self.generator)];
        if let Some(d) = self.target_dimension {
            parts.push(format!("target_d={d}"));
        }
        parts.push(format!("stride={}", self.stride));
        if let Some(s) = self.snr_db {
            parts.push(format!("snr_db={s}"));
        }
        if let Some(s) = self.seed {
            parts.push(format!("seed={s}"));
        }
        if let Some(i) = self.segment_index {
            parts.push(format!("segment={i}"));
        }
        parts.join(" ")
    }

    pub fn from_header(line: &str) -> Result<Self> {
        let mut meta = Provenance::external();
        for token in line.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed header token `{token}`")))?;
            let bad = || Error::Parse(format!("bad value for `{key}`: `{value}`"));
            match key {
                "generator" => meta.generator = value.parse()?,
                "target_d" => meta.target_dimension = Some(value.parse().map_err(|_| bad())?),
                "stride" => meta.stride = value.parse().map_err(|_| bad())?,
                "snr_db" => meta.snr_db = Some(value.parse().map_err(|_| bad())?),
                "seed" => meta.seed = Some(value.parse().map_err(|_| bad())?),
                "segment" => meta.segment_index = Some(value.parse().map_err(|_| bad())?),
                // unknown keys are tolerated so other tools can annotate files
                _ => {}
            }
        }
        meta.validate()?;
        Ok(meta)
    }
}

/// An immutable sequence of finite samples plus provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<f64>,
    meta: Provenance,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>, meta: Provenance) -> Result<Self> {
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        meta.validate()?;
        Ok(TimeSeries { samples, meta })
    }

    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        TimeSeries::new(samples, Provenance::external())
    }

    pub(crate) fn from_parts_unchecked(samples: Vec<f64>, meta: Provenance) -> Self {
        debug_assert!(samples.iter().all(|v| v.is_finite()));
        TimeSeries { samples, meta }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn meta(&self) -> &Provenance {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn reversed(&self) -> TimeSeries {
        let mut samples = self.samples.clone();
        samples.reverse();
        TimeSeries::from_parts_unchecked(samples, self.meta.clone())
    }

    /// Returns `a * x + b` for every sample.
    pub fn affine(&self, a: f64, b: f64) -> Result<TimeSeries> {
        TimeSeries::new(self.samples.iter().map(|x| a * x + b).collect(), self.meta.clone())
    }

    /// Writes one sample per line at 17 significant digits, preceded by a
    /// `#` provenance line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# {}", self.meta.to_header())?;
        for v in &self.samples {
            writeln!(out, "{v:.16e}")?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a single-column CSV. A leading `#` line, if present, is parsed
    /// as provenance; later `#` lines and blank lines are skipped.
    pub fn read_csv<R: BufRead>(input: R) -> Result<TimeSeries> {
        let mut meta = None;
        let mut samples = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                if meta.is_none() && samples.is_empty() {
                    meta = Some(Provenance::from_header(header)?);
                }
                continue;
            }
            // tolerate a trailing comma or extra columns; first column is the sample
            let field = line.split(',').next().unwrap_or("").trim();
            let v: f64 = field
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: `{field}` is not a number", lineno + 1)))?;
            samples.push(v);
        }
        TimeSeries::new(samples, meta.unwrap_or_else(Provenance::external))
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.samples
    }
}
