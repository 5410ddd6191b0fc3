use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::estimators::{EstimatorConfig, Method};
use crate::series::GeneratorKind;

/// Order in which the condition transforms are applied to every signal.
pub const PIPELINE_ORDER: [&str; 4] = ["generate", "noise", "downsample", "segment"];

const GRID_DIMENSIONS: [f64; 5] = [1.2, 1.4, 1.5, 1.6, 1.8];

/// Segment length of a condition: fixed-size non-overlapping pieces or the
/// whole (possibly downsampled) signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SegmentLength {
    Segment(usize),
    Full,
}

impl fmt::Display for SegmentLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegmentLength::Segment(n) => write!(f, "{n}"),
            SegmentLength::Full => f.write_str("full"),
        }
    }
}

impl FromStr for SegmentLength {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "full" => Ok(SegmentLength::Full),
            other => other
                .parse()
                .map(SegmentLength::Segment)
                .map_err(|_| Error::Parse(format!("bad length `{other}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumberOrWord {
    Int(u64),
    Float(f64),
    Word(String),
}

impl Serialize for SegmentLength {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SegmentLength::Segment(n) => NumberOrWord::Int(*n as u64).serialize(s),
            SegmentLength::Full => NumberOrWord::Word("full".into()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for SegmentLength {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match NumberOrWord::deserialize(d)? {
            NumberOrWord::Int(n) => Ok(SegmentLength::Segment(n as usize)),
            NumberOrWord::Word(w) => w.parse().map_err(serde::de::Error::custom),
            NumberOrWord::Float(f) => Err(serde::de::Error::custom(format!("length {f} is not an integer"))),
        }
    }
}

/// Optional noise level; `None` is the clean signal. Written as a number
/// of dB or the word `"none"` in config files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseLevel(pub Option<f64>);

impl Serialize for NoiseLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(db) => NumberOrWord::Float(db).serialize(s),
            None => NumberOrWord::Word("none".into()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for NoiseLevel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match NumberOrWord::deserialize(d)? {
            NumberOrWord::Int(n) => Ok(NoiseLevel(Some(n as f64))),
            NumberOrWord::Float(f) => Ok(NoiseLevel(Some(f))),
            NumberOrWord::Word(w) if w == "none" => Ok(NoiseLevel(None)),
            NumberOrWord::Word(w) => Err(serde::de::Error::custom(format!("bad noise level `{w}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GeneratorSpec {
    Weierstrass {
        dimensions: Vec<f64>,
        #[serde(default = "default_wf_points")]
        points: usize,
        #[serde(default = "default_n_max")]
        n_max: u32,
    },
    Fbm {
        dimensions: Vec<f64>,
        #[serde(default = "default_fbm_points")]
        points: usize,
        #[serde(default = "default_scale")]
        scale: f64,
    },
}

fn default_wf_points() -> usize {
    314_160
}
fn default_n_max() -> u32 {
    1021
}
fn default_fbm_points() -> usize {
    320_000
}
fn default_scale() -> f64 {
    1.0
}

impl GeneratorSpec {
    pub fn kind(&self) -> GeneratorKind {
        match self {
            GeneratorSpec::Weierstrass { .. } => GeneratorKind::Weierstrass,
            GeneratorSpec::Fbm { .. } => GeneratorKind::Fbm,
        }
    }

    pub fn dimensions(&self) -> &[f64] {
        match self {
            GeneratorSpec::Weierstrass { dimensions, .. } | GeneratorSpec::Fbm { dimensions, .. } => dimensions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeedSpec {
    pub base: u64,
    /// Independent realizations per signal; their segment estimates are
    /// pooled before taking the median.
    pub replications: u32,
}

impl Default for SeedSpec {
    fn default() -> Self {
        SeedSpec { base: 42, replications: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub full_precision: bool,
    /// Directory for per-cell distribution files.
    pub distributions: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default = "default_lengths")]
    pub lengths: Vec<SegmentLength>,
    #[serde(default = "default_strides")]
    pub strides: Vec<usize>,
    #[serde(default = "default_snr_levels")]
    pub snr_db_levels: Vec<NoiseLevel>,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default)]
    pub seeds: SeedSpec,
    #[serde(default)]
    pub estimators: EstimatorConfig,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_lengths() -> Vec<SegmentLength> {
    vec![SegmentLength::Segment(500), SegmentLength::Segment(10_000), SegmentLength::Full]
}
fn default_strides() -> Vec<usize> {
    vec![1, 10, 100]
}
fn default_snr_levels() -> Vec<NoiseLevel> {
    vec![NoiseLevel(None), NoiseLevel(Some(70.0)), NoiseLevel(Some(60.0)), NoiseLevel(Some(50.0))]
}
fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

/// One experimental condition applied to a generated signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Condition {
    pub length: SegmentLength,
    pub stride: usize,
    pub snr_db: Option<f64>,
}

impl ExperimentSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        ExperimentSpec::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.generators.is_empty() {
            return fail("no generators".into());
        }
        if self.methods.is_empty() {
            return fail("no methods".into());
        }
        if self.lengths.is_empty() || self.strides.is_empty() || self.snr_db_levels.is_empty() {
            return fail("lengths, strides and snr_db_levels must be nonempty".into());
        }
        for g in &self.generators {
            if g.dimensions().is_empty() {
                return fail(format!("{} generator has no dimensions", g.kind()));
            }
            if let Some(d) = g.dimensions().iter().find(|d| !(**d > 1.0 && **d < 2.0)) {
                return fail(format!("target dimension {d} outside (1, 2)"));
            }
            let points = match g {
                GeneratorSpec::Weierstrass { points, .. } | GeneratorSpec::Fbm { points, .. } => *points,
            };
            if points < 2 {
                return fail(format!("{} generator needs at least 2 points", g.kind()));
            }
        }
        if self.strides.contains(&0) {
            return fail("strides must be >= 1".into());
        }
        if let Some(SegmentLength::Segment(n)) = self.lengths.iter().find(|l| matches!(l, SegmentLength::Segment(n) if *n < 2)) {
            return fail(format!("segment length {n} < 2"));
        }
        if self.snr_db_levels.iter().any(|l| l.0.is_some_and(|db| !db.is_finite())) {
            return fail("snr levels must be finite".into());
        }
        if self.seeds.replications == 0 {
            return fail("replications must be >= 1".into());
        }
        Ok(())
    }

    pub fn conditions(&self) -> Vec<Condition> {
        let mut out = Vec::new();
        for &length in &self.lengths {
            for &stride in &self.strides {
                for noise in &self.snr_db_levels {
                    out.push(Condition { length, stride, snr_db: noise.0 });
                }
            }
        }
        out
    }
}

/// The full grid: Weierstrass and fBm at five dimensions, three lengths,
/// three samplings, clean plus three noise levels, all four methods.
pub fn paper_grid(seed: u64) -> ExperimentSpec {
    ExperimentSpec {
        generators: vec![
            GeneratorSpec::Weierstrass {
                dimensions: GRID_DIMENSIONS.to_vec(),
                points: default_wf_points(),
                n_max: default_n_max(),
            },
            GeneratorSpec::Fbm {
                dimensions: GRID_DIMENSIONS.to_vec(),
                points: default_fbm_points(),
                scale: default_scale(),
            },
        ],
        lengths: default_lengths(),
        strides: default_strides(),
        snr_db_levels: default_snr_levels(),
        methods: default_methods(),
        seeds: SeedSpec { base: seed, replications: 1 },
        estimators: EstimatorConfig::default(),
        output: OutputSpec::default(),
    }
}
