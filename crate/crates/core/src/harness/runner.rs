use sha2::{Digest, Sha256};

use super::spec::{Condition, ExperimentSpec, GeneratorSpec, SegmentLength};
use crate::error::Result;
use crate::estimators::{estimate, EstimateResult, Flag, Method};
use crate::exec::Execution;
use crate::generators::{add_white_noise, downsample, fbm, segment, weierstrass_with, FbmSpec, WeierstrassSpec};
use crate::numerics::{box_plot_stats, median, quantile, BoxPlotStats};
use crate::series::{GeneratorKind, TimeSeries};

/// One row of the result table.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub generator: GeneratorKind,
    pub target_dimension: f64,
    pub length: SegmentLength,
    pub stride: usize,
    pub snr_db: Option<f64>,
    pub method: Method,
    /// `None` only when no segment produced an estimate.
    pub dimension_median: Option<f64>,
    pub dimension_iqr: Option<f64>,
    pub n_segments: usize,
    pub mean_r_squared: Option<f64>,
    pub n_failed: usize,
    pub out_of_range_count: usize,
}

impl ResultRecord {
    pub fn condition(&self) -> Condition {
        Condition { length: self.length, stride: self.stride, snr_db: self.snr_db }
    }

    pub fn is_error(&self) -> bool {
        self.n_segments == 0
    }

    fn sort_key(&self) -> impl Ord {
        (
            self.generator,
            ordered_bits(self.target_dimension),
            self.length,
            self.stride,
            // clean first, then increasing noise (decreasing dB)
            self.snr_db.map(|db| std::cmp::Reverse(ordered_bits(db))),
            self.method,
        )
    }
}

/// Maps an f64 to a u64 with the same total order.
fn ordered_bits(x: f64) -> u64 {
    let b = x.to_bits();
    if b >> 63 == 1 {
        !b
    } else {
        b | (1 << 63)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FlagCounts {
    pub out_of_range: usize,
    pub delta_ambiguous: usize,
    pub short_input: usize,
}

/// A cell's record together with the per-segment estimates behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct CellOutcome {
    pub record: ResultRecord,
    /// Successful segment estimates in segment order.
    pub estimates: Vec<f64>,
    pub flags: FlagCounts,
    pub box_plot: Option<BoxPlotStats>,
}

/// Stable 64-bit seed from the base seed and cell coordinates.
pub fn derive_seed(base: u64, parts: &[&str]) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(base.to_le_bytes());
    for p in parts {
        hasher.update((p.len() as u64).to_le_bytes());
        hasher.update(p.as_bytes());
    }
    let digest = hasher.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}

fn dim_key(d: f64) -> String {
    format!("{:016x}", d.to_bits())
}

pub fn run_experiment(spec: &ExperimentSpec, exec: Execution) -> Result<Vec<ResultRecord>> {
    Ok(run_experiment_detailed(spec, exec)?.into_iter().map(|c| c.record).collect())
}

/// Runs every (generator, dimension, condition, method) cell.
///
/// Signals are processed one target dimension at a time; within a signal
/// the noise variants, the cells and the segments of each cell are
/// data-parallel. Cells whose segment length exceeds the downsampled signal
/// are not part of the grid.
pub fn run_experiment_detailed(spec: &ExperimentSpec, exec: Execution) -> Result<Vec<CellOutcome>> {
    spec.validate()?;
    exec.install(|| {
        let mut out = Vec::new();
        for generator in &spec.generators {
            for &d in generator.dimensions() {
                out.extend(run_signal(spec, generator, d, exec)?);
            }
        }
        out.sort_by_key(|a| a.record.sort_key());
        Ok(out)
    })
}

fn generate(spec: &ExperimentSpec, generator: &GeneratorSpec, d: f64, rep: u32, exec: Execution) -> Result<TimeSeries> {
    match *generator {
        GeneratorSpec::Weierstrass { points, n_max, .. } => {
            weierstrass_with(&WeierstrassSpec { dimension: d, num_points: points, n_max }, exec)
        }
        GeneratorSpec::Fbm { points, scale, .. } => {
            let seed = derive_seed(spec.seeds.base, &["fbm", &dim_key(d), &rep.to_string()]);
            fbm(&FbmSpec { hurst: 2.0 - d, length: points, seed, scale })
        }
    }
}

struct PieceSet {
    length: SegmentLength,
    stride: usize,
    snr_db: Option<f64>,
    pieces: Vec<TimeSeries>,
}

fn run_signal(spec: &ExperimentSpec, generator: &GeneratorSpec, d: f64, exec: Execution) -> Result<Vec<CellOutcome>> {
    let kind = generator.kind();
    let reps: Vec<u32> = match kind {
        // deterministic signal: one base realization shared by all replicates
        GeneratorKind::Weierstrass => vec![0],
        _ => (0..spec.seeds.replications).collect(),
    };
    let bases: Vec<TimeSeries> = reps
        .iter()
        .map(|&rep| generate(spec, generator, d, rep, exec))
        .collect::<Result<_>>()?;

    // (snr level index, replicate) -> noisy signal
    let noise_jobs: Vec<(usize, u32)> = (0..spec.snr_db_levels.len())
        .flat_map(|i| (0..spec.seeds.replications).map(move |r| (i, r)))
        .collect();
    let variants: Vec<TimeSeries> = exec
        .map(&noise_jobs, |&(i, rep)| {
            let base = &bases[rep as usize % bases.len()];
            match spec.snr_db_levels[i].0 {
                None => Ok(base.clone()),
                Some(db) => {
                    let seed = derive_seed(
                        spec.seeds.base,
                        &[kind.as_str(), &dim_key(d), &rep.to_string(), "snr", &dim_key(db)],
                    );
                    add_white_noise(base, db, seed)
                }
            }
        })
        .into_iter()
        .collect::<Result<_>>()?;
    drop(bases);

    let replications = spec.seeds.replications as usize;
    let mut piece_sets = Vec::new();
    for cond in spec.conditions() {
        let level = spec
            .snr_db_levels
            .iter()
            .position(|l| l.0 == cond.snr_db)
            .expect("condition built from spec levels");
        let mut pieces = Vec::new();
        let mut feasible = true;
        for v in &variants[level * replications..(level + 1) * replications] {
            if v.len() < cond.stride {
                feasible = false;
                break;
            }
            let coarse = downsample(v, cond.stride)?;
            match cond.length {
                SegmentLength::Full => pieces.push(coarse),
                SegmentLength::Segment(n) if n <= coarse.len() => pieces.extend(segment(&coarse, n)?),
                SegmentLength::Segment(_) => {
                    feasible = false;
                    break;
                }
            }
        }
        if feasible {
            piece_sets.push(PieceSet { length: cond.length, stride: cond.stride, snr_db: cond.snr_db, pieces });
        }
    }
    drop(variants);

    let cells: Vec<(usize, Method)> = (0..piece_sets.len())
        .flat_map(|i| spec.methods.iter().map(move |&m| (i, m)))
        .collect();
    Ok(exec.map(&cells, |&(i, method)| {
        let set = &piece_sets[i];
        let results = exec.map(&set.pieces, |p| estimate(method, p.samples(), &spec.estimators));
        aggregate(kind, d, set, method, results)
    }))
}

fn aggregate(
    generator: GeneratorKind,
    target_dimension: f64,
    set: &PieceSet,
    method: Method,
    results: Vec<Result<EstimateResult>>,
) -> CellOutcome {
    let mut estimates = Vec::with_capacity(results.len());
    let mut r2_sum = 0.0;
    let mut flags = FlagCounts::default();
    let mut n_failed = 0;
    for r in results {
        match r {
            Ok(e) => {
                estimates.push(e.dimension);
                r2_sum += e.fit.r_squared;
                flags.out_of_range += e.flags.contains(Flag::OutOfRange) as usize;
                flags.delta_ambiguous += e.flags.contains(Flag::DeltaAmbiguous) as usize;
                flags.short_input += e.flags.contains(Flag::ShortInput) as usize;
            }
            Err(_) => n_failed += 1,
        }
    }
    let n = estimates.len();
    let (dimension_median, dimension_iqr, mean_r_squared) = if n == 0 {
        (None, None, None)
    } else {
        let iqr = quantile(&estimates, 0.75).ok().zip(quantile(&estimates, 0.25).ok()).map(|(a, b)| a - b);
        (median(&estimates).ok(), iqr, Some(r2_sum / n as f64))
    };
    CellOutcome {
        record: ResultRecord {
            generator,
            target_dimension,
            length: set.length,
            stride: set.stride,
            snr_db: set.snr_db,
            method,
            dimension_median,
            dimension_iqr,
            n_segments: n,
            mean_r_squared,
            n_failed,
            out_of_range_count: flags.out_of_range,
        },
        box_plot: box_plot_stats(&estimates).ok(),
        estimates,
        flags,
    }
}
