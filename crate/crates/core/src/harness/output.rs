use std::fs::File;
use std::io::{BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::json;

use super::runner::{CellOutcome, ResultRecord};
use super::spec::{ExperimentSpec, SegmentLength, PIPELINE_ORDER};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "generator,target_d,length,stride,snr_db,method,d_median,d_iqr,n_segments,mean_r2,n_failed,out_of_range_count";

/// Six significant digits in `%g` style, or the shortest exact
/// representation when `full_precision` is set.
pub fn format_float(x: f64, full_precision: bool) -> String {
    if full_precision || !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (5 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>, full: bool) -> String {
    x.map(|v| format_float(v, full)).unwrap_or_default()
}

pub fn emit_csv<W: Write>(records: &[ResultRecord], mut out: W, full_precision: bool) -> Result<()> {
    if records.is_empty() {
        return Err(Error::InvalidParameter("no records to write".into()));
    }
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.generator,
            format_float(r.target_dimension, full_precision),
            r.length,
            r.stride,
            opt(r.snr_db, full_precision),
            r.method,
            opt(r.dimension_median, full_precision),
            opt(r.dimension_iqr, full_precision),
            r.n_segments,
            opt(r.mean_r_squared, full_precision),
            r.n_failed,
            r.out_of_range_count,
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv_file(path: &Path, records: &[ResultRecord], full_precision: bool) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    emit_csv(records, BufWriter::new(file), full_precision)
}

pub fn parse_csv<R: BufRead>(input: R) -> Result<Vec<ResultRecord>> {
    let mut lines = input.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header.trim() != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected header `{header}`")));
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(Error::Parse(format!("line {lineno}: expected 12 fields, got {}", fields.len())));
        }
        let bad = |what: &str| Error::Parse(format!("line {lineno}: bad {what}"));
        let float = |s: &str, what: &str| s.parse::<f64>().map_err(|_| bad(what));
        let opt_float = |s: &str, what: &str| {
            if s.is_empty() {
                Ok(None)
            } else {
                float(s, what).map(Some)
            }
        };
        let int = |s: &str, what: &str| s.parse::<usize>().map_err(|_| bad(what));
        records.push(ResultRecord {
            generator: fields[0].parse()?,
            target_dimension: float(fields[1], "target_d")?,
            length: fields[2].parse::<SegmentLength>()?,
            stride: int(fields[3], "stride")?,
            snr_db: opt_float(fields[4], "snr_db")?,
            method: fields[5].parse()?,
            dimension_median: opt_float(fields[6], "d_median")?,
            dimension_iqr: opt_float(fields[7], "d_iqr")?,
            n_segments: int(fields[8], "n_segments")?,
            mean_r_squared: opt_float(fields[9], "mean_r2")?,
            n_failed: int(fields[10], "n_failed")?,
            out_of_range_count: int(fields[11], "out_of_range_count")?,
        });
    }
    Ok(records)
}

pub fn distribution_file_name(record: &ResultRecord) -> String {
    let snr = record.snr_db.map_or_else(|| "clean".to_string(), |db| format!("snr{db}"));
    format!(
        "{}_d{}_len{}_stride{}_{}_{}.txt",
        record.generator, record.target_dimension, record.length, record.stride, snr, record.method
    )
}

/// Raw per-segment estimates, one per line, under `#` header lines with
/// the cell coordinates and the box-plot summary.
pub fn emit_distribution_data<W: Write>(cell: &CellOutcome, mut out: W) -> Result<()> {
    let r = &cell.record;
    if cell.estimates.is_empty() {
        return Err(Error::InvalidParameter("cell has no estimates".into()));
    }
    writeln!(
        out,
        "# generator={} target_d={} length={} stride={} snr_db={} method={}",
        r.generator,
        r.target_dimension,
        r.length,
        r.stride,
        r.snr_db.map_or_else(|| "none".to_string(), |v| v.to_string()),
        r.method
    )?;
    writeln!(
        out,
        "# n={} n_failed={} out_of_range={} delta_ambiguous={} short_input={}",
        cell.estimates.len(),
        r.n_failed,
        cell.flags.out_of_range,
        cell.flags.delta_ambiguous,
        cell.flags.short_input
    )?;
    match &cell.box_plot {
        Some(b) => {
            let outliers: Vec<String> = b.outliers.iter().map(|v| v.to_string()).collect();
            writeln!(
                out,
                "# min={} q1={} median={} q3={} max={} lower_whisker={} upper_whisker={} outliers={}",
                b.min,
                b.q1,
                b.median,
                b.q3,
                b.max,
                b.lower_whisker,
                b.upper_whisker,
                outliers.join(";")
            )?;
        }
        None => writeln!(out, "# box_plot=unavailable")?,
    }
    for v in &cell.estimates {
        writeln!(out, "{v}")?;
    }
    out.flush()?;
    Ok(())
}

/// Writes one distribution file per successful cell; returns the paths.
pub fn write_distributions(dir: &Path, cells: &[CellOutcome]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for cell in cells.iter().filter(|c| !c.estimates.is_empty()) {
        let path = dir.join(distribution_file_name(&cell.record));
        emit_distribution_data(cell, BufWriter::new(File::create(&path)?))?;
        paths.push(path);
    }
    Ok(paths)
}

/// Sidecar JSON next to a result CSV recording the transform order and the
/// spec that produced it.
pub fn write_metadata(path: &Path, spec: &ExperimentSpec) -> Result<()> {
    let meta = json!({
        "pipeline_order": PIPELINE_ORDER,
        "seed": spec.seeds.base,
        "replications": spec.seeds.replications,
        "spec": spec,
    });
    let text = serde_json::to_string_pretty(&meta).map_err(|e| Error::Parse(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}
