use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fracdim::estimators::{
    estimate, DfaConfig, EstimatorConfig, GheConfig, HiguchiConfig, Method, SpectralConfig,
};
use fracdim::generators::{add_white_noise, downsample, fbm, weierstrass_with, FbmSpec, WeierstrassSpec};
use fracdim::harness::{
    emit_csv, paper_grid, run_experiment_detailed, write_distributions, write_metadata, ExperimentSpec,
};
use fracdim::{Error, Execution, Result, TimeSeries};

#[derive(Parser)]
#[command(name = "fracdim", version, about = "Generate self-affine signals and estimate their fractal dimension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a Weierstrass or fBm signal as single-column CSV.
    Generate(GenerateArgs),
    /// Run one estimator on a signal file.
    Estimate(EstimateArgs),
    /// Run an experiment grid described by a TOML config file.
    Experiment(ExperimentArgs),
    /// Run the built-in grid: both generators, D in {1.2, 1.4, 1.5, 1.6, 1.8},
    /// lengths {500, 10000, full}, strides {1, 10, 100}, SNR {none, 70, 60, 50}.
    PaperGrid(GridArgs),
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("signal").required(true).args(["weierstrass", "fbm"])))]
struct GenerateArgs {
    /// Weierstrass function with this dimension.
    #[arg(long, value_name = "D")]
    weierstrass: Option<f64>,
    /// Fractional Brownian motion with this dimension (H = 2 - D).
    #[arg(long, value_name = "D")]
    fbm: Option<f64>,
    /// Number of samples (default 314160 for Weierstrass, 320000 for fBm).
    #[arg(long)]
    points: Option<usize>,
    /// Weierstrass series truncation.
    #[arg(long, default_value_t = 1021)]
    n_max: u32,
    /// fBm increment variance at unit lag.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Add white noise at this signal-to-noise ratio (dB).
    #[arg(long, value_name = "DB")]
    snr: Option<f64>,
    #[arg(long, default_value_t = 1)]
    stride: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long)]
    method: Method,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 15)]
    k_max: usize,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    #[arg(long, default_value_t = 25)]
    tau_max: usize,
    #[arg(long, default_value_t = 4)]
    l_min: usize,
    #[arg(long, default_value_t = 4)]
    l_max_divisor: usize,
    #[arg(long, default_value_t = 20)]
    num_sizes: usize,
    /// Lower edge of the spectral fit range (fraction of sampling rate).
    #[arg(long, requires = "f_hi")]
    f_lo: Option<f64>,
    #[arg(long, requires = "f_lo")]
    f_hi: Option<f64>,
    /// Keep the mean before the periodogram.
    #[arg(long)]
    keep_mean: bool,
    /// Skip removing the line through the end points before the periodogram.
    #[arg(long)]
    no_end_match: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Result CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    workers: Option<usize>,
    /// Write floats at full round-trip precision instead of 6 significant digits.
    #[arg(long)]
    full_precision: bool,
    /// Directory for per-cell distribution files.
    #[arg(long)]
    distributions: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 1)]
    replications: u32,
    #[command(flatten)]
    run: RunArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => generate(args),
        Command::Estimate(args) => run_estimate(args),
        Command::Experiment(args) => {
            ExperimentSpec::from_file(&args.config).and_then(|spec| run_grid(spec, args.run))
        }
        Command::PaperGrid(args) => {
            let mut spec = paper_grid(args.run.seed.unwrap_or(42));
            spec.seeds.replications = args.replications;
            run_grid(spec, args.run)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fracdim: {e}");
            ExitCode::FAILURE
        }
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Error::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display())))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn generate(args: GenerateArgs) -> Result<()> {
    let mut ts = match (args.weierstrass, args.fbm) {
        (Some(d), None) => weierstrass_with(
            &WeierstrassSpec { dimension: d, num_points: args.points.unwrap_or(314_160), n_max: args.n_max },
            Execution::default(),
        )?,
        (None, Some(d)) => fbm(&FbmSpec {
            hurst: 2.0 - d,
            length: args.points.unwrap_or(320_000),
            seed: args.seed,
            scale: args.scale,
        })?,
        _ => unreachable!("clap enforces exactly one generator"),
    };
    if let Some(db) = args.snr {
        ts = add_white_noise(&ts, db, args.seed)?;
    }
    if args.stride != 1 {
        ts = downsample(&ts, args.stride)?;
    }
    ts.write_csv(open_output(args.out.as_deref())?)
}

fn run_estimate(args: EstimateArgs) -> Result<()> {
    let file = File::open(&args.input)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", args.input.display()))))?;
    let ts = TimeSeries::read_csv(BufReader::new(file))?;
    let cfg = EstimatorConfig {
        higuchi: HiguchiConfig { k_max: args.k_max },
        ghe: GheConfig { q: args.q, tau_max: args.tau_max },
        dfa: DfaConfig { l_min: args.l_min, l_max_divisor: args.l_max_divisor, num_sizes: args.num_sizes },
        spectral: SpectralConfig {
            freq_range: args.f_lo.zip(args.f_hi), detrend_mean: !args.keep_mean,
            end_match: !args.no_end_match,
        },
    };
    let r = estimate(args.method, ts.samples(), &cfg)?;
    println!(
        "method={} n={} dimension={:.6} raw_exponent={:.6} r2={:.6} n_points={} flags={}",
        r.method,
        ts.len(),
        r.dimension,
        r.raw_exponent,
        r.fit.r_squared,
        r.fit.n_points,
        r.flags
    );
    Ok(())
}

fn run_grid(mut spec: ExperimentSpec, run: RunArgs) -> Result<()> {
    if let Some(seed) = run.seed {
        spec.seeds.base = seed;
    }
    if run.out.is_some() {
        spec.output.path = run.out;
    }
    spec.output.full_precision |= run.full_precision;
    if run.distributions.is_some() {
        spec.output.distributions = run.distributions;
    }

    let cells = run_experiment_detailed(&spec, Execution::from_workers(run.workers))?;
    let records: Vec<_> = cells.iter().map(|c| c.record.clone()).collect();
    emit_csv(&records, open_output(spec.output.path.as_deref())?, spec.output.full_precision)?;
    if let Some(path) = &spec.output.path {
        let mut meta = path.clone().into_os_string();
        meta.push(".meta.json");
        write_metadata(Path::new(&meta), &spec)?;
    }
    if let Some(dir) = &spec.output.distributions {
        write_distributions(dir, &cells)?;
    }
    Ok(())
}
