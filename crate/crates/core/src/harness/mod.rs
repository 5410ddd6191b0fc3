//! Experiment grid runner: generators x conditions x estimators, median
//! aggregation over segments, and the CSV / distribution outputs.

mod output;
mod runner;
mod spec;

pub use output::{
    distribution_file_name, emit_csv, emit_distribution_data, format_float, parse_csv,
    write_csv_file, write_distributions, write_metadata, CSV_HEADER,
};
pub use runner::{derive_seed, run_experiment, run_experiment_detailed, CellOutcome, FlagCounts, ResultRecord};
pub use spec::{
    paper_grid, Condition, ExperimentSpec, GeneratorSpec, NoiseLevel, OutputSpec, SeedSpec,
    SegmentLength, PIPELINE_ORDER,
};
