//! Shared numeric kernels: least-squares line fits, the periodogram, and
//! order statistics.

mod fit;
mod spectrum;
mod stats;

pub use fit::{linear_least_squares, FitResult};
pub(crate) use fit::log_log_fit;
pub use spectrum::{periodogram, PowerSpectrum};
pub(crate) use spectrum::fft_forward;
pub use stats::{box_plot_stats, median, quantile, BoxPlotStats};
