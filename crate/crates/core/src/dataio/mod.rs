//! CSV ingestion, run configuration and output writers.

mod config;
mod input;
mod output;
mod svg;

pub use config::RunConfig;
pub use input::{read_series, ColumnRef, CsvSpec};
pub use output::{
    add_level_summary, decomposition_files, format_value, sha256_hex, write_decomposition, FileEntry, Manifest,
    MANIFEST_NAME,
    OutputBundle,
};
pub use svg::{render_plot_svg, write_plot_svg, PlotSeries};
