//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::batch::{self, Execution};
use crate::criteria::{select_tendency, Criterion, CriterionTrace, TendencySplit};
use crate::dataio::{
    add_level_summary, decomposition_files, format_value, read_series, render_plot_svg, ColumnRef,
    CsvSpec, OutputBundle, PlotSeries, RunConfig,
};
use crate::error::{Error, ErrorClass};
use crate::hp::{hp_trend, HpResult};
use crate::itd::{decompose, BoundaryPolicy};
use crate::series::TimeSeries;
use crate::signals::{GeneratorSpec, Overrides, SignalKind};
use crate::spectra::dft_modulus;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tendex", version, about = "Trend extraction by intrinsic time decomposition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic signal to a CSV file.
    Generate(GenerateArgs),
    /// Write every ITD level of a series.
    Decompose(DecomposeArgs),
    /// Select a tendency and split the series into tendency and residual.
    Tendency(TendencyArgs),
    /// Hodrick-Prescott trend and residual.
    Hp(HpArgs),
    /// DFT moduli of a series and, optionally, of stored residuals.
    Spectrum(SpectrumArgs),
    /// Both criteria and the HP filter side by side.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input CSV file.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Value column, by header name or 0-based index (default: last column).
    #[arg(long)]
    column: Option<String>,
    /// The input has no header row.
    #[arg(long)]
    no_header: bool,
    #[arg(long, default_value_t = ',')]
    delimiter: char,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON run configuration; explicit flags take precedence.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, env = "TENDEX_SEED")]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: SignalKind,
    #[arg(long, env = "TENDEX_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    y0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    noise_variance: Option<f64>,
    /// Output CSV file.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    boundary: Option<BoundaryPolicy>,
    /// Lagged differences in the per-level ADF test.
    #[arg(long)]
    lags: Option<usize>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Args)]
struct TendencyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    criterion: Option<Criterion>,
    #[arg(long, allow_negative_numbers = true)]
    p_star: Option<f64>,
    #[arg(long)]
    lags: Option<usize>,
    #[arg(long, value_enum)]
    boundary: Option<BoundaryPolicy>,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long)]
    plot: bool,
}

#[derive(Debug, Args)]
struct HpArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long)]
    plot: bool,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Directory holding tendency.csv, hp.csv or comparison.csv from an
    /// earlier run; their residual columns are added to the output.
    #[arg(long, value_name = "DIR")]
    residual_of: Option<PathBuf>,
    #[arg(long)]
    max_bin: Option<usize>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, allow_negative_numbers = true)]
    p_star: Option<f64>,
    #[arg(long)]
    lags: Option<usize>,
    #[arg(long, value_enum)]
    boundary: Option<BoundaryPolicy>,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[arg(long)]
    max_bin: Option<usize>,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long)]
    plot: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code. Diagnostics go to standard error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Decompose(a) => decompose_cmd(a),
        Command::Tendency(a) => tendency_cmd(a),
        Command::Hp(a) => hp_cmd(a),
        Command::Spectrum(a) => spectrum_cmd(a),
        Command::Report(a) => report_cmd(a),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            match e.class() {
                ErrorClass::Usage => EXIT_USAGE,
                ErrorClass::Data => EXIT_DATA,
                ErrorClass::Numerical => EXIT_NUMERICAL,
            }
        }
    }
}

fn flag_for(e: &Error) -> Option<&'static str> {
    match e {
        Error::InvalidLambda(_) => Some("--lambda"),
        Error::InvalidParameter { name: "p_star", .. } => Some("--p-star"),
        Error::InvalidParameter { name: "max_bin", .. } => Some("--max-bin"),
        _ => None,
    }
}

/// Config file (or defaults), then seed, then `overrides`; validated before
/// any input is read.
fn resolve(run: &RunArgs, overrides: impl FnOnce(&mut RunConfig)) -> CliResult<RunConfig> {
    let mut cfg = match &run.config {
        Some(path) => RunConfig::load(path).map_err(|e| CliError::Usage(e.to_string()))?,
        None => RunConfig::default(),
    };
    if let Some(seed) = run.seed {
        cfg.seed = seed;
    }
    cfg.output_dir = Some(run.out.clone());
    overrides(&mut cfg);
    cfg.validate().map_err(|e| match flag_for(&e) {
        Some(flag) => CliError::Usage(format!("invalid value for {flag}: {e}")),
        None => CliError::Usage(e.to_string()),
    })?;
    Ok(cfg)
}

fn csv_spec(input: &InputArgs) -> CliResult<CsvSpec> {
    if !input.delimiter.is_ascii() {
        return Err(CliError::Usage(format!(
            "invalid value for --delimiter: {:?} is not a single-byte character",
            input.delimiter
        )));
    }
    let mut spec = CsvSpec::new(&input.input)
        .header(!input.no_header)
        .delimiter(input.delimiter as u8);
    if let Some(c) = &input.column {
        spec = spec.column(ColumnRef::parse(c));
    }
    Ok(spec)
}

fn write_file_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.partial"));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

fn generate(a: GenerateArgs) -> CliResult<()> {
    let spec = GeneratorSpec {
        kind: a.kind,
        seed: a.seed,
        overrides: Overrides {
            n: a.n,
            dt: a.dt,
            y0: a.y0,
            noise_variance: a.noise_variance,
            layers: None,
        },
    };
    let series = spec.generate()?;
    let mut bundle = OutputBundle::new();
    bundle.add_csv(
        "series",
        &["i", "value"],
        series.values().iter().enumerate().map(|(i, v)| [i.to_string(), format_value(*v)]),
    )?;
    write_file_atomic(&a.out, bundle.get("series").expect("just added")).map_err(Error::from)?;
    Ok(())
}

fn decompose_cmd(a: DecomposeArgs) -> CliResult<()> {
    let cfg = resolve(&a.run, |c| {
        if let Some(b) = a.boundary {
            c.boundary = b;
        }
        if let Some(l) = a.lags {
            c.n_lags = l;
        }
    })?;
    let y = read_series(&csv_spec(&a.input)?)?;
    let d = decompose(&y, cfg.boundary);
    let mut bundle = OutputBundle::new();
    decomposition_files(&mut bundle, &d, cfg.n_lags)?;
    bundle.commit(&a.run.out, &cfg)?;
    println!("levels: {}", d.depth());
    Ok(())
}

fn trace_rows(trace: &CriterionTrace) -> Vec<[String; 3]> {
    trace
        .per_level
        .iter()
        .map(|s| {
            [
                s.level.to_string(),
                format_value(s.score),
                u8::from(s.level == trace.chosen).to_string(),
            ]
        })
        .collect()
}

fn split_rows(y: &TimeSeries, t: &TimeSeries, r: &TimeSeries) -> Vec<[String; 4]> {
    (0..y.len())
        .map(|i| [i.to_string(), format_value(y[i]), format_value(t[i]), format_value(r[i])])
        .collect()
}

fn tendency_cmd(a: TendencyArgs) -> CliResult<()> {
    let cfg = resolve(&a.run, |c| {
        if let Some(v) = a.criterion {
            c.criterion = v;
        }
        if let Some(v) = a.p_star {
            c.p_star = v;
        }
        if let Some(v) = a.lags {
            c.n_lags = v;
        }
        if let Some(v) = a.boundary {
            c.boundary = v;
        }
    })?;
    let y = read_series(&csv_spec(&a.input)?)?;
    let d = decompose(&y, cfg.boundary);
    let split = select_tendency(&d, cfg.criterion, cfg.tendency_params())?;

    let mut bundle = OutputBundle::new();
    bundle.add_csv(
        "tendency.csv",
        &["i", "value", "tendency", "residual"],
        split_rows(&y, &split.tendency, &split.residual),
    )?;
    bundle.add_csv("trace.csv", &["level", "score", "chosen"], trace_rows(&split.trace))?;
    let mut result = serde_json::to_vec_pretty(&serde_json::json!({
        "criterion": cfg.criterion.name(),
        "j_star": split.j_star,
        "depth": d.depth(),
        "fallback_used": split.trace.fallback_used,
    }))
    .map_err(Error::from)?;
    result.push(b'\n');
    bundle.add("result.json", result);
    if a.plot {
        let svg = render_plot_svg(&[
            PlotSeries { label: "series", values: y.values() },
            PlotSeries { label: "tendency", values: split.tendency.values() },
        ]);
        bundle.add("plot.svg", svg.into_bytes());
    }
    bundle.commit(&a.run.out, &cfg)?;
    println!(
        "criterion: {}  j* = {}  depth: {}{}",
        cfg.criterion.name(),
        split.j_star,
        d.depth(),
        if split.trace.fallback_used { "  (fallback)" } else { "" }
    );
    Ok(())
}

fn hp_cmd(a: HpArgs) -> CliResult<()> {
    let cfg = resolve(&a.run, |c| {
        if let Some(v) = a.lambda {
            c.hp_lambda = v;
        }
    })?;
    let y = read_series(&csv_spec(&a.input)?)?;
    let hp = hp_trend(&y, cfg.hp_lambda)?;
    let mut bundle = OutputBundle::new();
    bundle.add_csv(
        "hp.csv",
        &["i", "value", "trend", "residual"],
        split_rows(&y, &hp.trend, &hp.residual),
    )?;
    if a.plot {
        let svg = render_plot_svg(&[
            PlotSeries { label: "series", values: y.values() },
            PlotSeries { label: "hp trend", values: hp.trend.values() },
        ]);
        bundle.add("plot.svg", svg.into_bytes());
    }
    bundle.commit(&a.run.out, &cfg)?;
    Ok(())
}

const RESIDUAL_SOURCES: [&str; 3] = ["comparison.csv", "tendency.csv", "hp.csv"];

/// Residual columns stored by earlier `tendency`, `hp` or `report` runs.
fn stored_residuals(dir: &Path) -> CliResult<Vec<(String, TimeSeries)>> {
    let mut found = Vec::new();
    for file in RESIDUAL_SOURCES {
        let path = dir.join(file);
        if !path.is_file() {
            continue;
        }
        let headers = csv::Reader::from_path(&path).map_err(Error::from)?.headers().map_err(Error::from)?.clone();
        let stem = file.trim_end_matches(".csv");
        for h in headers.iter().filter(|h| h.ends_with("residual")) {
            let name = if h == "residual" { format!("{stem}_residual") } else { h.to_string() };
            let series = read_series(&CsvSpec::new(&path).column(ColumnRef::Name(h.to_string())))?;
            found.push((name, series));
        }
    }
    if found.is_empty() {
        return Err(CliError::Lib(Error::MissingColumn(format!(
            "residual (looked in {} under {})",
            RESIDUAL_SOURCES.join(", "),
            dir.display()
        ))));
    }
    Ok(found)
}

fn spectrum_table(
    bundle: &mut OutputBundle,
    columns: &[(String, &TimeSeries)],
    max_bin: usize,
) -> crate::error::Result<()> {
    let n = columns[0].1.len();
    for (_, s) in columns {
        if s.len() != n {
            return Err(Error::LengthMismatch { left: n, right: s.len() });
        }
    }
    let spectra: Vec<Vec<f64>> = columns
        .iter()
        .map(|(_, s)| dft_modulus(s).truncated(max_bin).modulus)
        .collect();
    let mut header = vec!["bin"];
    header.extend(columns.iter().map(|(name, _)| name.as_str()));
    let rows = (0..spectra[0].len()).map(|k| {
        std::iter::once(k.to_string())
            .chain(spectra.iter().map(|m| format_value(m[k])))
            .collect::<Vec<_>>()
    });
    bundle.add_csv("spectrum.csv", &header, rows)
}

fn spectrum_cmd(a: SpectrumArgs) -> CliResult<()> {
    let cfg = resolve(&a.run, |c| {
        if let Some(v) = a.max_bin {
            c.max_bin = v;
        }
    })?;
    let y = read_series(&csv_spec(&a.input)?)?;
    let stored = match &a.residual_of {
        Some(dir) => stored_residuals(dir)?,
        None => Vec::new(),
    };
    let mut columns = vec![("original".to_string(), &y)];
    columns.extend(stored.iter().map(|(n, s)| (n.clone(), s)));
    let mut bundle = OutputBundle::new();
    spectrum_table(&mut bundle, &columns, cfg.max_bin)?;
    bundle.commit(&a.run.out, &cfg)?;
    Ok(())
}

fn report_cmd(a: ReportArgs) -> CliResult<()> {
    let cfg = resolve(&a.run, |c| {
        if let Some(v) = a.p_star {
            c.p_star = v;
        }
        if let Some(v) = a.lags {
            c.n_lags = v;
        }
        if let Some(v) = a.boundary {
            c.boundary = v;
        }
        if let Some(v) = a.lambda {
            c.hp_lambda = v;
        }
        if let Some(v) = a.max_bin {
            c.max_bin = v;
        }
    })?;
    let y = read_series(&csv_spec(&a.input)?)?;
    let params = cfg.tendency_params();
    let exec = Execution::Parallel;
    let (d, hp) = batch::join(exec, || decompose(&y, cfg.boundary), || hp_trend(&y, cfg.hp_lambda));
    let hp: HpResult = hp?;
    let (stc, maxep) = batch::join(
        exec,
        || select_tendency(&d, Criterion::Stc, params),
        || select_tendency(&d, Criterion::MaxEp, params),
    );
    let (stc, maxep): (TendencySplit, TendencySplit) = (stc?, maxep?);

    let mut bundle = OutputBundle::new();
    let comparison = (0..y.len()).map(|i| {
        [y[i], stc.tendency[i], stc.residual[i], maxep.tendency[i], maxep.residual[i], hp.trend[i], hp.residual[i]]
            .iter()
            .map(|v| format_value(*v))
            .fold(vec![i.to_string()], |mut row, v| {
                row.push(v);
                row
            })
    });
    bundle.add_csv(
        "comparison.csv",
        &[
            "i",
            "value",
            "stc_tendency",
            "stc_residual",
            "maxep_tendency",
            "maxep_residual",
            "hp_trend",
            "hp_residual",
        ],
        comparison,
    )?;

    let summary_row = |method: &str, level: String, fallback: String, t: &TimeSeries, r: &TimeSeries| {
        [
            method.to_string(),
            level,
            fallback,
            y.is_additive_split(t, r).to_string(),
            format_value(r.max_abs()),
            format_value(t.total_variation()),
        ]
    };
    bundle.add_csv(
        "summary.csv",
        &["method", "j_star", "fallback_used", "split_exact", "max_abs_residual", "tendency_tv"],
        [
            summary_row("stc", stc.j_star.to_string(), stc.trace.fallback_used.to_string(), &stc.tendency, &stc.residual),
            summary_row("maxep", maxep.j_star.to_string(), maxep.trace.fallback_used.to_string(), &maxep.tendency, &maxep.residual),
            summary_row("hp", String::new(), String::new(), &hp.trend, &hp.residual),
        ],
    )?;
    bundle.add_csv("trace_stc.csv", &["level", "score", "chosen"], trace_rows(&stc.trace))?;
    bundle.add_csv("trace_maxep.csv", &["level", "score", "chosen"], trace_rows(&maxep.trace))?;
    add_level_summary(&mut bundle, "levels.csv", &d, cfg.n_lags)?;
    spectrum_table(
        &mut bundle,
        &[
            ("original".to_string(), &y),
            ("stc_residual".to_string(), &stc.residual),
            ("maxep_residual".to_string(), &maxep.residual),
            ("hp_residual".to_string(), &hp.residual),
        ],
        cfg.max_bin,
    )?;
    if a.plot {
        let svg = render_plot_svg(&[
            PlotSeries { label: "series", values: y.values() },
            PlotSeries { label: "stc tendency", values: stc.tendency.values() },
            PlotSeries { label: "maxep tendency", values: maxep.tendency.values() },
            PlotSeries { label: "hp trend", values: hp.trend.values() },
        ]);
        bundle.add("plot.svg", svg.into_bytes());
    }
    bundle.commit(&a.run.out, &cfg)?;
    println!("depth: {}  stc j* = {}  maxep j* = {}", d.depth(), stc.j_star, maxep.j_star);
    Ok(())
}
