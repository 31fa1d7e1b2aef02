//! Command-line surface: `sweep`, `per`, `slope`, `mac` and `plot`.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{self, Entry};
use crate::error::{Error, Result};
use crate::mac::run_mac_episode;
use crate::montecarlo::{ber_sweep, default_window, fit_diversity_order, per_from_ber};
use crate::phy::Scheme;
use crate::plot::render_ber_svg;
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INSUFFICIENT: i32 = 3;

const AFTER_HELP: &str = concat!(
    "Config files use `key = value` lines under [link], [interferers], [snr], [run] and [mac]\n",
    "sections. Every key is optional; the defaults are:\n\n",
    include_str!("default_config.ini"),
);

#[derive(Debug, Parser)]
#[command(name = "maxant", version, about = "Max-antenna selection vs STBC under hidden-node interference", after_help = AFTER_HELP)]
pub struct Cli {
    /// Worker threads (0 = one per core). Output does not depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// BER sweep of STBC and max-antenna selection, written as CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override a config key, e.g. `--set interferers.count=2`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Packet error rate for a bit error rate and packet length.
    Per {
        #[arg(long)]
        ber: f64,
        #[arg(long)]
        bits: u64,
    },
    /// Diversity-order fit per scheme from a sweep CSV.
    Slope {
        #[arg(long = "in")]
        input: PathBuf,
        /// `lo:hi` in dB; defaults to the top 10 dB with enough errors.
        #[arg(long)]
        window: Option<String>,
    },
    /// Coordinated multi-AP episode summary and timeline CSVs.
    Mac {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Timeline CSV path (default: `<out>` with a `.timeline.csv` suffix).
        #[arg(long)]
        timeline: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// SVG plot of a sweep CSV.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "BER vs SNR")]
        title: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Sweep,
    Per,
    Slope,
    Mac,
    Plot,
}

/// What a config-driven command reads, writes and overrides.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: CommandKind,
    pub config_path: PathBuf,
    pub out_path: PathBuf,
    pub overrides: Vec<Entry>,
}

impl RunManifest {
    pub fn new(
        command: CommandKind,
        config_path: &Path,
        out_path: &Path,
        overrides: &[String],
    ) -> Result<Self> {
        Ok(Self {
            command,
            config_path: config_path.to_path_buf(),
            out_path: out_path.to_path_buf(),
            overrides: overrides
                .iter()
                .map(|o| config::parse_override(o))
                .collect::<Result<_>>()?,
        })
    }

    fn entries(&self) -> Result<Vec<Entry>> {
        let text =
            fs::read_to_string(&self.config_path).map_err(|e| Error::io(&self.config_path, e))?;
        let mut entries = config::parse_entries(&text)?;
        entries.extend(self.overrides.iter().cloned());
        Ok(entries)
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => EXIT_IO,
        Error::InsufficientData(_) => EXIT_INSUFFICIENT,
        _ => EXIT_CONFIG,
    }
}

fn create(path: &Path) -> Result<BufWriter<fs::File>> {
    fs::File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn finish(mut w: BufWriter<fs::File>, path: &Path) -> Result<()> {
    w.flush().map_err(|e| Error::io(path, e))
}

fn with_path(err: Error, path: &Path) -> Error {
    match err {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    }
}

pub fn cmd_sweep(manifest: &RunManifest) -> Result<()> {
    let cfg = config::scenario_from_entries(&manifest.entries()?)?;
    let result = ber_sweep(&cfg, &[Scheme::Stbc, Scheme::MaxSel])?;
    let path = &manifest.out_path;
    let mut w = create(path)?;
    report::write_sweep_csv(&result, &mut w).map_err(|e| with_path(e, path))?;
    finish(w, path)
}

pub fn timeline_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.timeline.csv"))
}

pub fn cmd_mac(manifest: &RunManifest, timeline: Option<&Path>) -> Result<()> {
    let cfg = config::mac_from_entries(&manifest.entries()?)?;
    let summary = run_mac_episode(&cfg, cfg.n_aps, cfg.episodes)?;
    let path = &manifest.out_path;
    let mut w = create(path)?;
    report::write_mac_summary_csv(&cfg, &summary, &mut w).map_err(|e| with_path(e, path))?;
    finish(w, path)?;
    let tpath = timeline.map_or_else(|| timeline_path(path), Path::to_path_buf);
    let mut w = create(&tpath)?;
    report::write_timeline_csv(&summary.timeline, &mut w).map_err(|e| with_path(e, &tpath))?;
    finish(w, &tpath)
}

pub fn cmd_plot(input: &Path, out: &Path, title: &str) -> Result<()> {
    let file = fs::File::open(input).map_err(|e| Error::io(input, e))?;
    let points = report::read_sweep_csv(file).map_err(|e| with_path(e, input))?;
    let svg = render_ber_svg(&points, title)?;
    fs::write(out, svg).map_err(|e| Error::io(out, e))
}

/// One line per scheme: `scheme,slope,slope_stderr,intercept,window_lo,window_hi,r_squared,n_points`.
pub fn cmd_slope(input: &Path, window: Option<&str>) -> Result<String> {
    let file = fs::File::open(input).map_err(|e| Error::io(input, e))?;
    let points = report::read_sweep_csv(file).map_err(|e| with_path(e, input))?;
    let window = window
        .map(|w| config::parse_window(w).map_err(Error::InvalidInput))
        .transpose()?;
    let mut schemes: Vec<Scheme> = points.iter().map(|p| p.scheme).collect();
    schemes.sort();
    schemes.dedup();
    if schemes.is_empty() {
        return Err(Error::InsufficientData("sweep CSV has no data rows".into()));
    }
    let mut out = String::from(
        "scheme,slope,slope_stderr,intercept,window_lo,window_hi,r_squared,n_points\n",
    );
    for scheme in schemes {
        let pts: Vec<_> = points
            .iter()
            .filter(|p| p.scheme == scheme)
            .cloned()
            .collect();
        let w = match window.or_else(|| default_window(&pts)) {
            Some(w) => w,
            None => {
                return Err(Error::InsufficientData(format!(
                    "no {scheme} point has enough errors for a fit"
                )))
            }
        };
        let fit = fit_diversity_order(&pts, w)?;
        out.push_str(&format!(
            "{scheme},{},{},{},{},{},{},{}\n",
            report::fmt_real(fit.slope),
            report::fmt_real(fit.slope_stderr),
            report::fmt_real(fit.intercept),
            report::fmt_real(w.0),
            report::fmt_real(w.1),
            report::fmt_real(fit.r_squared),
            fit.n_points
        ));
    }
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Sweep {
            config,
            out,
            overrides,
        } => cmd_sweep(&RunManifest::new(
            CommandKind::Sweep,
            config,
            out,
            overrides,
        )?),
        Command::Per { ber, bits } => {
            println!("{}", report::fmt_real(per_from_ber(*ber, *bits)?));
            Ok(())
        }
        Command::Slope { input, window } => {
            print!("{}", cmd_slope(input, window.as_deref())?);
            Ok(())
        }
        Command::Mac {
            config,
            out,
            timeline,
            overrides,
        } => cmd_mac(
            &RunManifest::new(CommandKind::Mac, config, out, overrides)?,
            timeline.as_deref(),
        ),
        Command::Plot { input, out, title } => cmd_plot(input, out, title),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
