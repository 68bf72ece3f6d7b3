//! `algoprob` command line.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on runtime or I/O errors.
//! Every file written starts with a comment echoing the invocation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ca::{self, CaError, EcaRule, GrayImage, Grid, PnmFormat, YoungParams};
use crate::checkpoint;
use crate::distribution::{self, rows_to_csv, DistributionReport};
use crate::enumeration::{sweep_with_progress, SweepSpec};
use crate::structure;
use crate::tm::default_step_cap;

pub const THREADS_ENV: &str = "ALGOPROB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "algoprob", version, about = "Algorithmic probability from small Turing machines")]
pub struct Cli {
    /// Worker threads (default: $ALGOPROB_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep machines and write a frequency-table checkpoint.
    Enumerate(EnumerateArgs),
    /// Probabilities and coding-theorem complexities from a checkpoint.
    Report(ReportArgs),
    /// Elementary cellular automaton space-time diagram.
    Eca(EcaArgs),
    /// Young activator-inhibitor automaton.
    Young(YoungArgs),
    /// Monotone precipitation automaton.
    Precip(PrecipArgs),
    /// Render a binary string as a striped motif.
    Strip(StripArgs),
    /// Hamming distance between two equal-length binary strings.
    Hamming { s: String, t: String },
    /// Reverse/complement class of a binary string.
    Class { s: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub from: u64,
    pub to: u64,
}

fn parse_range(s: &str) -> Result<IndexRange, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let from = a.parse().map_err(|e| format!("bad range start {a:?}: {e}"))?;
    let to = b.parse().map_err(|e| format!("bad range end {b:?}: {e}"))?;
    Ok(IndexRange { from, to })
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=6))]
    pub states: u64,
    /// Exhaustive index range A..B (half-open).
    #[arg(long, value_parser = parse_range, conflicts_with_all = ["sample", "seed"], required_unless_present = "sample")]
    pub range: Option<IndexRange>,
    /// Number of uniformly sampled machines.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), requires = "seed")]
    pub sample: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Step cap (default: the busy-beaver bound for the state count).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
    /// No progress on stderr.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Only strings of this length.
    #[arg(long)]
    pub length: Option<usize>,
    /// Only the K most probable strings (needs --length).
    #[arg(long, requires = "length", value_parser = clap::value_parser!(u64).range(1..))]
    pub top: Option<u64>,
    /// Append the reversal/complement symmetry report.
    #[arg(long)]
    pub symmetry: bool,
    /// Count every machine on both blank symbols: each string also gets
    /// its complement's count.
    #[arg(long)]
    pub complete_complements: bool,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EcaArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=255))]
    pub rule: u32,
    #[arg(long, default_value_t = 201)]
    pub width: usize,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Initial row: `single` (one centred 1), `random`, or a literal binary string.
    #[arg(long, default_value = "single")]
    pub init: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct YoungArgs {
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub r1: Option<f64>,
    #[arg(long)]
    pub r2: Option<f64>,
    #[arg(long)]
    pub w1: Option<f64>,
    #[arg(long)]
    pub w2: Option<f64>,
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PrecipArgs {
    #[arg(long, default_value_t = 100)]
    pub width: usize,
    #[arg(long, default_value_t = 100)]
    pub height: usize,
    #[arg(long, default_value_t = 1)]
    pub low: u8,
    #[arg(long, default_value_t = 8)]
    pub high: u8,
    /// Fraction of initially set cells.
    #[arg(long, default_value_t = 0.01)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Update limit (default: width*height, enough to reach a fixed point).
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct StripArgs {
    #[arg(long)]
    pub string: String,
    #[arg(long, default_value_t = 16)]
    pub cell_px: usize,
    #[arg(long, default_value_t = 4)]
    pub repeats: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure::Runtime(e.to_string())
}

fn ca_failure(e: CaError) -> Failure {
    match e {
        CaError::Io { .. } => runtime(e),
        _ => usage(e),
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let invocation = invocation(&args);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli, &invocation, &mut out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// Program name plus arguments, shell-quoted where needed.
fn invocation(args: &[OsString]) -> String {
    let mut s = String::from("algoprob");
    for a in args.iter().skip(1) {
        let a = a.to_string_lossy();
        s.push(' ');
        if !a.is_empty()
            && a
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || "-_./=:,+@%".contains(c))
        {
            s.push_str(&a);
        } else {
            let _ = write!(s, "'{}'", a.replace('\'', r"'\''"));
        }
    }
    s
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if let Some(n) = flag {
        return if n == 0 {
            Err(usage("--threads must be at least 1"))
        } else {
            Ok(Some(n))
        };
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(usage(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
        },
        Err(_) => Ok(None),
    }
}

fn dispatch(cli: Cli, invocation: &str, out: &mut dyn io::Write) -> Result<(), Failure> {
    let threads = thread_count(cli.threads)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    match cli.command {
        Command::Enumerate(a) => {
            let pool = builder.build().map_err(runtime)?;
            pool.install(|| cmd_enumerate(a, invocation))
        }
        Command::Report(a) => cmd_report(a, invocation, out),
        Command::Eca(a) => cmd_eca(a, invocation),
        Command::Young(a) => cmd_young(a, invocation),
        Command::Precip(a) => cmd_precip(a, invocation),
        Command::Strip(a) => cmd_strip(a, invocation),
        Command::Hamming { s, t } => cmd_hamming(&s, &t, out),
        Command::Class { s } => cmd_class(&s, out),
    }
}

fn cmd_enumerate(a: EnumerateArgs, invocation: &str) -> Result<(), Failure> {
    let n = a.states as usize;
    let cap = match a.cap.or_else(|| default_step_cap(n)) {
        Some(c) => c,
        None => return Err(usage(format!("--cap is required for {n} states"))),
    };
    let spec = match (a.range, a.sample, a.seed) {
        (Some(r), _, _) => SweepSpec::range(n, r.from, r.to, cap),
        (None, Some(count), Some(seed)) => SweepSpec::sampled(n, count, seed, cap),
        _ => return Err(usage("need --range A..B or --sample COUNT --seed S")),
    };
    spec.validate().map_err(usage)?;

    let total = spec.len();
    let done = AtomicU64::new(0);
    let started = Instant::now();
    let last = Mutex::new(started);
    let quiet = a.quiet;
    let progress = |k: u64| {
        let finished = done.fetch_add(k, Ordering::Relaxed) + k;
        if quiet {
            return;
        }
        let mut last = last.lock().expect("progress lock");
        if last.elapsed().as_secs_f64() < 1.0 && finished < total {
            return;
        }
        *last = Instant::now();
        let secs = started.elapsed().as_secs_f64().max(1e-9);
        let rate = finished as f64 / secs;
        let eta = (total - finished) as f64 / rate.max(1e-9);
        eprintln!(
            "{finished}/{total} machines ({:.1}%), {rate:.0} machines/s, ETA {eta:.0}s",
            100.0 * finished as f64 / total.max(1) as f64
        );
    };
    let table = sweep_with_progress(&spec, &progress).map_err(usage)?;
    checkpoint::write_with_comment(&table, &a.out, Some(invocation)).map_err(runtime)
}

fn cmd_report(a: ReportArgs, invocation: &str, out: &mut dyn io::Write) -> Result<(), Failure> {
    let mut table = checkpoint::read(&a.input).map_err(runtime)?;
    if a.complete_complements {
        table = distribution::complement_completed(&table);
    }
    let report = DistributionReport::from_table(&table).map_err(runtime)?;

    let mut text = format!("# {invocation}\n");
    let rows = match a.length {
        Some(len) => {
            let rows = report.by_length(len);
            let k = a.top.map_or(rows.len(), |k| (k as usize).min(rows.len()));
            &rows[..k]
        }
        None => &report.records[..],
    };
    text.push_str(&rows_to_csv(rows));
    let mut failure = None;
    if a.symmetry {
        let sym = distribution::symmetry_report(&table);
        text.push_str(&sym.to_text());
        failure = sym.verify().err();
    }
    match &a.out {
        Some(path) => write_file(path, text.as_bytes())?,
        None => out.write_all(text.as_bytes()).map_err(runtime)?,
    }
    match failure {
        Some(e) => Err(runtime(e)),
        None => Ok(()),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| runtime(format!("{}: {e}", path.display())))
}

fn write_image(img: &GrayImage, path: &Path, invocation: &str) -> Result<(), Failure> {
    let format = PnmFormat::from_path(path).unwrap_or(PnmFormat::Pgm);
    img.write(path, format, Some(invocation)).map_err(ca_failure)
}

fn cmd_eca(a: EcaArgs, invocation: &str) -> Result<(), Failure> {
    let rule = EcaRule::decode(a.rule).map_err(ca_failure)?;
    let row = match a.init.as_str() {
        "single" => {
            let mut row = vec![0u8; a.width];
            if a.width > 0 {
                row[a.width / 2] = 1;
            }
            row
        }
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            (0..a.width).map(|_| rng.random_range(0..2u8)).collect()
        }
        literal => ca::parse_bits(literal).map_err(ca_failure)?,
    };
    let rows = ca::eca_evolve(rule, &row, a.steps).map_err(ca_failure)?;
    write_image(&GrayImage::from_rows(&rows), &a.out, invocation)
}

fn cmd_young(a: YoungArgs, invocation: &str) -> Result<(), Failure> {
    let base = match &a.preset {
        Some(name) => Some(ca::young_preset(name).map_err(ca_failure)?),
        None => None,
    };
    let need = |v: Option<f64>, preset: Option<f64>, name: &str| {
        v.or(preset)
            .ok_or_else(|| usage(format!("--{name} is required without --preset")))
    };
    let params = YoungParams {
        r1: need(a.r1, base.map(|b| b.params.r1), "r1")?,
        r2: need(a.r2, base.map(|b| b.params.r2), "r2")?,
        w1: need(a.w1, base.map(|b| b.params.w1), "w1")?,
        w2: need(a.w2, base.map(|b| b.params.w2), "w2")?,
        init_density: need(a.density, base.map(|b| b.params.init_density), "density")?,
        seed: a.seed.or(base.map(|b| b.params.seed)).unwrap_or(0),
    };
    let width = a.width.or(base.map(|b| b.width)).unwrap_or(100);
    let height = a.height.or(base.map(|b| b.height)).unwrap_or(100);
    let steps = a.steps.or(base.map(|b| b.steps)).unwrap_or(20);
    let grid = ca::young_run(&params, width, height, steps).map_err(ca_failure)?;
    write_image(&GrayImage::from_grid(&grid), &a.out, invocation)
}

fn cmd_precip(a: PrecipArgs, invocation: &str) -> Result<(), Failure> {
    if !(0.0..=1.0).contains(&a.density) {
        return Err(usage("--density must lie in [0, 1]"));
    }
    let mut grid = Grid::new(a.width, a.height).map_err(ca_failure)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    for y in 0..a.height {
        for x in 0..a.width {
            if rng.random_bool(a.density) {
                grid.set(x, y, 1);
            }
        }
    }
    let limit = a.steps.unwrap_or(a.width * a.height);
    let (grid, _) = ca::precipitation_run(&grid, a.low, a.high, limit).map_err(ca_failure)?;
    write_image(&GrayImage::from_grid(&grid), &a.out, invocation)
}

fn cmd_strip(a: StripArgs, invocation: &str) -> Result<(), Failure> {
    let bits = ca::parse_bits(&a.string).map_err(ca_failure)?;
    let img = ca::render_strip(&bits, a.cell_px, a.repeats).map_err(ca_failure)?;
    write_image(&img, &a.out, invocation)
}

fn cmd_hamming(s: &str, t: &str, out: &mut dyn io::Write) -> Result<(), Failure> {
    let d = structure::hamming(s, t).map_err(usage)?;
    writeln!(out, "{d}").map_err(runtime)
}

fn cmd_class(s: &str, out: &mut dyn io::Write) -> Result<(), Failure> {
    let class = structure::symmetry_class(s).map_err(usage)?;
    let dist = structure::min_class_distance(s).map_err(usage)?;
    let mut text = String::new();
    for m in &class.members {
        let _ = writeln!(text, "{m}");
    }
    let _ = writeln!(text, "min_class_distance={}", dist.distance);
    if dist.singleton {
        text.push_str("singleton\n");
    }
    out.write_all(text.as_bytes()).map_err(runtime)
}
