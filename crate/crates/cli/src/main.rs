mod commands;
mod output;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "kloostlab",
    version,
    about = "Window statistics of modular inverses and Sato-Tate statistics of Kloosterman angles"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Angle-table cache directory (overrides KLOOSTLAB_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Worker threads for per-prime work (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,

    /// Memory budget in bytes for histograms and per-pair counters.
    #[arg(long, default_value_t = 1 << 30, global = true)]
    mem_cap: u64,

    /// Report wall-clock time in the JSON `elapsed_ms` field.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Inverse,
    Multiple,
    MultipleCoprime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Naive,
    Convolution,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Window counts of a/x or a*x over all residues a, with variance sums
    /// and exceptional-set sizes.
    Counts(CountsArgs),
    /// Kloosterman sums and per-prime tables.
    #[command(subcommand)]
    Kloosterman(KloostermanCmd),
    /// Sato-Tate statistics of Kloosterman angles.
    #[command(subcommand)]
    Satotate(SatotateCmd),
}

#[derive(Debug, Args)]
pub struct CountsArgs {
    #[arg(long)]
    pub m: u64,
    /// Sample interval half-width: x ranges over |x| <= X.
    #[arg(long = "X")]
    pub x: u64,
    /// Window length.
    #[arg(long = "Y")]
    pub y: u64,
    /// Window offset; the window is [Z+1, Z+Y].
    #[arg(long = "Z", default_value_t = 0, allow_hyphen_values = true)]
    pub z: i64,
    #[arg(long, value_enum, default_value_t = ModeArg::Inverse)]
    pub mode: ModeArg,
    /// Relative deviation threshold for the exceptional count, in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// Emit one deviation row per residue a instead of the aggregate row.
    #[arg(long)]
    pub per_a: bool,
}

#[derive(Debug, Subcommand)]
pub enum KloostermanCmd {
    /// Rows (a, K_{1,a}(p), psi_{1,a}(p)) for a = 1..p-1.
    Table {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Convolution)]
        method: MethodArg,
    },
    /// A single sum K_{r,s}(p).
    Sum {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
    },
}

#[derive(Debug, Args, Clone)]
pub struct WindowArgs {
    /// Lower angle; accepts numbers and forms like `pi/4` or `3pi/4`.
    #[arg(long, default_value = "0")]
    pub alpha: String,
    #[arg(long, default_value = "pi")]
    pub beta: String,
}

#[derive(Debug, Subcommand)]
pub enum SatotateCmd {
    /// Sato-Tate measure of a window.
    Mu {
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Star discrepancy of the angles at one prime.
    Discrepancy {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Convolution)]
        method: MethodArg,
    },
    /// #Q(R, S, p) against 4 mu RS.
    Qcount {
        #[arg(long)]
        p: u64,
        #[arg(long = "R")]
        r: u64,
        #[arg(long = "S")]
        s: u64,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Pi(R, S, T) against mu pi(T).
    Average {
        #[arg(long = "R")]
        r: u64,
        #[arg(long = "S")]
        s: u64,
        #[arg(long = "T")]
        t: u64,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Delta(R, S, T).
    Dispersion {
        #[arg(long = "R")]
        r: u64,
        #[arg(long = "S")]
        s: u64,
        #[arg(long = "T")]
        t: u64,
        #[command(flatten)]
        window: WindowArgs,
    },
}

fn emit(report: &output::Report, global: &GlobalOpts, elapsed_ms: Option<u128>) -> io::Result<()> {
    let format = if global.json {
        Format::Json
    } else {
        global.format
    };
    let mut sink: Box<dyn Write> = match &global.out {
        Some(path) => Box::new(BufWriter::new(fs::File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match format {
        Format::Csv => report.write_csv(&mut sink)?,
        Format::Json => report.write_json(&mut sink, elapsed_ms)?,
    }
    sink.flush()
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let started = Instant::now();
    let ctx = commands::Context::from_opts(&cli.global)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
        .map_err(|e| CliError::Io(io::Error::other(e)))?;
    let report = pool.install(|| match &cli.command {
        Command::Counts(args) => commands::counts(&ctx, args),
        Command::Kloosterman(cmd) => commands::kloosterman(&ctx, cmd),
        Command::Satotate(cmd) => commands::satotate(&ctx, cmd),
    })?;
    let elapsed = cli.global.timing.then(|| started.elapsed().as_millis());
    emit(&report, &cli.global, elapsed)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kloostlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
