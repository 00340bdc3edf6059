use std::f64::consts::PI;
use std::fmt;
use std::io;
use std::path::PathBuf;

use kloostlab::cache::{AngleCache, Lookup};
use kloostlab::counting::{self, exceptional_count, exceptional_scale, variance_sum, MAX_MODULUS};
use kloostlab::kloosterman::{kloosterman_all, kloosterman_sum};
use kloostlab::modmath::{is_prime, primes_up_to};
use kloostlab::satotate::{
    self, average_bound, dispersion_bound, mu_st, qcount_bound, MAX_PAIR_PRODUCT,
};
use kloostlab::{
    AngleWindow, CountMode, KloostermanTable, Method, SampleSet, TableProvider, Window,
};

use crate::output::Report;
use crate::{CountsArgs, GlobalOpts, KloostermanCmd, MethodArg, ModeArg, SatotateCmd, WindowArgs};

pub const CACHE_ENV: &str = "KLOOSTLAB_CACHE";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(kloostlab::Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_numeric_integrity() => 3,
            CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl From<kloostlab::Error> for CliError {
    fn from(e: kloostlab::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub struct Context {
    cache_dir: Option<PathBuf>,
    mem_cap: u64,
}

impl Context {
    pub fn from_opts(opts: &GlobalOpts) -> Result<Self, CliError> {
        let cache_dir = opts.cache_dir.clone().or_else(|| {
            std::env::var_os(CACHE_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
        });
        Ok(Context {
            cache_dir,
            mem_cap: opts.mem_cap,
        })
    }

    fn tables(&self, method: Method) -> CliTables {
        CliTables {
            cache: self.cache_dir.as_ref().map(|d| AngleCache::new(d, method)),
            method,
        }
    }

    fn check_memory(&self, bytes: u128, what: &str) -> Result<(), CliError> {
        if bytes > self.mem_cap as u128 {
            return Err(usage(format!(
                "{what} needs {bytes} bytes, above --mem-cap {}",
                self.mem_cap
            )));
        }
        Ok(())
    }
}

/// Table source for the CLI: the on-disk cache when configured, with a
/// warning whenever a damaged file had to be rebuilt.
struct CliTables {
    cache: Option<AngleCache>,
    method: Method,
}

impl TableProvider for CliTables {
    fn table(&self, p: u64) -> kloostlab::Result<KloostermanTable> {
        match &self.cache {
            None => kloosterman_all(p, self.method),
            Some(cache) => {
                let (table, how) = cache.fetch(p)?;
                if let Lookup::Rebuilt(err) = how {
                    eprintln!(
                        "warning: rebuilt cached table {}: {err}",
                        cache.path_for(p).display()
                    );
                }
                Ok(table)
            }
        }
    }
}

fn method_of(arg: MethodArg) -> Method {
    match arg {
        MethodArg::Naive => Method::Naive,
        MethodArg::Convolution => Method::Convolution,
    }
}

fn mode_of(arg: ModeArg) -> CountMode {
    match arg {
        ModeArg::Inverse => CountMode::Inverse,
        ModeArg::Multiple => CountMode::Multiple,
        ModeArg::MultipleCoprime => CountMode::MultipleCoprime,
    }
}

/// Parses `1.25`, `pi`, `π`, `-pi/2`, `3pi/4`, `3*pi/4`, `pi/3`.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let bad = || usage(format!("cannot parse angle {text:?}"));
    let s = text.trim().replace('π', "pi").replace(' ', "");
    let Some(at) = s.find("pi") else {
        return s.parse::<f64>().map_err(|_| bad());
    };
    let coef = s[..at].trim_end_matches('*');
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = &s[at + 2..];
    let divisor = match rest {
        "" => 1.0,
        r if r.starts_with('/') => r[1..].parse::<f64>().map_err(|_| bad())?,
        _ => return Err(bad()),
    };
    if divisor == 0.0 {
        return Err(bad());
    }
    Ok(coef * PI / divisor)
}

fn angle_window(args: &WindowArgs) -> Result<AngleWindow, CliError> {
    let alpha = parse_angle(&args.alpha)?;
    let beta = parse_angle(&args.beta)?;
    Ok(AngleWindow::new(alpha, beta)?)
}

fn require_prime(p: u64) -> Result<(), CliError> {
    if !is_prime(p) {
        return Err(kloostlab::Error::NotPrime(p).into());
    }
    Ok(())
}

fn positive(name: &str, v: u64) -> Result<(), CliError> {
    if v == 0 {
        return Err(usage(format!("--{name} must be positive")));
    }
    Ok(())
}

pub fn counts(ctx: &Context, args: &CountsArgs) -> Result<Report, CliError> {
    if args.m < 2 {
        return Err(usage("--m must be at least 2"));
    }
    if args.m > MAX_MODULUS {
        return Err(usage(format!(
            "--m {} exceeds the cap {MAX_MODULUS}",
            args.m
        )));
    }
    positive("X", args.x)?;
    if args.y == 0 || args.y > args.m {
        return Err(usage(format!("--Y must lie in [1, m], got {}", args.y)));
    }
    if !(args.gamma > 0.0 && args.gamma < 1.0) {
        return Err(usage(format!(
            "--gamma must lie in (0, 1), got {}",
            args.gamma
        )));
    }
    ctx.check_memory(8 * args.m as u128, "residue histogram")?;

    let mode = mode_of(args.mode);
    let set = SampleSet::full(args.x)?;
    let window = Window::new(args.z, args.y, args.m)?;

    if args.per_a {
        let mut report = Report::new(
            "counts",
            &["a", "observed", "expected", "deviation", "squared"],
        );
        report = with_count_params(report, args, mode);
        for r in counting::deviation_reports(args.m, &set, &window, mode)? {
            report.push(vec![
                r.a.into(),
                r.observed.into(),
                r.expected.into(),
                r.deviation.into(),
                r.squared.into(),
            ]);
        }
        return Ok(report);
    }

    let variance = variance_sum(args.m, &set, &window, mode)?;
    let size = match mode {
        CountMode::Multiple => set.len(),
        _ => set.coprime_len(args.m),
    };
    let scale = set.len() as f64 * (args.x + args.y) as f64;
    let exceptional = match mode {
        CountMode::MultipleCoprime => None,
        _ => Some(exceptional_count(args.m, &set, &window, args.gamma, mode)?),
    };
    let mut report = Report::new(
        "counts",
        &[
            "m",
            "X",
            "Y",
            "Z",
            "mode",
            "sample_size",
            "variance_sum",
            "expected_scale",
            "ratio",
            "gamma",
            "exceptional_count",
            "exceptional_scale",
        ],
    );
    report = with_count_params(report, args, mode);
    report.push(vec![
        args.m.into(),
        args.x.into(),
        args.y.into(),
        args.z.into(),
        mode.name().into(),
        size.into(),
        variance.into(),
        scale.into(),
        (variance / scale).into(),
        args.gamma.into(),
        exceptional.into(),
        exceptional_scale(args.m, args.x, args.y, args.gamma).into(),
    ]);
    Ok(report)
}

fn with_count_params(report: Report, args: &CountsArgs, mode: CountMode) -> Report {
    report
        .param("m", args.m)
        .param("X", args.x)
        .param("Y", args.y)
        .param("Z", args.z)
        .param("mode", mode.name())
        .param("gamma", args.gamma)
}

pub fn kloosterman(ctx: &Context, cmd: &KloostermanCmd) -> Result<Report, CliError> {
    match *cmd {
        KloostermanCmd::Table { p, method } => {
            require_prime(p)?;
            let method = method_of(method);
            let table = ctx.tables(method).table(p)?;
            let scale = 2.0 * (p as f64).sqrt();
            let mut report = Report::new("kloosterman table", &["a", "K", "psi"])
                .param("p", p)
                .param("method", table.method().name());
            // K is re-derived from the angle so cached and fresh runs print identically
            for (i, &psi) in table.angles().iter().enumerate() {
                report.push(vec![
                    (i as u64 + 1).into(),
                    (scale * psi.cos()).into(),
                    psi.into(),
                ]);
            }
            Ok(report)
        }
        KloostermanCmd::Sum { p, r, s } => {
            let k = kloosterman_sum(r, s, p)?;
            let mut report = Report::new("kloosterman sum", &["p", "r", "s", "K"])
                .param("p", p)
                .param("r", r)
                .param("s", s);
            report.push(vec![p.into(), r.into(), s.into(), k.into()]);
            Ok(report)
        }
    }
}

fn with_window(report: Report, w: &AngleWindow) -> Report {
    report.param("alpha", w.alpha()).param("beta", w.beta())
}

pub fn satotate(ctx: &Context, cmd: &SatotateCmd) -> Result<Report, CliError> {
    match cmd {
        SatotateCmd::Mu { window } => {
            let w = angle_window(window)?;
            let mut report = with_window(Report::new("satotate mu", &["alpha", "beta", "mu"]), &w);
            report.push(vec![w.alpha().into(), w.beta().into(), mu_st(&w).into()]);
            Ok(report)
        }
        SatotateCmd::Discrepancy { p, method } => {
            require_prime(*p)?;
            let table = ctx.tables(method_of(*method)).table(*p)?;
            let d = satotate::discrepancy(&table);
            let scale = (*p as f64).powf(-0.25);
            let mut report = Report::new(
                "satotate discrepancy",
                &["p", "discrepancy", "scale", "ratio"],
            )
            .param("p", *p)
            .param("method", table.method().name());
            report.push(vec![
                (*p).into(),
                d.into(),
                scale.into(),
                (d / scale).into(),
            ]);
            Ok(report)
        }
        SatotateCmd::Qcount { p, r, s, window } => {
            require_prime(*p)?;
            positive("R", *r)?;
            positive("S", *s)?;
            let w = angle_window(window)?;
            let table = ctx.tables(Method::Convolution).table(*p)?;
            let q = satotate::q_count(&table, *r, *s, &w);
            let expected = 4.0 * mu_st(&w) * (*r as f64) * (*s as f64);
            let deviation = q as f64 - expected;
            let bound = qcount_bound(*p, *r, *s);
            let report = Report::new(
                "satotate qcount",
                &[
                    "p",
                    "R",
                    "S",
                    "q_count",
                    "expected",
                    "deviation",
                    "bound",
                    "ratio",
                ],
            )
            .param("p", *p)
            .param("R", *r)
            .param("S", *s);
            let mut report = with_window(report, &w);
            report.push(vec![
                (*p).into(),
                (*r).into(),
                (*s).into(),
                q.into(),
                expected.into(),
                deviation.into(),
                bound.into(),
                (deviation.abs() / bound).into(),
            ]);
            Ok(report)
        }
        SatotateCmd::Average { r, s, t, window } => {
            positive("R", *r)?;
            positive("S", *s)?;
            positive("T", *t)?;
            let w = angle_window(window)?;
            let tables = ctx.tables(Method::Convolution);
            let pi = satotate::pi_average(*r, *s, *t, &w, &tables)?;
            let pi_t = primes_up_to(*t).count();
            let predicted = mu_st(&w) * pi_t as f64;
            let deviation = pi - predicted;
            let bound = average_bound(*r, *s, *t);
            let report = Report::new(
                "satotate average",
                &[
                    "R",
                    "S",
                    "T",
                    "pi_T",
                    "Pi",
                    "mu_pi_T",
                    "deviation",
                    "bound",
                    "ratio",
                ],
            )
            .param("R", *r)
            .param("S", *s)
            .param("T", *t);
            let mut report = with_window(report, &w);
            report.push(vec![
                (*r).into(),
                (*s).into(),
                (*t).into(),
                pi_t.into(),
                pi.into(),
                predicted.into(),
                deviation.into(),
                bound.into(),
                (deviation.abs() / bound).into(),
            ]);
            Ok(report)
        }
        SatotateCmd::Dispersion { r, s, t, window } => {
            positive("R", *r)?;
            positive("S", *s)?;
            positive("T", *t)?;
            let pairs = *r as u128 * *s as u128;
            if pairs > MAX_PAIR_PRODUCT as u128 {
                return Err(usage(format!(
                    "R*S = {pairs} exceeds the cap {MAX_PAIR_PRODUCT}"
                )));
            }
            ctx.check_memory(16 * pairs, "per-pair counters")?;
            let w = angle_window(window)?;
            let tables = ctx.tables(Method::Convolution);
            let delta = satotate::delta_dispersion(*r, *s, *t, &w, &tables)?;
            let pi_t = primes_up_to(*t).count();
            let bound = dispersion_bound(*r, *s, *t);
            let report = Report::new(
                "satotate dispersion",
                &["R", "S", "T", "pi_T", "Delta", "bound", "ratio"],
            )
            .param("R", *r)
            .param("S", *s)
            .param("T", *t);
            let mut report = with_window(report, &w);
            report.push(vec![
                (*r).into(),
                (*s).into(),
                (*t).into(),
                pi_t.into(),
                delta.into(),
                bound.into(),
                (delta / bound).into(),
            ]);
            Ok(report)
        }
    }
}
