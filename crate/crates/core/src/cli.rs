//! Command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | internal failure or replay mismatch |
//! | 2 | usage error: bad flag, unparsable polynomial, non-prime `p`, box or level out of range |
//! | 3 | hypothesis violated (reducible or degree <= 1 modulo `p`) |
//! | 4 | degenerate reduction (`f mod p` is constant) |
//! | 5 | box too large (`T < 2 max(X, Y)`) |
//! | 6 | malformed input file or I/O failure |
//! | 7 | empty sweep plan |
//! | 8 | extension field too large |

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::is_prime;
use crate::counting::{
    count_level_points, count_visible_direct, count_visible_mobius, expected_visible, CountBox,
    LevelCurveSpec, Strategy,
};
use crate::error::Error;
use crate::experiments::{
    corollary1_profile_grid, integer_zero_set, run_sweep_series, theorem1_sweep_with_workers,
    theorem2_sweep_with_workers, DiscrepancyRecord, SweepPoint, DEFAULT_DELTAS,
};
use crate::ffpoly::{bad_level_values, is_absolutely_irreducible, IntBivariatePoly};
use crate::report::{
    read_csv, BadLevelRecord, CountRecord, CsvContents, IrreducibilityRecord, VisibleRecord,
};

#[derive(Debug, Parser)]
#[command(
    name = "visipts",
    version,
    about = "Visible points on level curves modulo a prime"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Count points of f(x, y) = a (mod p) in the box.
    Count {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Count visible points by the direct and the Möbius paths.
    Visible {
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Irreducibility of f over F_p and over its algebraic closure.
    Irred {
        #[command(flatten)]
        poly: PolyPrime,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Levels a for which f - a is not absolutely irreducible mod p.
    Badset {
        #[command(flatten)]
        poly: PolyPrime,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Integer zeros of f in the box.
    Zeros {
        #[arg(short = 'f', allow_hyphen_values = true)]
        poly: String,
        #[arg(short = 'X')]
        x: f64,
        #[arg(short = 'Y')]
        y: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Discrepancy summed over all levels a at a fixed prime.
    #[command(name = "exp-a")]
    ExpA {
        #[command(flatten)]
        poly: PolyPrime,
        #[arg(short = 'X')]
        x: f64,
        #[arg(short = 'Y')]
        y: f64,
        /// Thresholds for the fraction-within profile (table output).
        #[arg(long, value_delimiter = ',')]
        delta: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Discrepancy summed over primes in [T/2, T] at level 0.
    #[command(name = "exp-p")]
    ExpP {
        #[arg(short = 'f', allow_hyphen_values = true)]
        poly: String,
        #[arg(short = 'T')]
        t: f64,
        #[arg(short = 'X')]
        x: f64,
        #[arg(short = 'Y')]
        y: f64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Series of sweeps over a list of primes or of T values, or replay of a CSV.
    Sweep {
        #[arg(
            short = 'f',
            allow_hyphen_values = true,
            required_unless_present = "from_csv"
        )]
        poly: Option<String>,
        /// Level-average sweep at each prime; X and Y default to p.
        #[arg(long, value_delimiter = ',', value_parser = parse_prime, conflicts_with = "from_csv")]
        primes: Vec<u64>,
        /// Prime-average sweep at each T; X and Y default to T/2.
        #[arg(long = "t-values", value_delimiter = ',', conflicts_with = "from_csv")]
        t_values: Vec<f64>,
        #[arg(short = 'X', conflicts_with = "from_csv")]
        x: Option<f64>,
        #[arg(short = 'Y', conflicts_with = "from_csv")]
        y: Option<f64>,
        /// Read records from a CSV written by this tool and emit them again.
        #[arg(long = "from-csv")]
        from_csv: Option<PathBuf>,
        /// With --from-csv, recompute every record and fail on any difference.
        #[arg(long, requires = "from_csv")]
        recompute: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
struct PolyPrime {
    #[arg(short = 'f', allow_hyphen_values = true)]
    poly: String,
    #[arg(short = 'p', value_parser = parse_prime)]
    p: u64,
}

#[derive(Debug, Args)]
struct LevelArgs {
    #[command(flatten)]
    poly: PolyPrime,
    #[arg(short = 'a')]
    a: u64,
    #[arg(short = 'X')]
    x: f64,
    #[arg(short = 'Y')]
    y: f64,
}

#[derive(Debug, Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Grid,
    Rows,
    Auto,
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let n: u64 = s
        .trim()
        .parse()
        .map_err(|_| format!("{s} is not an integer"))?;
    if is_prime(n) {
        Ok(n)
    } else {
        Err(format!("{n} is not prime"))
    }
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub workers: usize,
}

#[derive(Debug, Clone)]
pub enum Command {
    Count {
        f: IntBivariatePoly,
        p: u64,
        a: u64,
        bx: CountBox,
        strategy: Strategy,
    },
    Visible {
        f: IntBivariatePoly,
        p: u64,
        a: u64,
        bx: CountBox,
    },
    Irred {
        f: IntBivariatePoly,
        p: u64,
    },
    Badset {
        f: IntBivariatePoly,
        p: u64,
    },
    Zeros {
        f: IntBivariatePoly,
        bx: CountBox,
    },
    ExpA {
        f: IntBivariatePoly,
        p: u64,
        bx: CountBox,
        deltas: Vec<f64>,
    },
    ExpP {
        f: IntBivariatePoly,
        t: f64,
        bx: CountBox,
    },
    Sweep {
        f: IntBivariatePoly,
        plan: Vec<SweepPoint>,
    },
    Replay {
        path: PathBuf,
        recompute: bool,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// `--help` or `--version`; the text goes to stdout with exit 0.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
            CliError::Lib(e) => match e {
                Error::InvalidArgument(_)
                | Error::NotPrime(_)
                | Error::Parse { .. }
                | Error::InvalidBox { .. }
                | Error::ConstantPolynomial
                | Error::IdenticallyZero => 2,
                Error::HypothesisViolated(_) => 3,
                Error::DegenerateReduction { .. } => 4,
                Error::BoxTooLarge { .. } => 5,
                Error::Format(_) => 6,
                Error::EmptyPlan => 7,
                Error::FieldTooLarge { .. } => 8,
            },
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_poly(s: &str) -> Result<IntBivariatePoly, CliError> {
    s.parse()
        .map_err(|e: Error| usage(format!("-f {s:?}: {e}")))
}

fn prime_box(x: f64, y: f64, p: u64) -> Result<CountBox, CliError> {
    CountBox::for_prime(x, y, p).map_err(|e| usage(format!("-X/-Y: {e}")))
}

fn check_workers(w: usize) -> Result<usize, CliError> {
    if w == 0 {
        Err(usage("--workers must be at least 1"))
    } else {
        Ok(w)
    }
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    })?;
    let mut workers = 1;
    let (command, out) = match cli.command {
        Cmd::Count {
            level,
            strategy,
            out,
        } => {
            let (f, p, a, bx) = level_config(level)?;
            let strategy = match strategy {
                StrategyArg::Grid => Strategy::GridSweep,
                StrategyArg::Rows => Strategy::RowRoots,
                StrategyArg::Auto => Strategy::Auto,
            };
            (
                Command::Count {
                    f,
                    p,
                    a,
                    bx,
                    strategy,
                },
                out,
            )
        }
        Cmd::Visible { level, out } => {
            let (f, p, a, bx) = level_config(level)?;
            (Command::Visible { f, p, a, bx }, out)
        }
        Cmd::Irred { poly, out } => (
            Command::Irred {
                f: parse_poly(&poly.poly)?,
                p: poly.p,
            },
            out,
        ),
        Cmd::Badset { poly, out } => (
            Command::Badset {
                f: parse_poly(&poly.poly)?,
                p: poly.p,
            },
            out,
        ),
        Cmd::Zeros { poly, x, y, out } => {
            let bx = CountBox::new(x, y).map_err(|e| usage(format!("-X/-Y: {e}")))?;
            (
                Command::Zeros {
                    f: parse_poly(&poly)?,
                    bx,
                },
                out,
            )
        }
        Cmd::ExpA {
            poly,
            x,
            y,
            delta,
            workers: w,
            out,
        } => {
            workers = check_workers(w)?;
            let bx = prime_box(x, y, poly.p)?;
            let deltas = if delta.is_empty() {
                DEFAULT_DELTAS.to_vec()
            } else {
                delta
            };
            if let Some(d) = deltas.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
                return Err(usage(format!("--delta {d}: must lie in (0, 1)")));
            }
            (
                Command::ExpA {
                    f: parse_poly(&poly.poly)?,
                    p: poly.p,
                    bx,
                    deltas,
                },
                out,
            )
        }
        Cmd::ExpP {
            poly,
            t,
            x,
            y,
            workers: w,
            out,
        } => {
            workers = check_workers(w)?;
            if !t.is_finite() || t < 4.0 {
                return Err(usage(format!("-T {t}: must be finite and >= 4")));
            }
            let bx = CountBox::new(x, y).map_err(|e| usage(format!("-X/-Y: {e}")))?;
            (
                Command::ExpP {
                    f: parse_poly(&poly)?,
                    t,
                    bx,
                },
                out,
            )
        }
        Cmd::Sweep {
            poly,
            primes,
            t_values,
            x,
            y,
            from_csv,
            recompute,
            workers: w,
            out,
        } => {
            workers = check_workers(w)?;
            if let Some(path) = from_csv {
                (Command::Replay { path, recompute }, out)
            } else {
                let f = parse_poly(poly.as_deref().unwrap_or_default())?;
                let mut plan = Vec::new();
                for &p in &primes {
                    let side = p as f64;
                    plan.push(SweepPoint::LevelAverage {
                        p,
                        x: x.unwrap_or(side),
                        y: y.unwrap_or(side),
                    });
                }
                for &t in &t_values {
                    if !t.is_finite() || t < 4.0 {
                        return Err(usage(format!("--t-values {t}: must be finite and >= 4")));
                    }
                    let side = (t / 2.0).floor();
                    plan.push(SweepPoint::PrimeAverage {
                        t,
                        x: x.unwrap_or(side),
                        y: y.unwrap_or(side),
                    });
                }
                if plan.is_empty() {
                    return Err(CliError::Lib(Error::EmptyPlan));
                }
                (Command::Sweep { f, plan }, out)
            }
        }
    };
    Ok(RunConfig {
        command,
        format: out.format,
        out: out.out,
        workers,
    })
}

fn level_config(level: LevelArgs) -> Result<(IntBivariatePoly, u64, u64, CountBox), CliError> {
    let p = level.poly.p;
    if level.a >= p {
        return Err(usage(format!(
            "-a {}: level must satisfy 0 <= a < p = {p}",
            level.a
        )));
    }
    let bx = prime_box(level.x, level.y, p)?;
    Ok((parse_poly(&level.poly.poly)?, p, level.a, bx))
}

/// Result of a successful run: the rendered artifact and any per-item
/// diagnostics for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: String,
    pub diagnostics: Vec<String>,
}

fn render(contents: &CsvContents, format: Format, extra_table: &str) -> Result<String, CliError> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            contents.write_csv(&mut buf)?;
            String::from_utf8(buf).map_err(|e| CliError::Internal(e.to_string()))
        }
        Format::Json => Ok(contents.to_json()? + "\n"),
        Format::Table => Ok(table(contents) + extra_table),
    }
}

fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn table(contents: &CsvContents) -> String {
    let mut s = String::new();
    match contents {
        CsvContents::Counts(rs) => {
            for r in rs {
                let _ = writeln!(
                    s,
                    "f = {}, p = {}, a = {}, X = {}, Y = {}",
                    r.poly, r.p, r.a, r.x, r.y
                );
                let _ = writeln!(s, "count={}", r.count);
            }
        }
        CsvContents::Visible(rs) => {
            for r in rs {
                let _ = writeln!(
                    s,
                    "f = {}, p = {}, a = {}, X = {}, Y = {}",
                    r.poly, r.p, r.a, r.x, r.y
                );
                let _ = writeln!(s, "direct={}", r.direct);
                let _ = writeln!(s, "mobius={}", r.mobius);
                let _ = writeln!(s, "expected={:.4}", r.expected);
            }
        }
        CsvContents::Irreducibility(rs) => {
            for r in rs {
                let _ = writeln!(s, "f = {}, p = {}", r.poly, r.p);
                let _ = writeln!(s, "irreducible_over_base={}", r.irreducible_over_base);
                let _ = writeln!(s, "absolutely_irreducible={}", r.absolutely_irreducible);
                match r.witness_extension_degree {
                    Some(e) => {
                        let _ = writeln!(
                            s,
                            "witness e={e} factor_degree={}",
                            fmt_opt(r.witness_factor_degree)
                        );
                    }
                    None => {
                        let _ = writeln!(s, "witness none");
                    }
                }
            }
        }
        CsvContents::BadLevels(rs) => {
            for r in rs {
                let _ = writeln!(s, "f = {}, p = {}", r.poly, r.p);
                let vals: Vec<String> = r.values.iter().map(u64::to_string).collect();
                let _ = writeln!(s, "bad_levels={{{}}}", vals.join(", "));
                let _ = writeln!(s, "count={}", r.values.len());
            }
        }
        CsvContents::ZeroSets(rs) => {
            for r in rs {
                let _ = writeln!(s, "f = {}, X = {}, Y = {}", r.poly, r.x, r.y);
                let _ = writeln!(s, "count={}", r.points.len());
                for (u, v) in &r.points {
                    let _ = writeln!(s, "{u} {v}");
                }
            }
        }
        CsvContents::Discrepancy(rs) => {
            let _ = writeln!(
                s,
                "{:<14} {:>8} {:>8} {:>10} {:>10} {:>6} {:>16} {:>16} {:>12} {:>10}",
                "kind", "p", "T", "X", "Y", "terms", "sum_abs_dev", "bound", "ratio", "nontrivial"
            );
            for r in rs {
                let _ = writeln!(
                    s,
                    "{:<14} {:>8} {:>8} {:>10} {:>10} {:>6} {:>16.6} {:>16.6} {:>12.6} {:>10}",
                    r.kind.as_str(),
                    fmt_opt(r.p),
                    fmt_opt(r.t),
                    r.x,
                    r.y,
                    r.terms,
                    r.sum_abs_dev,
                    r.bound_value,
                    r.ratio,
                    r.nontrivial
                );
                if !r.skipped_primes.is_empty() {
                    let skipped: Vec<String> =
                        r.skipped_primes.iter().map(u64::to_string).collect();
                    let _ = writeln!(s, "  skipped primes: {}", skipped.join(", "));
                }
            }
        }
    }
    s
}

fn count_record(
    f: &IntBivariatePoly,
    p: u64,
    a: u64,
    bx: &CountBox,
    strategy: Strategy,
) -> crate::Result<CountRecord> {
    let spec = LevelCurveSpec::new(f.clone(), p, a)?;
    Ok(CountRecord {
        poly: f.to_string(),
        p,
        a,
        x: bx.x,
        y: bx.y,
        x_floor: bx.x_floor(),
        y_floor: bx.y_floor(),
        count: count_level_points(&spec, bx, strategy)?,
    })
}

fn visible_record(
    f: &IntBivariatePoly,
    p: u64,
    a: u64,
    bx: &CountBox,
) -> Result<VisibleRecord, CliError> {
    let spec = LevelCurveSpec::new(f.clone(), p, a)?;
    let direct = count_visible_direct(&spec, bx)?;
    let mobius = count_visible_mobius(&spec, bx)?;
    if direct != mobius {
        return Err(CliError::Internal(format!(
            "counting paths disagree: direct={direct}, mobius={mobius}"
        )));
    }
    Ok(VisibleRecord {
        poly: f.to_string(),
        p,
        a,
        x: bx.x,
        y: bx.y,
        x_floor: bx.x_floor(),
        y_floor: bx.y_floor(),
        direct,
        mobius,
        expected: expected_visible(bx, p),
    })
}

fn irred_record(f: &IntBivariatePoly, p: u64) -> crate::Result<IrreducibilityRecord> {
    let v = is_absolutely_irreducible(&f.reduce_mod(p)?)?;
    Ok(IrreducibilityRecord {
        poly: f.to_string(),
        p,
        irreducible_over_base: v.irreducible_over_base,
        absolutely_irreducible: v.absolutely_irreducible,
        witness_extension_degree: v.witness.map(|w| w.extension_degree),
        witness_factor_degree: v.witness.and_then(|w| w.factor_degree),
    })
}

fn badset_record(f: &IntBivariatePoly, p: u64) -> crate::Result<BadLevelRecord> {
    Ok(BadLevelRecord {
        poly: f.to_string(),
        p,
        values: bad_level_values(f, p)?.into_iter().collect(),
    })
}

fn poly_from_record(s: &str) -> crate::Result<IntBivariatePoly> {
    s.parse()
}

fn recompute_discrepancy(
    r: &DiscrepancyRecord,
    workers: usize,
) -> crate::Result<DiscrepancyRecord> {
    let f = poly_from_record(&r.poly)?;
    match (r.p, r.t) {
        (Some(p), None) => {
            theorem1_sweep_with_workers(&f, p, &CountBox::for_prime(r.x, r.y, p)?, workers)
        }
        (None, Some(t)) => theorem2_sweep_with_workers(&f, t, &CountBox::new(r.x, r.y)?, workers),
        _ => Err(Error::Format(
            "record must carry exactly one of p and t".into(),
        )),
    }
}

fn recompute(contents: &CsvContents, workers: usize) -> Result<CsvContents, CliError> {
    Ok(match contents {
        CsvContents::Discrepancy(rs) => CsvContents::Discrepancy(
            rs.iter()
                .map(|r| recompute_discrepancy(r, workers))
                .collect::<crate::Result<_>>()?,
        ),
        CsvContents::ZeroSets(rs) => CsvContents::ZeroSets(
            rs.iter()
                .map(|r| integer_zero_set(&poly_from_record(&r.poly)?, &CountBox::new(r.x, r.y)?))
                .collect::<crate::Result<_>>()?,
        ),
        CsvContents::Counts(rs) => CsvContents::Counts(
            rs.iter()
                .map(|r| {
                    let bx = CountBox::for_prime(r.x, r.y, r.p)?;
                    count_record(&poly_from_record(&r.poly)?, r.p, r.a, &bx, Strategy::Auto)
                })
                .collect::<crate::Result<_>>()?,
        ),
        CsvContents::Visible(rs) => CsvContents::Visible(
            rs.iter()
                .map(|r| {
                    let bx = CountBox::for_prime(r.x, r.y, r.p)?;
                    visible_record(&poly_from_record(&r.poly)?, r.p, r.a, &bx)
                })
                .collect::<Result<_, CliError>>()?,
        ),
        CsvContents::Irreducibility(rs) => CsvContents::Irreducibility(
            rs.iter()
                .map(|r| irred_record(&poly_from_record(&r.poly)?, r.p))
                .collect::<crate::Result<_>>()?,
        ),
        CsvContents::BadLevels(rs) => CsvContents::BadLevels(
            rs.iter()
                .map(|r| badset_record(&poly_from_record(&r.poly)?, r.p))
                .collect::<crate::Result<_>>()?,
        ),
    })
}

/// Runs a validated configuration and renders its artifact.
pub fn execute(config: &RunConfig) -> Result<Output, CliError> {
    let workers = config.workers;
    let mut diagnostics = Vec::new();
    let mut extra = String::new();
    let contents = match &config.command {
        Command::Count {
            f,
            p,
            a,
            bx,
            strategy,
        } => CsvContents::Counts(vec![count_record(f, *p, *a, bx, *strategy)?]),
        Command::Visible { f, p, a, bx } => {
            CsvContents::Visible(vec![visible_record(f, *p, *a, bx)?])
        }
        Command::Irred { f, p } => CsvContents::Irreducibility(vec![irred_record(f, *p)?]),
        Command::Badset { f, p } => CsvContents::BadLevels(vec![badset_record(f, *p)?]),
        Command::Zeros { f, bx } => CsvContents::ZeroSets(vec![integer_zero_set(f, bx)?]),
        Command::ExpA { f, p, bx, deltas } => {
            let rec = theorem1_sweep_with_workers(f, *p, bx, workers)?;
            if config.format == Format::Table {
                for (d, frac) in corollary1_profile_grid(f, *p, bx, deltas, workers)? {
                    let _ = writeln!(extra, "fraction_within delta={d}: {frac}");
                }
            }
            CsvContents::Discrepancy(vec![rec])
        }
        Command::ExpP { f, t, bx } => {
            CsvContents::Discrepancy(vec![theorem2_sweep_with_workers(f, *t, bx, workers)?])
        }
        Command::Sweep { f, plan } => {
            let mut recs = Vec::new();
            for (pt, r) in plan.iter().zip(run_sweep_series(f, plan, workers)?) {
                match r {
                    Ok(rec) => recs.push(rec),
                    Err(e) => diagnostics.push(format!("skipped {pt:?}: {e}")),
                }
            }
            CsvContents::Discrepancy(recs)
        }
        Command::Replay {
            path,
            recompute: check,
        } => {
            let file = std::fs::File::open(path)
                .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
            let contents = read_csv(file)?;
            if *check {
                let fresh = recompute(&contents, workers)?;
                if fresh != contents {
                    return Err(CliError::Internal(format!(
                        "{}: recomputed records differ",
                        path.display()
                    )));
                }
            }
            contents
        }
    };
    Ok(Output {
        body: render(&contents, config.format, &extra)?,
        diagnostics,
    })
}

/// Full invocation: parse, execute, write output. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let result = parse_args(argv).and_then(|config| {
        let out = execute(&config)?;
        match &config.out {
            Some(path) => std::fs::write(path, &out.body)
                .map_err(|e| CliError::Lib(Error::Format(format!("{}: {e}", path.display()))))?,
            None => print!("{}", out.body),
        }
        for d in &out.diagnostics {
            eprintln!("warning: {d}");
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(CliError::Info(text)) => {
            print!("{text}");
            0
        }
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprint!(
                    "{}",
                    if msg.ends_with('\n') {
                        msg.clone()
                    } else {
                        format!("error: {msg}\n")
                    }
                ),
                other => eprintln!("error: {other}"),
            }
            e.exit_code()
        }
    }
}
