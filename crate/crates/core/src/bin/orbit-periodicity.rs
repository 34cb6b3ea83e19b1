use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;

use orbit_periodicity::bounds::{self, PrimePair};
use orbit_periodicity::configaut;
use orbit_periodicity::orbits;
use orbit_periodicity::report::{
    self, AutReport, BoundReport, ErrorReport, InputError, InterpolateReport, JetsReport,
    OrbitReport, SelftestReport, SystemFile, Timing, VerdictReport,
};
use orbit_periodicity::selftest::{self, SelftestConfig};

/// Periodic points of polynomial maps on affine space over Z[1/N].
#[derive(Parser)]
#[command(name = "orbit-periodicity", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a point is periodic under a system of maps.
    Decide {
        #[arg(long)]
        system: PathBuf,
        /// The point as a JSON array, e.g. '[0]' or '["1/2", 3]'.
        #[arg(long)]
        point: String,
        /// Maximum number of orbit points to store.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Use this orbit-size bound instead of the proven one.
        #[arg(long)]
        bound_override: Option<String>,
    },
    /// Enumerate the orbit of a point, up to a size limit.
    Orbit {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 10_000)]
        max_points: usize,
    },
    /// Evaluate the uniform bound on periodic orbit sizes.
    Bound {
        #[arg(long)]
        n: usize,
        /// Two primes, e.g. '2,3' (default: the two smallest primes not dividing N).
        #[arg(long)]
        primes: Option<String>,
        /// Inverted denominator N.
        #[arg(long = "base", default_value_t = 1)]
        base: u64,
        /// Also compute the exact integer when feasible.
        #[arg(long)]
        exact: bool,
    },
    /// Automorphisms of a finite configuration and their level-2 kernels.
    Aut {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value = "2,3")]
        prime_pair: String,
    },
    /// Values mod p^2 and Jacobians mod p of every generator at a point.
    Jets {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long)]
        prime: u64,
    },
    /// Interpolate a cycle a_0 -> a_1 -> ... -> a_0 by a polynomial.
    Interpolate {
        /// Comma-separated distinct integers.
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
    },
    /// Run the randomized consistency suites.
    Selftest {
        #[arg(long, default_value_t = SelftestConfig::default().seed)]
        seed: u64,
        /// Multiplier on the default number of cases.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Decide { .. } => "decide",
            Command::Orbit { .. } => "orbit",
            Command::Bound { .. } => "bound",
            Command::Aut { .. } => "aut",
            Command::Jets { .. } => "jets",
            Command::Interpolate { .. } => "interpolate",
            Command::Selftest { .. } => "selftest",
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<orbits::AffineSystem, InputError> {
    SystemFile::from_json(&read(path)?)?.to_system()
}

fn parse_pair(s: &str) -> Result<(u64, u64), InputError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let p = a.parse().map_err(|_| InputError::Number(a.to_string()))?;
            let q = b.parse().map_err(|_| InputError::Number(b.to_string()))?;
            Ok((p, q))
        }
        _ => Err(InputError::Invalid(format!(
            "expected two comma-separated primes, got {s:?}"
        ))),
    }
}

fn emit<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    // A closed pipe on the reader's side is not an error worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run(cmd: Command) -> Result<ExitCode, InputError> {
    let start = Instant::now();
    let timing = || Timing::from_duration(start.elapsed());
    match cmd {
        Command::Decide {
            system,
            point,
            budget,
            bound_override,
        } => {
            let sys = load_system(&system)?;
            let x = report::parse_point(&point)?;
            let bound = bound_override
                .map(|b| {
                    b.trim()
                        .parse::<BigUint>()
                        .map_err(|_| InputError::Number(b))
                })
                .transpose()?;
            let d = orbits::decide_periodic(&sys, &x, budget, bound.as_ref())?;
            emit(&VerdictReport::new(&sys, &x, &d, timing()));
        }
        Command::Orbit {
            system,
            point,
            max_points,
        } => {
            let sys = load_system(&system)?;
            let x = report::parse_point(&point)?;
            let st = orbits::orbit_closure(&sys, &x, max_points)?;
            emit(&OrbitReport::new(&sys, &x, &st, max_points, timing()));
        }
        Command::Bound {
            n,
            primes,
            base,
            exact,
        } => {
            if base == 0 {
                return Err(InputError::Invalid(
                    "inverted denominator must be at least 1".into(),
                ));
            }
            let pair = match primes {
                Some(s) => {
                    let (p, q) = parse_pair(&s)?;
                    PrimePair::new(p, q, base)?
                }
                None => bounds::choose_primes(base),
            };
            let b = bounds::bound_c(n, pair, exact)?;
            emit(&BoundReport::new(&b, timing())?);
        }
        Command::Aut { points, prime_pair } => {
            let z = report::PointSetFile::from_json(&read(&points)?)?.to_config()?;
            let (p, q) = parse_pair(&prime_pair)?;
            PrimePair::new(p, q, z.base())?;
            emit(&AutReport::new(&z, p, q, timing())?);
        }
        Command::Jets {
            system,
            point,
            prime,
        } => {
            let sys = load_system(&system)?;
            let y = report::parse_point(&point)?;
            emit(&JetsReport::new(&sys, &y, prime, timing())?);
        }
        Command::Interpolate { cycle } => {
            let entries = cycle
                .split(',')
                .map(report::parse_integer)
                .collect::<Result<Vec<_>, _>>()?;
            let f = configaut::lagrange_cycle(&entries)?;
            emit(&InterpolateReport::new(&f, timing()));
        }
        Command::Selftest { seed, scale } => {
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(InputError::Invalid("scale must be positive".into()));
            }
            let suites = selftest::run(SelftestConfig { seed, scale });
            let passed = suites.iter().all(|s| s.passed);
            emit(&SelftestReport {
                command: "selftest".into(),
                version: report::REPORT_VERSION,
                seed,
                passed,
                suites,
                timing: timing(),
            });
            if !passed {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            emit(&ErrorReport::new(name, &e));
            ExitCode::from(2)
        }
    }
}
