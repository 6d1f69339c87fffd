//! `hurwitz`: exact Hurwitz numbers, Hodge-integral tables and verification
//! suites from the command line.
//!
//! Exit codes: 0 success, 1 bad arguments or unreadable cache, 2 a work bound
//! would be exceeded, 3 an internal consistency check failed.

mod cache;
mod verify;

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hurwitz_core::elsv::{extract_hodge_integrals, extract_hodge_integrals_auto, HodgeTable};
use hurwitz_core::engines::{Bounds, Engine, HurwitzEngines};
use hurwitz_core::report::Report;
use hurwitz_core::{rational, Error, PoleProfile};
use serde::Serialize;

use cache::{Cache, CacheRecord};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Cache(String),
    Io(io::Error),
    ChecksFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Infeasible { .. } | Error::GridTooSmall { .. }) => 2,
            CliError::Core(Error::Consistency(_)) | CliError::ChecksFailed(_) => 3,
            CliError::Core(_) | CliError::Cache(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Cache(msg) => write!(f, "cache: {msg}"),
            CliError::Io(e) => write!(f, "io: {e}"),
            CliError::ChecksFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "hurwitz", version, about = "Exact Hurwitz numbers and Hodge integrals")]
struct Cli {
    /// Append-only cache of computed values (line-delimited JSON).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(flatten)]
    bounds: BoundArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct BoundArgs {
    /// Largest sheet count for brute-force enumeration.
    #[arg(long, global = true, default_value_t = 5)]
    brute_max_sheets: usize,
    /// Largest brute-force work estimate (steps x transpositions x states).
    #[arg(long, global = true, default_value_t = 100_000_000)]
    brute_max_work: u128,
    /// Largest sheet count for the character-theoretic engine.
    #[arg(long, global = true, default_value_t = 10)]
    max_sheets: usize,
    /// Largest number of simple branch points.
    #[arg(long, global = true, default_value_t = 40)]
    max_transpositions: usize,
    /// Weight truncation for the cut-and-join series.
    #[arg(long, global = true, default_value_t = 10)]
    cut_join_max_weight: usize,
    /// Largest power-series order for the one-point identity.
    #[arg(long, global = true, default_value_t = 10)]
    max_series_order: usize,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        Bounds {
            brute_max_sheets: self.brute_max_sheets,
            brute_max_work: self.brute_max_work,
            frobenius_max_sheets: self.max_sheets,
            max_transpositions: self.max_transpositions,
            cut_join_max_weight: self.cut_join_max_weight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Auto,
    Brute,
    Frobenius,
    Cutjoin,
}

impl EngineArg {
    fn tag(self) -> &'static str {
        match self {
            EngineArg::Auto => "auto",
            EngineArg::Brute => Engine::Brute.as_str(),
            EngineArg::Frobenius => Engine::Frobenius.as_str(),
            EngineArg::Cutjoin => Engine::CutJoin.as_str(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Bare values, or tab-separated columns for tables and reports.
    Text,
    /// One JSON record per line.
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    ElsvRoundtrip,
    FpIdentity,
    Degll,
    Genus0,
    Engines,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Connected Hurwitz number h_{g;k_1..k_n}.
    Hurwitz {
        /// Genus of the covering curve.
        #[arg(long, short)]
        genus: usize,
        /// Pole orders, comma separated, e.g. 2,1,1.
        #[arg(long, short, value_parser = parse_profile)]
        profile: PoleProfile,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hodge integrals <psi^b lambda_j> for one (genus, points) pair.
    Hodge {
        #[arg(long, short)]
        genus: usize,
        /// Number of marked points.
        #[arg(long, short = 'n')]
        points: usize,
        /// Grid bound B; defaults to the smallest grid giving full rank.
        #[arg(long)]
        grid_bound: Option<usize>,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
    },
    /// Run a verification suite; exits 3 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest genus checked.
        #[arg(long)]
        g_max: Option<usize>,
        /// Largest degree (or largest single pole order for elsv-roundtrip).
        #[arg(long)]
        k_max: Option<usize>,
        /// Largest number of poles for elsv-roundtrip.
        #[arg(long)]
        n_max: Option<usize>,
        /// Transposition limit for the engines suite.
        #[arg(long)]
        r_max: Option<usize>,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
    },
}

fn parse_profile(text: &str) -> Result<PoleProfile, String> {
    let orders = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| format!("bad pole order {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    PoleProfile::new(orders).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct HurwitzLine<'a> {
    kind: &'static str,
    g: usize,
    profile: &'a [usize],
    value: String,
    engine: &'static str,
}

fn cmd_hurwitz(
    engines: &HurwitzEngines,
    cache: Option<&mut Cache>,
    genus: usize,
    profile: &PoleProfile,
    engine: EngineArg,
    format: Format,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let key: Vec<usize> = profile.to_partition().parts().to_vec();
    let cached = cache
        .as_deref()
        .and_then(|c| c.hurwitz(genus, &key, engine.tag()))
        .map(str::to_string);
    let value = match cached {
        Some(text) => rational::parse(&text)?,
        None => {
            let value = match engine {
                EngineArg::Auto => engines.compute_auto(genus, profile)?,
                EngineArg::Brute => engines.compute(Engine::Brute, genus, profile)?,
                EngineArg::Frobenius => engines.compute(Engine::Frobenius, genus, profile)?,
                EngineArg::Cutjoin => engines.compute(Engine::CutJoin, genus, profile)?,
            };
            if let Some(cache) = cache {
                cache.append([CacheRecord::Hurwitz {
                    g: genus,
                    profile: key,
                    value: rational::render(&value),
                    engine: engine.tag().to_string(),
                }])?;
            }
            value
        }
    };

    match format {
        Format::Text => writeln!(out, "{}", rational::render(&value))?,
        Format::Jsonl => {
            let line = HurwitzLine {
                kind: "hurwitz",
                g: genus,
                profile: profile.orders(),
                value: rational::render(&value),
                engine: engine.tag(),
            };
            serde_json::to_writer(&mut *out, &line).map_err(|e| CliError::Io(e.into()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn cmd_hodge(
    engines: &HurwitzEngines,
    cache: Option<&mut Cache>,
    genus: usize,
    points: usize,
    grid_bound: Option<usize>,
    format: Format,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let table: HodgeTable = match grid_bound {
        Some(b) => extract_hodge_integrals(genus, points, b, engines)?,
        None => extract_hodge_integrals_auto(genus, points, usize::MAX, engines)?,
    };
    if let Some(cache) = cache {
        cache.append(table.iter().map(|(key, value)| CacheRecord::Hodge {
            g: key.g,
            n: key.n,
            b: key.b.clone(),
            j: key.j,
            value: rational::render(value),
            engine: Engine::Frobenius.to_string(),
        }))?;
    }
    match format {
        Format::Jsonl => table.write_records(&mut *out)?,
        Format::Text => {
            for (key, value) in table.iter() {
                let b: Vec<String> = key.b.iter().map(|x| x.to_string()).collect();
                writeln!(out, "{}\t{}\t{}\t{}\t{}", key.g, key.n, b.join(","), key.j, rational::render(value))?;
            }
        }
    }
    Ok(())
}

fn write_report(report: &Report, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    for check in &report.checks {
        match format {
            Format::Jsonl => {
                serde_json::to_writer(&mut *out, check).map_err(|e| CliError::Io(e.into()))?;
                writeln!(out)?;
            }
            Format::Text => writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                check.suite, check.key, check.expected, check.actual, check.status
            )?,
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    engines: &HurwitzEngines,
    cache: Option<&mut Cache>,
    max_series_order: usize,
    suite: Suite,
    g_max: Option<usize>,
    k_max: Option<usize>,
    n_max: Option<usize>,
    r_max: Option<usize>,
    format: Format,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let report = match suite {
        Suite::Engines => verify::engines(engines, k_max.unwrap_or(5), r_max.unwrap_or(12))?,
        Suite::Genus0 => verify::genus0(engines, k_max.unwrap_or(8))?,
        Suite::Degll => verify::degll(engines, k_max.unwrap_or(6), g_max.unwrap_or(2), cache)?,
        Suite::ElsvRoundtrip => {
            verify::elsv_roundtrip(engines, g_max.unwrap_or(2), n_max.unwrap_or(2), k_max.unwrap_or(4))?
        }
        Suite::FpIdentity => {
            let g_max = g_max.unwrap_or(2);
            let order = 2 * g_max + 2;
            if order > max_series_order {
                return Err(Error::Infeasible {
                    bound: "series order",
                    limit: max_series_order as u128,
                    requested: order as u128,
                }
                .into());
            }
            verify::fp_identity(engines, g_max, k_max.unwrap_or(5))
        }
    };
    write_report(&report, format, out)?;
    let failed = report.failures().count();
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(failed.max(1)))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let engines = HurwitzEngines::new(cli.bounds.bounds());
    let mut cache = cli.cache.as_deref().map(Cache::open).transpose()?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Hurwitz {
            genus,
            profile,
            engine,
            format,
        } => cmd_hurwitz(&engines, cache.as_mut(), genus, &profile, engine, format, &mut out),
        Command::Hodge {
            genus,
            points,
            grid_bound,
            format,
        } => cmd_hodge(&engines, cache.as_mut(), genus, points, grid_bound, format, &mut out),
        Command::Verify {
            suite,
            g_max,
            k_max,
            n_max,
            r_max,
            format,
        } => cmd_verify(
            &engines,
            cache.as_mut(),
            cli.bounds.max_series_order,
            suite,
            g_max,
            k_max,
            n_max,
            r_max,
            format,
            &mut out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hurwitz: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
