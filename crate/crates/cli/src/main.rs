//! `cnpair`: construct and verify pairs of right triangles sharing a side,
//! driven by rational points on congruent number curves.

mod catalog;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cnpair_core::curve::{primary_seed, CongruentCurve, CurvePoint};
use cnpair_core::solutions::enumerate_pairs;
use cnpair_core::systems::construct_record_with;
use cnpair_core::{
    brute_force_system, cross_check, make_pair, parse_rational, run_reference_checks,
    verify_record, Error as CoreError, Rational, SolutionRecord, SystemTag,
};

use catalog::CatalogEntry;
use config::Config;

/// Exit codes: 0 success, 1 verification failure, 2 usage error,
/// 3 infeasible construction.
const EXIT_OK: u8 = 0;
const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(name = "cnpair", version, about = "Right triangle pairs from congruent number curves")]
struct Cli {
    /// Emit machine-readable JSON where a human table is the default.
    #[arg(long, global = true)]
    json: bool,
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Catalog file (overrides the configured path).
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    #[value(name = "legs-hyp")]
    LegsHyp,
    #[value(name = "hyp-legs")]
    HypLegs,
    #[value(name = "legs-legs")]
    LegsLegs,
    #[value(name = "double")]
    Double,
}

impl From<SystemArg> for SystemTag {
    fn from(a: SystemArg) -> SystemTag {
        match a {
            SystemArg::LegsHyp => SystemTag::LegsCommonHypSquares,
            SystemArg::HypLegs => SystemTag::HypCommonLegSquares,
            SystemArg::LegsLegs => SystemTag::LegsCommonLegSquares,
            SystemArg::Double => SystemTag::DoubleSquares,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Recompute every published numerical identity and report pass/fail.
    VerifyPaper,
    /// Construct solution records from a solution pair or a built-in seed.
    Generate(GenerateArgs),
    /// Curve point arithmetic: double, add, multiply.
    Point(PointArgs),
    /// Brute-force search of a system within bounds.
    Search(SearchArgs),
    /// Inspect or verify the catalog.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    system: SystemArg,
    #[arg(long)]
    n: u64,
    /// First solution x-coordinate ("a/b" or "a").
    #[arg(long, conflicts_with = "auto")]
    x: Option<String>,
    /// Second solution x-coordinate.
    #[arg(long, conflicts_with = "auto", requires = "x")]
    z: Option<String>,
    /// Derive pairs automatically from the built-in seed table.
    #[arg(long)]
    auto: bool,
    /// Number of records to produce with --auto.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Append the records to the catalog.
    #[arg(long)]
    write: bool,
}

#[derive(Args)]
struct PointArgs {
    #[command(subcommand)]
    action: PointAction,
}

#[derive(Subcommand)]
enum PointAction {
    /// Double a point.
    Double {
        #[arg(long)]
        n: u64,
        /// Point as "x,y".
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Add two points.
    Add {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Curve order of the second point, when different (reports the mismatch).
        #[arg(long)]
        n2: Option<u64>,
    },
    /// Multiply a point by a positive integer.
    Multiply {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    system: SystemArg,
    /// Bound on the square generators p, q (and r, s).
    #[arg(long)]
    pq: Option<u64>,
    /// Bound on the shared side.
    #[arg(long)]
    side: Option<u128>,
    /// Compare catalog records of this system against the search hits.
    #[arg(long)]
    cross_check: bool,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(subcommand)]
    action: CatalogAction,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print a one-line summary per entry.
    List,
    /// Emit the catalog as CSV.
    Export,
    /// Re-run full verification on every entry.
    Verify,
}

/// Errors that mean "this construction has no solution", not a bug.
fn is_infeasible(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::ProductNotSquare(_)
            | CoreError::IncompatibleSquarefreeParts { .. }
            | CoreError::TrivialSolution(_)
            | CoreError::EqualSolutions(_)
            | CoreError::NegativeSolution(_)
            | CoreError::DegenerateOutput
            | CoreError::InsufficientPairs { .. }
            | CoreError::NotFibonacci { .. }
    )
}

fn is_usage(e: &CoreError) -> bool {
    matches!(e, CoreError::ParseRational(_) | CoreError::ZeroDenominator)
}

fn exit_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<CoreError>() {
        Some(core) if is_infeasible(core) => EXIT_INFEASIBLE,
        Some(core) if is_usage(core) => EXIT_USAGE,
        _ => EXIT_VERIFY,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_USAGE);
            }
        },
        None => Config::default(),
    };
    let catalog_path = cli.catalog.clone().unwrap_or_else(|| config.catalog_path.clone());
    match run(&cli, &config, &catalog_path) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn run(cli: &Cli, config: &Config, catalog_path: &PathBuf) -> anyhow::Result<u8> {
    match &cli.command {
        Command::VerifyPaper => cmd_verify_paper(cli.json),
        Command::Generate(args) => cmd_generate(args, cli.json, config, catalog_path),
        Command::Point(args) => cmd_point(args),
        Command::Search(args) => cmd_search(args, config, catalog_path),
        Command::Catalog(args) => cmd_catalog(args, catalog_path),
    }
}

fn cmd_verify_paper(json: bool) -> anyhow::Result<u8> {
    let results = run_reference_checks();
    let all_pass = results.iter().all(|r| r.passed);
    if json {
        println!("{}", serde_json::to_string_pretty(&results)?);
    } else {
        for r in &results {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            println!("{mark}  {:<28}  {}", r.name, r.detail);
        }
        println!(
            "{}/{} checks passed",
            results.iter().filter(|r| r.passed).count(),
            results.len()
        );
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY })
}

fn parse_rat(s: &str) -> anyhow::Result<Rational> {
    parse_rational(s).map_err(|e| anyhow!(e))
}

fn cmd_generate(
    args: &GenerateArgs,
    _json: bool,
    config: &Config,
    catalog_path: &PathBuf,
) -> anyhow::Result<u8> {
    let tag: SystemTag = args.system.into();
    let curve = CongruentCurve::new(args.n).map_err(anyhow::Error::from)?;
    let budget = config.factor_budget();
    let mut records: Vec<SolutionRecord> = Vec::new();

    if args.auto {
        let seed = primary_seed(args.n).map_err(anyhow::Error::from)?;
        // Ask for a margin of extra pairs since some will be infeasible for
        // the chosen system; settle for whatever the seed actually yields.
        let pairs = match enumerate_pairs(&curve, &seed, args.count * 4, config.pair_multiple_bound)
        {
            Ok(pairs) => pairs,
            Err(CoreError::InsufficientPairs { found, .. }) if found > 0 => {
                enumerate_pairs(&curve, &seed, found, config.pair_multiple_bound)
                    .map_err(anyhow::Error::from)?
            }
            Err(e) => return Err(e.into()),
        };
        for pair in &pairs {
            if records.len() >= args.count {
                break;
            }
            match construct_record_with(tag, pair, &budget) {
                Ok(rec) => records.push(rec),
                Err(e) if is_infeasible(&e) => continue,
                // Pairs too large to analyze within the budget are skipped,
                // not fatal, in automatic mode.
                Err(CoreError::FactorizationLimitExceeded(_)) => continue,
                Err(e) => return Err(e.into()),
            }
        }
        if records.len() < args.count {
            return Err(CoreError::InsufficientPairs {
                found: records.len(),
                requested: args.count,
            }
            .into());
        }
    } else {
        let (x, z) = match (&args.x, &args.z) {
            (Some(x), Some(z)) => (parse_rat(x)?, parse_rat(z)?),
            _ => bail!("provide --x and --z, or --auto"),
        };
        let pair = make_pair(&curve, &x, &z).map_err(anyhow::Error::from)?;
        records.push(construct_record_with(tag, &pair, &budget).map_err(anyhow::Error::from)?);
    }

    let entries: Vec<CatalogEntry> = records.into_iter().map(CatalogEntry::new).collect();
    for entry in &entries {
        if !entry.verified {
            bail!("internal error: generated record failed verification");
        }
        println!("{}", serde_json::to_string(&entry.record)?);
    }
    if args.write {
        catalog::append(catalog_path, &entries)?;
    }
    Ok(EXIT_OK)
}

fn parse_point(curve: &CongruentCurve, s: &str) -> anyhow::Result<CurvePoint> {
    if s.trim() == "O" {
        return Ok(CurvePoint::Identity);
    }
    let (xs, ys) = s
        .split_once(',')
        .ok_or_else(|| anyhow!(CoreError::ParseRational(s.to_string())))?;
    let x = parse_rat(xs)?;
    let y = parse_rat(ys)?;
    curve.point(x, y).map_err(anyhow::Error::from)
}

fn cmd_point(args: &PointArgs) -> anyhow::Result<u8> {
    let result = match &args.action {
        PointAction::Double { n, p } => {
            let curve = CongruentCurve::new(*n).map_err(anyhow::Error::from)?;
            let p = parse_point(&curve, p)?;
            curve.double(&p).map_err(anyhow::Error::from)?
        }
        PointAction::Add { n, p, q, n2 } => {
            let curve = CongruentCurve::new(*n).map_err(anyhow::Error::from)?;
            let p = parse_point(&curve, p)?;
            let other = CongruentCurve::new(n2.unwrap_or(*n)).map_err(anyhow::Error::from)?;
            let q = parse_point(&other, q)?;
            curve.add(&p, &q).map_err(anyhow::Error::from)?
        }
        PointAction::Multiply { n, p, k } => {
            let curve = CongruentCurve::new(*n).map_err(anyhow::Error::from)?;
            let p = parse_point(&curve, p)?;
            curve.multiply(*k, &p).map_err(anyhow::Error::from)?
        }
    };
    println!("{}", serde_json::to_string(&result)?);
    Ok(EXIT_OK)
}

fn cmd_search(args: &SearchArgs, config: &Config, catalog_path: &PathBuf) -> anyhow::Result<u8> {
    let tag: SystemTag = args.system.into();
    let pq = args.pq.unwrap_or(config.oracle_bound_pq);
    let side = args.side.unwrap_or(config.oracle_bound_side as u128);
    if pq == 0 || side == 0 {
        bail!("bounds must be >= 1");
    }
    if args.cross_check {
        let entries = catalog::read(catalog_path)?;
        let records: Vec<SolutionRecord> = entries
            .into_iter()
            .map(|e| e.record)
            .filter(|r| r.tag == tag)
            .collect();
        let report = cross_check(tag, &records, pq, side);
        println!("{}", serde_json::to_string_pretty(&report)?);
        return Ok(if report.consistent() { EXIT_OK } else { EXIT_VERIFY });
    }
    let report = brute_force_system(tag, pq, side);
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(EXIT_OK)
}

fn cmd_catalog(args: &CatalogArgs, catalog_path: &PathBuf) -> anyhow::Result<u8> {
    match &args.action {
        CatalogAction::List => {
            let entries = if catalog_path.exists() {
                catalog::read(catalog_path)?
            } else {
                Vec::new()
            };
            println!("{} entries", entries.len());
            for e in &entries {
                println!(
                    "{} n={} {}={} x={} z={} verified={}",
                    e.record.tag,
                    e.record.n,
                    e.record.tag.side_symbol(),
                    e.record.side(),
                    cnpair_core::format_rational(&e.record.x),
                    cnpair_core::format_rational(&e.record.z),
                    e.verified,
                );
            }
            Ok(EXIT_OK)
        }
        CatalogAction::Export => {
            let entries = catalog::read(catalog_path)?;
            print!("{}", catalog::to_csv(&entries));
            Ok(EXIT_OK)
        }
        CatalogAction::Verify => {
            let entries = catalog::read(catalog_path)
                .with_context(|| "catalog verification aborted".to_string())?;
            let mut failures = 0usize;
            for (i, e) in entries.iter().enumerate() {
                let ok = verify_record(&e.record);
                if !ok {
                    failures += 1;
                    println!("FAIL entry {} ({} n={})", i + 1, e.record.tag, e.record.n);
                }
            }
            println!("{} entries, {} failures", entries.len(), failures);
            Ok(if failures == 0 { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}
