//! curvlab: conjugation curvature, hyperbolicity, and density censuses on
//! Cayley balls, from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use curvlab::cayley::{build_word_metric, load_table, save_table, BuildOptions};
use curvlab::error::{Error, Result};
use curvlab::group::{make_generating_set, parse_group_spec, GeneratingSet, GroupOracle, Preset};
use curvlab::hyperbolicity::DeltaMode;
use curvlab::report::{self, Provenance};
use curvlab::WordMetricTable;
use curvlab::{curvature, density, hyperbolicity};

#[derive(Parser)]
#[command(
    name = "curvlab",
    version,
    about = "Medium-scale conjugation curvature on Cayley balls of finitely generated groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a ball, persist the word-metric table, list sphere sizes.
    Ball(BallArgs),
    /// Exact kappa_k and the comparison distance for one element.
    Kappa(KappaArgs),
    /// Curvature sign census over one sphere.
    Census(CensusArgs),
    /// P/Q/R set sizes and curvature sign densities per sphere and ball.
    Density(DensityArgs),
    /// Empirical four-point hyperbolicity defect over ball quadruples.
    Delta(DeltaArgs),
    /// kappa_k sign scan over a length band (4k, hi].
    Scan(ScanArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Group spec: free:R, abelian:D, zxz2, heisenberg.
    #[arg(long)]
    group: Option<String>,

    /// Comma-separated generator words; lowercase = letter, uppercase = its
    /// inverse (e.g. "a,A,b,B,ababa,ABABA").
    #[arg(long)]
    gens: Option<String>,

    /// Named generating set: salpha, sbeta, sgamma, sneg, std.
    #[arg(long)]
    preset: Option<String>,

    /// Table radius. Each subcommand picks a sufficient default.
    #[arg(long)]
    radius: Option<u32>,

    /// Worker threads: 0 = default pool, 1 = sequential. Output is identical
    /// for every value.
    #[arg(long, default_value_t = 0)]
    threads: usize,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Table cache file. Reused when group, generators, and radius match;
    /// rebuilt and overwritten otherwise.
    #[arg(long)]
    cache: Option<PathBuf>,

    /// Memory budget in bytes for table construction.
    #[arg(long, default_value_t = 8 << 30)]
    memory_budget: u64,
}

#[derive(Args)]
struct BallArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct KappaArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Element, as a word over the base alphabet ("1" = identity).
    #[arg(long)]
    element: String,
    /// Comparison radius k.
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Sphere to census.
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Largest sphere radius to report.
    #[arg(long = "max-n")]
    max_n: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Args)]
struct DeltaArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Quadruple exploration: exhaustive or sampled.
    #[arg(long, default_value = "exhaustive")]
    mode: String,
    /// Sample count for sampled mode.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// RNG seed for sampled mode (recorded in the output).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Length band "lo:hi", scanned as (lo, hi]. lo must be >= 4k.
    #[arg(long)]
    band: String,
}

fn resolve_group(common: &CommonArgs) -> Result<(GroupOracle, GeneratingSet)> {
    if let Some(name) = &common.preset {
        let preset = Preset::parse(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown preset '{name}'")))?;
        let oracle = match (preset.group_spec(), &common.group) {
            (Some(spec), Some(given)) if spec != given => {
                return Err(Error::InvalidArgument(format!(
                    "preset {name} is defined on {spec}, not {given}"
                )));
            }
            (Some(spec), _) => parse_group_spec(spec)?,
            (None, Some(given)) => parse_group_spec(given)?,
            (None, None) => {
                return Err(Error::InvalidArgument(
                    "preset std needs --group".to_string(),
                ));
            }
        };
        let gens = preset.instantiate(&oracle)?;
        return Ok((oracle, gens));
    }
    let spec = common.group.as_deref().ok_or_else(|| {
        Error::InvalidArgument("either --preset or --group is required".to_string())
    })?;
    let oracle = parse_group_spec(spec)?;
    let words_csv = common.gens.as_deref().ok_or_else(|| {
        Error::InvalidArgument("--gens is required when no --preset is given".to_string())
    })?;
    let words: Vec<&str> = words_csv.split(',').map(str::trim).collect();
    let gens = make_generating_set(&oracle, &words, "custom")?;
    Ok((oracle, gens))
}

fn cache_file_name(oracle: &GroupOracle, gens: &GeneratingSet, radius: u32) -> String {
    format!(
        "{}-{}-r{}.tbl",
        oracle.spec_str().replace(':', "_"),
        gens.member_words().join("+"),
        radius
    )
}

fn matches_table(
    table: &WordMetricTable,
    oracle: &GroupOracle,
    gens: &GeneratingSet,
    radius: u32,
) -> bool {
    table.oracle().spec_str() == oracle.spec_str()
        && table.gens().member_words() == gens.member_words()
        && table.radius() >= radius
}

/// Builds or loads the table of at least the given radius, honoring --cache
/// and CURVLAB_CACHE_DIR. Returns the table and the path it lives at, if any.
fn obtain_table(
    common: &CommonArgs,
    oracle: &GroupOracle,
    gens: &GeneratingSet,
    radius: u32,
    persist_default: bool,
) -> Result<(WordMetricTable, Option<PathBuf>)> {
    let opts = BuildOptions {
        memory_budget: common.memory_budget,
        threads: common.threads,
    };
    let cache_dir = std::env::var_os("CURVLAB_CACHE_DIR").map(PathBuf::from);
    let path: Option<PathBuf> = match (&common.cache, &cache_dir) {
        (Some(explicit), _) => Some(explicit.clone()),
        (None, Some(dir)) => Some(dir.join(cache_file_name(oracle, gens, radius))),
        (None, None) => {
            persist_default.then(|| PathBuf::from(cache_file_name(oracle, gens, radius)))
        }
    };

    if let Some(p) = &path {
        if p.exists() {
            match load_table(p) {
                Ok(table) if matches_table(&table, oracle, gens, radius) => {
                    return Ok((table, Some(p.clone())));
                }
                Ok(_) | Err(_) => {
                    eprintln!(
                        "note: cache {} does not match the request; rebuilding",
                        p.display()
                    );
                }
            }
        }
    }

    let table = build_word_metric(oracle, gens, radius, &opts)?;
    if let Some(p) = &path {
        if let Some(parent) = p.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        save_table(&table, p)?;
    }
    Ok((table, path))
}

fn provenance(table: &WordMetricTable, k: Option<u32>, seed: Option<u64>) -> Provenance {
    Provenance {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        group: table.oracle().spec_str().to_string(),
        gens: table.gens().member_words(),
        radius: table.radius(),
        k,
        seed,
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ball(args) => {
            let (oracle, gens) = resolve_group(&args.common)?;
            let radius = args
                .common
                .radius
                .ok_or_else(|| Error::InvalidArgument("ball requires --radius".to_string()))?;
            let (table, path) = obtain_table(&args.common, &oracle, &gens, radius, true)?;
            let prov = provenance(&table, None, None);
            let sizes = table.sphere_sizes();
            match args.common.format {
                Format::Csv => print!("{}", report::ball_csv(&prov, &sizes)),
                Format::Json => print!("{}", report::ball_json(&prov, &sizes)),
            }
            if let Some(p) = path {
                eprintln!("table written to {}", p.display());
            }
        }
        Command::Kappa(args) => {
            let (oracle, gens) = resolve_group(&args.common)?;
            let element = oracle.normalize_str(&args.element)?;
            let default_radius = element.letter_len() as u32 + 2 * args.k;
            let radius = args.common.radius.unwrap_or(default_radius);
            let (table, _) = obtain_table(&args.common, &oracle, &gens, radius, false)?;
            let rec = curvature::kappa_k_record(&table, args.k, &element)?;
            let prov = provenance(&table, Some(args.k), None);
            match args.common.format {
                Format::Csv => print!("{}", report::kappa_csv(&prov, &rec)),
                Format::Json => print!("{}", report::kappa_json(&prov, &rec)),
            }
        }
        Command::Census(args) => {
            let (oracle, gens) = resolve_group(&args.common)?;
            let radius = args.common.radius.unwrap_or(args.n + 2 * args.k);
            let (table, _) = obtain_table(&args.common, &oracle, &gens, radius, false)?;
            let summary = curvature::curvature_census(&table, args.n, args.k)?;
            let records = curvature::census_records(&table, args.n, args.k)?;
            let prov = provenance(&table, Some(args.k), None);
            match args.common.format {
                Format::Csv => print!("{}", report::census_csv(&prov, &summary, &records)),
                Format::Json => print!("{}", report::census_json(&prov, &summary, &records)),
            }
        }
        Command::Density(args) => {
            let (oracle, gens) = resolve_group(&args.common)?;
            let radius = args.common.radius.unwrap_or(args.max_n + 2 * args.k);
            let (table, _) = obtain_table(&args.common, &oracle, &gens, radius, false)?;
            let rep = density::density_report(&table, args.max_n, args.k)?;
            let prov = provenance(&table, Some(args.k), None);
            match args.common.format {
                Format::Csv => print!("{}", report::density_csv(&prov, &rep)),
                Format::Json => print!("{}", report::density_json(&prov, &rep)),
            }
        }
        Command::Delta(args) => {
            let (oracle, gens) = resolve_group(&args.common)?;
            let ball_radius = args.common.radius.ok_or_else(|| {
                Error::InvalidArgument("delta requires --radius (the quadruple ball)".to_string())
            })?;
            let mode = match args.mode.as_str() {
                "exhaustive" => DeltaMode::Exhaustive,
                "sampled" => DeltaMode::Sampled {
                    samples: args.samples,
                    seed: args.seed,
                },
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown mode '{other}' (exhaustive or sampled)"
                    )));
                }
            };
            // Distances between ball points need radius 2n unless the
            // closed-form length applies.
            let std_fast = oracle.has_std_fast_length() && gens.is_std(&oracle);
            let table_radius = if std_fast {
                ball_radius
            } else {
                2 * ball_radius
            };
            let mut common = args.common;
            common.radius = None;
            let (table, _) = obtain_table(&common, &oracle, &gens, table_radius, false)?;
            let est = hyperbolicity::four_point_delta(&table, ball_radius, mode)?;
            let seed = match mode {
                DeltaMode::Sampled { seed, .. } => Some(seed),
                DeltaMode::Exhaustive => None,
            };
            let prov = provenance(&table, None, seed);
            match common.format {
                Format::Csv => print!("{}", report::delta_csv(&prov, &est)),
                Format::Json => print!("{}", report::delta_json(&prov, &est)),
            }
        }
        Command::Scan(args) => {
            let (oracle, gens) = resolve_group(&args.common)?;
            let (lo, hi) = args
                .band
                .split_once(':')
                .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<u32>().ok()?)))
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("--band must be lo:hi, got '{}'", args.band))
                })?;
            let std_fast = oracle.has_std_fast_length() && gens.is_std(&oracle);
            let is_free = matches!(oracle.kind(), curvlab::group::GroupKind::Free(_));
            let default_radius = if std_fast && is_free {
                // Direct reduced-word enumeration covers the band; the table
                // only has to supply the comparison sphere S_k.
                args.k
            } else if std_fast {
                hi
            } else {
                hi + 2 * args.k
            };
            let radius = args.common.radius.unwrap_or(default_radius);
            let (table, _) = obtain_table(&args.common, &oracle, &gens, radius, false)?;
            let rep = hyperbolicity::kappa_k_sign_scan(&table, args.k, lo, hi)?;
            let prov = provenance(&table, Some(args.k), None);
            match args.common.format {
                Format::Csv => print!("{}", report::scan_csv(&prov, &rep)),
                Format::Json => print!("{}", report::scan_json(&prov, &rep)),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error[{}]: {err}", err.code());
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_names_are_filesystem_safe() {
        let oracle = parse_group_spec("free:2").unwrap();
        let gens = Preset::SGamma.instantiate(&oracle).unwrap();
        let name = cache_file_name(&oracle, &gens, 6);
        assert_eq!(name, "free_2-a+A+b+B+ababa+ABABA-r6.tbl");
        assert!(!name.contains(':'));
        assert!(!name.contains('/'));
    }
}
