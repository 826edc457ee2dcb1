use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use coreabacus::enumeration::{self, choose_pair, FamilyReport, Filters};
use coreabacus::verification::{verify_claim, ClaimId, ParamGrid, Verdict, VerificationReport};
use coreabacus::{Construction, CoreError, Partition};

use crate::cache::Cache;
use crate::render;

/// Largest family `enumerate` and `maximal` will materialize.
const MATERIALIZE_LIMIT: u128 = 2_000_000;
/// Largest family `count` will walk.
const WALK_LIMIT: u128 = 200_000_000;
/// Largest `s` and `ms` accepted by `show` and `longest`.
const MAX_S: u64 = 200;
const MAX_RUNNERS: u64 = 2_000;

#[derive(Debug, Parser)]
#[command(
    name = "cores",
    version,
    about = "Abacus constructions and simultaneous core partitions"
)]
pub struct Cli {
    /// Recompute instead of reading or writing the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render one of the named abaci as an ASCII grid.
    Show {
        /// A, B0, B1, C0, C1, E-, E+ or L.
        #[arg(value_parser = parse_construction)]
        name: Construction,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 1)]
        m: u64,
    },
    /// List every simultaneous core for the given moduli.
    Enumerate(FamilyArgs),
    /// Count simultaneous cores for the given moduli.
    Count(FamilyArgs),
    /// Check a claim against enumerated data over a parameter grid.
    Verify {
        #[arg(long, value_parser = parse_claim)]
        claim: ClaimId,
        /// For example `s=1..10,m=1..3`; omitted names take the claim's defaults.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<ParamGrid>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
    /// The unique (s, t)-core of largest weight.
    Maximal {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
    /// The (s, ms-1, ms+1)-core with the most parts.
    Longest {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Comma-separated moduli, at least one coprime pair.
    #[arg(long, value_delimiter = ',', required = true)]
    pub moduli: Vec<u64>,
    #[arg(long)]
    pub distinct: bool,
    #[arg(long)]
    pub self_conjugate: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

impl FamilyArgs {
    fn filters(&self) -> Filters {
        Filters {
            distinct_parts: self.distinct,
            self_conjugate: self.self_conjugate,
        }
    }

    fn distinct_moduli(&self) -> usize {
        self.moduli.iter().collect::<std::collections::BTreeSet<_>>().len()
    }

    fn key(&self, command: &str) -> String {
        let mut moduli = self.moduli.clone();
        moduli.sort_unstable();
        moduli.dedup();
        let moduli: Vec<String> = moduli.iter().map(u64::to_string).collect();
        format!(
            "{command}-{}-d{}-sc{}",
            moduli.join("-"),
            self.distinct as u8,
            self.self_conjugate as u8
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Table,
}

fn parse_construction(s: &str) -> Result<Construction, CoreError> {
    s.parse()
}

fn parse_claim(s: &str) -> Result<ClaimId, CoreError> {
    s.parse()
}

fn parse_grid(s: &str) -> Result<ParamGrid, CoreError> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("failed to encode output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::Invariant(_) | CoreError::AmbiguousLongest(..) | CoreError::EmptyFamily) => 3,
            CliError::Core(CoreError::RunnerMismatch { .. }) => 3,
            CliError::Core(_) => 2,
            CliError::Json(_) => 3,
        }
    }
}

/// What a command prints and how it exits.
#[derive(Debug)]
pub struct Run {
    pub stdout: String,
    pub stderr: Option<String>,
    pub code: u8,
}

impl Run {
    fn ok(stdout: String) -> Self {
        Run {
            stdout,
            stderr: None,
            code: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub moduli: Vec<u64>,
    pub filters: Filters,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreReport {
    pub moduli: Vec<u64>,
    pub partition: Partition,
    pub parts: usize,
    pub weight: u64,
}

impl CoreReport {
    fn new(moduli: Vec<u64>, partition: Partition) -> Self {
        CoreReport {
            moduli,
            parts: partition.len(),
            weight: partition.weight(),
            partition,
        }
    }
}

/// `(1/(s+t)) C(s+t, s)`, saturating.
fn family_size(s: u64, t: u64) -> u128 {
    let (s, n) = (s.min(t) as u128, (s + t) as u128);
    let mut binom: u128 = 1;
    for k in 0..s {
        binom = match binom.checked_mul(n - k) {
            Some(v) => v / (k + 1),
            None => return u128::MAX,
        };
    }
    binom / n
}

fn guard_family(command: &str, moduli: &[u64], walk_only: bool, limit: u128) -> Result<(), CoreError> {
    if moduli.contains(&1) {
        return Ok(());
    }
    let (s, t) = choose_pair(moduli)?;
    let size = family_size(s, t);
    if walk_only || size <= limit {
        return Ok(());
    }
    Err(CoreError::GuardRail {
        claim: command.to_string(),
        detail: format!("the ({s},{t})-core family has about {size} members, over the limit of {limit}"),
        suggestion: "smaller moduli, or `count --distinct` which prunes during the walk".into(),
    })
}

fn guard_abacus(command: &str, s: u64, m: u64) -> Result<(), CoreError> {
    let runners = s.saturating_mul(m);
    if s <= MAX_S && runners <= MAX_RUNNERS {
        return Ok(());
    }
    Err(CoreError::GuardRail {
        claim: command.to_string(),
        detail: format!("s={s}, ms={runners} exceeds s <= {MAX_S}, ms <= {MAX_RUNNERS}"),
        suggestion: format!(
            "--s {} --m {}",
            s.min(MAX_S),
            m.min(MAX_RUNNERS / s.clamp(1, MAX_S)).max(1)
        ),
    })
}

pub fn run(cli: &Cli) -> Result<Run, CliError> {
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::from_env()
    };
    match &cli.command {
        Command::Show { name, s, m } => {
            guard_abacus("show", *s, *m)?;
            Ok(Run::ok(name.render(*s, *m)?))
        }
        Command::Enumerate(args) => {
            let two_distinct = args.distinct && args.distinct_moduli() == 2;
            guard_family("enumerate", &args.moduli, two_distinct, MATERIALIZE_LIMIT)?;
            let report: FamilyReport = cache.get_or_compute(&args.key("enumerate"), || {
                enumeration::enumerate(&args.moduli, args.filters()).map(|f| f.report())
            })?;
            Ok(Run::ok(render::family(&report, args.format)?))
        }
        Command::Count(args) => {
            let walk_only = args.distinct && args.distinct_moduli() == 2;
            guard_family("count", &args.moduli, walk_only, WALK_LIMIT)?;
            let report: CountReport = cache.get_or_compute(&args.key("count"), || {
                let mut moduli = args.moduli.clone();
                moduli.sort_unstable();
                moduli.dedup();
                enumeration::count(&moduli, args.filters()).map(|count| CountReport {
                    moduli,
                    filters: args.filters(),
                    count,
                })
            })?;
            Ok(Run::ok(render::count(&report, args.format)?))
        }
        Command::Verify { claim, grid, format } => {
            let key = format!(
                "verify-{claim}-{}",
                grid.as_ref().map(ToString::to_string).unwrap_or_default()
            );
            let report: VerificationReport = cache.get_or_compute(&key, || verify_claim(*claim, grid.as_ref()))?;
            let passed = match &report.berger {
                Some(probes) => probes.iter().all(|p| p.verdict == Verdict::Supported),
                None => report.all_pass(),
            };
            let (stdout, stderr) = match format {
                ReportFormat::Json => (render::json(&report)?, None),
                ReportFormat::Table => (
                    render::verification(&report),
                    Some(format!("elapsed: {} ms\n", report.elapsed_ms)),
                ),
            };
            Ok(Run {
                stdout,
                stderr,
                code: if passed { 0 } else { 1 },
            })
        }
        Command::Maximal { s, t, format } => {
            guard_family("maximal", &[*s, *t], false, MATERIALIZE_LIMIT)?;
            let report: CoreReport = cache.get_or_compute(&format!("maximal-{s}-{t}"), || {
                let family = enumeration::enumerate(&[*s, *t], Filters::default())?;
                match family.maximal_members().as_slice() {
                    [one] => Ok(CoreReport::new(family.moduli().to_vec(), one.clone())),
                    many => Err(CoreError::Invariant(format!(
                        "{} maximal ({s},{t})-cores, expected exactly one",
                        many.len()
                    ))),
                }
            })?;
            Ok(Run::ok(render::core(&report, *format)?))
        }
        Command::Longest { s, m, format } => {
            guard_abacus("longest", *s, *m)?;
            let lam = coreabacus::constructions::build_l(*s, *m)?.to_partition();
            let moduli: Vec<u64> = [*s, m * s - 1, m * s + 1].into_iter().filter(|&x| x > 0).collect();
            if !coreabacus::is_simultaneous_core(&lam, &moduli)? {
                return Err(CoreError::Invariant(format!("{lam} is not a {moduli:?}-core")).into());
            }
            Ok(Run::ok(render::core(&CoreReport::new(moduli, lam), *format)?))
        }
    }
}
