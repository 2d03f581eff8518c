use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use permcode::avoid::{AvoiderTree, DEFAULT_NODE_BUDGET};
use permcode::checks::{self, Check};
use permcode::codeword::{decode, encode, parse_letters, CodeWord};
use permcode::render::{RenderFormat, RenderSpec};
use permcode::wilf::{self, CountCache, ScanOptions, SequenceTarget};
use permcode::{Error, PatternSet, Permutation};

#[derive(Parser)]
#[command(
    name = "permcode",
    version,
    about = "Pattern-avoiding permutations, code words and lattice paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Lines,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Bijection,
    Counts,
    Codewords,
    Paths,
    Reflection,
    Identity,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum DrawFormat {
    Svg,
    Ascii,
}

#[derive(clap::Args)]
struct CacheArgs {
    /// Count cache file [default: <platform cache dir>/permcode/counts.json]
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Do not read or write the count cache
    #[arg(long, conflicts_with = "cache")]
    no_cache: bool,
    /// Maximum frontier size per class
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: usize,
}

impl CacheArgs {
    fn open(&self) -> anyhow::Result<Option<CountCache>> {
        if self.no_cache {
            return Ok(None);
        }
        let path = match &self.cache {
            Some(p) => p.clone(),
            None => dirs::cache_dir()
                .unwrap_or_else(std::env::temp_dir)
                .join("permcode")
                .join("counts.json"),
        };
        Ok(Some(CountCache::open(path)?))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count avoiders of a pattern set for n = 1..=n-max
    Count {
        /// Comma-separated patterns, e.g. 2431,4231,1432,4132
        #[arg(long)]
        patterns: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
    /// Encode an avoider of {2431,4231,1432,4132} as a code word
    Encode {
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value = "lines")]
        format: OutputFormat,
    },
    /// Decode a code word into its permutation
    Decode {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "lines")]
        format: OutputFormat,
    },
    /// Run a self-verification suite
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        n_max: u64,
        /// Upper bound for m in the identity suite
        #[arg(long, default_value_t = 20)]
        m_max: u64,
    },
    /// Scan every symmetry class of four length-4 patterns
    Scan {
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        /// Write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the CSV report here
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Target sequence file: integers for n = 1, 2, ... separated by commas or whitespace
        #[arg(long)]
        target_file: Option<PathBuf>,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Check the twelve candidate classes against the central binomial coefficients
    Candidates {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "lines")]
        format: OutputFormat,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Draw the lattice path of a code word
    Render {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "svg")]
        format: DrawFormat,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
        /// SVG pixels per grid unit
        #[arg(long, default_value_t = 40)]
        cell: u32,
        /// Allow words made only of B/E markers
        #[arg(long)]
        allow_empty_path: bool,
    },
}

fn parse_word(text: &str) -> anyhow::Result<CodeWord> {
    Ok(CodeWord::new(parse_letters(text)?)?)
}

fn run_count(
    patterns: &str,
    n_max: usize,
    format: OutputFormat,
    budget: usize,
) -> anyhow::Result<()> {
    let set: PatternSet = patterns.parse()?;
    let seq = AvoiderTree::new(&set)
        .with_budget(budget)
        .count_sequence(n_max)?;
    match format {
        OutputFormat::Csv => print!("{}", seq.to_csv()),
        OutputFormat::Json => println!("{}", serde_json::to_string(&seq)?),
        OutputFormat::Lines => {
            for c in &seq.counts {
                println!("{c}");
            }
        }
    }
    Ok(())
}

fn run_verify(suite: Suite, n_max: u64, m_max: u64) -> anyhow::Result<bool> {
    let n = n_max as usize;
    let results: Vec<Check> = match suite {
        Suite::Bijection => checks::bijection_suite(n)?,
        Suite::Counts => checks::counts_suite(n)?,
        Suite::Codewords => checks::codewords_suite(n_max)?,
        Suite::Paths => checks::paths_suite(n_max)?,
        Suite::Reflection => checks::reflection_suite(n_max)?,
        Suite::Identity => checks::identity_suite(m_max, n_max)?,
        Suite::All => {
            let mut all = checks::bijection_suite(n)?;
            all.extend(checks::counts_suite(n)?);
            all.extend(checks::codewords_suite(n_max)?);
            all.extend(checks::paths_suite(n_max)?);
            all.extend(checks::reflection_suite(n_max)?);
            all.extend(checks::identity_suite(m_max, n_max)?);
            all
        }
    };
    for c in &results {
        println!("{c}");
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    println!("passed={} failed={failed}", results.len() - failed);
    Ok(failed == 0)
}

fn load_target(path: &PathBuf) -> anyhow::Result<SequenceTarget> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let values = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad target term {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        bail!(Error::Parse(format!("{} holds no terms", path.display())));
    }
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "file".into());
    Ok(SequenceTarget::from_values(label, values))
}

fn run_scan(
    n_max: usize,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
    target_file: Option<PathBuf>,
    cache_args: &CacheArgs,
) -> anyhow::Result<()> {
    let target = match &target_file {
        Some(p) => load_target(p)?,
        None => SequenceTarget::central_binomial(),
    };
    let cache = cache_args.open()?;
    let options = ScanOptions {
        budget: cache_args.budget,
    };
    let result = wilf::scan_for_sequence(n_max, &target, options, cache.as_ref())?;
    if let Some(c) = &cache {
        c.save()?;
    }
    if let Some(path) = out {
        fs::write(&path, result.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = csv {
        fs::write(&path, result.to_csv(&target))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let budget_hits = result
        .reports
        .iter()
        .filter(|r| r.verdict == wilf::Verdict::BudgetExceeded)
        .count();
    println!(
        "classes={} matches={} subsets={} budget_exceeded={budget_hits}",
        result.total_classes,
        result.matches(),
        result.total_subsets
    );
    Ok(())
}

fn run_candidates(
    n_max: usize,
    format: OutputFormat,
    cache_args: &CacheArgs,
) -> anyhow::Result<()> {
    let cache = cache_args.open()?;
    let options = ScanOptions {
        budget: cache_args.budget,
    };
    let reports = wilf::verify_candidate_list(n_max, options, cache.as_ref())?;
    if let Some(c) = &cache {
        c.save()?;
    }
    let target = SequenceTarget::central_binomial();
    let label = target.label();
    match format {
        OutputFormat::Lines => {
            for r in &reports {
                let counts: Vec<String> = r.counts.counts.iter().map(|c| c.to_string()).collect();
                println!(
                    "{} {} {}",
                    r.counts.patterns,
                    r.verdict.describe(label),
                    counts.join(" ")
                );
            }
        }
        OutputFormat::Csv => {
            println!("patterns,canonical_key,orbit_size,n,count,expected,verdict");
            for r in &reports {
                for (i, c) in r.counts.counts.iter().enumerate() {
                    let expected = target
                        .expected(i + 1)
                        .map(|e| e.to_string())
                        .unwrap_or_default();
                    println!(
                        "{},{},{},{},{c},{expected},{}",
                        r.counts.patterns.key(),
                        r.canonical_key,
                        r.orbit_size,
                        i + 1,
                        r.verdict.describe(label)
                    );
                }
            }
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "patterns": r.counts.patterns,
                        "canonical_key": r.canonical_key,
                        "orbit_size": r.orbit_size,
                        "counts": r.counts.counts,
                        "verdict": r.verdict.describe(label),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows)?);
        }
    }
    let matches = reports.iter().filter(|r| r.verdict.is_match()).count();
    eprintln!("classes={} matches={matches}", reports.len());
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Count {
            patterns,
            n_max,
            format,
            budget,
        } => run_count(&patterns, n_max, format, budget)?,
        Command::Encode { perm, format } => {
            let p: Permutation = perm.parse()?;
            let w = encode(&p)?;
            match format {
                OutputFormat::Json => println!("{}", serde_json::to_string(&w)?),
                _ => println!("{w}"),
            }
        }
        Command::Decode { word, format } => {
            let p = decode(&parse_word(&word)?);
            match format {
                OutputFormat::Json => println!("{}", serde_json::to_string(p.values())?),
                _ => println!("{p}"),
            }
        }
        Command::Verify {
            suite,
            n_max,
            m_max,
        } => return run_verify(suite, n_max, m_max),
        Command::Scan {
            n_max,
            out,
            csv,
            target_file,
            cache,
        } => run_scan(n_max, out, csv, target_file, &cache)?,
        Command::Candidates {
            n_max,
            format,
            cache,
        } => run_candidates(n_max, format, &cache)?,
        Command::Render {
            word,
            format,
            out,
            cell,
            allow_empty_path,
        } => {
            let format = match format {
                DrawFormat::Svg => RenderFormat::Svg,
                DrawFormat::Ascii => RenderFormat::Ascii,
            };
            let text = RenderSpec::from_word(&parse_word(&word)?, allow_empty_path)?
                .with_format(format)
                .with_cell(cell)
                .render();
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
        }
    }
    Ok(true)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(Error::Cache(_)) => 1,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
