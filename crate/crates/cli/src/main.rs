//! Command-line front end over the census, lemma suite, block export,
//! sampling, and curve-emission machinery.
//!
//! Every run prints a metadata header echoing the resolved configuration
//! (worker count excluded: results are worker-invariant by contract, and the
//! emitted bytes must be too). Usage errors exit 2; failed verifications
//! exit 1 and print the smallest witness.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rsk_core::bitableau;
use rsk_core::census;
use rsk_core::insertion;
use rsk_core::model::{ExponentMatrix, MarginPair, Permutation};
use rsk_core::plancherel::{self, SampleStat};
use rsk_core::verify;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "rsk",
    version,
    about = "Bump-classified row insertion, operator blocks, and Plancherel statistics",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for parallel sections; defaults to the number of CPUs.
    /// Output bytes are identical for any value.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count lateral-bump-free permutations per size, by one or both routes.
    Census(CensusArgs),
    /// Run the lemma suite exhaustively up to a size cap.
    Verify(VerifyArgs),
    /// Export one operator block over a margin pair as JSON.
    Block(BlockArgs),
    /// Estimate a statistic over seeded random permutations.
    Sample(SampleArgs),
    /// Emit the boundary-curve table.
    Limitshape(LimitshapeArgs),
    /// Emit the half-ratio product sequence and its rescaling.
    Stirling(StirlingArgs),
    /// Insert a word or matrix and print the tableaux, optionally with the
    /// full bump trace.
    Insert(InsertArgs),
}

#[derive(Args)]
struct CensusArgs {
    /// Largest n to tabulate.
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = CensusMode::Both)]
    mode: CensusMode,
    /// Output target: `-` (stdout, default format), `csv`/`json` (stdout in
    /// that format), or a path ending in .csv/.json.
    #[arg(long, default_value = "-")]
    out: String,
    /// Frontier memory budget in bytes for the tree route.
    #[arg(long, default_value_t = census::DEFAULT_MEMORY_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CensusMode {
    Direct,
    Tree,
    Both,
}

#[derive(Args)]
struct VerifyArgs {
    /// Size cap for the suite; each check also honors its own exhaustive
    /// bound.
    #[arg(long, default_value_t = 5)]
    n: usize,
}

#[derive(Args)]
struct BlockArgs {
    /// Row sums, comma-separated, e.g. `1,1`.
    #[arg(long)]
    sigma: String,
    /// Column sums, comma-separated.
    #[arg(long)]
    pi: String,
    /// Cap on the basis size.
    #[arg(long, default_value_t = bitableau::DEFAULT_BLOCK_LIMIT)]
    limit: usize,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Seed for the ChaCha8 substream family; `RSK_SEED` sets the default.
    #[arg(long, env = "RSK_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum)]
    stat: StatArg,
    /// Containment margin for `--stat shape`.
    #[arg(long, default_value_t = 0.15)]
    epsilon: f64,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatArg {
    Lateral,
    Firstrow,
    Shape,
}

#[derive(Args)]
struct LimitshapeArgs {
    /// Write the (theta, x, y) table.
    #[arg(long, default_value_t = true)]
    emit_curve: bool,
    #[arg(long, default_value_t = 512)]
    points: usize,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct StirlingArgs {
    #[arg(long, default_value_t = 100)]
    max_n: u64,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct InsertArgs {
    /// Permutation or injective integer word, e.g. `31254`.
    #[arg(long, conflicts_with = "matrix")]
    word: Option<String>,
    /// Non-negative integer matrix, rows semicolon-separated, e.g.
    /// `1,0,2;0,2,0;1,1,0`.
    #[arg(long)]
    matrix: Option<String>,
    /// Print one line per insertion step.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

/// Where and how to write: stdout or a file, CSV or JSON.
struct OutSpec {
    format: Option<Format>,
    path: Option<PathBuf>,
}

impl OutSpec {
    fn parse(raw: &str) -> Result<Self> {
        match raw {
            "-" => Ok(OutSpec { format: None, path: None }),
            "csv" => Ok(OutSpec { format: Some(Format::Csv), path: None }),
            "json" => Ok(OutSpec { format: Some(Format::Json), path: None }),
            other => {
                let path = PathBuf::from(other);
                let format = match path.extension().and_then(|e| e.to_str()) {
                    Some("csv") => Format::Csv,
                    Some("json") => Format::Json,
                    _ => bail!("--out path must end in .csv or .json, got {other:?}"),
                };
                Ok(OutSpec { format: Some(format), path: Some(path) })
            }
        }
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn write(&self, content: &str) -> Result<()> {
        match &self.path {
            None => {
                print!("{content}");
                Ok(())
            }
            Some(path) => {
                fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
                println!("wrote {}", path.display());
                Ok(())
            }
        }
    }
}

/// Verification mismatch: exits 1, unlike usage errors which exit 2.
#[derive(Debug)]
struct VerificationFailed(String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if let Some(v) = err.downcast_ref::<VerificationFailed>() {
                eprintln!("verification failed: {v}");
                ExitCode::from(1)
            } else {
                eprintln!("error: {err}");
                ExitCode::from(2)
            }
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Census(args) => run_census(args),
        Command::Verify(args) => run_verify(args),
        Command::Block(args) => run_block(args),
        Command::Sample(args) => run_sample(args),
        Command::Limitshape(args) => run_limitshape(args),
        Command::Stirling(args) => run_stirling(args),
        Command::Insert(args) => run_insert(args),
    }
}

fn csv_header(lines: &[(&str, String)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# rsk v{VERSION} schema_version=1");
    for (key, value) in lines {
        let _ = writeln!(out, "# {key}={value}");
    }
    out
}

fn run_census(args: CensusArgs) -> Result<()> {
    let out = OutSpec::parse(&args.out)?;
    let mode = match args.mode {
        CensusMode::Direct => "direct",
        CensusMode::Tree => "tree",
        CensusMode::Both => "both",
    };
    let direct = match args.mode {
        CensusMode::Direct | CensusMode::Both => Some(
            (1..=args.max_n)
                .map(census::census_direct)
                .collect::<rsk_core::Result<Vec<_>>>()?,
        ),
        CensusMode::Tree => None,
    };
    let tree = match args.mode {
        CensusMode::Tree | CensusMode::Both => {
            Some(census::census_tree_with_budget(args.max_n, args.budget)?)
        }
        CensusMode::Direct => None,
    };
    if let (Some(d), Some(t)) = (&direct, &tree) {
        for (a, b) in d.iter().zip(t) {
            if a != b {
                return Err(anyhow!(VerificationFailed(format!(
                    "census routes disagree at n={}: direct {a:?} vs tree {b:?}",
                    a.n
                ))));
            }
        }
    }
    let rows = direct.or(tree).unwrap_or_default();
    let config = [
        ("command", "census".to_string()),
        ("max_n", args.max_n.to_string()),
        ("mode", mode.to_string()),
    ];
    match out.format_or(Format::Csv) {
        Format::Csv => {
            let body = csv_header(&config) + &census::rows_to_csv(&rows);
            out.write(&body)?;
        }
        Format::Json => {
            let mut value = census::rows_to_json(&rows);
            value["config"] = json!({ "command": "census", "max_n": args.max_n, "mode": mode });
            value["version"] = json!(VERSION);
            out.write(&(serde_json::to_string_pretty(&value)? + "\n"))?;
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<()> {
    println!("# rsk v{VERSION} schema_version=1");
    println!("# command=verify n={}", args.n);
    let reports = verify::run_suite(args.n);
    let mut failed = false;
    for report in &reports {
        if report.passed {
            println!("check {}: PASS ({})", report.name, report.detail);
        } else {
            failed = true;
            println!(
                "check {}: FAIL witness={} ({})",
                report.name,
                report.witness.as_deref().unwrap_or("-"),
                report.detail
            );
        }
    }
    if failed {
        let witnesses: Vec<&str> = reports
            .iter()
            .filter(|r| !r.passed)
            .filter_map(|r| r.witness.as_deref())
            .collect();
        return Err(anyhow!(VerificationFailed(witnesses.join(", "))));
    }
    Ok(())
}

fn parse_margin(raw: &str, what: &str) -> Result<Vec<u32>> {
    raw.split(',')
        .map(|tok| tok.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .with_context(|| format!("parsing {what} {raw:?}"))
}

fn run_block(args: BlockArgs) -> Result<()> {
    let out = OutSpec::parse(&args.out)?;
    if out.format_or(Format::Json) != Format::Json {
        bail!("block export is JSON only");
    }
    let sigma = parse_margin(&args.sigma, "--sigma")?;
    let pi = parse_margin(&args.pi, "--pi")?;
    let margin = MarginPair::new(sigma, pi)?;
    let block = bitableau::block_with_limit(&margin, args.limit)?;
    let mut value = block.to_json();
    value["config"] =
        json!({ "command": "block", "sigma": args.sigma, "pi": args.pi, "limit": args.limit });
    value["version"] = json!(VERSION);
    out.write(&(serde_json::to_string_pretty(&value)? + "\n"))?;
    Ok(())
}

fn run_sample(args: SampleArgs) -> Result<()> {
    let out = OutSpec::parse(&args.out)?;
    let stat = match args.stat {
        StatArg::Lateral => SampleStat::Lateral,
        StatArg::Firstrow => SampleStat::FirstRow,
        StatArg::Shape => {
            if !(args.epsilon > 0.0 && args.epsilon < 1.0) {
                bail!("--epsilon must lie strictly between 0 and 1");
            }
            SampleStat::Shape { epsilon: args.epsilon }
        }
    };
    if args.trials == 0 {
        bail!("--trials must be positive");
    }
    if args.n == 0 {
        bail!("--n must be positive");
    }
    let batch = plancherel::run_trials(args.n, args.trials, args.seed, stat);
    match out.format_or(Format::Json) {
        Format::Json => {
            let mut value = serde_json::to_value(&batch)?;
            value["config"] = json!({
                "command": "sample",
                "n": args.n,
                "trials": args.trials,
                "seed": args.seed,
                "stat": batch.statistic,
            });
            value["version"] = json!(VERSION);
            out.write(&(serde_json::to_string_pretty(&value)? + "\n"))?;
        }
        Format::Csv => {
            let config = [
                ("command", "sample".to_string()),
                ("n", args.n.to_string()),
                ("trials", args.trials.to_string()),
                ("seed", args.seed.to_string()),
                ("stat", batch.statistic.clone()),
                ("rng", batch.rng.clone()),
            ];
            let mut body = csv_header(&config);
            body.push_str(
                "n,trials,seed,statistic,successes,estimate_num,estimate_den,estimate,stderr\n",
            );
            let _ = writeln!(
                body,
                "{},{},{},{},{},{},{},{},{}",
                batch.n,
                batch.trials,
                batch.seed,
                batch.statistic,
                batch.successes,
                batch.estimate_num,
                batch.estimate_den,
                batch.estimate,
                batch.stderr
            );
            out.write(&body)?;
        }
    }
    Ok(())
}

fn run_limitshape(args: LimitshapeArgs) -> Result<()> {
    let out = OutSpec::parse(&args.out)?;
    if !args.emit_curve {
        bail!("nothing to do: pass --emit-curve");
    }
    if args.points < 2 {
        bail!("--points must be at least 2");
    }
    let curve = plancherel::limit_shape_curve(args.points);
    match out.format_or(Format::Csv) {
        Format::Csv => {
            let config =
                [("command", "limitshape".to_string()), ("points", args.points.to_string())];
            let mut body = csv_header(&config);
            body.push_str("theta,x,y\n");
            for p in &curve.points {
                let _ = writeln!(body, "{},{},{}", p.theta, p.x, p.y);
            }
            out.write(&body)?;
        }
        Format::Json => {
            let value = json!({
                "schema_version": 1,
                "version": VERSION,
                "config": { "command": "limitshape", "points": args.points },
                "points": curve.points,
            });
            out.write(&(serde_json::to_string_pretty(&value)? + "\n"))?;
        }
    }
    Ok(())
}

fn run_stirling(args: StirlingArgs) -> Result<()> {
    let out = OutSpec::parse(&args.out)?;
    if args.max_n == 0 {
        bail!("--max-n must be positive");
    }
    let rows = plancherel::stirling_rows(args.max_n);
    match out.format_or(Format::Csv) {
        Format::Csv => {
            let config =
                [("command", "stirling".to_string()), ("max_n", args.max_n.to_string())];
            let mut body = csv_header(&config);
            body.push_str("n,a_n,a_n_sqrt_pi_n\n");
            for row in &rows {
                let _ = writeln!(body, "{},{},{}", row.n, row.a_n, row.scaled);
            }
            out.write(&body)?;
        }
        Format::Json => {
            let value = json!({
                "schema_version": 1,
                "version": VERSION,
                "config": { "command": "stirling", "max_n": args.max_n },
                "rows": rows,
            });
            out.write(&(serde_json::to_string_pretty(&value)? + "\n"))?;
        }
    }
    Ok(())
}

fn run_insert(args: InsertArgs) -> Result<()> {
    println!("# rsk v{VERSION} schema_version=1");
    match (&args.word, &args.matrix) {
        (Some(word), None) => {
            let w: Permutation = word.parse()?;
            println!("# command=insert word={w} trace={}", args.trace);
            let (p, trace) = insertion::schensted(&w);
            if args.trace {
                println!("{}", trace.dump());
            }
            println!("P:\n{p}");
            println!("shape: {}", p.shape());
            println!("lateral bumps: {}", trace.lateral_count());
        }
        (None, Some(matrix)) => {
            let alpha: ExponentMatrix = matrix.parse()?;
            println!("# command=insert matrix={alpha} trace={}", args.trace);
            let result = insertion::rsk(&alpha);
            if args.trace {
                println!("{}", result.trace.dump());
            }
            println!("P:\n{}", result.insertion);
            println!("Q:\n{}", result.recording);
            println!("shape: {}", result.insertion.shape());
            println!("lateral bumps: {}", result.trace.lateral_count());
        }
        _ => bail!("pass exactly one of --word or --matrix"),
    }
    Ok(())
}
