//! `gsss`: deal, reconstruct, close, analyze, and benchmark generalized
//! secret sharing instances.
//!
//! Exit codes: 0 success, 2 invalid input, 3 prime generation failure,
//! 4 duplicate shares, 5 closure too large. Data goes to stdout,
//! diagnostics to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gsss::access::{AccessError, DEFAULT_CLOSURE_CAP};
use gsss::attack::{self, parse_rational, AttackError, ShareMeta};
use gsss::bench::{self, BenchMode};
use gsss::bundle::{self, BundleError, InstanceMetadata};
use gsss::scheme::{self, SchemeError, Secret};
use gsss::shamir::{self, ShamirError, ThresholdParams, ThresholdShareFile};
use gsss::{BigInt, BigUint};

const SEED_ENV: &str = "GSSS_SEED";

#[derive(Parser)]
#[command(name = "gsss", version, about = "Generalized secret sharing with prime shares")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Deal shares and the public polynomial for an access structure
    Deal(DealArgs),
    /// Evaluate the public polynomial at a coalition's product
    Reconstruct(ReconstructArgs),
    /// Replace an access structure by its monotone closure
    Closure(ClosureArgs),
    /// Run the shift-range attack on a public polynomial
    Analyze(AnalyzeArgs),
    /// Threshold baseline
    #[command(subcommand)]
    Shamir(ShamirCommand),
    /// Time public-polynomial evaluation for several k
    Bench(BenchArgs),
}

#[derive(Args)]
struct DealArgs {
    /// Access structure JSON
    structure: PathBuf,
    /// Secret as a decimal integer or 0x-prefixed big-endian hex
    secret: String,
    /// Bit length of every participant's prime
    #[arg(long, default_value_t = 256)]
    bits: u64,
    /// Seed (UTF-8 text, or 0x-prefixed hex bytes); GSSS_SEED overrides it
    #[arg(long)]
    seed: Option<String>,
    /// Comma-separated primes in sorted participant order, instead of generating them
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<String>>,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ReconstructArgs {
    public: PathBuf,
    #[arg(required = true)]
    shares: Vec<PathBuf>,
    /// Known secret to compare against (testing only; the scheme itself has no check)
    #[arg(long)]
    expect: Option<String>,
}

#[derive(Args)]
struct ClosureArgs {
    structure: PathBuf,
    /// Write the closed structure here; otherwise it goes to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
    cap: usize,
}

#[derive(Args)]
struct AnalyzeArgs {
    public: PathBuf,
    /// Isolation width for critical points: "p/q", a decimal, or "1e-9"
    #[arg(long, default_value = "1e-9")]
    precision: String,
    /// metadata.json of the instance, for the hardening checks
    #[arg(long)]
    metadata: Option<PathBuf>,
    /// Directory of share files, for the prime-size uniformity check
    #[arg(long)]
    shares_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ShamirCommand {
    /// Split a secret into n shares with threshold t
    Split(SplitArgs),
    /// Recover the secret from share files
    Combine(CombineArgs),
}

#[derive(Args)]
struct SplitArgs {
    secret: String,
    #[arg(short)]
    n: usize,
    #[arg(short)]
    t: usize,
    /// Prime field modulus (default 2^61 - 1)
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Write share-<x>.json files here; otherwise print a JSON array
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct CombineArgs {
    #[arg(required = true)]
    shares: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Fixed,
    Dealt,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    k_list: Vec<usize>,
    #[arg(long, default_value_t = 21)]
    reps: usize,
    #[arg(long, value_enum, default_value = "fixed")]
    mode: ModeArg,
    /// Prime size for --mode dealt
    #[arg(long, default_value_t = 64)]
    bits: u64,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<BundleError> for Failure {
    fn from(e: BundleError) -> Self {
        Failure::invalid(e)
    }
}

impl From<SchemeError> for Failure {
    fn from(e: SchemeError) -> Self {
        let code = match e {
            SchemeError::Primes(_) => 3,
            SchemeError::DuplicateShare(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<AccessError> for Failure {
    fn from(e: AccessError) -> Self {
        let code = match e {
            AccessError::ClosureTooLarge { .. } => 5,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ShamirError> for Failure {
    fn from(e: ShamirError) -> Self {
        Failure::invalid(e)
    }
}

impl From<AttackError> for Failure {
    fn from(e: AttackError) -> Self {
        Failure::invalid(e)
    }
}

fn seed_bytes(flag: Option<&str>) -> Result<Vec<u8>, Failure> {
    let from_env = std::env::var(SEED_ENV).ok();
    match from_env.as_deref().or(flag) {
        Some(s) => match s.strip_prefix("0x") {
            Some(h) => hex::decode(h).map_err(|e| Failure::invalid(format!("seed: {e}"))),
            None => Ok(s.as_bytes().to_vec()),
        },
        None => Ok(rand::random::<[u8; 32]>().to_vec()),
    }
}

fn deal(args: DealArgs) -> Result<(), Failure> {
    let structure = bundle::read_structure(&args.structure)?;
    let secret: Secret = args.secret.parse()?;
    let seed = seed_bytes(args.seed.as_deref())?;
    let (dealing, bit_length) = match &args.primes {
        Some(list) => {
            let primes = list
                .iter()
                .map(|p| {
                    p.trim()
                        .parse::<BigUint>()
                        .map_err(|_| Failure::invalid(format!("bad prime {p:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let bits = primes.iter().map(BigUint::bits).max().unwrap_or(0);
            (scheme::deal_with_primes(&structure, &secret, primes)?, bits)
        }
        None => (scheme::deal(&structure, &secret, args.bits, &seed)?, args.bits),
    };
    let meta = bundle::write_bundle(&args.out_dir, &structure, &dealing, bit_length, &seed)?;
    eprintln!(
        "dealt k = {} authorized sets to n = {} participants into {}",
        meta.k,
        meta.n,
        args.out_dir.display()
    );
    Ok(())
}

fn reconstruct(args: ReconstructArgs) -> Result<(), Failure> {
    let public = bundle::read_public(&args.public)?;
    let shares = args
        .shares
        .iter()
        .map(|p| bundle::read_share(p))
        .collect::<Result<Vec<_>, _>>()?;
    let r = scheme::coalition_product(&shares)?;
    let value = scheme::reconstruct(&public, &r);
    println!("{value}");
    if let Some(expected) = args.expect {
        let expected: Secret = expected.parse()?;
        let matches = value == BigInt::from(expected.value().clone());
        eprintln!("{}", if matches { "matches expected secret" } else { "does NOT match expected secret" });
    }
    Ok(())
}

fn closure(args: ClosureArgs) -> Result<(), Failure> {
    let structure = bundle::read_structure(&args.structure)?;
    let closed = structure.monotone_closure_with_cap(args.cap)?;
    let report = structure.closure_growth_report_with_cap(args.cap)?;
    let closed_json = bundle::to_json_string(&closed.to_file());
    let report_json = bundle::to_json_string(&report);
    match &args.out {
        Some(path) => {
            fs::write(path, closed_json)
                .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
            print!("{report_json}");
        }
        None => {
            print!("{closed_json}");
            eprint!("{report_json}");
        }
    }
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let public = bundle::read_public(&args.public)?;
    let precision = parse_rational(&args.precision)
        .ok_or_else(|| Failure::invalid(format!("bad precision {:?}", args.precision)))?;
    let mut meta = ShareMeta {
        k: public.k(),
        ..ShareMeta::default()
    };
    if let Some(path) = &args.metadata {
        let m: InstanceMetadata = bundle::read_json(path)?;
        meta.bit_length = Some(m.bit_length);
        meta.n = Some(m.n);
        meta.k = m.k;
    }
    if let Some(dir) = &args.shares_dir {
        meta.prime_bits = read_share_dir(dir)?;
    }
    let report = attack::hardening_report(&public, &meta, &precision)?;
    print!("{}", bundle::to_json_string(&report.to_file()));
    Ok(())
}

fn read_share_dir(dir: &Path) -> Result<Vec<u64>, Failure> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::invalid(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| Ok(bundle::read_share(p)?.prime.bits()))
        .collect()
}

fn parse_uint(s: &str, what: &str) -> Result<BigUint, Failure> {
    s.trim()
        .parse::<BigUint>()
        .map_err(|_| Failure::invalid(format!("bad {what} {s:?}")))
}

fn shamir_split(args: SplitArgs) -> Result<(), Failure> {
    let q = match &args.q {
        Some(q) => parse_uint(q, "modulus")?,
        None => shamir::mersenne61(),
    };
    let secret: Secret = args.secret.parse()?;
    let params = ThresholdParams::new(args.n, args.t, q)?;
    let seed = seed_bytes(args.seed.as_deref())?;
    let shares = shamir::shamir_split(secret.value(), &params, &seed)?;
    let files: Vec<ThresholdShareFile> =
        shares.iter().map(|s| ThresholdShareFile::new(s, &params)).collect();
    match &args.out_dir {
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| Failure::invalid(format!("{}: {e}", dir.display())))?;
            for f in &files {
                let path = dir.join(format!("share-{}.json", f.x));
                bundle::write_json(&path, f)?;
                eprintln!("wrote {}", path.display());
            }
        }
        None => print!("{}", bundle::to_json_string(&files)),
    }
    Ok(())
}

fn shamir_combine(args: CombineArgs) -> Result<(), Failure> {
    let files = args
        .shares
        .iter()
        .map(|p| bundle::read_json::<ThresholdShareFile>(p))
        .collect::<Result<Vec<_>, _>>()?;
    println!("{}", shamir::combine_share_files(&files)?);
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<(), Failure> {
    if args.k_list.is_empty() || args.k_list.contains(&0) {
        return Err(Failure::invalid("--k-list needs at least one positive k"));
    }
    let mode = match args.mode {
        ModeArg::Fixed => BenchMode::Fixed,
        ModeArg::Dealt => BenchMode::Dealt {
            bit_length: args.bits,
        },
    };
    let rows = bench::run(&args.k_list, mode, args.reps)?;
    println!("k,nanoseconds");
    for row in rows {
        println!("{},{}", row.k, row.nanoseconds);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Deal(a) => deal(a),
        Command::Reconstruct(a) => reconstruct(a),
        Command::Closure(a) => closure(a),
        Command::Analyze(a) => analyze(a),
        Command::Shamir(ShamirCommand::Split(a)) => shamir_split(a),
        Command::Shamir(ShamirCommand::Combine(a)) => shamir_combine(a),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gsss: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
