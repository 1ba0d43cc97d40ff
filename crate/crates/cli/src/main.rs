use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use torus_bundle::verify::DEFAULT_SEED;
use torus_coh::batch::{run_batch, Format};
use torus_coh::report::{build_report, render_text};
use torus_coh::verify_cmd::{self, run_verify, TIMING_PREFIX};
use torus_coh::{parse_rings, parse_theta, InvalidInput};

/// Cohomology rings of torus bundles over the circle.
///
/// Matrices are given row-major as α,γ,β,δ, i.e. θ = [[α, γ], [β, δ]],
/// which acts on column vectors (m, n).
#[derive(Parser)]
#[command(name = "torus-coh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one gluing matrix.
    Report(ReportArgs),
    /// One report per line of a matrix list.
    Batch(BatchArgs),
    /// Invariant suite over seeded random unimodular matrices.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Args)]
struct RingArgs {
    /// Z, Z<prime> or Zp; repeatable or comma-separated [default: Z,Z2]
    #[arg(long = "ring", value_name = "RING")]
    rings: Vec<String>,
    /// Prime for `--ring Zp`; repeatable
    #[arg(long = "p", value_name = "PRIME")]
    primes: Vec<i64>,
}

#[derive(Args)]
struct ReportArgs {
    /// α,γ,β,δ
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
    #[command(flatten)]
    rings: RingArgs,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
}

#[derive(Args)]
struct BatchArgs {
    /// File with one matrix per line, `α,γ,β,δ` or `[α,γ,β,δ]`
    input: PathBuf,
    /// Output file [default: stdout]
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    rings: RingArgs,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Worker threads; 0 uses all cores
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Check this matrix instead of random ones
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Worker threads; 0 uses all cores
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(f))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() == ErrorKind::BrokenPipe => std::process::exit(0),
        r => Ok(r?),
    }
}

fn report(args: ReportArgs) -> anyhow::Result<bool> {
    let theta = parse_theta(&args.theta)?;
    let rings = parse_rings(&args.rings.rings, &args.rings.primes)?;
    let r = build_report(&theta, &rings)?;
    match args.format {
        OutFormat::Text => emit(&render_text(&r))?,
        OutFormat::Json => emit(&format!("{}\n", r.to_json_pretty()))?,
    }
    Ok(r.passed())
}

fn batch(args: BatchArgs) -> anyhow::Result<bool> {
    let rings = parse_rings(&args.rings.rings, &args.rings.primes)?;
    let input = std::fs::read_to_string(&args.input)
        .map_err(|e| InvalidInput(format!("cannot read {}: {e}", args.input.display())))?;
    let result = with_jobs(args.jobs, || run_batch(&input, &rings))?;
    let format = match args.format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
    };
    let body = result.render(format);
    match &args.output {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => emit(&body)?,
    }
    eprint!("{}", result.summary());
    if !result.all_passed() {
        return Ok(false);
    }
    if !result.rejected.is_empty() {
        return Err(InvalidInput(format!("{} invalid input lines", result.rejected.len())).into());
    }
    Ok(true)
}

fn verify(args: VerifyArgs) -> anyhow::Result<bool> {
    let theta = args.theta.as_deref().map(parse_theta).transpose()?;
    let start = Instant::now();
    let run = with_jobs(args.jobs, || run_verify(args.seed, args.samples as usize, theta))?;
    let elapsed = start.elapsed().as_secs_f64();
    match args.format {
        OutFormat::Text => {
            emit(&verify_cmd::render_text(&run))?;
            emit(&format!("{TIMING_PREFIX} {elapsed:.3} s\n"))?;
        }
        OutFormat::Json => {
            emit(&format!("{}\n", serde_json::to_string_pretty(&run)?))?;
            eprintln!("{TIMING_PREFIX} {elapsed:.3} s");
        }
    }
    Ok(run.passed())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Report(a) => report(a),
        Command::Batch(a) => batch(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InvalidInput>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
