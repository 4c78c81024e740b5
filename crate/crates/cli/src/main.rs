use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fiqs::canon::{canonicalize, classify, RawMatrix};
use fiqs::census::{self, Format, Selection};
use fiqs::invariants::SurfaceRecord;
use fiqs::{Rho, SeriesId, SeriesKey, Tag};

/// Enumerate and classify full intrinsic quadric surfaces of Picard
/// number one to three.
#[derive(Parser)]
#[command(name = "fiqs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export every surface with the given Gorenstein index range.
    Enumerate(EnumerateArgs),
    /// Invariants of a single surface, given by η or by its matrix.
    Invariants(InvariantsArgs),
    /// Normal form, series and η of a defining matrix.
    Classify(ClassifyArgs),
    /// Cumulative counts by Gorenstein index.
    Count(CountArgs),
    /// Check every registered claim up to the given index.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    rho: Rho,
    /// Exactly this Gorenstein index.
    #[arg(long, conflicts_with = "iota_max", required_unless_present = "iota_max")]
    iota: Option<i64>,
    /// All Gorenstein indices up to this one.
    #[arg(long)]
    iota_max: Option<i64>,
    #[arg(long)]
    series: Option<Tag>,
    #[arg(long, default_value = "jsonl")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InvariantsArgs {
    /// RHO,SERIES,IOTA_PLUS,IOTA_MINUS[,C[,D]]
    #[arg(long, conflicts_with_all = ["matrix", "rho"], required_unless_present = "matrix")]
    eta: Option<String>,
    /// Third row of the defining matrix, comma separated.
    #[arg(long, requires = "rho", allow_hyphen_values = true)]
    matrix: Option<String>,
    #[arg(long)]
    rho: Option<Rho>,
    #[arg(long, default_value = "jsonl")]
    format: Format,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    rho: Rho,
    /// Third row of the defining matrix, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    rho: Rho,
    #[arg(long)]
    iota_max: i64,
    /// Also write "<iota> <cumulative>" lines to this file.
    #[arg(long)]
    plot_data: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    iota_max: i64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

fn parse_eta(s: &str) -> Result<SeriesKey> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if !(4..=6).contains(&parts.len()) {
        bail!("expected RHO,SERIES,IOTA_PLUS,IOTA_MINUS[,C[,D]], got {s:?}");
    }
    let rho: Rho = parts[0].parse()?;
    let tag: Tag = parts[1].parse()?;
    let nums = parts[2..]
        .iter()
        .map(|t| t.parse::<i64>().with_context(|| format!("not an integer: {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    let key = SeriesKey::new(
        SeriesId::new(rho, tag),
        nums[0],
        nums[1],
        nums.get(2).copied(),
        nums.get(3).copied(),
    );
    key.check()?;
    Ok(key)
}

fn eta_string(k: &SeriesKey) -> String {
    let mut s = format!("{},{},{},{}", k.rho(), k.tag(), k.iota_plus, k.iota_minus);
    for v in [k.c, k.d].into_iter().flatten() {
        s.push_str(&format!(",{v}"));
    }
    s
}

fn key_from_matrix(rho: Rho, row: &str) -> Result<SeriesKey> {
    let raw = RawMatrix::parse(rho, row)?;
    let normal = canonicalize(&raw)?;
    Ok(classify(&normal)?)
}

fn open_sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn enumerate(args: EnumerateArgs) -> Result<()> {
    let sel = match (args.iota, args.iota_max) {
        (Some(i), _) => Selection::exactly(args.rho, i),
        (None, Some(n)) => Selection::up_to(args.rho, n),
        (None, None) => bail!("one of --iota or --iota-max is required"),
    };
    let sel = Selection { tag: args.series, ..sel };
    let mut sink = open_sink(args.out.as_ref())?;
    census::export_records(&sel, args.format, &mut sink)?;
    sink.flush()?;
    Ok(())
}

fn invariants(args: InvariantsArgs) -> Result<()> {
    let key = match (&args.eta, &args.matrix, args.rho) {
        (Some(eta), _, _) => parse_eta(eta)?,
        (None, Some(row), Some(rho)) => key_from_matrix(rho, row)?,
        _ => bail!("give --eta, or --matrix together with --rho"),
    };
    let record = SurfaceRecord::from_key(&key)?;
    let mut out = io::stdout().lock();
    census::write_records(&[record], args.format, &mut out)?;
    Ok(())
}

fn classify_cmd(args: ClassifyArgs) -> Result<()> {
    let raw = RawMatrix::parse(args.rho, &args.matrix)?;
    let normal = canonicalize(&raw)?;
    let key = classify(&normal)?;
    println!("normal_form: {}", RawMatrix::from(&normal));
    println!("series: {}", key.tag());
    println!("eta: {}", eta_string(&key));
    Ok(())
}

fn count(args: CountArgs) -> Result<()> {
    let table = census::count_with_jobs(args.rho, args.iota_max, args.jobs)?;
    if let Some(path) = &args.plot_data {
        let mut sink = open_sink(Some(path))?;
        census::write_plot_data(&table, &mut sink)?;
        sink.flush()?;
    }
    print!("{table}");
    println!("total\t{}\tke\t{}", table.total(), table.ke_total());
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let report = census::verify_claims_with_jobs(args.iota_max, args.jobs)?;
    println!("{report}");
    Ok(report.passed())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Enumerate(a) => enumerate(a)?,
        Command::Invariants(a) => invariants(a)?,
        Command::Classify(a) => classify_cmd(a)?,
        Command::Count(a) => count(a)?,
        Command::Verify(a) => {
            if !verify(a)? {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
