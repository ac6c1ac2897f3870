use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use lsape::bench::{self, BenchConfig, Solver};
use lsape::io::{verify, Solution};
use lsape::{
    count_assignments, generate, solve, solve_via_slsape, EditCostMatrix, Family, GeneratorSpec,
    OmegaPolicy, SolveOptions,
};

#[derive(Parser)]
#[command(name = "lsape", version, about = "Linear sum assignment with edition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print the solution as JSON
    Solve(SolveArgs),
    /// Write a generated instance
    Generate(GenerateArgs),
    /// Check a solution against an instance
    Verify(VerifyArgs),
    /// Print the number of epsilon-assignments between sets of sizes n and m
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Time both solvers and write CSV
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file, or - for stdin
    input: PathBuf,
    #[arg(long, default_value = "lsape")]
    solver: Solver,
    /// Start from empty duals instead of the row/column reduction
    #[arg(long)]
    no_preprocess: bool,
    /// Tolerance of the self-check run on the result
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value = "uniform-random")]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Value range lo:hi of the random family
    #[arg(long, default_value = "0:10")]
    range: String,
    /// Draw integers from lo..=hi instead of reals from [lo, hi)
    #[arg(long)]
    integer: bool,
    /// Output file (stdout if absent)
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    solution: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Print the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated families
    #[arg(long, default_value = "uniform-random", value_delimiter = ',')]
    families: Vec<Family>,
    /// Sizes as n:m,n:m,...
    #[arg(long, conflicts_with_all = ["n", "m_range"])]
    sizes: Option<String>,
    /// Fixed n for a sweep over m
    #[arg(long, requires = "m_range")]
    n: Option<usize>,
    /// Sweep lo:hi:step (inclusive)
    #[arg(long, requires = "n")]
    m_range: Option<String>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output file (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure classes, mapped to exit codes 1 and 2.
enum Failure {
    Check(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<lsape::Error> for Failure {
    fn from(e: lsape::Error) -> Self {
        Failure::Input(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Count { n, m } => {
            println!("{}", count_assignments(n, m));
            Ok(())
        }
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("lsape: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("lsape: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn read_instance(path: &Path) -> anyhow::Result<EditCostMatrix<f64>> {
    read_input(path)?
        .parse()
        .with_context(|| format!("invalid instance {}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<(), Failure> {
    let c = read_instance(&args.input)?;
    let solution = match args.solver {
        Solver::Lsape => Solution::from(solve(
            &c,
            SolveOptions {
                preprocess: !args.no_preprocess,
            },
        )?),
        Solver::Slsape => Solution::from(solve_via_slsape(&c, OmegaPolicy::default())?),
    };
    let report = verify(&c, &solution, args.tolerance);
    println!(
        "{}",
        serde_json::to_string(&solution).context("serializing solution")?
    );
    if !report.passed() {
        return Err(Failure::Check(format!(
            "solution failed its self-check: {report:?}"
        )));
    }
    Ok(())
}

fn parse_value_range(s: &str) -> anyhow::Result<(f64, f64)> {
    let Some((lo, hi)) = s.split_once(':') else {
        bail!("range must be lo:hi, got {s:?}");
    };
    let lo = lo
        .trim()
        .parse()
        .with_context(|| format!("bad range bound {lo:?}"))?;
    let hi = hi
        .trim()
        .parse()
        .with_context(|| format!("bad range bound {hi:?}"))?;
    Ok((lo, hi))
}

fn cmd_generate(args: GenerateArgs) -> Result<(), Failure> {
    let (lo, hi) = parse_value_range(&args.range)?;
    let mut spec = GeneratorSpec::new(args.family, args.n, args.m)
        .seed(args.seed)
        .range(lo, hi);
    if args.integer {
        spec = spec.integer();
    }
    let c: EditCostMatrix<f64> = generate(&spec)?;
    write_output(args.out.as_deref(), &c.to_text_with_header(&spec.header()))?;
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let c = read_instance(&args.instance)?;
    let text = read_input(&args.solution)?;
    let solution: Solution = serde_json::from_str(&text)
        .with_context(|| format!("invalid solution {}", args.solution.display()))?;
    let report = verify(&c, &solution, args.tolerance);
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).context("serializing report")?
        );
    } else {
        println!("validity: {}", report.validity);
        if let Some(detail) = &report.detail {
            println!("detail: {detail}");
        }
        match (report.recomputed_cost, report.cost_matches) {
            (Some(cost), Some(ok)) => println!(
                "cost: claimed {} recomputed {cost} ({})",
                solution.cost,
                if ok { "ok" } else { "MISMATCH" }
            ),
            _ => println!("cost: not checked"),
        }
        if report.duals_present {
            let show = |x: Option<bool>| match x {
                Some(true) => "ok",
                Some(false) => "VIOLATED",
                None => "not checked",
            };
            println!("dual feasibility: {}", show(report.duals_feasible));
            println!("slackness: {}", show(report.slackness));
            if let Some(e) = report.dual_objective {
                println!("dual objective: {e}");
            }
        } else {
            println!("duals: absent");
        }
    }
    if report.passed() {
        if !args.json {
            println!("PASS");
        }
        Ok(())
    } else {
        if !args.json {
            println!("FAIL");
        }
        Err(Failure::Check("verification failed".into()))
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let sizes = match (&args.sizes, args.n, &args.m_range) {
        (Some(s), None, None) => bench::parse_sizes(s)?,
        (None, Some(n), Some(r)) => bench::parse_range(r)?.into_iter().map(|m| (n, m)).collect(),
        _ => return Err(anyhow::anyhow!("give either --sizes or --n with --m-range").into()),
    };
    if args.reps == 0 {
        return Err(anyhow::anyhow!("--reps must be at least 1").into());
    }
    let records = bench::run_bench(&BenchConfig {
        families: args.families,
        sizes,
        reps: args.reps,
        seed: args.seed,
    })?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    for record in &records {
        writer.serialize(record).context("writing CSV")?;
    }
    let bytes = writer.into_inner().context("writing CSV")?;
    write_output(args.out.as_deref(), &String::from_utf8_lossy(&bytes))?;
    Ok(())
}
