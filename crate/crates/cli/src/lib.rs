//! Subcommands of the `perimeter-guard` binary.
//!
//! Each command writes its report to `out` and returns a [`CliError`] carrying
//! the process exit code on failure: 1 for bad input, 2 for `n < m`, 3 when
//! an oracle exceeds its work budget.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use perimeter_guard::generate::{generate_instance, generate_lengths, GenParams};
use perimeter_guard::io::{read_instance, read_solution, write_atomic, SolutionDoc};
use perimeter_guard::oracle::{baseline_single_region, composition_multi_region};
use perimeter_guard::render::render_svg;
use perimeter_guard::{solve, validate_solution, Error, Instance, Solution, Tolerance, Variant};

#[derive(Debug, Parser)]
#[command(name = "perimeter-guard", version, about = "Optimal perimeter guarding with robot teams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance and write the solution document.
    Solve(SolveArgs),
    /// Write a random instance.
    Generate(GenerateArgs),
    /// Compare the fast solver against the brute-force oracle, or validate a
    /// stored solution.
    Check(CheckArgs),
    /// Draw an instance and its solution as SVG.
    Render(RenderArgs),
    /// Time the solvers over a parameter sweep.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// Solution path; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    #[arg(long, default_value = "auto", value_parser = parse_variant)]
    pub variant: Variant,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub regions: usize,
    #[arg(long)]
    pub components: usize,
    #[arg(long)]
    pub robots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instance path; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// Solution document to validate against the instance.
    #[arg(long)]
    pub solution: Option<PathBuf>,
    /// Only validate `--solution`; skip the oracle comparison.
    #[arg(long, requires = "solution")]
    pub validate_only: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    #[arg(long, default_value = "auto", value_parser = parse_variant)]
    pub variant: Variant,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long)]
    pub solution: Option<PathBuf>,
    #[arg(long)]
    pub svg: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Solver to time.
    #[arg(long, default_value = "single-comp", value_parser = parse_variant)]
    pub variant: Variant,
    /// Region counts, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 10_000, 100_000])]
    pub m: Vec<usize>,
    /// Component counts, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1usize])]
    pub q: Vec<usize>,
    /// Robot counts, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1_000_000u64])]
    pub n: Vec<u64>,
    /// Repetitions per cell; the median is reported.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(3..))]
    pub reps: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    /// CSV path; stdout when omitted.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible { .. } => 2,
            Error::BudgetExceeded { .. } => 3,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(e.to_string())
    }
}

pub type CliResult = Result<(), CliError>;

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Generate(a) => cmd_generate(&a, out),
        Command::Check(a) => cmd_check(&a, out),
        Command::Render(a) => cmd_render(&a),
        Command::Bench(a) => cmd_bench(&a, out),
    }
}

fn tolerance(eps: f64) -> Result<Tolerance, CliError> {
    if eps.is_finite() && (0.0..0.1).contains(&eps) {
        Ok(Tolerance::new(eps))
    } else {
        Err(CliError::input(format!("epsilon must lie in [0, 0.1), got {eps}")))
    }
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    Ok(read_instance(path)?.to_instance()?)
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> CliResult {
    match path {
        Some(p) => write_atomic(p, text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> CliResult {
    let tol = tolerance(a.epsilon)?;
    let instance = load_instance(&a.input)?;
    let solution = solve(&instance, a.variant, tol)?;
    emit(a.output.as_deref(), &SolutionDoc::from(&solution).to_json(), out)
}

pub fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> CliResult {
    let doc = generate_instance(GenParams {
        regions: a.regions,
        components: a.components,
        robots: a.robots,
        seed: a.seed,
    })?;
    emit(a.output.as_deref(), &doc.to_json(), out)
}

fn oracle(instance: &Instance, tol: Tolerance) -> perimeter_guard::Result<Solution> {
    if instance.regions() == 1 {
        baseline_single_region(&instance.boundaries()[0], instance.robots(), tol)
    } else {
        composition_multi_region(instance, tol)
    }
}

pub fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> CliResult {
    let tol = tolerance(a.epsilon)?;
    let instance = load_instance(&a.input)?;
    let mut pass = true;

    if let Some(path) = &a.solution {
        let solution: Solution = read_solution(path)?.into();
        let diags = validate_solution(&instance, &solution, tol);
        if diags.is_empty() {
            writeln!(out, "solution: valid")?;
        } else {
            pass = false;
            for d in &diags {
                writeln!(out, "solution: {d}")?;
            }
        }
    }

    if !a.validate_only {
        instance.check_feasible()?;
        let slow = oracle(&instance, tol)?;
        let fast = solve(&instance, a.variant, tol)?;
        let scale = fast.ell_star.abs().max(slow.ell_star.abs());
        let agree = (fast.ell_star - slow.ell_star).abs() <= 1e-9 * scale;
        writeln!(out, "solver: {:.12}", fast.ell_star)?;
        writeln!(out, "oracle: {:.12}", slow.ell_star)?;
        pass &= agree;
    }

    writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
    if pass {
        Ok(())
    } else {
        Err(CliError::input("check failed"))
    }
}

pub fn cmd_render(a: &RenderArgs) -> CliResult {
    let instance = load_instance(&a.input)?;
    let solution: Option<Solution> = match &a.solution {
        Some(p) => Some(read_solution(p)?.into()),
        None => None,
    };
    let svg = render_svg(&instance, solution.as_ref())?;
    write_atomic(&a.svg, svg.as_bytes())?;
    Ok(())
}

/// CSV header of `bench` output.
pub const BENCH_HEADER: &str = "variant,m,q,n,seconds,ell_star";

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> CliResult {
    let tol = tolerance(a.epsilon)?;
    let mut csv = String::from(BENCH_HEADER);
    csv.push('\n');
    for &m in &a.m {
        for &q in &a.q {
            for &n in &a.n {
                if (n as u128) < m as u128 {
                    continue;
                }
                let instance = generate_lengths(GenParams {
                    regions: m,
                    components: q,
                    robots: n,
                    seed: a.seed,
                })?;
                let mut times = Vec::with_capacity(a.reps as usize);
                let mut ell = f64::NAN;
                for _ in 0..a.reps {
                    let t = Instant::now();
                    ell = perimeter_guard::optimum(&instance, a.variant, tol)?.ell_star;
                    times.push(t.elapsed().as_secs_f64());
                }
                times.sort_by(f64::total_cmp);
                let median = times[times.len() / 2];
                csv.push_str(&format!("{},{m},{q},{n},{median:.6},{ell}\n", a.variant));
            }
        }
    }
    emit(a.csv.as_deref(), &csv, out)
}
