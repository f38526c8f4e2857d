use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fgc_core::exact::MAX_EXACT_EDGES;
use fgc_core::feasibility::violated_cut;
use fgc_core::io::{generate, parse_instance, serialize_instance, GeneratorConfig, SolutionDocument};
use fgc_core::solver::ratio;
use fgc_core::{exact_opt, solve, Cost, EdgeId, Error, FgcInstance, VertexId};
use rayon::prelude::*;

const EXIT_FAILURE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_REFUSED: u8 = 4;

#[derive(Parser)]
#[command(name = "fgc", version, about = "k-flexible graph connectivity solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance with the (k+1)-approximation.
    Solve {
        file: PathBuf,
        #[arg(long)]
        root: Option<VertexId>,
        /// Drop redundant edges after solving.
        #[arg(long)]
        prune: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check feasibility of an instance, or of a solution within it.
    Check {
        file: PathBuf,
        /// Comma-separated 0-based edge IDs.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        solution: Option<Vec<EdgeId>>,
    },
    /// Compute the optimum by exhaustive search.
    Exact { file: PathBuf },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.3)]
        safe_prob: f64,
        #[arg(long, default_value_t = 10)]
        max_cost: Cost,
        #[arg(long)]
        seed: u64,
        /// Resample until the instance is feasible.
        #[arg(long)]
        feasible: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve generated instances and compare against the exact optimum.
    Bench {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        safe_prob: f64,
        #[arg(long, default_value_t = 10)]
        max_cost: Cost,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Infeasible { .. } => EXIT_INFEASIBLE,
        Error::Parse { .. } => EXIT_PARSE,
        Error::RefusedScale(_) => EXIT_REFUSED,
        _ => EXIT_FAILURE,
    }
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code(&err))
}

fn read_instance(path: &Path) -> Result<FgcInstance, ExitCode> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_FAILURE)
    })?;
    parse_instance(&text).map_err(fail)
}

fn emit(text: &str, out: Option<&Path>) -> ExitCode {
    match out {
        Some(path) => match fs::write(path, text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(EXIT_FAILURE)
            }
        },
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
    }
}

fn one_based(side: &[VertexId]) -> String {
    side.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn run_solve(file: &Path, root: Option<VertexId>, prune: bool, out: Option<&Path>) -> ExitCode {
    let instance = match read_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    match solve(&instance, root, prune) {
        Ok(sol) => emit(&SolutionDocument::solved(&sol, None).to_text(), out),
        Err(Error::Infeasible { .. }) => {
            emit(&SolutionDocument::infeasible(instance.k()).to_text(), out);
            ExitCode::from(EXIT_INFEASIBLE)
        }
        Err(e) => fail(e),
    }
}

fn run_check(file: &Path, solution: Option<Vec<EdgeId>>) -> ExitCode {
    let instance = match read_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let edges = solution.unwrap_or_else(|| instance.all_edge_ids());
    match violated_cut(&instance, &edges) {
        Ok(None) => {
            println!("feasible");
            ExitCode::SUCCESS
        }
        Ok(Some(side)) => {
            println!("infeasible");
            println!("cut {}", one_based(&side));
            ExitCode::from(EXIT_INFEASIBLE)
        }
        Err(e) => fail(e),
    }
}

fn run_exact(file: &Path) -> ExitCode {
    let instance = match read_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    match exact_opt(&instance) {
        Ok(r) => {
            println!("opt {}", r.cost);
            println!("edges {}", r.edges.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","));
            ExitCode::SUCCESS
        }
        Err(Error::Infeasible { witness }) => {
            println!("infeasible");
            println!("cut {}", one_based(&witness));
            ExitCode::from(EXIT_INFEASIBLE)
        }
        Err(e) => fail(e),
    }
}

struct Trial {
    seed: u64,
    cost: Cost,
    opt: Cost,
    ratio: f64,
    violation: bool,
}

fn bench_trial(config: GeneratorConfig) -> Result<Trial, Error> {
    let instance = generate(&config)?;
    let sol = solve(&instance, None, false)?;
    let opt = exact_opt(&instance)?;
    let factor = (instance.k() + 1) as Cost;
    let feasible = violated_cut(&instance, &sol.edges)?.is_none();
    Ok(Trial {
        seed: config.seed,
        cost: sol.cost,
        opt: opt.cost,
        ratio: ratio(sol.cost, opt.cost),
        violation: !feasible || sol.cost > factor * opt.cost,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_bench(trials: usize, n: usize, m: usize, k: usize, seed: u64, safe_prob: f64, max_cost: Cost) -> ExitCode {
    if m > MAX_EXACT_EDGES {
        return fail(Error::RefusedScale(format!(
            "{m} edges exceeds the exact limit of {MAX_EXACT_EDGES}"
        )));
    }
    let results: Vec<Result<Trial, Error>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            bench_trial(GeneratorConfig {
                n,
                m,
                k,
                safe_probability: safe_prob,
                max_cost,
                seed: seed.wrapping_add(i as u64),
                require_feasible: true,
            })
        })
        .collect();

    println!("trial,seed,cost,opt,ratio,violation");
    let mut done = Vec::with_capacity(trials);
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(t) => {
                println!("{i},{},{},{},{:.6},{}", t.seed, t.cost, t.opt, t.ratio, t.violation);
                done.push(t);
            }
            Err(e) => return fail(e),
        }
    }
    let violations = done.iter().filter(|t| t.violation).count();
    let max = done.iter().map(|t| t.ratio).fold(0.0, f64::max);
    let mean = if done.is_empty() { 0.0 } else { done.iter().map(|t| t.ratio).sum::<f64>() / done.len() as f64 };
    println!("trials {}", done.len());
    println!("max_ratio {max:.6}");
    println!("mean_ratio {mean:.6}");
    println!("bound {}", k + 1);
    println!("violations {violations}");
    if violations > 0 {
        ExitCode::from(EXIT_FAILURE)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve { file, root, prune, out } => run_solve(&file, root, prune, out.as_deref()),
        Command::Check { file, solution } => run_check(&file, solution),
        Command::Exact { file } => run_exact(&file),
        Command::Gen { n, m, k, safe_prob, max_cost, seed, feasible, out } => {
            let config = GeneratorConfig {
                n,
                m,
                k,
                safe_probability: safe_prob,
                max_cost,
                seed,
                require_feasible: feasible,
            };
            match generate(&config) {
                Ok(instance) => emit(&serialize_instance(&instance), out.as_deref()),
                Err(e) => fail(e),
            }
        }
        Command::Bench { trials, n, m, k, seed, safe_prob, max_cost } => {
            run_bench(trials, n, m, k, seed, safe_prob, max_cost)
        }
    }
}
