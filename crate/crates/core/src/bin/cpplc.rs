use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cpplc::bench::{run_bench, verify_solution, BenchConfig, GapRef};
use cpplc::format::{
    format_cost, read_instance, read_solution, write_instance, write_solution, Solution,
};
use cpplc::generator::{generate, CurbWeightMode, DemandMode, GenParams};
use cpplc::metaheuristics::EtaMode;
use cpplc::{solve, Algorithm, Error, Evaluator, ShortestPaths, SolverConfig};

const EXIT_RUNTIME: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(
    name = "cpplc",
    version,
    about = "Chinese Postman with load-dependent costs"
)]
#[command(
    after_help = "Set CPPLC_THREADS to cap the number of worker threads.\n\
Exit codes: 0 ok, 1 runtime error, 2 invalid input."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(clap::Args, Clone)]
struct SolverArgs {
    /// Outer iterations (generations for EA and ACO).
    #[arg(long, default_value_t = cpplc::budget::DEFAULT_MAX_ITERS)]
    iters: usize,
    /// Optional cap on tour evaluations.
    #[arg(long)]
    max_evals: Option<u64>,
    /// Population size for EA, number of ants for ACO.
    #[arg(long, default_value_t = 10)]
    pop: usize,
    #[arg(long, default_value = "paper", value_parser = parse_with::<EtaMode>)]
    aco_eta: EtaMode,
}

impl SolverArgs {
    fn config(&self, seed: u64) -> SolverConfig {
        SolverConfig {
            seed,
            max_iters: self.iters,
            max_evals: self.max_evals,
            pop: self.pop,
            eta: self.aco_eta,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate random instances.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        density: f64,
        #[arg(long, default_value = "prop", value_parser = parse_with::<DemandMode>)]
        demand: DemandMode,
        #[arg(long, default_value = "0", value_parser = parse_with::<CurbWeightMode>)]
        w: CurbWeightMode,
        #[arg(long)]
        eulerian: bool,
        /// Instance k of the batch uses seed + k.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Check a solution file against an instance.
    Cost {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Solve one instance and print a JSON stats line.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "ea", value_parser = parse_with::<Algorithm>)]
        alg: Algorithm,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
        /// Write the best tour here in solution format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run algorithms over every *.cpplc file in a directory.
    ///
    /// Time (s) covers the solver call only. Parsing and the shortest-path
    /// precomputation are excluded.
    Bench {
        dir: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "ghc,ils,vns,ea,aco", value_parser = parse_with::<Algorithm>)]
        algs: Vec<Algorithm>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[command(flatten)]
        solver: SolverArgs,
        /// Gap reference: best over all runs, or the exact optimum when m <= 9.
        #[arg(long, default_value = "best", value_parser = parse_with::<GapRef>)]
        gap_ref: GapRef,
        /// Write raw rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Report zero seconds so output is reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
}

fn parse_with<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => EXIT_RUNTIME,
        _ => EXIT_INVALID,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(&e))
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("CPPLC_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
    {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => fail(e),
    }
}

fn run(cmd: Command) -> Result<ExitCode, Error> {
    match cmd {
        Command::Gen {
            n,
            density,
            demand,
            w,
            eulerian,
            seed,
            count,
            out_dir,
        } => {
            fs::create_dir_all(&out_dir).map_err(|source| Error::Io {
                path: out_dir.clone(),
                source,
            })?;
            for k in 0..count {
                let inst = generate(&GenParams {
                    n,
                    density,
                    demand,
                    curb_weight: w,
                    eulerian,
                    seed: seed + k as u64,
                })?;
                let path = out_dir.join(format!("inst_{k:03}.cpplc"));
                write_instance(&inst, &path)?;
                println!("{}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cost { instance, solution } => {
            let inst = read_instance(&instance)?;
            let sol = read_solution(&solution)?;
            let sp = ShortestPaths::compute(&inst);
            let v = verify_solution(&inst, &sp, &sol)?;
            println!("dp_cost {}", format_cost(v.dp_cost));
            println!("directed_cost {}", format_cost(v.directed_cost));
            println!("stated_cost {}", format_cost(v.stated_cost));
            if v.cost_matches {
                println!("valid");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("mismatch");
                Ok(ExitCode::from(EXIT_RUNTIME))
            }
        }
        Command::Solve {
            instance,
            alg,
            seed,
            solver,
            out,
        } => {
            let inst = read_instance(&instance)?;
            let sp = ShortestPaths::compute(&inst);
            let ev = Evaluator::new(&inst, &sp);
            let r = solve(&ev, alg, &solver.config(seed))?;
            if let Some(path) = out {
                write_solution(&Solution::from(&r.best_tour), path)?;
            }
            println!(
                "{}",
                serde_json::to_string(&r.stats()).expect("plain struct")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            dir,
            algs,
            seeds,
            solver,
            gap_ref,
            csv,
            no_timing,
        } => {
            let cfg = BenchConfig {
                algs,
                seeds,
                solver: solver.config(0),
                gap_ref,
                timing: !no_timing,
            };
            let report = run_bench(&dir, &cfg)?;
            for (what, why) in &report.warnings {
                eprintln!("warning: skipped {what}: {why}");
            }
            if let Some(path) = csv {
                fs::write(&path, report.to_csv()).map_err(|source| Error::Io { path, source })?;
            }
            print!("{}", report.to_table());
            Ok(if report.warnings.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INVALID)
            })
        }
    }
}
