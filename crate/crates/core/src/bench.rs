//! Benchmark harness over a directory of instance files, plus the solution
//! verifier behind `cpplc cost`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::{read_instance, Solution};
use crate::instance::Instance;
use crate::metaheuristics::{solve, Algorithm, SolverConfig};
use crate::oracle::{exact_optimum, EXACT_LIMIT};
use crate::paths::ShortestPaths;
use crate::tour::{check_permutation, Evaluator};

pub const INSTANCE_EXTENSION: &str = "cpplc";
pub const CSV_HEADER: &str = "instance,alg,seed,cost,evals,seconds";

/// Tolerance used when comparing a solution file's stated cost.
pub const COST_TOLERANCE: f64 = 1e-6;

/// Reference cost for the gap column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GapRef {
    /// Best cost over all algorithms and seeds on the instance.
    #[default]
    Best,
    /// Exact optimum when the instance is small enough, otherwise `Best`.
    Exact,
}

impl FromStr for GapRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "best" => Ok(GapRef::Best),
            "exact" => Ok(GapRef::Exact),
            _ => Err(Error::Config(format!("unknown gap reference `{s}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algs: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    /// Solver settings; the seed field is overridden per cell.
    pub solver: SolverConfig,
    pub gap_ref: GapRef,
    /// When false, the seconds column is written as zero so output is
    /// reproducible byte for byte.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub alg: Algorithm,
    pub seed: u64,
    pub cost: f64,
    pub evals: u64,
    pub seconds: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgSummary {
    pub alg: Algorithm,
    pub runs: usize,
    pub mean_obj: f64,
    pub mean_gap: f64,
    pub mean_seconds: f64,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub summary: Vec<AlgSummary>,
    /// `(file or cell, reason)` for everything that could not be run.
    pub warnings: Vec<(String, String)>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{CSV_HEADER}").unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{:.6}",
                csv_field(&r.instance),
                r.alg,
                r.seed,
                r.cost,
                r.evals,
                r.seconds
            )
            .unwrap();
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<8} {:>6} {:>16} {:>9} {:>10}",
            "Method", "Runs", "Obj.", "Gap (%)", "Time (s)"
        )
        .unwrap();
        for s in &self.summary {
            writeln!(
                out,
                "{:<8} {:>6} {:>16.2} {:>9.2} {:>10.3}",
                s.alg.name().to_uppercase(),
                s.runs,
                s.mean_obj,
                s.mean_gap,
                s.mean_seconds
            )
            .unwrap();
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Instance files (`*.cpplc`) in `dir`, sorted by file name.
pub fn list_instances(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == INSTANCE_EXTENSION))
        .collect();
    files.sort();
    Ok(files)
}

struct Loaded {
    name: String,
    instance: Instance,
    paths: ShortestPaths,
}

/// Runs every (instance, algorithm, seed) cell on the rayon pool. Rows come
/// back in cell order regardless of completion order. Wall time covers the
/// solver only, not parsing or the shortest-path precomputation.
pub fn run_bench(dir: &Path, cfg: &BenchConfig) -> Result<BenchReport> {
    let mut report = BenchReport::default();
    let mut loaded = Vec::new();
    for path in list_instances(dir)? {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        match read_instance(&path) {
            Ok(instance) => {
                let paths = ShortestPaths::compute(&instance);
                loaded.push(Loaded {
                    name,
                    instance,
                    paths,
                });
            }
            Err(e) => report.warnings.push((name, e.to_string())),
        }
    }

    let cells: Vec<(usize, Algorithm, u64)> = (0..loaded.len())
        .flat_map(|i| {
            cfg.algs
                .iter()
                .flat_map(move |&a| cfg.seeds.iter().map(move |&s| (i, a, s)))
        })
        .collect();

    let results: Vec<Result<BenchRow>> = cells
        .par_iter()
        .map(|&(i, alg, seed)| {
            let l = &loaded[i];
            let ev = Evaluator::new(&l.instance, &l.paths);
            let solver = SolverConfig {
                seed,
                ..cfg.solver.clone()
            };
            let r = solve(&ev, alg, &solver)?;
            Ok(BenchRow {
                instance: l.name.clone(),
                alg,
                seed,
                cost: r.best_cost,
                evals: r.evals_used,
                seconds: if cfg.timing { r.wall_seconds } else { 0.0 },
                gap: 0.0,
            })
        })
        .collect();

    for (res, &(i, alg, seed)) in results.into_iter().zip(&cells) {
        match res {
            Ok(row) => report.rows.push(row),
            Err(e) => report.warnings.push((
                format!("{} {alg} seed {seed}", loaded[i].name),
                e.to_string(),
            )),
        }
    }

    let references: Vec<f64> = loaded
        .par_iter()
        .map(|l| {
            let best = report
                .rows
                .iter()
                .filter(|r| r.instance == l.name)
                .map(|r| r.cost)
                .fold(f64::INFINITY, f64::min);
            if cfg.gap_ref == GapRef::Exact && l.instance.num_edges() <= EXACT_LIMIT {
                let ev = Evaluator::new(&l.instance, &l.paths);
                exact_optimum(&ev, EXACT_LIMIT).map_or(best, |r| r.best_cost)
            } else {
                best
            }
        })
        .collect();
    for row in &mut report.rows {
        let idx = loaded.iter().position(|l| l.name == row.instance).unwrap();
        row.gap = gap_percent(row.cost, references[idx]);
    }

    report.summary = summarize(&report.rows, &cfg.algs);
    Ok(report)
}

/// `100 * (cost - reference) / reference`, zero when both are zero.
pub fn gap_percent(cost: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        if cost == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        100.0 * (cost - reference) / reference
    }
}

pub fn summarize(rows: &[BenchRow], algs: &[Algorithm]) -> Vec<AlgSummary> {
    algs.iter()
        .map(|&alg| {
            let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.alg == alg).collect();
            let n = mine.len();
            let mean = |f: &dyn Fn(&BenchRow) -> f64| {
                if n == 0 {
                    f64::NAN
                } else {
                    mine.iter().map(|r| f(r)).sum::<f64>() / n as f64
                }
            };
            AlgSummary {
                alg,
                runs: n,
                mean_obj: mean(&|r| r.cost),
                mean_gap: mean(&|r| r.gap),
                mean_seconds: mean(&|r| r.seconds),
            }
        })
        .collect()
}

/// Outcome of checking a solution file against an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    /// Optimal cost for the solution's edge order.
    pub dp_cost: f64,
    /// Cost of the order with the directions as stated.
    pub directed_cost: f64,
    pub stated_cost: f64,
    pub cost_matches: bool,
}

/// Fails with [`Error::InvalidTour`] if the solution is not a permutation
/// of the instance's edges.
pub fn verify_solution(
    instance: &Instance,
    paths: &ShortestPaths,
    sol: &Solution,
) -> Result<Verdict> {
    check_permutation(sol.seq.iter().map(|d| d.edge), instance.num_edges())?;
    let ev = Evaluator::new(instance, paths);
    let order: Vec<_> = sol.seq.iter().map(|d| d.edge).collect();
    let dp_cost = ev.cost(&order);
    let directed_cost = ev.evaluate_directed(&sol.seq);
    Ok(Verdict {
        dp_cost,
        directed_cost,
        stated_cost: sol.cost,
        cost_matches: (sol.cost - directed_cost).abs() <= COST_TOLERANCE,
    })
}
