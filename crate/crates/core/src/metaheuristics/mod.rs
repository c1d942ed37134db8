//! Metaheuristic drivers sharing the DP evaluator and the three
//! neighborhoods. All of them start from the greedy construction and are
//! elitist: the reported best never gets worse than the seed.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::construction::greedy_construct;
use crate::error::{Error, Result};
use crate::local_search::Scored;
use crate::oracle;
use crate::tour::{DirectedTour, Evaluator};

pub mod aco;
pub mod ea;
pub mod ils;
pub mod vns;

pub use aco::{aco, aco_observed, aco_sample, EtaMode, PheromoneTable};
pub use ea::{ea, ea_observed, mix_crossover, mix_crossover_with, Population};
pub use ils::ils;
pub use vns::vns;

/// RNG used by every solver and the instance generator.
pub type SolverRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub best_tour: DirectedTour,
    pub best_cost: f64,
    pub evals_used: u64,
    pub iters_done: usize,
    pub wall_seconds: f64,
    /// Best cost after each completed iteration.
    pub history: Vec<f64>,
}

impl SolveResult {
    /// Equality on everything except wall time.
    pub fn same_outcome(&self, other: &SolveResult) -> bool {
        self.best_tour == other.best_tour
            && self.best_cost == other.best_cost
            && self.evals_used == other.evals_used
            && self.iters_done == other.iters_done
            && self.history == other.history
    }

    pub fn stats(&self) -> SolveStats {
        SolveStats {
            cost: self.best_cost,
            evals: self.evals_used,
            seconds: self.wall_seconds,
        }
    }
}

/// One-line JSON record printed by `cpplc solve`.
#[derive(Debug, Clone, Serialize)]
pub struct SolveStats {
    pub cost: f64,
    pub evals: u64,
    pub seconds: f64,
}

/// Shared bookkeeping for an elitist search run.
pub(crate) struct Run<'e, 'a> {
    pub ev: &'e Evaluator<'a>,
    pub budget: Budget,
    pub best: Scored,
    pub history: Vec<f64>,
    started: Instant,
}

impl<'e, 'a> Run<'e, 'a> {
    /// Starts from the greedy construction. The seed is not charged.
    pub fn from_greedy(ev: &'e Evaluator<'a>, budget: Budget) -> Self {
        let started = Instant::now();
        let best = Scored::evaluate(ev, greedy_construct(ev));
        Run {
            ev,
            budget,
            best,
            history: Vec::new(),
            started,
        }
    }

    /// Replaces the incumbent on strict improvement.
    pub fn offer(&mut self, cand: &Scored) -> bool {
        if cand.cost < self.best.cost {
            self.best = cand.clone();
            true
        } else {
            false
        }
    }

    pub fn end_iteration(&mut self) {
        self.history.push(self.best.cost);
    }

    pub fn finish(self) -> SolveResult {
        let best_tour = self.ev.directions(&self.best.tour.seq);
        SolveResult {
            best_cost: best_tour.cost,
            best_tour,
            evals_used: self.budget.evals_used(),
            iters_done: self.history.len(),
            wall_seconds: self.started.elapsed().as_secs_f64(),
            history: self.history,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Ghc,
    Ils,
    Vns,
    Ea,
    Aco,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Ghc,
        Algorithm::Ils,
        Algorithm::Vns,
        Algorithm::Ea,
        Algorithm::Aco,
        Algorithm::Exact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ghc => "ghc",
            Algorithm::Ils => "ils",
            Algorithm::Vns => "vns",
            Algorithm::Ea => "ea",
            Algorithm::Aco => "aco",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub seed: u64,
    pub max_iters: usize,
    pub max_evals: Option<u64>,
    /// Population size for EA, number of ants for ACO.
    pub pop: usize,
    pub eta: EtaMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 0,
            max_iters: crate::budget::DEFAULT_MAX_ITERS,
            max_evals: None,
            pop: 10,
            eta: EtaMode::Root,
        }
    }
}

impl SolverConfig {
    pub fn budget(&self) -> Budget {
        Budget::new(self.max_iters).with_max_evals(self.max_evals)
    }
}

/// Greedy construction wrapped as a solver result.
pub fn ghc(ev: &Evaluator) -> SolveResult {
    Run::from_greedy(ev, Budget::new(0)).finish()
}

/// Runs `alg` with a fresh RNG seeded from `cfg.seed`.
pub fn solve(ev: &Evaluator, alg: Algorithm, cfg: &SolverConfig) -> Result<SolveResult> {
    let mut rng = seeded_rng(cfg.seed);
    let budget = cfg.budget();
    Ok(match alg {
        Algorithm::Ghc => ghc(ev),
        Algorithm::Ils => ils(ev, budget, &mut rng),
        Algorithm::Vns => vns(ev, budget, &mut rng),
        Algorithm::Ea => ea(ev, budget, &mut rng, cfg.pop)?,
        Algorithm::Aco => aco(ev, budget, &mut rng, cfg.pop, cfg.eta)?,
        Algorithm::Exact => oracle::exact_optimum(ev, oracle::EXACT_LIMIT)?,
    })
}
