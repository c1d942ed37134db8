//! Ant colony optimization over directed service states.
//!
//! There is one state per (edge, direction) pair plus a start state for the
//! depot. An ant walks from the start state through one state of every edge;
//! the probability of moving `x -> y` is proportional to `tau[x][y] * eta[x][y]`.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use super::{Run, SolveResult};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::instance::{EdgeId, DEPOT};
use crate::local_search::Scored;
use crate::tour::{endpoints, AbbreviatedTour, DirectedEdge, Direction, Evaluator};

pub const DEFAULT_RHO: f64 = 0.8;
pub const DEFAULT_DEPOSIT: f64 = 1.0;
pub const DEFAULT_EPS: f64 = 0.001;

// Floor applied to the heuristic quantity before the square root, so that
// zero-length moves keep a positive, finite attractiveness.
const ETA_FLOOR: f64 = 1e-12;

/// How the heuristic attractiveness is derived from the move cost estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EtaMode {
    /// `sqrt(cost)`, selected on the command line as `paper`.
    #[default]
    Root,
    /// `1 / sqrt(cost)`.
    Inverse,
}

impl EtaMode {
    pub fn name(self) -> &'static str {
        match self {
            EtaMode::Root => "paper",
            EtaMode::Inverse => "inverse",
        }
    }

    fn apply(self, quantity: f64) -> f64 {
        let root = quantity.max(ETA_FLOOR).sqrt();
        match self {
            EtaMode::Root => root,
            EtaMode::Inverse => 1.0 / root,
        }
    }
}

impl fmt::Display for EtaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EtaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(EtaMode::Root),
            "inverse" => Ok(EtaMode::Inverse),
            _ => Err(Error::Config(format!("unknown eta mode `{s}`"))),
        }
    }
}

/// Pheromone and attractiveness over `2m + 1` source states and `2m` targets.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneTable {
    m: usize,
    tau: Vec<f64>,
    eta: Vec<f64>,
    pub rho: f64,
    pub deposit: f64,
    pub eps: f64,
}

impl PheromoneTable {
    /// `tau = eps` everywhere; `eta` from the cost of deadheading to and
    /// servicing the target edge.
    ///
    /// From a service state the estimate uses the target edge's own demand as
    /// the load; from the start state it uses the full load `Q`. The source
    /// state's direction fixes the departure node (its exit) and the target
    /// direction fixes the entry node.
    pub fn new(ev: &Evaluator, mode: EtaMode) -> Self {
        Self::with_params(ev, mode, DEFAULT_RHO, DEFAULT_DEPOSIT, DEFAULT_EPS)
    }

    pub fn with_params(ev: &Evaluator, mode: EtaMode, rho: f64, deposit: f64, eps: f64) -> Self {
        let inst = ev.instance;
        let m = inst.num_edges();
        let w = inst.curb_weight();
        let q_total = inst.total_demand();
        let cols = 2 * m;
        let mut eta = vec![0.0; (cols + 1) * cols];
        for x in 0..=cols {
            let depart = if x == cols {
                DEPOT
            } else {
                let (e, d) = Self::decode(x);
                endpoints(inst, e, d).1
            };
            for y in 0..cols {
                let (e, d) = Self::decode(y);
                let edge = inst.edge(e);
                let (entry, _) = endpoints(inst, e, d);
                let deadhead = ev.paths.dist(depart, entry);
                let quantity = if x == cols {
                    (w + q_total) * deadhead + (w + q_total - edge.demand / 2.0) * edge.length
                } else {
                    (w + edge.demand) * deadhead + (w + edge.demand / 2.0) * edge.length
                };
                eta[x * cols + y] = mode.apply(quantity);
            }
        }
        PheromoneTable {
            m,
            tau: vec![eps; (cols + 1) * cols],
            eta,
            rho,
            deposit,
            eps,
        }
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    /// Index of the start state.
    pub fn start(&self) -> usize {
        2 * self.m
    }

    pub fn state(edge: EdgeId, dir: Direction) -> usize {
        2 * edge.index() + dir as usize
    }

    pub fn decode(state: usize) -> (EdgeId, Direction) {
        let dir = if state.is_multiple_of(2) {
            Direction::Forward
        } else {
            Direction::Backward
        };
        (EdgeId::from_index(state / 2), dir)
    }

    pub fn tau(&self, x: usize, y: usize) -> f64 {
        self.tau[x * 2 * self.m + y]
    }

    pub fn eta(&self, x: usize, y: usize) -> f64 {
        self.eta[x * 2 * self.m + y]
    }

    pub fn tau_values(&self) -> &[f64] {
        &self.tau
    }

    /// Transition distribution from `from` over both states of every edge
    /// not yet `served`, as `(state, probability)` in state order.
    pub fn transition_probabilities(&self, from: usize, served: &[bool]) -> Vec<(usize, f64)> {
        let weights = self.feasible_weights(from, served);
        let total: f64 = weights.iter().map(|&(_, w)| w).sum();
        if total > 0.0 && total.is_finite() {
            weights.into_iter().map(|(s, w)| (s, w / total)).collect()
        } else {
            let p = 1.0 / weights.len() as f64;
            weights.into_iter().map(|(s, _)| (s, p)).collect()
        }
    }

    fn feasible_weights(&self, from: usize, served: &[bool]) -> Vec<(usize, f64)> {
        let mut out = Vec::with_capacity(2 * self.m);
        for (idx, &done) in served.iter().enumerate() {
            if done {
                continue;
            }
            for dir in Direction::BOTH {
                let y = Self::state(EdgeId::from_index(idx), dir);
                out.push((y, self.tau(from, y) * self.eta(from, y)));
            }
        }
        out
    }

    /// Pheromone deposited on each transition of a tour of cost `cost`.
    pub fn deposit_amount(&self, cost: f64) -> f64 {
        self.deposit / cost.max(f64::MIN_POSITIVE).sqrt()
    }

    /// Evaporates every entry by `(1 - rho)` and adds each ant's deposit on
    /// the transitions it used, starting with the start state.
    pub fn update(&mut self, ants: &[(Vec<DirectedEdge>, f64)]) {
        let keep = 1.0 - self.rho;
        for t in &mut self.tau {
            *t *= keep;
        }
        let cols = 2 * self.m;
        for (path, cost) in ants {
            let amount = self.deposit_amount(*cost);
            let mut from = self.start();
            for step in path {
                let to = Self::state(step.edge, step.dir);
                self.tau[from * cols + to] += amount;
                from = to;
            }
        }
    }
}

/// Samples one ant walk: `m` directed states forming an edge permutation.
pub fn aco_sample<R: Rng + ?Sized>(table: &PheromoneTable, rng: &mut R) -> Vec<DirectedEdge> {
    let m = table.num_edges();
    let mut served = vec![false; m];
    let mut path = Vec::with_capacity(m);
    let mut from = table.start();
    for _ in 0..m {
        let weights = table.feasible_weights(from, &served);
        let pick = match WeightedIndex::new(weights.iter().map(|&(_, w)| w)) {
            Ok(dist) => dist.sample(rng),
            // All-zero or non-finite weights: fall back to uniform.
            Err(_) => rng.gen_range(0..weights.len()),
        };
        let to = weights[pick].0;
        let (edge, dir) = PheromoneTable::decode(to);
        served[edge.index()] = true;
        path.push(DirectedEdge::new(edge, dir));
        from = to;
    }
    path
}

pub fn aco<R: Rng + ?Sized>(
    ev: &Evaluator,
    budget: Budget,
    rng: &mut R,
    ants: usize,
    mode: EtaMode,
) -> Result<SolveResult> {
    aco_observed(ev, budget, rng, ants, mode, |_| {})
}

/// [`aco`] with a callback invoked on the table after every pheromone update.
pub fn aco_observed<R: Rng + ?Sized>(
    ev: &Evaluator,
    budget: Budget,
    rng: &mut R,
    ants: usize,
    mode: EtaMode,
    mut observe: impl FnMut(&PheromoneTable),
) -> Result<SolveResult> {
    if ants == 0 {
        return Err(Error::Config("ACO needs at least one ant".into()));
    }
    let mut run = Run::from_greedy(ev, budget);
    let mut table = PheromoneTable::new(ev, mode);
    for _ in 0..run.budget.max_iters {
        if run.budget.exhausted() {
            break;
        }
        let mut walks = Vec::with_capacity(ants);
        for _ in 0..ants {
            let path = aco_sample(&table, rng);
            if !run.budget.charge() {
                break;
            }
            // The sampled order is scored with optimal directions.
            let order = AbbreviatedTour::new(path.iter().map(|d| d.edge).collect());
            let scored = Scored::evaluate(ev, order);
            run.offer(&scored);
            walks.push((path, scored.cost));
        }
        table.update(&walks);
        observe(&table);
        run.end_iteration();
    }
    Ok(run.finish())
}
