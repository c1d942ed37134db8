//! Exhaustive reference solvers for small instances.

use std::time::Instant;

use rayon::prelude::*;

use crate::construction::greedy_construct;
use crate::error::{Error, Result};
use crate::instance::EdgeId;
use crate::metaheuristics::SolveResult;
use crate::tour::{AbbreviatedTour, DirectedEdge, Direction, Evaluator};

/// Largest edge count accepted by [`exact_optimum`].
pub const EXACT_LIMIT: usize = 9;
/// Largest edge count accepted by [`direction_bruteforce`].
pub const DIRECTION_LIMIT: usize = 14;

// Lower bounds are shaved by this relative margin before pruning so that
// rounding can never discard a tour that ties the incumbent.
const BOUND_SLACK: f64 = 1e-9;

/// Minimum of the directed cost over all `2^m` direction vectors.
pub fn direction_bruteforce(ev: &Evaluator, tour: &AbbreviatedTour, limit: usize) -> Result<f64> {
    let m = tour.len();
    if m > limit.min(DIRECTION_LIMIT) {
        return Err(Error::TooLarge {
            m,
            limit: limit.min(DIRECTION_LIMIT),
        });
    }
    tour.validate(ev.instance)?;
    let mut seq: Vec<DirectedEdge> = tour
        .seq
        .iter()
        .map(|&e| DirectedEdge::new(e, Direction::Forward))
        .collect();
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << m) {
        for (k, step) in seq.iter_mut().enumerate() {
            step.dir = if mask >> k & 1 == 1 {
                Direction::Backward
            } else {
                Direction::Forward
            };
        }
        best = best.min(ev.evaluate_directed(&seq));
    }
    Ok(best)
}

/// Global optimum over all `m!` service orders; among optimal orders the
/// lexicographically smallest (by edge id) is returned.
///
/// Orders are enumerated lexicographically with the subtree for each first
/// edge searched on the rayon pool. A prefix is abandoned once its service
/// cost plus the cheapest possible service of the remaining edges exceeds
/// the greedy construction's cost or the subtree's own best. Subtrees do not
/// share incumbents, so the result and the evaluation count are independent
/// of scheduling.
pub fn exact_optimum(ev: &Evaluator, limit: usize) -> Result<SolveResult> {
    let started = Instant::now();
    let inst = ev.instance;
    let m = inst.num_edges();
    let limit = limit.min(EXACT_LIMIT);
    if m > limit {
        return Err(Error::TooLarge { m, limit });
    }

    let ceiling = ev.cost(&greedy_construct(ev).seq);
    let per_root: Vec<(Option<Incumbent>, u64)> = (0..m)
        .into_par_iter()
        .map(|root| {
            let mut search = Search::new(ev, ceiling);
            search.prefix.push(EdgeId::from_index(root));
            search.used[root] = true;
            search.descend();
            (search.best, search.evaluated)
        })
        .collect();

    let mut evaluated = 0;
    let mut best: Option<Incumbent> = None;
    // Roots are in ascending order, so strict comparison keeps the
    // lexicographically smallest optimum.
    for (found, evals) in per_root {
        evaluated += evals;
        if let Some((cost, seq)) = found {
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, seq));
            }
        }
    }
    let (_, seq) = best.expect("at least one edge");
    let best_tour = ev.directions(&seq);
    Ok(SolveResult {
        best_cost: best_tour.cost,
        best_tour,
        evals_used: evaluated,
        iters_done: 0,
        wall_seconds: started.elapsed().as_secs_f64(),
        history: Vec::new(),
    })
}

/// Cost and edge order of the best complete tour found.
type Incumbent = (f64, Vec<EdgeId>);

struct Search<'s, 'a> {
    ev: &'s Evaluator<'a>,
    ceiling: f64,
    prefix: Vec<EdgeId>,
    used: Vec<bool>,
    best: Option<Incumbent>,
    evaluated: u64,
    total_demand: f64,
}

impl<'s, 'a> Search<'s, 'a> {
    fn new(ev: &'s Evaluator<'a>, ceiling: f64) -> Self {
        let m = ev.num_edges();
        Search {
            ev,
            ceiling,
            prefix: Vec::with_capacity(m),
            used: vec![false; m],
            best: None,
            evaluated: 0,
            total_demand: ev.instance.total_demand(),
        }
    }

    /// Service cost of the prefix (exact, since the prefix fixes its loads)
    /// plus each remaining edge serviced at the lowest load it could carry.
    fn lower_bound(&self) -> f64 {
        let inst = self.ev.instance;
        let w = inst.curb_weight();
        let mut load = self.total_demand;
        let mut bound = 0.0;
        for &id in &self.prefix {
            let e = inst.edge(id);
            bound += (w + load - e.demand / 2.0) * e.length;
            load -= e.demand;
        }
        for (idx, &u) in self.used.iter().enumerate() {
            if !u {
                let e = &inst.edges()[idx];
                bound += (w + e.demand / 2.0) * e.length;
            }
        }
        bound
    }

    fn should_prune(&self) -> bool {
        let bound = self.lower_bound() * (1.0 - BOUND_SLACK);
        let local = self.best.as_ref().map_or(f64::INFINITY, |b| b.0);
        // Within this subtree a tie can never win (later orders are larger).
        // The greedy ceiling is only an upper bound on the optimum, so ties
        // with it must survive.
        bound >= local || bound > self.ceiling
    }

    fn descend(&mut self) {
        let m = self.used.len();
        if self.prefix.len() == m {
            self.evaluated += 1;
            let cost = self.ev.cost(&self.prefix);
            if self.best.as_ref().is_none_or(|b| cost < b.0) {
                self.best = Some((cost, self.prefix.clone()));
            }
            return;
        }
        if self.should_prune() {
            return;
        }
        for idx in 0..m {
            if self.used[idx] {
                continue;
            }
            self.used[idx] = true;
            self.prefix.push(EdgeId::from_index(idx));
            self.descend();
            self.prefix.pop();
            self.used[idx] = false;
        }
    }
}
