//! Iterated local search.

use rand::Rng;

use super::{Run, SolveResult};
use crate::budget::Budget;
use crate::local_search::{perturb, perturbation_strength, Neighborhood, Scored};
use crate::tour::Evaluator;

/// Perturb the incumbent, descend with the best move across all three
/// neighborhoods until none improves, and keep the result only if it beats
/// the incumbent.
pub fn ils<R: Rng + ?Sized>(ev: &Evaluator, budget: Budget, rng: &mut R) -> SolveResult {
    let mut run = Run::from_greedy(ev, budget);
    let strength = perturbation_strength(ev.num_edges());
    for _ in 0..run.budget.max_iters {
        if run.budget.exhausted() {
            break;
        }
        let kicked = perturb(&run.best.tour, strength, rng);
        if !run.budget.charge() {
            break;
        }
        let start = Scored::evaluate(ev, kicked);
        let local = best_improvement_descent(ev, start, &mut run.budget);
        run.offer(&local);
        run.end_iteration();
    }
    run.finish()
}

/// Repeatedly applies the cheapest of the three best moves while it improves.
pub fn best_improvement_descent(ev: &Evaluator, mut cur: Scored, budget: &mut Budget) -> Scored {
    while !budget.exhausted() {
        let mut best: Option<Scored> = None;
        for nb in Neighborhood::ALL {
            let cand = nb.best_move(ev, &cur, budget);
            if best.as_ref().is_none_or(|b| cand.cost < b.cost) {
                best = Some(cand);
            }
        }
        match best {
            Some(b) if b.cost < cur.cost => cur = b,
            _ => break,
        }
    }
    cur
}
