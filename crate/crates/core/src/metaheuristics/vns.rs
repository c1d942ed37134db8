//! Variable neighborhood search.

use rand::Rng;

use super::{Run, SolveResult};
use crate::budget::Budget;
use crate::local_search::{perturb, perturbation_strength, Neighborhood, Scored};
use crate::tour::Evaluator;

/// Neighborhoods in increasing order of scan cost.
pub const VNS_ORDER: [Neighborhood; 3] = [
    Neighborhood::Swap,
    Neighborhood::Relocate,
    Neighborhood::Reverse,
];

pub fn vns<R: Rng + ?Sized>(ev: &Evaluator, budget: Budget, rng: &mut R) -> SolveResult {
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
        let local = first_improvement_descent(ev, start, &mut run.budget);
        run.offer(&local);
        run.end_iteration();
    }
    run.finish()
}

/// Applies the first neighborhood (in [`VNS_ORDER`]) whose best move
/// improves, restarting from the first neighborhood after every move.
pub fn first_improvement_descent(ev: &Evaluator, mut cur: Scored, budget: &mut Budget) -> Scored {
    'descent: loop {
        for nb in VNS_ORDER {
            if budget.exhausted() {
                break 'descent;
            }
            let cand = nb.best_move(ev, &cur, budget);
            if cand.cost < cur.cost {
                cur = cand;
                continue 'descent;
            }
        }
        break;
    }
    cur
}
