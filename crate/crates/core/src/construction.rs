//! Greedy insertion heuristic used to seed every metaheuristic.

use crate::instance::EdgeId;
use crate::tour::{AbbreviatedTour, Evaluator};

/// Builds a tour by inserting edges in decreasing order of `length * demand`
/// (ties by ascending id), each at the position of the partial tour that
/// minimizes its DP cost (ties to the earliest position).
pub fn greedy_construct(ev: &Evaluator) -> AbbreviatedTour {
    let inst = ev.instance;
    let mut order: Vec<EdgeId> = inst.edge_ids().collect();
    let key = |id: &EdgeId| {
        let e = inst.edge(*id);
        e.length * e.demand
    };
    // Stable sort keeps ascending ids among equal keys.
    order.sort_by(|a, b| key(b).total_cmp(&key(a)));

    let mut tour: Vec<EdgeId> = Vec::with_capacity(order.len());
    let mut candidate: Vec<EdgeId> = Vec::with_capacity(order.len());
    for id in order {
        let mut best_pos = 0;
        let mut best_cost = f64::INFINITY;
        for pos in 0..=tour.len() {
            candidate.clear();
            candidate.extend_from_slice(&tour[..pos]);
            candidate.push(id);
            candidate.extend_from_slice(&tour[pos..]);
            let c = ev.cost(&candidate);
            if c < best_cost {
                best_cost = c;
                best_pos = pos;
            }
        }
        tour.insert(best_pos, id);
    }
    AbbreviatedTour::new(tour)
}
