//! Best-improvement neighborhoods over abbreviated tours, and the random
//! swap perturbation.
//!
//! Each scan walks positions `s` (outer) and `t` (inner) in ascending order
//! and only replaces the incumbent on a strictly lower cost, so the first
//! best move found wins ties.

use rand::Rng;

use crate::budget::Budget;
use crate::instance::EdgeId;
use crate::tour::{AbbreviatedTour, Evaluator};

/// A tour with its DP cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Scored {
    pub tour: AbbreviatedTour,
    pub cost: f64,
}

impl Scored {
    pub fn new(tour: AbbreviatedTour, cost: f64) -> Self {
        Scored { tour, cost }
    }

    /// Evaluates `tour` without charging any budget.
    pub fn evaluate(ev: &Evaluator, tour: AbbreviatedTour) -> Self {
        let cost = ev.cost(&tour.seq);
        Scored { tour, cost }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighborhood {
    /// 1-OPT: move the edge at `s` to position `t`.
    Relocate,
    /// 2-OPT: reverse positions `s..=t`.
    Reverse,
    /// 2-EXCHANGE: swap positions `s` and `t`.
    Swap,
}

impl Neighborhood {
    pub const ALL: [Neighborhood; 3] = [
        Neighborhood::Relocate,
        Neighborhood::Reverse,
        Neighborhood::Swap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Neighborhood::Relocate => "1-opt",
            Neighborhood::Reverse => "2-opt",
            Neighborhood::Swap => "2-exchange",
        }
    }

    /// Writes the neighbor for move `(s, t)` into `out`. `None` if the pair
    /// is not part of this neighborhood.
    pub fn apply(self, seq: &[EdgeId], s: usize, t: usize, out: &mut Vec<EdgeId>) -> Option<()> {
        out.clear();
        match self {
            Neighborhood::Relocate => {
                if s == t {
                    return None;
                }
                let moved = seq[s];
                out.extend(
                    seq.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != s)
                        .map(|(_, &e)| e),
                );
                out.insert(t, moved);
            }
            Neighborhood::Reverse => {
                if s >= t {
                    return None;
                }
                out.extend_from_slice(seq);
                out[s..=t].reverse();
            }
            Neighborhood::Swap => {
                if s >= t {
                    return None;
                }
                out.extend_from_slice(seq);
                out.swap(s, t);
            }
        }
        Some(())
    }

    /// Best neighbor of `current`, or `current` itself if none is strictly
    /// cheaper. Every candidate evaluation is charged to `budget`; once the
    /// budget runs out the best found so far is returned.
    pub fn best_move(self, ev: &Evaluator, current: &Scored, budget: &mut Budget) -> Scored {
        let seq = &current.tour.seq;
        let m = seq.len();
        let mut best_cost = current.cost;
        let mut best: Option<Vec<EdgeId>> = None;
        let mut buf = Vec::with_capacity(m);
        'scan: for s in 0..m {
            for t in 0..m {
                if self.apply(seq, s, t, &mut buf).is_none() {
                    continue;
                }
                if !budget.charge() {
                    break 'scan;
                }
                let c = ev.cost(&buf);
                if c < best_cost {
                    best_cost = c;
                    match &mut best {
                        Some(b) => b.clone_from(&buf),
                        None => best = Some(buf.clone()),
                    }
                }
            }
        }
        match best {
            Some(seq) => Scored::new(AbbreviatedTour::new(seq), best_cost),
            None => current.clone(),
        }
    }
}

fn run(
    nb: Neighborhood,
    ev: &Evaluator,
    tour: &AbbreviatedTour,
    budget: &mut Budget,
) -> AbbreviatedTour {
    let current = Scored::evaluate(ev, tour.clone());
    nb.best_move(ev, &current, budget).tour
}

pub fn one_opt(ev: &Evaluator, tour: &AbbreviatedTour, budget: &mut Budget) -> AbbreviatedTour {
    run(Neighborhood::Relocate, ev, tour, budget)
}

pub fn two_opt(ev: &Evaluator, tour: &AbbreviatedTour, budget: &mut Budget) -> AbbreviatedTour {
    run(Neighborhood::Reverse, ev, tour, budget)
}

pub fn two_exchange(
    ev: &Evaluator,
    tour: &AbbreviatedTour,
    budget: &mut Budget,
) -> AbbreviatedTour {
    run(Neighborhood::Swap, ev, tour, budget)
}

/// Number of random swaps used to perturb a tour of `m` edges.
pub fn perturbation_strength(m: usize) -> usize {
    ((0.2 * m as f64).round() as usize).max(1)
}

/// Applies `strength` swaps of two distinct, uniformly drawn positions.
/// Draws with `s == t` are rejected and redrawn. Tours with fewer than two
/// edges are returned unchanged.
pub fn perturb<R: Rng + ?Sized>(
    tour: &AbbreviatedTour,
    strength: usize,
    rng: &mut R,
) -> AbbreviatedTour {
    let mut seq = tour.seq.clone();
    let m = seq.len();
    if m < 2 {
        return AbbreviatedTour::new(seq);
    }
    for _ in 0..strength {
        let (s, t) = loop {
            let s = rng.gen_range(0..m);
            let t = rng.gen_range(0..m);
            if s != t {
                break (s, t);
            }
        };
        seq.swap(s, t);
    }
    AbbreviatedTour::new(seq)
}
