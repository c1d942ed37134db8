//! Evolutionary algorithm: random-mix crossover, the three neighborhoods as
//! mutation, and elitist selection of the best unique tours.

use std::collections::HashSet;

use rand::Rng;

use super::{Run, SolveResult};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::instance::EdgeId;
use crate::local_search::{perturb, perturbation_strength, Neighborhood, Scored};
use crate::tour::{AbbreviatedTour, Evaluator};

/// At most `capacity` pairwise-distinct tours, sorted by ascending cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    members: Vec<Scored>,
    capacity: usize,
}

impl Population {
    pub fn new(capacity: usize) -> Self {
        Population {
            members: Vec::new(),
            capacity,
        }
    }

    pub fn members(&self) -> &[Scored] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn best(&self) -> Option<&Scored> {
        self.members.first()
    }

    /// Keeps the best `capacity` unique tours of the current members and
    /// `offspring`. Equal costs keep their pool order, so current members
    /// come before newcomers.
    pub fn select(&mut self, offspring: Vec<Scored>) {
        let mut pool = std::mem::take(&mut self.members);
        pool.extend(offspring);
        pool.sort_by(|a, b| a.cost.total_cmp(&b.cost));
        let mut seen: HashSet<Vec<EdgeId>> = HashSet::with_capacity(pool.len());
        self.members = pool
            .into_iter()
            .filter(|s| seen.insert(s.tour.seq.clone()))
            .take(self.capacity)
            .collect();
    }
}

/// Mixes two parents with fair coin draws. See [`mix_crossover_with`].
pub fn mix_crossover<R: Rng + ?Sized>(
    a: &AbbreviatedTour,
    b: &AbbreviatedTour,
    rng: &mut R,
) -> Result<AbbreviatedTour> {
    mix_crossover_with(a, b, || if rng.gen_bool(0.5) { 1 } else { 2 })
}

/// Builds a child by repeatedly drawing a parent (`1` for `a`, `2` for `b`)
/// and taking the edge under that parent's cursor if the child lacks it.
/// The drawn cursor advances either way, so already-taken edges are skipped.
/// When one cursor runs off its parent, the remaining edges of `a` then `b`
/// are appended in order.
pub fn mix_crossover_with(
    a: &AbbreviatedTour,
    b: &AbbreviatedTour,
    mut draw: impl FnMut() -> u8,
) -> Result<AbbreviatedTour> {
    let m = a.len();
    if b.len() != m {
        return Err(Error::MismatchedParents);
    }
    let max_id = a.seq.iter().map(|e| e.0).max().unwrap_or(0);
    let mut in_a = vec![false; max_id + 1];
    for e in &a.seq {
        if std::mem::replace(&mut in_a[e.0], true) {
            return Err(Error::MismatchedParents);
        }
    }
    let mut in_b = vec![false; max_id + 1];
    for e in &b.seq {
        if e.0 > max_id || !in_a[e.0] || std::mem::replace(&mut in_b[e.0], true) {
            return Err(Error::MismatchedParents);
        }
    }

    let mut taken = vec![false; max_id + 1];
    let mut child = Vec::with_capacity(m);
    let (mut s, mut t) = (0, 0);
    while s < m && t < m && child.len() < m {
        let e = if draw() == 1 {
            s += 1;
            a.seq[s - 1]
        } else {
            t += 1;
            b.seq[t - 1]
        };
        if !std::mem::replace(&mut taken[e.0], true) {
            child.push(e);
        }
    }
    for &e in a.seq[s..].iter().chain(&b.seq[t..]) {
        if !std::mem::replace(&mut taken[e.0], true) {
            child.push(e);
        }
    }
    Ok(AbbreviatedTour::new(child))
}

pub fn ea<R: Rng + ?Sized>(
    ev: &Evaluator,
    budget: Budget,
    rng: &mut R,
    p_max: usize,
) -> Result<SolveResult> {
    ea_observed(ev, budget, rng, p_max, |_| {})
}

/// [`ea`] with a callback invoked on the population after initialization
/// and after every generation.
pub fn ea_observed<R: Rng + ?Sized>(
    ev: &Evaluator,
    budget: Budget,
    rng: &mut R,
    p_max: usize,
    mut observe: impl FnMut(&Population),
) -> Result<SolveResult> {
    if p_max < 2 {
        return Err(Error::Config(format!(
            "population size must be at least 2, got {p_max}"
        )));
    }
    let mut run = Run::from_greedy(ev, budget);
    let strength = perturbation_strength(ev.num_edges());

    let mut pop = Population::new(p_max);
    let mut initial = vec![run.best.clone()];
    for _ in 1..p_max {
        let t = perturb(&run.best.tour, strength, rng);
        if !run.budget.charge() {
            break;
        }
        initial.push(Scored::evaluate(ev, t));
    }
    pop.select(initial);
    observe(&pop);

    for _ in 0..run.budget.max_iters {
        if run.budget.exhausted() {
            break;
        }
        let mut offspring = Vec::with_capacity(pop.len() * 4);
        let n = pop.len();
        if n >= 2 {
            for i in 0..n {
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let child = mix_crossover(&pop.members[i].tour, &pop.members[j].tour, rng)?;
                if !run.budget.charge() {
                    break;
                }
                offspring.push(Scored::evaluate(ev, child));
            }
        }
        for member in &pop.members {
            for nb in Neighborhood::ALL {
                if run.budget.exhausted() {
                    break;
                }
                offspring.push(nb.best_move(ev, member, &mut run.budget));
            }
        }
        pop.select(offspring);
        observe(&pop);
        if let Some(best) = pop.best() {
            let best = best.clone();
            run.offer(&best);
        }
        run.end_iteration();
    }
    Ok(run.finish())
}
