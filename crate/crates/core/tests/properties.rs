mod common;

use common::*;
use cpplc::budget::Budget;
use cpplc::local_search::{
    one_opt, perturb, perturbation_strength, two_exchange, two_opt, Neighborhood, Scored,
};
use cpplc::metaheuristics::{
    aco_observed, aco_sample, ea_observed, mix_crossover, seeded_rng, EtaMode, PheromoneTable,
};
use cpplc::tour::format_walk;
use cpplc::{
    greedy_construct, solve, AbbreviatedTour, Algorithm, Direction, Edge, Evaluator, Instance,
    ShortestPaths, SolverConfig,
};
use proptest::prelude::*;
use rand::Rng;

/// (nodes, edges, seed) for a small connected instance.
fn shape(max_n: usize, max_m: usize) -> impl Strategy<Value = (usize, usize, u64)> {
    (2..=max_n).prop_flat_map(move |n| (Just(n), (n - 1).max(1)..=max_m.max(n - 1), any::<u64>()))
}

fn scaled(inst: &Instance, length: f64, weight: f64) -> Instance {
    let edges = inst
        .edges()
        .iter()
        .map(|e| Edge::new(e.u, e.v, e.length * length, e.demand * weight))
        .collect();
    Instance::new(inst.num_nodes(), edges, inst.curb_weight() * weight)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn floyd_warshall_matches_dijkstra((n, m, seed) in shape(9, 14)) {
        let inst = random_instance(n, m, seed);
        let sp = ShortestPaths::compute(&inst);
        let dj = dijkstra_all(&inst);
        for i in 1..=n {
            for j in 1..=n {
                prop_assert_eq!(sp.dist(i, j), dj[i][j]);
                let path = sp.path(i, j).unwrap();
                prop_assert_eq!(path[0], i);
                prop_assert_eq!(*path.last().unwrap(), j);
                let walked: f64 = path.windows(2).map(|w| dj[w[0]][w[1]]).sum();
                prop_assert_eq!(walked, dj[i][j]);
            }
        }
    }

    #[test]
    fn dp_matches_direction_enumeration((n, m, seed) in shape(7, 9)) {
        let inst = random_instance(n, m, seed);
        let sp = ShortestPaths::compute(&inst);
        let ev = Evaluator::new(&inst, &sp);
        let order = random_order(m, &mut seeded_rng(seed));
        let dj = dijkstra_all(&inst);
        let brute = reference_best_directions(&inst, &dj, &order);
        let dp = ev.cost(&order);
        prop_assert!(rel_close(dp, brute, 1e-9), "dp {} brute {}", dp, brute);

        // The chosen directions realize the DP cost.
        let tour = ev.directions(&order);
        let seq: Vec<_> = tour.seq.iter().map(|d| (d.edge, d.dir)).collect();
        prop_assert!(rel_close(reference_cost(&inst, &dj, &seq), dp, 1e-9));
        prop_assert!(rel_close(tour.cost, dp, 1e-12));
    }

    #[test]
    fn cost_scales_linearly((n, m, seed) in shape(6, 8), c in 1u32..5) {
        let inst = random_instance(n, m, seed);
        let order = random_order(m, &mut seeded_rng(seed));
        let cost = |i: &Instance| {
            let sp = ShortestPaths::compute(i);
            Evaluator::new(i, &sp).cost(&order)
        };
        let base = cost(&inst);
        let c = c as f64;
        prop_assert!(rel_close(cost(&scaled(&inst, c, 1.0)), c * base, 1e-12));
        prop_assert!(rel_close(cost(&scaled(&inst, 1.0, c)), c * base, 1e-12));
    }

    #[test]
    fn service_cost_is_a_lower_bound((n, m, seed) in shape(8, 10)) {
        let inst = random_instance(n, m, seed);
        let sp = ShortestPaths::compute(&inst);
        let ev = Evaluator::new(&inst, &sp);
        let order = random_order(m, &mut seeded_rng(seed));
        let w = inst.curb_weight();
        let mut load = inst.total_demand();
        let mut bound = 0.0;
        for &id in &order {
            let e = inst.edge(id);
            bound += (w + load - e.demand / 2.0) * e.length;
            load -= e.demand;
        }
        prop_assert!(ev.cost(&order) >= bound * (1.0 - 1e-12));
    }

    #[test]
    fn walk_is_closed_and_resums((n, m, seed) in shape(8, 10)) {
        let inst = random_instance(n, m, seed);
        let sp = ShortestPaths::compute(&inst);
        let ev = Evaluator::new(&inst, &sp);
        let order = random_order(m, &mut seeded_rng(seed));
        let tour = ev.directions(&order);
        let walk = ev.expand_walk(&tour);
        prop_assert_eq!(walk.first().map(|s| s.from), Some(1));
        prop_assert_eq!(walk.last().map(|s| s.to), Some(1));
        for pair in walk.windows(2) {
            prop_assert_eq!(pair[0].to, pair[1].from, "{}", format_walk(&walk));
        }
        let mut served: Vec<usize> = walk.iter().filter_map(|s| s.serviced.map(|e| e.0)).collect();
        served.sort();
        prop_assert_eq!(served, (1..=m).collect::<Vec<_>>());
        prop_assert!(rel_close(ev.walk_cost(&walk), tour.cost, 1e-9));
    }

    #[test]
    fn operators_are_complete_and_non_worsening((n, m, seed) in shape(5, 6)) {
        let inst = random_instance(n, m, seed);
        let sp = ShortestPaths::compute(&inst);
        let ev = Evaluator::new(&inst, &sp);
        let start = AbbreviatedTour::new(random_order(m, &mut seeded_rng(seed)));
        let start_cost = ev.cost(&start.seq);
        type Op = fn(&Evaluator, &AbbreviatedTour, &mut Budget) -> AbbreviatedTour;
        let ops: [(Move, Op); 3] =
            [(Move::Relocate, one_opt), (Move::Reverse, two_opt), (Move::Swap, two_exchange)];
        for (mv, op) in ops {
            let mut expected = start.seq.clone();
            let mut expected_cost = start_cost;
            for cand in neighbors(&start.seq, mv) {
                let c = ev.cost(&cand);
                if c < expected_cost {
                    expected_cost = c;
                    expected = cand;
                }
            }
            let got = op(&ev, &start, &mut Budget::default());
            prop_assert_eq!(&got.seq, &expected, "{:?}", mv);
            prop_assert!(ev.cost(&got.seq) <= start_cost);
            prop_assert!(is_permutation(&got.seq, m));
        }
    }

    #[test]
    fn operators_charge_one_eval_per_neighbor((n, m, seed) in shape(6, 8), cap in 0u64..40) {
        let inst = random_instance(n, m, seed);
        let sp = ShortestPaths::compute(&inst);
        let ev = Evaluator::new(&inst, &sp);
        let cur = Scored::evaluate(&ev, AbbreviatedTour::identity(m));
        for (nb, mv) in Neighborhood::ALL.into_iter().zip([Move::Relocate, Move::Reverse, Move::Swap]) {
            let mut unlimited = Budget::default();
            nb.best_move(&ev, &cur, &mut unlimited);
            prop_assert_eq!(unlimited.evals_used(), neighbors(&cur.tour.seq, mv).len() as u64);
            let mut capped = Budget::default().with_max_evals(Some(cap));
            nb.best_move(&ev, &cur, &mut capped);
            prop_assert!(capped.evals_used() <= cap);
        }
    }

    #[test]
    fn perturb_and_crossover_preserve_permutations(m in 1usize..20, seed: u64) {
        let mut rng = seeded_rng(seed);
        let a = AbbreviatedTour::new(random_order(m, &mut rng));
        let b = AbbreviatedTour::new(random_order(m, &mut rng));
        let p = perturb(&a, perturbation_strength(m), &mut rng);
        prop_assert!(is_permutation(&p.seq, m));
        let child = mix_crossover(&a, &b, &mut rng).unwrap();
        prop_assert!(is_permutation(&child.seq, m));
    }

    #[test]
    fn aco_transitions_are_distributions((n, m, seed) in shape(6, 8), inverse: bool) {
        let inst = random_instance(n, m, seed);
        let sp = ShortestPaths::compute(&inst);
        let ev = Evaluator::new(&inst, &sp);
        let mode = if inverse { EtaMode::Inverse } else { EtaMode::Root };
        let table = PheromoneTable::new(&ev, mode);
        let mut rng = seeded_rng(seed);
        let mut served = vec![false; m];
        let mut from = table.start();
        for _ in 0..m {
            let probs = table.transition_probabilities(from, &served);
            let total: f64 = probs.iter().map(|p| p.1).sum();
            prop_assert!((total - 1.0).abs() < 1e-9);
            for &(s, p) in &probs {
                let (e, _) = PheromoneTable::decode(s);
                prop_assert!(!served[e.index()]);
                prop_assert!(p >= 0.0);
            }
            prop_assert_eq!(probs.len(), 2 * served.iter().filter(|s| !**s).count());
            let (e, _) = PheromoneTable::decode(probs[rng.gen_range(0..probs.len())].0);
            served[e.index()] = true;
            from = PheromoneTable::state(e, Direction::Forward);
        }
        let sample = aco_sample(&table, &mut rng);
        let order: Vec<_> = sample.iter().map(|d| d.edge).collect();
        prop_assert!(is_permutation(&order, m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn solvers_are_elitist_and_within_budget((n, m, seed) in shape(6, 8), cap in 50u64..400) {
        let inst = random_instance(n, m, seed);
        let sp = ShortestPaths::compute(&inst);
        let ev = Evaluator::new(&inst, &sp);
        let ghc_cost = ev.cost(&greedy_construct(&ev).seq);
        for alg in [Algorithm::Ils, Algorithm::Vns, Algorithm::Ea, Algorithm::Aco] {
            let cfg = SolverConfig { seed, max_iters: 10, max_evals: Some(cap), ..SolverConfig::default() };
            let r = solve(&ev, alg, &cfg).unwrap();
            let order: Vec<_> = r.best_tour.seq.iter().map(|d| d.edge).collect();
            prop_assert!(is_permutation(&order, m), "{}", alg);
            prop_assert!(r.best_cost <= ghc_cost, "{}", alg);
            prop_assert_eq!(r.best_cost, ev.cost(&order));
            prop_assert!(r.evals_used <= cap, "{} used {}", alg, r.evals_used);
            prop_assert!(r.history.windows(2).all(|w| w[1] <= w[0]), "{}", alg);
            prop_assert!(r.history.len() <= 10);
            let again = solve(&ev, alg, &cfg).unwrap();
            prop_assert!(r.same_outcome(&again), "{} is not deterministic", alg);
        }
    }

    #[test]
    fn ea_population_stays_sorted_unique_and_bounded((n, m, seed) in shape(6, 8), p_max in 2usize..8) {
        let inst = random_instance(n, m, seed);
        let sp = ShortestPaths::compute(&inst);
        let ev = Evaluator::new(&inst, &sp);
        let mut bests = Vec::new();
        let mut ok = true;
        ea_observed(&ev, Budget::new(8), &mut seeded_rng(seed), p_max, |pop| {
            let members = pop.members();
            ok &= !members.is_empty() && members.len() <= p_max;
            ok &= members.windows(2).all(|w| w[0].cost <= w[1].cost);
            let mut seqs: Vec<_> = members.iter().map(|s| s.tour.seq.clone()).collect();
            seqs.sort();
            seqs.dedup();
            ok &= seqs.len() == members.len();
            ok &= members.iter().all(|s| is_permutation(&s.tour.seq, m) && s.cost == ev.cost(&s.tour.seq));
            bests.push(members[0].cost);
        })
        .unwrap();
        prop_assert!(ok);
        prop_assert!(bests.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn aco_pheromone_stays_positive((n, m, seed) in shape(5, 6)) {
        let inst = random_instance(n, m, seed);
        let sp = ShortestPaths::compute(&inst);
        let ev = Evaluator::new(&inst, &sp);
        let mut ok = true;
        aco_observed(&ev, Budget::new(5), &mut seeded_rng(seed), 4, EtaMode::Root, |t| {
            ok &= t.tau_values().iter().all(|&x| x > 0.0 && x.is_finite());
        })
        .unwrap();
        prop_assert!(ok);
    }
}

#[test]
fn aco_sampler_matches_transition_probabilities() {
    let inst = random_instance(4, 3, 11);
    let sp = ShortestPaths::compute(&inst);
    let ev = Evaluator::new(&inst, &sp);
    let table = PheromoneTable::new(&ev, EtaMode::Root);
    let probs = table.transition_probabilities(table.start(), &[false; 3]);
    let n = 10_000;
    let mut counts = [0usize; 6];
    let mut rng = seeded_rng(5);
    for _ in 0..n {
        let first = aco_sample(&table, &mut rng)[0];
        counts[PheromoneTable::state(first.edge, first.dir)] += 1;
    }
    for (state, p) in probs {
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        let freq = counts[state] as f64 / n as f64;
        assert!(
            (freq - p).abs() <= 3.0 * sigma,
            "state {state}: frequency {freq} vs probability {p}"
        );
    }
}

#[test]
fn aco_uniform_when_pheromone_and_attractiveness_are_flat() {
    // Two identical parallel edges between the depot and node 2 in a
    // symmetric layout: every first move from the start has the same weight.
    let inst = Instance::new(
        2,
        vec![Edge::new(1, 2, 1.0, 1.0), Edge::new(2, 1, 1.0, 1.0)],
        0.0,
    );
    let sp = ShortestPaths::compute(&inst);
    let ev = Evaluator::new(&inst, &sp);
    let table = PheromoneTable::new(&ev, EtaMode::Root);
    let probs = table.transition_probabilities(table.start(), &[false; 2]);
    let fwd1 = probs[0].1;
    let fwd2 = probs
        .iter()
        .find(|p| p.0 == PheromoneTable::state(cpplc::EdgeId(2), Direction::Backward))
        .unwrap()
        .1;
    assert!((fwd1 - fwd2).abs() < 1e-15);
}
