//! Test-side oracles, written independently of the library's evaluator.

#![allow(dead_code)]

use cpplc::{Direction, Edge, EdgeId, Instance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Connected multigraph with `n` nodes and `m >= n - 1` edges: a random
/// spanning tree plus random extra edges (parallel edges allowed). Integer
/// lengths in 1..=20, demands in 1..=20, curb weight one of 0, Q/2 or a
/// random integer.
pub fn random_instance(n: usize, m: usize, seed: u64) -> Instance {
    assert!(n >= 2 && m >= n - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for k in 1..n {
        pairs.push((order[k], order[rng.gen_range(0..k)]));
    }
    while pairs.len() < m {
        let a = rng.gen_range(1..=n);
        let mut b = rng.gen_range(1..=n - 1);
        if b >= a {
            b += 1;
        }
        pairs.push((a, b));
    }
    pairs.shuffle(&mut rng);
    let edges: Vec<Edge> = pairs
        .into_iter()
        .map(|(a, b)| {
            Edge::new(
                a,
                b,
                rng.gen_range(1..=20) as f64,
                rng.gen_range(1..=20) as f64,
            )
        })
        .collect();
    let q: f64 = edges.iter().map(|e| e.demand).sum();
    let w = match rng.gen_range(0..3) {
        0 => 0.0,
        1 => q / 2.0,
        _ => rng.gen_range(0..=50) as f64,
    };
    Instance::new(n, edges, w)
}

pub fn random_order(m: usize, rng: &mut impl Rng) -> Vec<EdgeId> {
    let mut seq: Vec<EdgeId> = (1..=m).map(EdgeId).collect();
    seq.shuffle(rng);
    seq
}

/// All-pairs distances by repeated O(n^2) Dijkstra, 1-based.
pub fn dijkstra_all(inst: &Instance) -> Vec<Vec<f64>> {
    let n = inst.num_nodes();
    let mut adj = vec![Vec::new(); n + 1];
    for e in inst.edges() {
        adj[e.u].push((e.v, e.length));
        adj[e.v].push((e.u, e.length));
    }
    let mut all = vec![vec![f64::INFINITY; n + 1]; n + 1];
    for s in 1..=n {
        let dist = &mut all[s];
        let mut done = vec![false; n + 1];
        dist[s] = 0.0;
        for _ in 0..n {
            let Some(u) = (1..=n)
                .filter(|&i| !done[i] && dist[i].is_finite())
                .min_by(|&a, &b| dist[a].total_cmp(&dist[b]))
            else {
                break;
            };
            done[u] = true;
            for &(v, d) in &adj[u] {
                if dist[u] + d < dist[v] {
                    dist[v] = dist[u] + d;
                }
            }
        }
    }
    all
}

/// Cost of a directed tour straight from the load model: deadhead legs at
/// the full current load over shortest paths, service at load minus half
/// the edge's demand, and the empty return weighted by the curb weight.
pub fn reference_cost(inst: &Instance, dist: &[Vec<f64>], seq: &[(EdgeId, Direction)]) -> f64 {
    let w = inst.curb_weight();
    let mut load: f64 = seq.iter().map(|&(e, _)| inst.edge(e).demand).sum();
    let mut pos = 1;
    let mut cost = 0.0;
    for &(id, dir) in seq {
        let e = inst.edge(id);
        let (a, b) = match dir {
            Direction::Forward => (e.u, e.v),
            Direction::Backward => (e.v, e.u),
        };
        cost += (w + load) * dist[pos][a];
        cost += (w + load - e.demand / 2.0) * e.length;
        load -= e.demand;
        pos = b;
    }
    cost + w * dist[pos][1]
}

/// Minimum of [`reference_cost`] over all direction vectors.
pub fn reference_best_directions(inst: &Instance, dist: &[Vec<f64>], order: &[EdgeId]) -> f64 {
    let m = order.len();
    (0u32..1 << m)
        .map(|mask| {
            let seq: Vec<_> = order
                .iter()
                .enumerate()
                .map(|(k, &e)| {
                    let d = if mask >> k & 1 == 1 {
                        Direction::Backward
                    } else {
                        Direction::Forward
                    };
                    (e, d)
                })
                .collect();
            reference_cost(inst, dist, &seq)
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Every permutation of `items` in lexicographic order of positions.
pub fn permutations(items: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub enum Move {
    Relocate,
    Reverse,
    Swap,
}

/// Neighborhood listed in scan order, built from the move definitions.
pub fn neighbors(seq: &[EdgeId], mv: Move) -> Vec<Vec<EdgeId>> {
    let m = seq.len();
    let mut out = Vec::new();
    for s in 0..m {
        for t in 0..m {
            match mv {
                Move::Relocate if s != t => {
                    let mut v = seq.to_vec();
                    let e = v.remove(s);
                    v.insert(t, e);
                    out.push(v);
                }
                Move::Reverse if s < t => {
                    let mut v = seq.to_vec();
                    v[s..=t].reverse();
                    out.push(v);
                }
                Move::Swap if s < t => {
                    let mut v = seq.to_vec();
                    v.swap(s, t);
                    out.push(v);
                }
                _ => {}
            }
        }
    }
    out
}

pub fn is_permutation(seq: &[EdgeId], m: usize) -> bool {
    let mut seen = vec![false; m + 1];
    seq.len() == m
        && seq
            .iter()
            .all(|e| e.0 >= 1 && e.0 <= m && !std::mem::replace(&mut seen[e.0], true))
}
