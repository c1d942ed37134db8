//! Seeded random instance generator.
//!
//! Nodes are points in the unit square. The graph is a random spanning tree
//! plus uniformly drawn extra node pairs up to the requested density, with
//! integer lengths `round(1000 * euclidean distance)` (at least 1).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::{Edge, Instance};
use crate::metaheuristics::seeded_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemandMode {
    /// `q_e = d_e`.
    Proportional,
    /// `q_e` uniform on `1..=100`.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurbWeightMode {
    Zero,
    HalfQ,
    FiveQ,
}

impl CurbWeightMode {
    pub fn weight(self, total_demand: f64) -> f64 {
        match self {
            CurbWeightMode::Zero => 0.0,
            CurbWeightMode::HalfQ => total_demand / 2.0,
            CurbWeightMode::FiveQ => 5.0 * total_demand,
        }
    }
}

impl FromStr for DemandMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prop" | "proportional" => Ok(DemandMode::Proportional),
            "rand" | "random" => Ok(DemandMode::Random),
            _ => Err(Error::Config(format!("unknown demand mode `{s}`"))),
        }
    }
}

impl fmt::Display for DemandMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DemandMode::Proportional => "prop",
            DemandMode::Random => "rand",
        })
    }
}

impl FromStr for CurbWeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" | "zero" => Ok(CurbWeightMode::Zero),
            "halfQ" => Ok(CurbWeightMode::HalfQ),
            "fiveQ" => Ok(CurbWeightMode::FiveQ),
            _ => Err(Error::Config(format!("unknown curb weight mode `{s}`"))),
        }
    }
}

impl fmt::Display for CurbWeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurbWeightMode::Zero => "0",
            CurbWeightMode::HalfQ => "halfQ",
            CurbWeightMode::FiveQ => "fiveQ",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub density: f64,
    pub demand: DemandMode,
    pub curb_weight: CurbWeightMode,
    /// Pair odd-degree nodes with extra parallel edges so every degree is even.
    pub eulerian: bool,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n: usize, density: f64) -> Self {
        GenParams {
            n,
            density,
            demand: DemandMode::Proportional,
            curb_weight: CurbWeightMode::Zero,
            eulerian: false,
            seed: 0,
        }
    }
}

pub fn generate(p: &GenParams) -> Result<Instance> {
    let n = p.n;
    if n < 3 {
        return Err(Error::Config(format!("need at least 3 nodes, got {n}")));
    }
    if !(p.density > 0.0 && p.density <= 1.0) {
        return Err(Error::Config(format!(
            "density must be in (0, 1], got {}",
            p.density
        )));
    }
    let mut rng = seeded_rng(p.seed);

    let coords: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let length = |a: usize, b: usize| {
        let (xa, ya) = coords[a - 1];
        let (xb, yb) = coords[b - 1];
        let d = ((xa - xb).powi(2) + (ya - yb).powi(2)).sqrt();
        (1000.0 * d).round().max(1.0)
    };
    let ordered = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };

    // Random spanning tree: each node in a shuffled order attaches to a
    // uniformly chosen earlier one.
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(&mut rng);
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut simple: Vec<(usize, usize)> = Vec::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        let e = ordered(order[k], parent);
        pairs.insert(e);
        simple.push(e);
    }

    let max_pairs = n * (n - 1) / 2;
    let target = ((p.density * max_pairs as f64).ceil() as usize).clamp(n - 1, max_pairs);
    let mut rest: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter(|e| !pairs.contains(e))
        .collect();
    rest.shuffle(&mut rng);
    simple.extend(rest.into_iter().take(target - (n - 1)));
    simple.sort_unstable();

    let mut endpoints = simple;
    if p.eulerian {
        let mut degree = vec![0usize; n + 1];
        for &(a, b) in &endpoints {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut odd: Vec<usize> = (1..=n).filter(|&i| degree[i] % 2 == 1).collect();
        odd.shuffle(&mut rng);
        for pair in odd.chunks(2) {
            endpoints.push(ordered(pair[0], pair[1]));
        }
    }

    let edges: Vec<Edge> = endpoints
        .into_iter()
        .map(|(a, b)| {
            let d = length(a, b);
            let q = match p.demand {
                DemandMode::Proportional => d,
                DemandMode::Random => rng.gen_range(1..=100) as f64,
            };
            Edge::new(a, b, d, q)
        })
        .collect();

    let mut inst = Instance::new(n, edges, 0.0);
    inst.set_curb_weight(p.curb_weight.weight(inst.total_demand()));
    inst.validate().map_err(Error::InvalidInstance)?;
    Ok(inst)
}
