//! Tour representations and the linear-time cost evaluation.
//!
//! A solution is stored as an [`AbbreviatedTour`]: the order in which edges
//! are serviced, without directions. Between consecutive services the vehicle
//! deadheads along shortest paths, so the only remaining freedom is the
//! direction of each service. [`Evaluator::cost`] picks the best directions
//! with a backward dynamic program over (position, direction of the previous
//! service) in O(m).

use std::fmt;

use crate::error::{Error, Result};
use crate::instance::{EdgeId, Instance, DEPOT};
use crate::paths::ShortestPaths;

/// Direction in which an edge `(u, v)` is serviced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// `u -> v` (encoded as 1).
    Forward,
    /// `v -> u` (encoded as 2).
    Backward,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Forward, Direction::Backward];

    pub fn code(self) -> u8 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(Direction::Forward),
            2 => Some(Direction::Backward),
            _ => None,
        }
    }

    #[inline]
    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbbreviatedTour {
    pub seq: Vec<EdgeId>,
}

impl AbbreviatedTour {
    pub fn new(seq: Vec<EdgeId>) -> Self {
        AbbreviatedTour { seq }
    }

    /// Edges in file order: `(e1, e2, ..., em)`.
    pub fn identity(m: usize) -> Self {
        AbbreviatedTour {
            seq: (0..m).map(EdgeId::from_index).collect(),
        }
    }

    pub fn from_ids(ids: &[usize]) -> Self {
        AbbreviatedTour {
            seq: ids.iter().map(|&i| EdgeId(i)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Checks that the tour is a permutation of the instance's edge ids.
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        check_permutation(self.seq.iter().copied(), instance.num_edges())
    }
}

pub(crate) fn check_permutation(ids: impl Iterator<Item = EdgeId>, m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    let mut count = 0;
    for id in ids {
        if id.0 == 0 || id.0 > m {
            return Err(Error::InvalidTour(format!(
                "edge id {} out of range 1..={m}",
                id.0
            )));
        }
        if std::mem::replace(&mut seen[id.index()], true) {
            return Err(Error::InvalidTour(format!("duplicate edge id {}", id.0)));
        }
        count += 1;
    }
    if count != m {
        let missing: Vec<usize> = (1..=m).filter(|&i| !seen[i - 1]).collect();
        return Err(Error::InvalidTour(format!(
            "expected {m} edges, got {count}; missing {missing:?}"
        )));
    }
    Ok(())
}

fn is_distinct_subset(seq: &[EdgeId], m: usize) -> bool {
    let mut seen = vec![false; m];
    seq.iter()
        .all(|id| id.0 >= 1 && id.0 <= m && !std::mem::replace(&mut seen[id.index()], true))
}

/// A serviced edge together with its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirectedEdge {
    pub edge: EdgeId,
    pub dir: Direction,
}

impl DirectedEdge {
    pub fn new(edge: EdgeId, dir: Direction) -> Self {
        DirectedEdge { edge, dir }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectedTour {
    pub seq: Vec<DirectedEdge>,
    pub cost: f64,
}

impl DirectedTour {
    pub fn abbreviated(&self) -> AbbreviatedTour {
        AbbreviatedTour::new(self.seq.iter().map(|d| d.edge).collect())
    }

    pub fn directions(&self) -> Vec<u8> {
        self.seq.iter().map(|d| d.dir.code()).collect()
    }
}

/// Endpoints `(entry, exit)` of edge `id` serviced in direction `dir`.
#[inline]
pub fn endpoints(instance: &Instance, id: EdgeId, dir: Direction) -> (usize, usize) {
    let e = instance.edge(id);
    match dir {
        Direction::Forward => (e.u, e.v),
        Direction::Backward => (e.v, e.u),
    }
}

/// Load on board just before servicing each edge of the tour.
///
/// The first entry is the total demand and the last equals the demand of the
/// final edge.
pub fn load_prefixes(instance: &Instance, tour: &AbbreviatedTour) -> Result<Vec<f64>> {
    tour.validate(instance)?;
    Ok(suffix_loads(instance, &tour.seq))
}

fn suffix_loads(instance: &Instance, seq: &[EdgeId]) -> Vec<f64> {
    let mut loads = vec![0.0; seq.len()];
    let mut acc = 0.0;
    for (k, &id) in seq.iter().enumerate().rev() {
        acc += instance.edge(id).demand;
        loads[k] = acc;
    }
    loads
}

/// Cost kernel bound to one instance and its shortest paths.
#[derive(Debug, Clone, Copy)]
pub struct Evaluator<'a> {
    pub instance: &'a Instance,
    pub paths: &'a ShortestPaths,
}

impl<'a> Evaluator<'a> {
    pub fn new(instance: &'a Instance, paths: &'a ShortestPaths) -> Self {
        Evaluator { instance, paths }
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.instance.num_edges()
    }

    /// Minimum cost over all direction assignments of `seq`.
    ///
    /// `seq` must hold distinct edge ids; this is only checked in debug
    /// builds. A proper subset is evaluated as if only those edges (and their
    /// demand) existed, which is what insertion heuristics need. Use
    /// [`dp_cost`] for a checked entry point.
    #[inline]
    pub fn cost(&self, seq: &[EdgeId]) -> f64 {
        self.run_dp(seq, &mut (), |_, _, _| {})
    }

    /// Same as [`Evaluator::cost`], also returning how many branch
    /// evaluations the recursion performed.
    pub fn cost_counted(&self, seq: &[EdgeId]) -> (f64, usize) {
        let mut count = 0usize;
        let cost = self.run_dp(seq, &mut count, |_, _, _| {});
        (cost, count)
    }

    /// Optimal directions for `seq`, recovered by backtracking the DP.
    pub fn directions(&self, seq: &[EdgeId]) -> DirectedTour {
        let m = seq.len();
        // choice[k][p]: best direction of edge k given direction p of edge k - 1.
        let mut choice = vec![[Direction::Forward; 2]; m];
        let cost = self.run_dp(seq, &mut choice, |choice, k, (p, c)| {
            choice[k][p.index()] = c;
        });
        let mut out = Vec::with_capacity(m);
        let mut prev = Direction::Forward;
        for (k, &edge) in seq.iter().enumerate() {
            let dir = choice[k][prev.index()];
            out.push(DirectedEdge::new(edge, dir));
            prev = dir;
        }
        DirectedTour { seq: out, cost }
    }

    /// Backward recursion. `f[p]` is the cheapest completion from position k
    /// when edge k - 1 was serviced in direction p (the depot stands in for
    /// the exit of edge 0). `state` is ticked once per evaluated option and
    /// `record` is invoked once per (k, p) with the winning direction.
    #[inline]
    fn run_dp<S>(
        &self,
        seq: &[EdgeId],
        state: &mut S,
        mut record: impl FnMut(&mut S, usize, (Direction, Direction)),
    ) -> f64
    where
        S: BranchCounter,
    {
        let m = seq.len();
        debug_assert!(m >= 1);
        debug_assert!(is_distinct_subset(seq, self.instance.num_edges()));
        let w = self.instance.curb_weight();
        let sp = self.paths;

        let mut load = 0.0;
        let mut f_next = [0.0f64; 2];
        for k in (0..m).rev() {
            let edge = self.instance.edge(seq[k]);
            load += edge.demand;
            let service = (w + load - edge.demand / 2.0) * edge.length;
            let deadhead_weight = w + load;

            // Completion cost after servicing edge k in direction c.
            let mut tail = [0.0f64; 2];
            for c in Direction::BOTH {
                let (_, exit) = endpoints(self.instance, seq[k], c);
                tail[c.index()] = if k + 1 == m {
                    w * sp.dist(exit, DEPOT)
                } else {
                    f_next[c.index()]
                };
            }

            let prevs: &[Direction] = if k == 0 {
                &[Direction::Forward]
            } else {
                &Direction::BOTH
            };
            let mut f = [f64::INFINITY; 2];
            for &p in prevs {
                let from = if k == 0 {
                    DEPOT
                } else {
                    endpoints(self.instance, seq[k - 1], p).1
                };
                let mut best = f64::INFINITY;
                let mut best_dir = Direction::Forward;
                for c in Direction::BOTH {
                    state.tick();
                    let (entry, _) = endpoints(self.instance, seq[k], c);
                    let v = deadhead_weight * sp.dist(from, entry) + tail[c.index()];
                    // Strict comparison keeps Forward on ties.
                    if v < best {
                        best = v;
                        best_dir = c;
                    }
                }
                f[p.index()] = service + best;
                record(state, k, (p, best_dir));
            }
            f_next = f;
        }
        f_next[Direction::Forward.index()]
    }

    /// Cost of a tour with fixed directions.
    pub fn evaluate_directed(&self, seq: &[DirectedEdge]) -> f64 {
        let w = self.instance.curb_weight();
        let ids: Vec<EdgeId> = seq.iter().map(|d| d.edge).collect();
        let loads = suffix_loads(self.instance, &ids);
        let mut total = 0.0;
        let mut at = DEPOT;
        for (k, step) in seq.iter().enumerate() {
            let edge = self.instance.edge(step.edge);
            let (entry, exit) = endpoints(self.instance, step.edge, step.dir);
            total += (w + loads[k]) * self.paths.dist(at, entry);
            total += (w + loads[k] - edge.demand / 2.0) * edge.length;
            at = exit;
        }
        total + w * self.paths.dist(at, DEPOT)
    }

    /// Expands a directed tour into the closed node walk it describes.
    pub fn expand_walk(&self, tour: &DirectedTour) -> Vec<WalkStep> {
        let mut walk = Vec::new();
        let mut at = DEPOT;
        for step in &tour.seq {
            let (entry, exit) = endpoints(self.instance, step.edge, step.dir);
            self.push_deadhead(&mut walk, at, entry);
            walk.push(WalkStep {
                from: entry,
                to: exit,
                length: self.instance.edge(step.edge).length,
                serviced: Some(step.edge),
            });
            at = exit;
        }
        self.push_deadhead(&mut walk, at, DEPOT);
        walk
    }

    fn push_deadhead(&self, walk: &mut Vec<WalkStep>, from: usize, to: usize) {
        let nodes = self
            .paths
            .path(from, to)
            .expect("instance graph is connected");
        for pair in nodes.windows(2) {
            walk.push(WalkStep {
                from: pair[0],
                to: pair[1],
                length: self.paths.dist(pair[0], pair[1]),
                serviced: None,
            });
        }
    }

    /// Re-sums a walk under the load model: servicing an edge is charged at the
    /// average load while on it, deadheading at the full load.
    pub fn walk_cost(&self, walk: &[WalkStep]) -> f64 {
        let w = self.instance.curb_weight();
        let mut load = self.instance.total_demand();
        let mut total = 0.0;
        for step in walk {
            match step.serviced {
                Some(id) => {
                    let q = self.instance.edge(id).demand;
                    total += (w + load - q / 2.0) * step.length;
                    load -= q;
                }
                None => total += (w + load) * step.length,
            }
        }
        total
    }
}

trait BranchCounter {
    fn tick(&mut self) {}
}

impl BranchCounter for () {}

impl BranchCounter for usize {
    #[inline]
    fn tick(&mut self) {
        *self += 1;
    }
}

impl BranchCounter for Vec<[Direction; 2]> {}

/// One traversal in an expanded walk.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkStep {
    pub from: usize,
    pub to: usize,
    pub length: f64,
    /// The edge serviced on this traversal, or `None` when deadheading.
    pub serviced: Option<EdgeId>,
}

impl fmt::Display for WalkStep {
    /// `(i,j)` for a service, `[i,j]` for a deadhead.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.serviced {
            Some(_) => write!(f, "({},{})", self.from, self.to),
            None => write!(f, "[{},{}]", self.from, self.to),
        }
    }
}

pub fn format_walk(walk: &[WalkStep]) -> String {
    walk.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Checked DP cost of an abbreviated tour.
pub fn dp_cost(instance: &Instance, paths: &ShortestPaths, tour: &AbbreviatedTour) -> Result<f64> {
    tour.validate(instance)?;
    Ok(Evaluator::new(instance, paths).cost(&tour.seq))
}

/// Checked DP with direction recovery.
pub fn dp_directions(
    instance: &Instance,
    paths: &ShortestPaths,
    tour: &AbbreviatedTour,
) -> Result<DirectedTour> {
    tour.validate(instance)?;
    Ok(Evaluator::new(instance, paths).directions(&tour.seq))
}

/// Checked cost of a tour with stated directions.
pub fn evaluate_directed(
    instance: &Instance,
    paths: &ShortestPaths,
    seq: &[DirectedEdge],
) -> Result<f64> {
    check_permutation(seq.iter().map(|d| d.edge), instance.num_edges())?;
    Ok(Evaluator::new(instance, paths).evaluate_directed(seq))
}

pub fn expand_walk(
    instance: &Instance,
    paths: &ShortestPaths,
    tour: &DirectedTour,
) -> Result<Vec<WalkStep>> {
    check_permutation(tour.seq.iter().map(|d| d.edge), instance.num_edges())?;
    Ok(Evaluator::new(instance, paths).expand_walk(tour))
}
