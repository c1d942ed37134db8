//! All-pairs shortest paths over edge lengths (Floyd-Warshall).

use crate::instance::Instance;

/// Dense shortest-path matrices indexed by 1-based node ids.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPaths {
    n: usize,
    dist: Vec<f64>,
    // next_hop[i][j]: the node following i on the stored shortest i -> j path.
    next: Vec<usize>,
}

impl ShortestPaths {
    /// Runs Floyd-Warshall on the instance graph.
    ///
    /// Relaxations only replace a path on strict improvement, so when two
    /// routes tie the one found first (loop order k, i, j ascending) is kept.
    pub fn compute(instance: &Instance) -> Self {
        let n = instance.num_nodes();
        let size = n * n;
        let mut dist = vec![f64::INFINITY; size];
        let mut next = vec![usize::MAX; size];
        for i in 0..n {
            dist[i * n + i] = 0.0;
            next[i * n + i] = i + 1;
        }
        for e in instance.edges() {
            let (a, b) = (e.u - 1, e.v - 1);
            if e.length < dist[a * n + b] {
                dist[a * n + b] = e.length;
                dist[b * n + a] = e.length;
                next[a * n + b] = e.v;
                next[b * n + a] = e.u;
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = dist[i * n + k];
                if dik == f64::INFINITY {
                    continue;
                }
                for j in 0..n {
                    let through = dik + dist[k * n + j];
                    if through < dist[i * n + j] {
                        dist[i * n + j] = through;
                        next[i * n + j] = next[i * n + k];
                    }
                }
            }
        }
        ShortestPaths { n, dist, next }
    }

    #[inline]
    pub fn num_nodes(&self) -> usize {
        self.n
    }

    /// Shortest-path length between 1-based nodes `i` and `j`.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[(i - 1) * self.n + (j - 1)]
    }

    /// Next node after `i` on the stored shortest path to `j`, if `j` is reachable.
    #[inline]
    pub fn next_hop(&self, i: usize, j: usize) -> Option<usize> {
        match self.next[(i - 1) * self.n + (j - 1)] {
            usize::MAX => None,
            hop => Some(hop),
        }
    }

    /// Node sequence from `i` to `j` inclusive. `[i]` when `i == j`.
    pub fn path(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let mut nodes = vec![i];
        let mut cur = i;
        while cur != j {
            cur = self.next_hop(cur, j)?;
            nodes.push(cur);
            if nodes.len() > self.n {
                return None;
            }
        }
        Some(nodes)
    }
}
