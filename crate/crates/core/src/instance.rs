//! Problem instances: an undirected multigraph whose edges all require
//! service, a vehicle curb weight, and the depot fixed at node 1.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// The depot is always node 1.
pub const DEPOT: usize = 1;

/// 1-based edge identifier: the position of the edge in the instance's edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    /// Zero-based index into [`Instance::edges`].
    #[inline]
    pub fn index(self) -> usize {
        self.0 - 1
    }

    #[inline]
    pub fn from_index(idx: usize) -> Self {
        EdgeId(idx + 1)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Length.
    pub length: f64,
    /// Demand delivered while servicing the edge.
    pub demand: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, length: f64, demand: f64) -> Self {
        Edge {
            u,
            v,
            length,
            demand,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    nodes: usize,
    edges: Vec<Edge>,
    curb_weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValidationError {
    NoNodes,
    NoEdges,
    SelfLoop { edge: EdgeId, node: usize },
    NodeOutOfRange { edge: EdgeId, node: usize },
    NegativeLength { edge: EdgeId },
    NonPositiveDemand { edge: EdgeId },
    NonFinite { edge: EdgeId },
    InvalidCurbWeight,
    Disconnected { unreachable: Vec<usize> },
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::NoNodes => write!(f, "instance has no nodes"),
            ValidationError::NoEdges => write!(f, "instance has no edges"),
            ValidationError::SelfLoop { edge, node } => {
                write!(f, "self-loop: {edge} joins node {node} to itself")
            }
            ValidationError::NodeOutOfRange { edge, node } => {
                write!(f, "node id out of range: {edge} references node {node}")
            }
            ValidationError::NegativeLength { edge } => write!(f, "negative length on {edge}"),
            ValidationError::NonPositiveDemand { edge } => {
                write!(f, "nonpositive demand on {edge}")
            }
            ValidationError::NonFinite { edge } => {
                write!(f, "non-finite length or demand on {edge}")
            }
            ValidationError::InvalidCurbWeight => {
                write!(f, "curb weight must be finite and >= 0")
            }
            ValidationError::Disconnected { unreachable } => {
                write!(
                    f,
                    "disconnected: nodes {unreachable:?} unreachable from depot"
                )
            }
        }
    }
}

impl Instance {
    /// Builds an instance without validating it. See [`Instance::validate`].
    pub fn new(nodes: usize, edges: Vec<Edge>, curb_weight: f64) -> Self {
        Instance {
            nodes,
            edges,
            curb_weight,
        }
    }

    /// Builds an instance and rejects it if any invariant is violated.
    pub fn checked(nodes: usize, edges: Vec<Edge>, curb_weight: f64) -> Result<Self> {
        let inst = Self::new(nodes, edges, curb_weight);
        inst.validate().map_err(Error::InvalidInstance)?;
        Ok(inst)
    }

    #[inline]
    pub fn num_nodes(&self) -> usize {
        self.nodes
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.index()]
    }

    #[inline]
    pub fn curb_weight(&self) -> f64 {
        self.curb_weight
    }

    pub fn set_curb_weight(&mut self, w: f64) {
        self.curb_weight = w;
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId::from_index)
    }

    /// Total demand Q carried out of the depot.
    pub fn total_demand(&self) -> f64 {
        self.edges.iter().map(|e| e.demand).sum()
    }

    /// Number of edge endpoints incident to each node (index 0 unused).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes + 1];
        for e in &self.edges {
            if e.u <= self.nodes {
                deg[e.u] += 1;
            }
            if e.v <= self.nodes {
                deg[e.v] += 1;
            }
        }
        deg
    }

    /// Collects every violated invariant. `Ok(())` iff the instance is usable.
    pub fn validate(&self) -> Result<(), Vec<ValidationError>> {
        let mut errs = Vec::new();
        if self.nodes == 0 {
            errs.push(ValidationError::NoNodes);
        }
        if self.edges.is_empty() {
            errs.push(ValidationError::NoEdges);
        }
        if !(self.curb_weight.is_finite() && self.curb_weight >= 0.0) {
            errs.push(ValidationError::InvalidCurbWeight);
        }

        let mut adjacency = vec![Vec::new(); self.nodes + 1];
        for (idx, e) in self.edges.iter().enumerate() {
            let id = EdgeId::from_index(idx);
            let mut in_range = true;
            for node in [e.u, e.v] {
                if node == 0 || node > self.nodes {
                    errs.push(ValidationError::NodeOutOfRange { edge: id, node });
                    in_range = false;
                }
            }
            if e.u == e.v {
                errs.push(ValidationError::SelfLoop {
                    edge: id,
                    node: e.u,
                });
            }
            if !e.length.is_finite() || !e.demand.is_finite() {
                errs.push(ValidationError::NonFinite { edge: id });
            } else {
                if e.length < 0.0 {
                    errs.push(ValidationError::NegativeLength { edge: id });
                }
                if e.demand <= 0.0 {
                    errs.push(ValidationError::NonPositiveDemand { edge: id });
                }
            }
            if in_range {
                adjacency[e.u].push(e.v);
                adjacency[e.v].push(e.u);
            }
        }

        if self.nodes >= DEPOT {
            let mut seen = vec![false; self.nodes + 1];
            let mut queue = VecDeque::from([DEPOT]);
            seen[DEPOT] = true;
            while let Some(x) = queue.pop_front() {
                for &y in &adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            let unreachable: Vec<usize> = (1..=self.nodes).filter(|&i| !seen[i]).collect();
            if !unreachable.is_empty() {
                errs.push(ValidationError::Disconnected { unreachable });
            }
        }

        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    /// The four-node example used throughout the tests and docs.
    pub fn example() -> Self {
        Instance::new(
            4,
            vec![
                Edge::new(1, 2, 2.0, 100.0),
                Edge::new(2, 3, 1.0, 20.0),
                Edge::new(1, 4, 1.0, 10.0),
                Edge::new(3, 4, 10.0, 5.0),
            ],
            0.0,
        )
    }
}
