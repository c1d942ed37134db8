//! Solvers for the Chinese Postman Problem with load-dependent costs.
//!
//! A vehicle leaves the depot (node 1) carrying the total demand, services
//! every edge once and returns empty. Traversing an edge of length `d` costs
//! `d * (W + load)`, so the order in which edges are serviced matters.
//!
//! Tours are handled in abbreviated form: an ordering of edge ids. The
//! [`Evaluator`] picks optimal service directions for an ordering in linear
//! time, and every search method works on orderings only.

pub mod bench;
pub mod budget;
pub mod construction;
pub mod error;
pub mod format;
pub mod generator;
pub mod instance;
pub mod local_search;
pub mod metaheuristics;
pub mod oracle;
pub mod paths;
pub mod tour;

pub use budget::Budget;
pub use construction::greedy_construct;
pub use error::{Error, Result};
pub use instance::{Edge, EdgeId, Instance, DEPOT};
pub use metaheuristics::{solve, Algorithm, SolveResult, SolverConfig};
pub use paths::ShortestPaths;
pub use tour::{AbbreviatedTour, DirectedEdge, DirectedTour, Direction, Evaluator};
