//! Exact counting of geodesic subpaths in finite simple graphs.
//!
//! The central quantity is the *geodesic subpath number* of a connected
//! graph: the total number of distinct paths that occur as subpaths of
//! shortest paths, counted over all vertex pairs and including the trivial
//! one-vertex paths. Everything here is exact — counts are arbitrary
//! precision integers and inequality checks are integer comparisons, never
//! floating point.
//!
//! The crate is organized around that invariant:
//!
//! - [`graph`]: a compact adjacency-list graph with validated construction.
//! - [`geodesic`]: BFS-based shortest-path counting, the subpath number
//!   itself, and a brute-force cross-check used by the test suite.
//! - [`families`]: generators and closed-form counts for the structured
//!   families with known formulas (sequential joins of cliques, hypercubes,
//!   grids), plus exact lower-bound verdicts and asymptotic comparisons.
//! - [`formats`]: graph6 and edge-list parsing/rendering.
//! - [`enumeration`]: isomorphism-free enumeration of small connected
//!   graphs and of cacti, with extremal scans and bound sweeps.
//! - [`cactus`]: cactus decomposition, the structural predicates that pin
//!   down gpn-maximal cacti, local rewiring transforms that provably do not
//!   decrease the count, and a driver that runs them to a fixed point.
//! - [`search`]: seeded stochastic search and a bipartite comparison
//!   experiment.

pub mod cactus;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod formats;
pub mod geodesic;
pub mod graph;
pub mod search;

pub use error::{Error, Result};
pub use graph::Graph;
