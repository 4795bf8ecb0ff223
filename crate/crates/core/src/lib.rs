//! Enumeration of every independent set of a graph, the empty set and
//! non-maximal sets included, in `O(q)` amortized time per solution and
//! `O(n + m)` space, where `q` is the smallest clique size absent from the
//! graph.
//!
//! Two engines produce the same diff stream: [`enumerate_reference`] on
//! plain induced-subgraph copies, and [`enumerate_linear_space`] on a
//! run-length encoded adjacency matrix with exact rollback.

pub mod analysis;
pub mod enumerator;
pub mod error;
pub mod graph;
pub mod meter;
pub mod ordering;
pub mod rle_matrix;

pub use enumerator::{
    count_only, enumerate_linear_space, enumerate_reference, replay_diffs, Engine, LinearOptions, LinearRun,
    SolutionDiff,
};
pub use graph::{generate, parse_dimacs, parse_edge_list, Family, Graph, Vertex};
