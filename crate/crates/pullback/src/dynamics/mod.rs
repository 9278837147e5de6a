//! Postcritical dynamics of Thurston maps: functional graphs, the
//! constant-pullback filter pipeline and portrait enumeration.

mod enumerate;
mod filter;
mod graph;

pub use enumerate::{diff_graphs, enumerate_portraits, surviving_graphs, EnumError, EnumSpec, MAX_DEGREE, MAX_POINTS};
pub use filter::{constant_pullback_filter, FilterOptions, FilterReport, FilterResult, FilterVerdict, Verdict};
pub use graph::{
    build_graph, check_indegree_bound, Component, Decomposition, DynamicsError, FunctionalGraph, GraphJson,
    IndegreeWitness, Tree,
};
