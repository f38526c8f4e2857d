//! Solvers for the k-flexible graph connectivity problem (k-FGC).
//!
//! An instance is an undirected multigraph whose edges are either safe or
//! unsafe; a feasible edge set stays connected after deleting any `k` of its
//! unsafe edges. [`solve`] returns a feasible set of cost at most `(k + 1)`
//! times the optimum by orienting every edge into bidirected arc pairs and
//! taking a minimum-cost `r`-out `(k + 1)`-arborescence of the result.
//!
//! The arborescence engine is generic over the weight type (see [`Weight`]);
//! instance costs are exact 64-bit integers ([`Cost`]).

pub mod arborescence;
pub mod error;
pub mod exact;
pub mod feasibility;
pub mod graph;
pub mod io;
pub mod reduction;
pub mod solver;
mod weight;

pub use arborescence::{
    decompose, exists_k_arborescence, forest_union_independent, max_flow,
    min_cost_arborescence, min_cost_k_arborescence, weighted_matroid_intersection,
    DualCertificate, GraphicUnion, InDegreePartition, KArborescence, Matroid,
};
pub use error::{Error, Result};
pub use exact::{exact_k_arborescence, exact_opt, ExactResult};
pub use feasibility::{global_min_cut, is_feasible_instance, is_feasible_solution};
pub use graph::{Arc, ArcSet, Digraph, Edge, FgcInstance, Safety};
pub use reduction::{build_digraph, map_back};
pub use solver::{solve, verify_solution, FgcSolution, VerificationReport};
pub use weight::Weight;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type ArcId = usize;

/// Exact integer cost used by instances and the FGC pipeline.
pub type Cost = i64;

/// Largest admissible per-edge cost. Keeps every cost sum far from overflow.
pub const MAX_EDGE_COST: Cost = 1 << 40;

/// Digraph with integer arc costs, as produced by the reduction.
pub type CostDigraph = Digraph<Cost>;
/// Arc set over a [`CostDigraph`].
pub type CostArcSet<'a> = ArcSet<'a, Cost>;
/// Integer-cost k-arborescence.
pub type CostKArborescence<'a> = KArborescence<'a, Cost>;
