//! Hopsets for weighted undirected graphs.
//!
//! A hopset `H` is a set of extra weighted edges such that every pair of
//! vertices has a path in `G ∪ H` of at most `β` edges whose length is within
//! a factor `1 + ε` of the true distance. This crate builds hopsets from a
//! random level hierarchy `V = V_0 ⊇ V_1 ⊇ … ⊇ V_k` (pivots and bunches, with
//! every added edge weighted by the exact distance between its endpoints),
//! derives the hopbound `β` for a requested `ε`, and verifies the result
//! against exact shortest-path oracles.
//!
//! ```
//! use hopset_core::{build_hopset, derive_params, generate_graph, verify_hopset};
//! use hopset_core::{Family, PairSpec, WeightDist};
//!
//! let g = generate_graph(Family::ErdosRenyi { m: 600 }, 200, WeightDist::Unit, 1).unwrap();
//! let built = build_hopset(&g, 2, 7).unwrap();
//! let params = derive_params(2, 1.0).unwrap();
//! let report = verify_hopset(&g, &built.hopset, &params, &PairSpec::uniform(20, 3)).unwrap();
//! assert!(report.passed);
//! ```

pub mod construct;
pub mod error;
pub mod generate;
pub mod graph;
pub mod hierarchy;
pub mod io;
pub mod params;
pub mod rng;
pub mod size;
pub mod sssp;
pub mod verify;

pub use construct::{
    build_hopset, build_with_levels, compute_bunches, compute_pivots, BunchMethod, Bunches,
    Construction, HopEdge, Hopset, PivotTable,
};
pub use error::{Error, Result};
pub use generate::{generate_graph, Family, WeightDist};
pub use graph::{Edge, Vertex, WeightedGraph};
pub use hierarchy::{auto_k, sampling_probability, LevelAssignment};
pub use io::{load_graph, save_graph, GraphFormat, LoadedGraph};
pub use params::{derive_params, stretch_budget, Budget, HopsetParams};
pub use size::{size_stats, SizeStats};
pub use sssp::{all_pairs_distances, dijkstra, DistanceMatrix, DistanceVector};
pub use verify::{
    bounded_hop_distances, min_hops_for_stretch, verify_emulator, verify_hopset, EmulatorReport,
    PairSpec, StretchReport,
};
