//! Finite higher-rank graphs and the ideal theory of their Kumjian-Pask
//! algebras.
//!
//! - [`kgraph`]: k-graphs from a colored skeleton plus commuting squares.
//! - [`paths`]: normal forms, factorization, `Λ^{≤n}`, boundary paths.
//! - [`lattice`]: saturated hereditary vertex sets, perp, regularity, quotients.
//! - [`condition_b`]: Condition (B) per vertex.
//! - [`kp`]: exact arithmetic in `KP_Q(Λ)` and a matrix oracle for acyclic graphs.
//! - [`lab`]: theorem harnesses and the random graph generator.
//! - [`io`]: the `.kg` format, DOT export and the expression language.

pub mod condition_b;
pub mod degree;
pub mod fixtures;
pub mod io;
pub mod kgraph;
pub mod kp;
pub mod lab;
pub mod lattice;
pub mod par;
pub mod paths;

pub use degree::{Degree, DegreeZ};
pub use kgraph::{
    build_kgraph, cartesian_product, check_local_convexity, disjoint_union, omega_graph, EdgeId,
    EdgeSpec, FactorizationTable, GraphError, KGraph, Skeleton, SquareSpec, VertexId,
};
pub use paths::{Path, PathError, UPPath};
