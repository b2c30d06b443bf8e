//! Characteristic polynomial `det(A − λI)`, permanent polynomial
//! `per(A − λI)`, determinant and permanent of a square matrix, computed
//! from the block structure of its weighted digraph.
//!
//! The digraph has one vertex per row and an edge `(u,v)` of weight `a_uv`
//! for every nonzero entry. Cut-vertices split it into blocks, and the
//! polynomials are assembled from the blocks over all B-partitions (each
//! cut-vertex assigned to one of its blocks), plus correction terms for the
//! cut-vertices that are removed.
//!
//! ```
//! use blockpoly_core::{charpoly_theorem, fixtures, oracle, WeightedDigraph};
//!
//! let a = fixtures::m1();
//! let g = WeightedDigraph::from_matrix(&a);
//! assert_eq!(charpoly_theorem(&g), oracle::leibniz_charpoly(&a).unwrap());
//! ```

pub mod block_graph;
pub mod blocks;
pub mod bpartition;
pub mod digraph;
pub mod dot;
pub mod engine;
pub mod error;
pub mod expand;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod schur;
pub mod singular;

pub use block_graph::{det_block_graph, is_block_graph, KTuple};
pub use blocks::{decompose, BlockDecomposition};
pub use bpartition::{enumerate_bpartitions, phi_summand, psi_summand, BPartition, BPartitions};
pub use digraph::{VertexId, WeightedDigraph};
pub use engine::{
    charpoly_recursive, charpoly_single_cut, charpoly_theorem, determinant, permanent, permpoly_recursive,
    permpoly_theorem, subdigraph_recurrence, theorem_expansion, Engine, TheoremExpansion, TheoremTerm,
};
pub use error::{Error, Result};
pub use expand::Kind;
pub use matrix::SquareMatrix;
pub use oracle::OracleReport;
pub use poly::{DynPolynomial, Polynomial};
pub use scalar::{CoefficientMode, Scalar, DEFAULT_REL_TOL};
pub use schur::{best_elimination_vertex, det_schur, PivotRule};
pub use singular::singularity_conditions;

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
