//! Polyomino ideals: polyomino geometry, the associated bipartite graph,
//! Gorenstein criteria, the toric/Gröbner layer, the simplicial complex of the
//! initial ideal and closed-form invariants for stack polyominoes.

pub mod bigraph;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod gorenstein;
pub mod poly;
pub mod polyomino;
pub mod scalar;
pub mod srcomplex;
pub mod stack;
pub mod toric;

pub use bigraph::{BipartiteGraph, MixedSubset, Side, SideSet, SideSubset};
pub use error::{Error, Result};
pub use polyomino::{Cell, Corners, Polyomino, Vertex, VertexSet};
pub use stack::{full_report, InvariantReport, ReportOptions};

/// Exact coefficient type used by the polynomial and Hilbert-series code.
pub type Coefficient = num_bigint::BigInt;
/// Exact type for multiplicities and facet counts that may exceed 64 bits.
pub type Multiplicity = num_bigint::BigUint;
/// Numerator `Q(t)` of the Hilbert series.
pub type HilbertNumerator = poly::UPoly<Coefficient>;
