//! Edge-to-edge gluings of unit regular hexagons.
//!
//! The crate enumerates every gluing of `n` hexagons that closes up into a
//! convex surface (a topological sphere whose total angle never exceeds
//! 2π at any point), and classifies the resulting shape either as a doubly
//! covered polygon or as a convex polyhedron with a given skeleton.
//!
//! Module map:
//!
//! - [`complex`]: combinatorial gluings, vertex orbits, curvature, canonical codes
//! - [`enumerate`]: tree gluings, forced zips, boundary matching completion
//! - [`lattice`] and [`geometry`]: exact triangular-lattice developments and geodesics
//! - [`flat`]: seam search, flat polygon types and the polygon-to-gluing construction
//! - [`realize`] and [`skeleton`]: 3D realization, hulls and skeleton catalog matching
//! - [`catalog`]: the end-to-end classification pipeline and reference counts
//! - [`io`] and [`svg`]: interchange formats and net export

pub mod catalog;
pub mod complex;
pub mod enumerate;
pub mod flat;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod realize;
pub mod skeleton;
pub mod svg;

pub use complex::{
    CanonicalCode, ComplexError, CurvatureProfile, Dart, HexComplex, HexEdge, VertexOrbit,
};
pub use enumerate::{GluingBatch, Stage};
pub use lattice::LatticePoint;
