//! Hierarchical H(div)-conforming bases on the reference quadrilateral,
//! hexahedron, triangle and tetrahedron, built as exact polynomials.

pub mod assembly;
pub mod basis;
pub mod checks;
pub mod cli;
pub mod divfree;
pub mod error;
pub mod field;
pub mod geometry;
pub mod poly;
pub mod poly1d;
pub mod rank;
pub mod surd;
