//! Numeric companion to `eqsurf-core`: explicit realizations of the
//! equivariant surfaces in joins of spheres, point-cloud and mesh export,
//! and the machinery behind the `eqsurf` command line tool.

pub mod export;
pub mod geometry;

pub use eqsurf_core as core;
pub mod report;
