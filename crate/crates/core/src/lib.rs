//! Exact invariants of cyclic group actions on closed orientable surfaces.
//!
//! The crate computes, in exact integer/rational arithmetic:
//!
//! * topological types, boundary rotation data and quotient orbifold
//!   signatures of the equivariant Seifert surfaces obtained by equivariant
//!   surgery on disk systems in the 3-sphere ([`surfaces`]);
//! * an independent combinatorial oracle for those closed forms, built by
//!   tracing the surgered curve systems on the Clifford torus ([`tracer`]);
//! * lower and upper bounds (and exact values where determined) for the
//!   minimal dimension of a sphere admitting an equivariant embedding of a
//!   periodic surface map ([`classification`]).
//!
//! Everything here is `no_std`-compatible (with `alloc`); numeric sampling,
//! file formats and the command line live in the companion `eqsurf` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classification;
pub mod numtheory;
pub mod surfaces;
pub mod tracer;

pub use numtheory::Rational;
pub use surfaces::{OrbifoldSignature, SurfaceSpec, Variant};
