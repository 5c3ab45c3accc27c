//! Exact combinatorics for moduli of stable toric, quasiabelian and matroidal
//! pairs: regular subdivisions and secondary polytopes, gluing cohomology of
//! polytopal complexes, periodic Delaunay decompositions, matroid polytopes
//! and cographic subdivisions.
//!
//! Every computation is carried out in exact integer or rational arithmetic.
//! Batch-style entry points accept an [`Execution`] mode; with the `parallel`
//! feature (on by default) they fan out over rayon, otherwise they run
//! sequentially with identical results.

#![allow(clippy::needless_range_loop)]

mod combinatorics;
pub mod complex;
pub mod error;
pub mod exec;
pub mod json;
pub mod lattice;
pub mod periodic;
pub mod polytope;
pub mod subdiv;

pub use error::{Error, Result};
pub use exec::Execution;
pub use lattice::{IntegerMatrix, Rational};
