//! Point configurations, lattice polytopes, hypersimplices, generalized
//! matroid polytopes, rank functions of subspaces and unimodularity tests.

mod config;
mod hpoly;
mod lattice_polytope;
mod matroid;
mod triangulate;
mod unimodular;

pub use config::{Frame, PointConfiguration};
pub use hpoly::HPolytope;
pub use lattice_polytope::{IdpOutcome, LatticePolytope};
pub use matroid::{
    generalized_matroid_polytope, hypersimplex, mask_label, rank_function_of_subspace,
    GeneralizedMatroidPolytope, RankFunction, MAX_GROUND_SET,
};
pub use triangulate::{pulling_triangulation, simplex_volume, volume};
pub use unimodular::{UnimodularCheck, VectorSystem};
