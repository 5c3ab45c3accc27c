//! Periodic subdivisions of `ℝ^g`: Delaunay and semi-Delaunay decompositions
//! of quadratic forms, second Voronoi fan cones, `GL(g, ℤ)`-equivalence,
//! hyperplane-system subdivisions and cographic subdivisions of graphs.

mod delaunay;
mod equivalence;
mod form;
mod hyperplane;
mod subdivision;

pub use delaunay::{
    delaunay, same_voronoi_cone, semi_delaunay, voronoi_cone_dimension, DEFAULT_WINDOW,
};
pub use equivalence::{gl_equivalent, GlEquivalence};
pub use form::{QuadraticForm, ResidueFunction};
pub use hyperplane::{cographic_subdivision, cycle_space_basis, hyperplane_subdivision, Graph};
pub use subdivision::{PeriodicCell, PeriodicSubdivision};
