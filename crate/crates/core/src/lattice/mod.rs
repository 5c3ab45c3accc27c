//! Exact linear algebra over ℤ and ℚ: Smith and Hermite normal forms, lattice
//! saturation, an exact simplex feasibility oracle, double description and
//! convex hulls in low dimension.

mod dd;
mod hull;
mod lp;
mod matrix;
mod rational;
mod snf;

pub use dd::{dual_description, vertices_of_inequalities, ConeRays};
pub use hull::{affine_hull, convex_hull, faces_of, AffineHull, Facet, HullResult};
pub use lp::{lp_feasible, Constraint, LpOutcome, LpProblem, Relation};
pub(crate) use matrix::dot;
pub use matrix::{
    determinant, int_vec, kernel, primitive, rank, rat_vec, rref, solve, to_integer_vec,
    IntegerMatrix,
};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use snf::{hermite_normal_form, saturate, smith_normal_form, solve_integer, SnfResult};
