//! Marked subdivisions of point configurations: lower envelopes, regularity
//! certificates, GKZ vectors, enumeration and secondary polytopes.

mod enumerate;
mod geometry;
mod secondary;
mod subdivision;

pub use enumerate::{
    enumerate_all_subdivisions, enumerate_triangulations, FlaggedSubdivision, MAX_ENUM_DIM,
    MAX_ENUM_POINTS,
};
pub use secondary::{
    enumerate_regular_subdivisions, secondary_polytope, stratum_dimensions, RegularFace,
    SecondaryPolytope, StratumDimensions,
};
pub use subdivision::{
    gkz_vector, is_regular, marked_complex_of, regular_subdivision, MarkedSubdivision, Regularity,
};
