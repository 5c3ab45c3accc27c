//! Polytopal complexes, the lattice sheaf `M̃` and Čech-style gluing
//! cohomology computed through Smith normal form.
//!
//! Cohomology with coefficients in the torus `Hom(M̃, k*)` is obtained by
//! dualizing the lattice chain complex: `k*` is divisible, hence injective,
//! so `H^p = Hom(H_p(L), k*)`. Ranks of `H_p(L)` are torus dimensions and its
//! invariant factors are the finite parts.

mod chain;
mod cohomology;
mod polytopal;

pub use chain::{ChainComplex, HomologyGroup};
pub use cohomology::{
    cech_lattice_complex, gluing_cohomology, marked_section_complex, tilde_lattice,
    GluingCohomology, MarkedCohomology,
};
pub use polytopal::{
    pseudomanifold_check, Cell, MarkedComplex, PolytopalComplex, PseudomanifoldReport,
    PseudomanifoldVerdict,
};
