//! Semi-simplicial sets, the nerve of a finite group, covers and their
//! refinements, and the Čech double complex of a cover with coefficients in
//! functions to a module.

mod complex;
mod cover;
mod simplicial;

pub use complex::{
    apply_dh, apply_dv, cech_double_complex, cech_double_complex_with_layout, intersection,
    nonempty_tuples, CechBlock, CechElement, CechLayout, CoefficientSystem, CECH_RANK_LIMIT,
};
pub use cover::{
    pointwise_cover, refine_cover, singleton_cover, translate_cover, SemiSimplicialCover,
};
pub use simplicial::{nerve, nerve_face, SemiSimplicialSet};
