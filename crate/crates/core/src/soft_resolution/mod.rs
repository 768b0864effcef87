//! Soft modules `E_G(A) = Map(G, A)`, the quotients `B_G(A)`, the resolution
//! built from them, and cohomology as the cohomology of its invariants.

mod lift;
mod resolution;
mod soft;

pub use lift::lift_invariant;
pub use resolution::{
    restrict_to_lattices, sm_cohomology, sm_connecting, sm_resolution, sm_resolution_with, sm_ses,
    InvariantComplex, SmComplex, SmResolution,
};
pub use soft::{
    quotient_map, quotient_module_of, soft_acyclicity_check, soft_map, soft_module, soft_module_of,
    soft_module_with, soft_underlying, AcyclicityReport, QuotientPresentation, SoftModuleData,
};
