//! δ-functors on modules over a finite group: the bar and soft-resolution
//! functors, corpus checks of the axioms, and the comparison morphism built by
//! dimension shifting.

mod comparison;
mod functor;
mod qf;
mod verify;

pub use comparison::{
    canonical_phi0, comparison_morphism, comparison_morphism_with, connecting_witness, is_identity,
    naturality_witness, ComparisonMorphism,
};
pub use functor::{
    shifting_sequence, vanishes_on_soft, BarFunctor, CorruptedFunctor, Corruption, DeltaFunctor,
    SmFunctor,
};
pub use qf::{q_f_construction, QfData};
pub use verify::{
    compare_maps, functor_les, verify_delta_functor, CheckKind, CheckResult, DeltaCorpus,
    DeltaFunctorReport, SesMorphism, Witness,
};
