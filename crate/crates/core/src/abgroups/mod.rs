//! Finitely generated abelian groups given by presentations, their morphisms,
//! cochain complexes of them, and long exact sequences.

mod cohomology;
mod complex;
mod exact;
mod group;
mod morphism;

pub use cohomology::{format_structure, CohomologyGroup};
pub use complex::AbCochainComplex;
pub use exact::{
    sequence_of, verify_exactness, ExactnessReport, LesNode, LongExactSequence, NodeExactness,
    PreimagePolicy, SesOfComplexes, WitnessKind,
};
pub use group::{invariant_factor_form, FgAbelianGroup, RelationBlock};
pub use morphism::{AbMorphism, Preimager};
