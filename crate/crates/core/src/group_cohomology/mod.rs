//! Finite groups, modules over them, and their cohomology computed from the
//! inhomogeneous bar complex.
//!
//! Every cochain on a discrete group is locally constant, so this is the
//! whole story for finite groups: there is no distinction between local,
//! continuous and smooth cochains here.

mod bar;
mod cup;
mod extension;
mod group;
mod les;
mod module;
mod periodic;

pub use bar::{
    bar_cochain_complex, bar_differential_matrix, coboundary_witness, cohomology,
    group_differential, is_cocycle, Cochain,
};
pub use cup::{cup_is_trivial, cup_on_generators, cup_product, Pairing};
pub use extension::{
    extension_equivalence, extension_from_2cocycle, is_isomorphism, Extension, EXTENSION_LIMIT,
};
pub use group::{tuple_count, tuple_from_index, tuple_index, FiniteGroup};
pub use les::{
    bar_ses, cochain_map_matrix, coefficient_les, induced_on_cohomology, CoefficientLes,
};
pub use module::{kron, GModule, GMorphism, ModuleSes};
pub use periodic::{periodic_cohomology, periodic_complex};
