//! Finite crossed modules, the 3-cocycle of a crossed module, and the crossed
//! module of a 3-cocycle obtained by shifting it down along the soft module.

mod cocycle;
mod reconstruct;
mod xmod;

pub use cocycle::{class_equal, section_data, three_cocycle_of, three_cocycle_with, SectionData};
pub use reconstruct::{reconstruct_from_3cocycle, roundtrip, shift_down, Reconstruction};
pub use xmod::{additive_group, CrossedModule, FourTermData, TABLE_LIMIT};
