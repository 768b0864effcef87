//! Bounded double complexes, their total complexes, the spectral sequence of
//! the column filtration and its edge map.

mod dc;
mod random;
mod spectral;

pub use dc::{two_row_complex, DoubleComplex, DEFAULT_BOUND};
pub use random::{random_double_complex, random_free_complex, tensor_double_complex};
pub use spectral::{
    convergence_check, e_infinity, edge_homomorphism, filtered_cocycles, filtration_quotients,
    page, page_entry, spectral_sequence, subquotient_group, ConvergenceDegree, ConvergenceReport,
    EdgeMap, SpectralPage,
};
