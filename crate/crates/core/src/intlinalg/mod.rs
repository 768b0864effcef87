//! Exact integer linear algebra: dense matrices, Hermite and Smith forms,
//! lattices and subquotients.

mod hermite;
mod lattice;
mod matrix;
mod smith;
mod sparse;

pub use hermite::{
    echelon, hermite_normal_form, kernel_basis, solve_in_lattice, sym_mod, Echelon,
    HermiteDecomposition,
};
pub use lattice::{refine, Congruence, Lattice, Subquotient};
pub use matrix::{
    add_vec, axpy, dot, int_vec, is_zero_vec, neg_vec, scale_vec, sub_vec, zero_vec, IntMatrix,
};
pub use smith::{cokernel_structure, smith_normal_form, SmithDecomposition};
pub use sparse::{columns_to_matrix, sparse_columns, SparseRows, SparseVec};

/// Sum, intersection and the structure of `a / (a ∩ b)` in one call.
pub fn lattice_ops(
    a: &Lattice,
    b: &Lattice,
) -> crate::Result<(Lattice, Lattice, (usize, Vec<num_bigint::BigInt>))> {
    let sum = a.sum(b)?;
    let meet = a.intersection(b)?;
    let quotient = a.quotient_structure(b)?;
    Ok((sum, meet, quotient))
}
