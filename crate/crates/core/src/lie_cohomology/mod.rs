//! Chevalley–Eilenberg cohomology of finite-dimensional Lie algebras over `Q`.

mod algebra;
mod complex;
mod rational;

pub use algebra::{LieAlgebra, LieModule};
pub use complex::{ce_complex, invariants_dim, lie_cohomology, subsets, CeComplex, LieCohomology};
pub use rational::RatMatrix;
