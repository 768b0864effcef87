//! Exact computations in the cohomology of finite groups.

pub mod abgroups;
pub mod cech;
pub mod cech_bridge;
pub mod crossed_modules;
pub mod delta_functors;
pub mod double_complex;
pub mod error;
pub mod fixtures;
pub mod group_cohomology;
pub mod intlinalg;
pub mod lie_cohomology;
pub mod soft_resolution;

pub use error::{Error, Result};
