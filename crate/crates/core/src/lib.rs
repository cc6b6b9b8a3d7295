//! Quantitative toolkit around the finiteness of arithmetic Kleinian maximal
//! reflection groups: spherical orbifold classification, the conformal-volume
//! eigenvalue inequality with a mesh-based numerical check, the 64*pi^2
//! volume bound chain, and the imaginary-quadratic discriminant scan.

pub mod arith;
pub mod constants;
pub mod error;
pub mod inequality;
pub mod linalg;
pub mod mesh;
pub mod orbifold;
pub mod spectrum;

pub use error::{Error, Result};
