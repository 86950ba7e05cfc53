//! Endomorphisms in the normal form `a·Φ_M(z)·p_γ(h(z))` and their algebra.

mod catalog;
mod compose;
mod fixed;
mod map;
mod matrix;
mod orbit;
mod twist;

pub use catalog::{involutions, InvolutionCatalog, InvolutionEntry, InvolutionFamily};
pub use compose::{compose, compose_composites, square, Composite, OpaqueComposite};
pub use fixed::{fixed_point_class, FixedPointClass};
pub use map::{beta_form, is_proper_selfmap, p_gamma, validate, Endomorphism, LevelMap, Validation};
pub use matrix::{enumerate_matrices, ExponentMatrix};
pub use orbit::{orbit_parameter, preimages, same_orbit, OrbitMatch};
pub use twist::Twist;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EndoError {
    #[error("no degree for this exponent matrix")]
    NoDegree,
    #[error("not finite-to-one (det = 0)")]
    NotFiniteToOne,
    #[error("zero coordinate")]
    ZeroCoordinate,
    #[error("exponent overflow")]
    Overflow,
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("catalog not defined for {0}")]
    NoCatalog(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
