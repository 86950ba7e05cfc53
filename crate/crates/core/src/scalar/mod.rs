//! Exact and rigorous scalar arithmetic.
//!
//! [`Rational`] and [`QuadExt`] are exact. [`Interval`] encloses everything
//! else with outward rounding. [`LogLinear`] decides signs of linear forms in
//! logarithms, which is how every modulus comparison in the crate is settled.

pub mod cf;
pub mod gamma;
pub mod interval;
pub mod loglin;
pub mod quad;
pub mod rational;
pub mod value;

pub use cf::{gl2z_equivalent, periodic_cf};
pub use gamma::GammaSpec;
pub use interval::Interval;
pub use loglin::{log_compare, LogLinear, Precision, Sign, TriCmp};
pub use quad::{galois_conjugate, lattice_decompose, QuadExt};
pub use rational::{parse_rational, Rational};
pub use value::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("incompatible field: √{0} vs √{1}")]
    IncompatibleField(i64, i64),
    #[error("radicand {0} must be squarefree and in 2..=10^12")]
    BadRadicand(i64),
    #[error("{0} must be positive")]
    NonPositive(String),
    #[error("interval lower end exceeds upper end")]
    InvalidInterval,
    #[error("enclosure contains the rational {0}")]
    IrrationalityGuard(String),
    #[error("exponent must be irrational")]
    RationalGamma,
    #[error("division by zero")]
    ZeroDivision,
    #[error("{0}")]
    Parse(String),
    #[error("{0} out of supported range")]
    OutOfRange(String),
    #[error("not representable: {0}")]
    Unrepresentable(String),
}
