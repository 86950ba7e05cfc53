use std::fmt;

use num_traits::{Signed, Zero};

use super::interval::Interval;
use super::quad::QuadExt;
use super::rational::{self, format_rational, Rational};
use super::value::Scalar;
use super::ScalarError;

/// Every `p/q` with `q` up to this bound must lie outside an enclosed exponent.
pub const GUARD_DENOMINATOR: i64 = 1000;

/// The exponent `γ > 0` of a monomial band.
///
/// Only `Quadratic` and `Enclosed` are irrational; `Rational` exists so that
/// bands with rational exponent can be classified as rational-line domains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GammaSpec {
    Quadratic(QuadExt),
    Enclosed(Interval),
    Rational(Rational),
}

impl GammaSpec {
    pub fn quadratic(d: i64, p: Rational, q: Rational) -> Result<Self, ScalarError> {
        Self::from_quad(QuadExt::new(d, p, q)?)
    }

    pub fn from_quad(x: QuadExt) -> Result<Self, ScalarError> {
        if x.is_rational() {
            return Err(ScalarError::RationalGamma);
        }
        if !x.is_positive() {
            return Err(ScalarError::NonPositive("gamma".into()));
        }
        Ok(Self::Quadratic(x))
    }

    /// `√d`.
    pub fn sqrt(d: i64) -> Result<Self, ScalarError> {
        Self::from_quad(QuadExt::sqrt(d)?)
    }

    pub fn enclosed(lo: Rational, hi: Rational) -> Result<Self, ScalarError> {
        let iv = Interval::new(lo, hi)?;
        if !iv.lo().is_positive() {
            return Err(ScalarError::NonPositive("gamma".into()));
        }
        if let Some(r) = guard_violation(&iv) {
            return Err(ScalarError::IrrationalityGuard(format_rational(&r)));
        }
        Ok(Self::Enclosed(iv))
    }

    pub fn rational(r: Rational) -> Result<Self, ScalarError> {
        if !r.is_positive() {
            return Err(ScalarError::NonPositive("gamma".into()));
        }
        Ok(Self::Rational(r))
    }

    /// A tight enclosure of π/2, handy as a stand-in for a non-algebraic exponent.
    pub fn half_pi() -> Self {
        Self::enclosed(rational::rat(15707963267, 10_000_000_000), rational::rat(15707963268, 10_000_000_000))
            .expect("π/2 enclosure passes the guard")
    }

    pub fn is_irrational(&self) -> bool {
        !matches!(self, Self::Rational(_))
    }

    pub fn quad(&self) -> Option<&QuadExt> {
        match self {
            Self::Quadratic(x) => Some(x),
            _ => None,
        }
    }

    /// `γ` as an exact quadratic value when it has one.
    pub fn exact(&self) -> Option<QuadExt> {
        match self {
            Self::Quadratic(x) => Some(x.clone()),
            Self::Rational(r) => Some(QuadExt::rational(r.clone())),
            Self::Enclosed(_) => None,
        }
    }

    pub fn enclosure(&self, bits: u32) -> Interval {
        match self {
            Self::Quadratic(x) => x.to_interval(bits),
            Self::Enclosed(iv) => iv.clone(),
            Self::Rational(r) => Interval::point(r.clone()),
        }
    }

    pub fn as_scalar(&self) -> Scalar {
        match self {
            Self::Enclosed(iv) => Scalar::enclosed(Rational::from_integer(1.into()), iv.clone()),
            other => Scalar::Exact(other.exact().expect("exact variant")),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Quadratic(x) => x.to_f64(),
            Self::Enclosed(iv) => iv.mid_f64(),
            Self::Rational(r) => rational::to_f64(r),
        }
    }

    /// Exactly known to exceed `t`; `None` when undecidable from the enclosure.
    pub fn exceeds(&self, t: &Rational) -> Option<bool> {
        match self {
            Self::Enclosed(iv) => {
                if iv.lo() > t {
                    Some(true)
                } else if iv.hi() <= t {
                    Some(false)
                } else {
                    None
                }
            }
            other => {
                let x = other.exact().expect("exact variant");
                Some(x.try_sub(&QuadExt::rational(t.clone())).ok()?.is_positive())
            }
        }
    }
}

impl fmt::Display for GammaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Quadratic(x) => f.write_str(&x.compact()),
            Self::Enclosed(iv) => write!(f, "γ∈{iv}"),
            Self::Rational(r) => f.write_str(&format_rational(r)),
        }
    }
}

/// First fraction `p/q` (by denominator) with `q ≤ GUARD_DENOMINATOR` inside the interval.
pub fn guard_violation(iv: &Interval) -> Option<Rational> {
    (1..=GUARD_DENOMINATOR).find_map(|q| {
        let qq = rational::int(q);
        let n = rational::ceil(&(iv.lo() * &qq));
        let r = Rational::new(n, qq.to_integer());
        (r <= *iv.hi()).then_some(r)
    })
}

/// Rejects a zero or negative rational.
pub fn require_positive(r: &Rational, what: &str) -> Result<(), ScalarError> {
    if r.is_zero() || r.is_negative() {
        return Err(ScalarError::NonPositive(what.into()));
    }
    Ok(())
}
