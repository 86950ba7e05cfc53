use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use super::interval::Interval;
use super::quad::QuadExt;
use super::rational::{self, format_rational, Rational};
use super::ScalarError;

/// A real coefficient: an exact element of some `ℚ(√d)`, or a rational
/// multiple of an enclosed constant.
///
/// Two `Enclosed` values with identical `base` denote multiples of the same
/// constant, so they add exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Exact(QuadExt),
    Enclosed { coef: Rational, base: Interval },
}

impl Scalar {
    pub fn rational(r: Rational) -> Self {
        Self::Exact(QuadExt::rational(r))
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rational::int(n))
    }

    pub fn enclosed(coef: Rational, base: Interval) -> Self {
        if coef.is_zero() {
            return Self::int(0);
        }
        Self::Enclosed { coef, base }
    }

    pub fn exact(&self) -> Option<&QuadExt> {
        match self {
            Self::Exact(x) => Some(x),
            Self::Enclosed { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Exact(x) => x.is_zero(),
            Self::Enclosed { coef, .. } => coef.is_zero(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        match self {
            Self::Exact(x) => Self::Exact(x.scale(r)),
            Self::Enclosed { coef, base } => Self::enclosed(coef * r, base.clone()),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ScalarError> {
        match (self, o) {
            (Self::Exact(a), Self::Exact(b)) => Ok(Self::Exact(a.try_add(b)?)),
            (x, y) if x.is_zero() => Ok(y.clone()),
            (x, y) if y.is_zero() => Ok(x.clone()),
            (Self::Enclosed { coef: a, base: ba }, Self::Enclosed { coef: b, base: bb }) if ba == bb => {
                Ok(Self::enclosed(a + b, ba.clone()))
            }
            _ => Err(ScalarError::Unrepresentable("sum of unrelated constants".into())),
        }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        match (self, o) {
            (Self::Exact(a), Self::Exact(b)) => Ok(Self::Exact(a.try_mul(b)?)),
            (Self::Exact(a), e @ Self::Enclosed { .. }) | (e @ Self::Enclosed { .. }, Self::Exact(a)) => {
                match a.as_rational() {
                    Some(r) => Ok(e.scale(r)),
                    None => Err(ScalarError::Unrepresentable("quadratic times enclosed constant".into())),
                }
            }
            _ => Err(ScalarError::Unrepresentable("product of enclosed constants".into())),
        }
    }

    pub fn to_interval(&self, bits: u32) -> Interval {
        match self {
            Self::Exact(x) => x.to_interval(bits),
            Self::Enclosed { coef, base } => base.scale(coef),
        }
    }

    /// Exact sign where one is known.
    pub fn sign(&self) -> Option<Ordering> {
        match self {
            Self::Exact(x) => Some(x.signum()),
            Self::Enclosed { coef, base } => {
                let s = base.sign()?;
                Some(if coef < &Rational::zero() { s.reverse() } else { s })
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(x) => x.to_f64(),
            Self::Enclosed { coef, base } => rational::to_f64(coef) * base.mid_f64(),
        }
    }
}

impl From<QuadExt> for Scalar {
    fn from(x: QuadExt) -> Self {
        Self::Exact(x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(x) => f.write_str(&x.compact()),
            Self::Enclosed { coef, base } if coef.is_one() => write!(f, "c{base}"),
            Self::Enclosed { coef, base } => write!(f, "{}·c{base}", format_rational(coef)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    #[test]
    fn enclosed_algebra() {
        let base = Interval::new(rat(3, 2), rat(8, 5)).unwrap();
        let a = Scalar::enclosed(int(2), base.clone());
        let b = Scalar::enclosed(int(-2), base.clone());
        assert!(a.try_add(&b).unwrap().is_zero());
        assert_eq!(a.try_mul(&Scalar::int(3)).unwrap(), Scalar::enclosed(int(6), base.clone()));
        assert!(a.try_mul(&a).is_err());
        let other = Scalar::enclosed(int(1), Interval::new(rat(1, 2), rat(3, 5)).unwrap());
        assert!(a.try_add(&other).is_err());
        assert_eq!(b.sign(), Some(Ordering::Less));
    }
}
