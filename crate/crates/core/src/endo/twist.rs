use std::collections::BTreeMap;
use std::fmt;

use num_complex::{Complex, Complex64};
use num_traits::Zero;

use super::matrix::ExponentMatrix;
use super::EndoError;
use crate::complex::{lift, powi, powi64, qc_to_c64, GaussianRational, QComplex};
use crate::scalar::{QuadExt, ScalarError};

/// A Laurent polynomial `h(z) = Σ c_{mn} z₁^m z₂^n`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Twist {
    terms: BTreeMap<(i64, i64), QComplex>,
}

pub(crate) fn qc_add(a: &QComplex, b: &QComplex) -> Result<QComplex, ScalarError> {
    Ok(Complex::new(a.re.try_add(&b.re)?, a.im.try_add(&b.im)?))
}

pub(crate) fn qc_mul(a: &QComplex, b: &QComplex) -> Result<QComplex, ScalarError> {
    let re = a.re.try_mul(&b.re)?.try_sub(&a.im.try_mul(&b.im)?)?;
    let im = a.re.try_mul(&b.im)?.try_add(&a.im.try_mul(&b.re)?)?;
    Ok(Complex::new(re, im))
}

impl Twist {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: QComplex) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn constant_gr(c: GaussianRational) -> Self {
        Self::constant(lift(&c))
    }

    pub fn monomial(m: i64, n: i64, c: QComplex) -> Self {
        let mut t = Self::zero();
        if !c.is_zero() {
            t.terms.insert((m, n), c);
        }
        t
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), QComplex)>) -> Result<Self, EndoError> {
        let mut t = Self::zero();
        for ((m, n), c) in terms {
            t = t.try_add(&Self::monomial(m, n, c))?;
        }
        Ok(t)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &QComplex)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn constant_term(&self) -> QComplex {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(QComplex::zero)
    }

    /// No negative exponents: holomorphic across the axes.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(m, n)| m >= 0 && n >= 0)
    }

    /// Largest pole order in `z₁` and in `z₂`.
    pub fn pole_orders(&self) -> (i64, i64) {
        self.terms.keys().fold((0, 0), |(a, b), &(m, n)| (a.max(-m), b.max(-n)))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, EndoError> {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let sum = match terms.get(k) {
                Some(x) => qc_add(x, c)?,
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(k);
            } else {
                terms.insert(*k, sum);
            }
        }
        Ok(Self { terms })
    }

    pub fn scale(&self, s: &QComplex) -> Result<Self, EndoError> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let p = qc_mul(c, s)?;
            if !p.is_zero() {
                terms.insert(*k, p);
            }
        }
        Ok(Self { terms })
    }

    pub fn scale_real(&self, s: &QuadExt) -> Result<Self, EndoError> {
        self.scale(&Complex::new(s.clone(), QuadExt::zero()))
    }

    /// `h(a·Φ_M(z))` as a Laurent polynomial in `z`.
    pub fn substitute_monomial(&self, a: &[GaussianRational; 2], m: &ExponentMatrix) -> Result<Self, EndoError> {
        let mut out = Self::zero();
        for (&(p, q), c) in &self.terms {
            let a1 = powi(&a[0], p).ok_or(EndoError::ZeroCoordinate)?;
            let a2 = powi(&a[1], q).ok_or(EndoError::ZeroCoordinate)?;
            let coef = qc_mul(c, &lift(&(a1 * a2)))?;
            let (e1, e2) = m.pull_exponent(p, q)?;
            out = out.try_add(&Self::monomial(e1, e2, coef))?;
        }
        Ok(out)
    }

    pub fn eval_c64(&self, z: [Complex64; 2]) -> Complex64 {
        self.terms.iter().map(|(&(m, n), c)| qc_to_c64(c) * powi64(z[0], m) * powi64(z[1], n)).sum()
    }

    /// Exact value at a point with rational coordinates; `None` at a pole.
    pub fn eval_exact(&self, z: &[GaussianRational; 2]) -> Result<Option<QComplex>, EndoError> {
        let mut acc = QComplex::zero();
        for (&(m, n), c) in &self.terms {
            let (Some(p), Some(q)) = (powi(&z[0], m), powi(&z[1], n)) else { return Ok(None) };
            acc = qc_add(&acc, &qc_mul(c, &lift(&(p * q)))?)?;
        }
        Ok(Some(acc))
    }

    /// `∂h/∂z₁` and `∂h/∂z₂` at `z`.
    pub fn gradient_c64(&self, z: [Complex64; 2]) -> [Complex64; 2] {
        let mut g = [Complex64::zero(); 2];
        for (&(m, n), c) in &self.terms {
            let c = qc_to_c64(c);
            if m != 0 {
                g[0] += c * m as f64 * powi64(z[0], m - 1) * powi64(z[1], n);
            }
            if n != 0 {
                g[1] += c * n as f64 * powi64(z[0], m) * powi64(z[1], n - 1);
            }
        }
        g
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(m, n), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let coef = if c.im.is_zero() { c.re.compact() } else { format!("({} + {}i)", c.re.compact(), c.im.compact()) };
            f.write_str(&coef)?;
            if m != 0 {
                write!(f, "·z1^{m}")?;
            }
            if n != 0 {
                write!(f, "·z2^{n}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{gr, gr_int};
    use crate::scalar::rational::rat;

    #[test]
    fn algebra() {
        let z1 = Twist::monomial(1, 0, lift(&gr_int(1, 0)));
        let half = Twist::constant_gr(gr(rat(-1, 2), rat(0, 1)));
        let h = z1.try_add(&half).unwrap();
        assert_eq!(h.len(), 2);
        assert!(!h.is_constant() && h.is_polynomial());
        assert!(h.try_add(&half.scale(&lift(&gr_int(-1, 0))).unwrap()).unwrap() == z1);
        let at = h.eval_exact(&[gr(rat(1, 2), rat(0, 1)), gr_int(3, 0)]).unwrap().unwrap();
        assert!(at.is_zero());
        assert_eq!(Twist::monomial(-2, 1, lift(&gr_int(1, 0))).pole_orders(), (2, 0));
    }

    #[test]
    fn substitution_matches_evaluation() {
        let h = Twist::from_terms([((1, 0), lift(&gr_int(2, 1))), ((0, -1), lift(&gr_int(0, 3)))]).unwrap();
        let a = [gr(rat(1, 2), rat(1, 3)), gr_int(-1, 2)];
        let m = ExponentMatrix::new(-1, 2, 1, -1);
        let s = h.substitute_monomial(&a, &m).unwrap();
        let z = [Complex64::new(0.4, 0.3), Complex64::new(-1.1, 0.6)];
        let g = m.apply_c64(z);
        let inner = [crate::complex::to_c64(&a[0]) * g[0], crate::complex::to_c64(&a[1]) * g[1]];
        assert!((s.eval_c64(z) - h.eval_c64(inner)).norm() < 1e-12);
    }
}
