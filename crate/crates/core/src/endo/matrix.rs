use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::EndoError;
use crate::complex::powi64;
use crate::scalar::rational::{self, Rational};
use crate::scalar::{GammaSpec, QuadExt};

/// `Φ(z) = (z₁^{k2} z₂^{k1}, z₁^{l2} z₂^{l1})`, i.e. `log Φ(z) = A·log z` with `A = [[k2, k1], [l2, l1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentMatrix {
    pub k2: i64,
    pub k1: i64,
    pub l2: i64,
    pub l1: i64,
}

impl ExponentMatrix {
    pub const IDENTITY: ExponentMatrix = ExponentMatrix { k2: 1, k1: 0, l2: 0, l1: 1 };

    pub fn new(k2: i64, k1: i64, l2: i64, l1: i64) -> Self {
        Self { k2, k1, l2, l1 }
    }

    pub fn scalar(n: i64) -> Self {
        Self { k2: n, k1: 0, l2: 0, l1: n }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn is_diagonal_scalar(&self) -> bool {
        self.k1 == 0 && self.l2 == 0 && self.k2 == self.l1
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.k2, self.k1, self.l2, self.l1]
    }

    pub fn det(&self) -> i128 {
        i128::from(self.k2) * i128::from(self.l1) - i128::from(self.k1) * i128::from(self.l2)
    }

    /// The matrix of `Φ_self ∘ Φ_o`.
    pub fn compose(&self, o: &Self) -> Result<Self, EndoError> {
        let dot = |a: i64, b: i64, c: i64, d: i64| -> Result<i64, EndoError> {
            a.checked_mul(b).zip(c.checked_mul(d)).and_then(|(x, y)| x.checked_add(y)).ok_or(EndoError::Overflow)
        };
        Ok(Self {
            k2: dot(self.k2, o.k2, self.k1, o.l2)?,
            k1: dot(self.k2, o.k1, self.k1, o.l1)?,
            l2: dot(self.l2, o.k2, self.l1, o.l2)?,
            l1: dot(self.l2, o.k1, self.l1, o.l1)?,
        })
    }

    pub fn sub_identity(&self) -> Self {
        Self { k2: self.k2 - 1, k1: self.k1, l2: self.l2, l1: self.l1 - 1 }
    }

    /// Number of preimages of a point of `ℂ*²`.
    pub fn multiplicity(&self) -> Result<u128, EndoError> {
        match self.det() {
            0 => Err(EndoError::NotFiniteToOne),
            d => Ok(d.unsigned_abs()),
        }
    }

    /// The row `(m, n)·A`: exponents of `Φ(z)^{(m,n)}` in `z`.
    pub fn pull_exponent(&self, m: i64, n: i64) -> Result<(i64, i64), EndoError> {
        let f = |a: i64, b: i64, c: i64, d: i64| a.checked_mul(b).zip(c.checked_mul(d)).and_then(|(x, y)| x.checked_add(y)).ok_or(EndoError::Overflow);
        Ok((f(m, self.k2, n, self.l2)?, f(m, self.k1, n, self.l1)?))
    }

    pub fn apply_c64(&self, z: [Complex64; 2]) -> [Complex64; 2] {
        [
            powi64(z[0], self.k2) * powi64(z[1], self.k1),
            powi64(z[0], self.l2) * powi64(z[1], self.l1),
        ]
    }

    /// `α` with `α = k2 + γ·l2` and `α·γ = k1 + γ·l1`.
    ///
    /// A non-algebraic `γ` admits only `k1 = l2 = 0, k2 = l1`.
    pub fn degree(&self, gamma: &GammaSpec) -> Option<QuadExt> {
        match gamma.exact() {
            Some(g) => {
                let alpha = QuadExt::from_int(self.k2).try_add(&g.scale(&rational::int(self.l2))).ok()?;
                let lhs = alpha.try_mul(&g).ok()?;
                let rhs = QuadExt::from_int(self.k1).try_add(&g.scale(&rational::int(self.l1))).ok()?;
                (lhs == rhs).then_some(alpha)
            }
            None => self.is_diagonal_scalar().then(|| QuadExt::from_int(self.k2)),
        }
    }

    /// `c = l1 − γ·l2`, the factor in `Φ(p_γ(μ)) = p_γ(c·μ)`.
    pub fn conjugate_degree(&self, gamma: &GammaSpec) -> Option<QuadExt> {
        self.degree(gamma)?;
        match gamma.exact() {
            Some(g) => QuadExt::from_int(self.l1).try_sub(&g.scale(&rational::int(self.l2))).ok(),
            None => Some(QuadExt::from_int(self.l1)),
        }
    }

    /// All `z ∈ ℂ*²` with `Φ(z) = w`, via `A·log z ≡ log w (mod 2πi)`.
    pub fn preimages_c64(&self, w: [Complex64; 2]) -> Result<Vec<[Complex64; 2]>, EndoError> {
        let det = self.det();
        if det == 0 {
            return Err(EndoError::NotFiniteToOne);
        }
        if w.iter().any(|c| c.is_zero()) {
            return Err(EndoError::ZeroCoordinate);
        }
        let d = det as f64;
        // A⁻¹ = adj(A)/det
        let inv = |x: f64, y: f64| ((self.l1 as f64 * x - self.k1 as f64 * y) / d, (-(self.l2 as f64) * x + self.k2 as f64 * y) / d);
        let (r1, r2) = inv(w[0].norm().ln(), w[1].norm().ln());
        let n = det.unsigned_abs() as i64;
        let mut out: Vec<[Complex64; 2]> = Vec::with_capacity(n as usize);
        let mut seen: Vec<(f64, f64)> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let (t1, t2) = inv(w[0].arg() + TAU * a as f64, w[1].arg() + TAU * b as f64);
                let key = (t1.rem_euclid(TAU), t2.rem_euclid(TAU));
                let close = |x: f64, y: f64| {
                    let d = (x - y).rem_euclid(TAU);
                    d.min(TAU - d) < 1e-9
                };
                if seen.iter().any(|s| close(s.0, key.0) && close(s.1, key.1)) {
                    continue;
                }
                seen.push(key);
                out.push([Complex64::from_polar(r1.exp(), t1), Complex64::from_polar(r2.exp(), t2)]);
            }
        }
        Ok(out)
    }
}

impl Default for ExponentMatrix {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.k2, self.k1, self.l2, self.l1)
    }
}

/// All matrices with entries in `[-n, n]` admitting a degree for `γ`, sorted.
pub fn enumerate_matrices(gamma: &GammaSpec, n: i64) -> Vec<(ExponentMatrix, QuadExt)> {
    let n = n.max(0);
    let mut out = Vec::new();
    match gamma.exact() {
        Some(g) if !g.is_rational() => {
            // γ² = tγ − m with t = trace, m = norm; the relations force k1 = −m·l2, l1 = k2 + t·l2.
            let t = g.try_add(&g.conjugate()).expect("same field").as_rational().cloned().expect("trace rational");
            let m = g.norm();
            for k2 in -n..=n {
                for l2 in -n..=n {
                    let k1 = -&m * rational::int(l2);
                    let l1 = rational::int(k2) + &t * rational::int(l2);
                    if let (Some(k1), Some(l1)) = (small_int(&k1, n), small_int(&l1, n)) {
                        let mat = ExponentMatrix::new(k2, k1, l2, l1);
                        out.push((mat, mat.degree(gamma).expect("solved relations")));
                    }
                }
            }
        }
        Some(g) => {
            let g = g.as_rational().cloned().expect("rational");
            for k2 in -n..=n {
                for l2 in -n..=n {
                    let alpha = rational::int(k2) + &g * rational::int(l2);
                    for l1 in -n..=n {
                        let k1 = &alpha * &g - &g * rational::int(l1);
                        if let Some(k1) = small_int(&k1, n) {
                            out.push((ExponentMatrix::new(k2, k1, l2, l1), QuadExt::rational(alpha.clone())));
                        }
                    }
                }
            }
        }
        None => {
            for k in -n..=n {
                out.push((ExponentMatrix::scalar(k), QuadExt::from_int(k)));
            }
        }
    }
    out.sort_by_key(|(m, _)| *m);
    out
}

fn small_int(r: &Rational, n: i64) -> Option<i64> {
    use num_traits::ToPrimitive;
    if !r.is_integer() {
        return None;
    }
    let v = r.to_integer().to_i64()?;
    (v.abs() <= n).then_some(v)
}

pub(crate) fn is_unit(r: &QuadExt) -> bool {
    r.is_one() || (-r).is_one()
}
