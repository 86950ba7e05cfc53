//! Monomial ℂ*-curves `λ ↦ (λ^{v₁},…,λ^{vₙ})` and their retractions.

use std::ops::Neg;

use num_complex::{Complex, Complex64};
use num_traits::{Num, One, Zero};

use crate::complex::powi;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmbedError {
    #[error("direction not primitive (gcd {0})")]
    NotPrimitive(i64),
    #[error("empty or zero direction")]
    ZeroDirection,
    #[error("coefficient overflow")]
    Overflow,
    #[error("zero coordinate; the curve lives in the punctured torus")]
    ZeroCoordinate,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("not a lifted pair (residual {residual:e})")]
    NotALift { residual: f64 },
}

/// A primitive integer direction `v` with a Bézout vector `k`, `k·v = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddedCStar {
    v: Vec<i64>,
    k: Vec<i64>,
}

/// `(g, x, y)` with `a·x + b·y = g ≥ 0`, `|x| + |y|` minimal, ties to the smaller `|x|`.
fn bezout_pair(a: i64, b: i64) -> Result<(i64, i64, i64), EmbedError> {
    use num_integer::Integer;
    let e = i128::from(a).extended_gcd(&i128::from(b));
    let (mut g, mut x0, mut y0) = (e.gcd, e.x, e.y);
    if g < 0 {
        (g, x0, y0) = (-g, -x0, -y0);
    }
    if g == 0 {
        return Ok((0, 0, 0));
    }
    // x = x0 + t·b/g, y = y0 − t·a/g
    let (bs, as_) = (i128::from(b) / g, i128::from(a) / g);
    let mut ts = vec![0i128];
    for (num, den) in [(-x0, bs), (y0, as_)] {
        if den != 0 {
            let t = Integer::div_floor(&num, &den);
            ts.extend([t - 1, t, t + 1, t + 2]);
        }
    }
    let best = ts
        .into_iter()
        .map(|t| (x0 + t * bs, y0 - t * as_))
        .min_by_key(|&(x, y)| (x.abs() + y.abs(), x.abs(), x))
        .expect("nonempty");
    let fit = |v: i128| i64::try_from(v).map_err(|_| EmbedError::Overflow);
    Ok((fit(g)?, fit(best.0)?, fit(best.1)?))
}

impl EmbeddedCStar {
    /// Extended Euclid left to right over accumulated gcds.
    pub fn new(v: Vec<i64>) -> Result<Self, EmbedError> {
        if v.iter().all(|&x| x == 0) {
            return Err(EmbedError::ZeroDirection);
        }
        let mut g = 0i64;
        let mut k: Vec<i64> = Vec::with_capacity(v.len());
        for &vj in &v {
            let (g2, s, t) = bezout_pair(g, vj)?;
            for c in &mut k {
                *c = c.checked_mul(s).ok_or(EmbedError::Overflow)?;
            }
            k.push(t);
            g = g2;
        }
        if g != 1 {
            return Err(EmbedError::NotPrimitive(g));
        }
        Ok(Self { v, k })
    }

    pub fn v(&self) -> &[i64] {
        &self.v
    }

    pub fn k(&self) -> &[i64] {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// `Σ k_j v_j` computed in wide integers; always 1.
    pub fn pairing(&self) -> i128 {
        self.k.iter().zip(&self.v).map(|(&a, &b)| i128::from(a) * i128::from(b)).sum()
    }

    pub fn embed<T>(&self, lambda: &Complex<T>) -> Result<Vec<Complex<T>>, EmbedError>
    where
        T: Clone + Num + Neg<Output = T>,
    {
        if lambda.is_zero() {
            return Err(EmbedError::ZeroCoordinate);
        }
        Ok(self.v.iter().map(|&e| powi(lambda, e).expect("nonzero base")).collect())
    }

    /// The curve parameter `Π z_j^{k_j}` of the retraction.
    pub fn parameter<T>(&self, z: &[Complex<T>]) -> Result<Complex<T>, EmbedError>
    where
        T: Clone + Num + Neg<Output = T>,
    {
        if z.len() != self.dim() {
            return Err(EmbedError::Dimension { expected: self.dim(), got: z.len() });
        }
        let mut acc = Complex::<T>::one();
        for (zj, &kj) in z.iter().zip(&self.k) {
            acc = acc * powi(zj, kj).ok_or(EmbedError::ZeroCoordinate)?;
        }
        Ok(acc)
    }

    pub fn retract<T>(&self, z: &[Complex<T>]) -> Result<Vec<Complex<T>>, EmbedError>
    where
        T: Clone + Num + Neg<Output = T>,
    {
        if z.iter().any(|c| c.is_zero()) {
            return Err(EmbedError::ZeroCoordinate);
        }
        self.embed(&self.parameter(z)?)
    }

    /// `max_j max(|λ^{v_j}|, |λ^{v_j}|⁻¹)` at `|λ| = 10^{±m}`, `m = 1..=m_max`.
    ///
    /// Both sequences grow monotonically for a proper embedding.
    pub fn properness_profile(&self, m_max: u32) -> (Vec<f64>, Vec<f64>) {
        let size = |lambda: Complex64| {
            self.embed(&lambda)
                .expect("nonzero")
                .iter()
                .map(|w| w.norm().max(w.norm().recip()))
                .fold(0.0, f64::max)
        };
        let probe = |sign: f64| (1..=m_max).map(|m| size(Complex64::new(10f64.powf(sign * f64::from(m)), 0.0))).collect();
        (probe(1.0), probe(-1.0))
    }
}

/// `(h₁,…,hₙ) ↦ (e^{h₁}, e^{ih₁}, …, e^{hₙ}, e^{ihₙ})`.
pub fn cstar_lift(h: &[Complex64]) -> Vec<Complex64> {
    h.iter().flat_map(|&x| [x.exp(), (Complex64::i() * x).exp()]).collect()
}

/// Inverse of [`cstar_lift`]: `Re h = ln|e^h|` and `Im h = −ln|e^{ih}|`, so no branch choice arises.
pub fn cstar_unlift(w: &[Complex64], tol: f64) -> Result<Vec<Complex64>, EmbedError> {
    if w.len() % 2 != 0 {
        return Err(EmbedError::Dimension { expected: w.len() + 1, got: w.len() });
    }
    let mut out = Vec::with_capacity(w.len() / 2);
    for pair in w.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return Err(EmbedError::ZeroCoordinate);
        }
        let h = Complex64::new(a.norm().ln(), -b.norm().ln());
        let back = cstar_lift(&[h]);
        let residual = crate::complex::rel_err(back[0], a).max(crate::complex::rel_err(back[1], b));
        if !(residual <= tol) {
            return Err(EmbedError::NotALift { residual });
        }
        out.push(h);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{gr, gr_int, GaussianRational};
    use crate::scalar::rational::{int, rat};

    #[test]
    fn bezout_examples() {
        let e = EmbeddedCStar::new(vec![2, 3]).unwrap();
        assert_eq!(e.k(), &[-1, 1]);
        assert_eq!(EmbeddedCStar::new(vec![1, 0]).unwrap().k(), &[1, 0]);
        assert_eq!(EmbeddedCStar::new(vec![2, 4]), Err(EmbedError::NotPrimitive(2)));
        assert_eq!(EmbeddedCStar::new(vec![0, 0]), Err(EmbedError::ZeroDirection));
        assert_eq!(EmbeddedCStar::new(vec![0, -1]).unwrap().k(), &[0, -1]);
        let e = EmbeddedCStar::new(vec![6, 10, 15]).unwrap();
        assert_eq!(e.pairing(), 1);
    }

    #[test]
    fn embed_examples() {
        let e = EmbeddedCStar::new(vec![2, 3]).unwrap();
        assert_eq!(e.embed(&gr_int(2, 0)).unwrap(), vec![gr_int(4, 0), gr_int(8, 0)]);
        assert_eq!(e.embed(&gr_int(-1, 0)).unwrap(), vec![gr_int(1, 0), gr_int(-1, 0)]);
        let e = EmbeddedCStar::new(vec![1, -1]).unwrap();
        assert_eq!(e.embed(&gr_int(0, 2)).unwrap(), vec![gr_int(0, 2), gr(int(0), rat(-1, 2))]);
        assert_eq!(e.embed(&gr_int(0, 0)), Err(EmbedError::ZeroCoordinate));
    }

    #[test]
    fn retract_examples() {
        let e = EmbeddedCStar::new(vec![2, 3]).unwrap();
        let z = vec![gr_int(4, 0), gr_int(8, 0)];
        assert_eq!(e.retract(&z).unwrap(), z);
        let one = vec![gr_int(1, 0), gr_int(1, 0)];
        assert_eq!(e.retract(&one).unwrap(), one);
        let u: GaussianRational = gr(rat(3, 5), rat(4, 5));
        let z = vec![gr_int(4, 0), gr_int(8, 0) * &u];
        assert_eq!(e.retract(&z).unwrap(), e.embed(&(gr_int(2, 0) * u)).unwrap());
        assert_eq!(e.retract(&[gr_int(0, 0), gr_int(1, 0)]), Err(EmbedError::ZeroCoordinate));
    }

    #[test]
    fn properness_grows() {
        let e = EmbeddedCStar::new(vec![1, 0]).unwrap();
        let (up, down) = e.properness_profile(6);
        assert!(up.windows(2).all(|w| w[1] > w[0]));
        assert!(down.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(cstar_lift(&[Complex64::new(0.0, 0.0)]), vec![Complex64::new(1.0, 0.0); 2]);
        let w = cstar_lift(&[Complex64::new(2f64.ln(), 0.0)]);
        assert!((w[0] - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert!((w[1] - Complex64::new(0.769238901363972, 0.638961276313635)).norm() < 1e-12);
        let approx = [Complex64::new(2.0, 0.0), Complex64::new(0.769, 0.639)];
        let h = cstar_unlift(&approx, 1e-3).unwrap();
        assert!((h[0].re - 2f64.ln()).abs() < 1e-9);
        assert!(cstar_unlift(&[Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)], 1e-9).is_err());
    }
}
