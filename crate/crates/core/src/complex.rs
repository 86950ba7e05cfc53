//! Complex numbers over exact fields and the helpers shared by every module.

use std::ops::Neg;

use num_complex::{Complex, Complex64};
use num_traits::{Num, One, Zero};

use crate::scalar::rational::{self, Rational};
use crate::scalar::QuadExt;

/// `x + iy` with rational parts.
pub type GaussianRational = Complex<Rational>;
/// `x + iy` with parts in a common `ℚ(√d)`.
pub type QComplex = Complex<QuadExt>;

pub fn gr(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn gr_int(re: i64, im: i64) -> GaussianRational {
    Complex::new(rational::int(re), rational::int(im))
}

pub fn gr_real(re: Rational) -> GaussianRational {
    Complex::new(re, Rational::zero())
}

pub fn lift(z: &GaussianRational) -> QComplex {
    Complex::new(QuadExt::rational(z.re.clone()), QuadExt::rational(z.im.clone()))
}

pub fn to_c64(z: &GaussianRational) -> Complex64 {
    Complex64::new(rational::to_f64(&z.re), rational::to_f64(&z.im))
}

pub fn qc_to_c64(z: &QComplex) -> Complex64 {
    Complex64::new(z.re.to_f64(), z.im.to_f64())
}

/// `z^e` for any integer `e`; negative powers are reciprocals of positive ones.
pub fn powi<T>(z: &Complex<T>, e: i64) -> Option<Complex<T>>
where
    T: Clone + Num + Neg<Output = T>,
{
    if e >= 0 {
        return Some(num_traits::pow(z.clone(), e as usize));
    }
    if z.is_zero() {
        return None;
    }
    Some(num_traits::pow(z.clone(), e.unsigned_abs() as usize).inv())
}

pub fn powi64(z: Complex64, e: i64) -> Complex64 {
    if e >= 0 {
        num_traits::pow(z, e as usize)
    } else {
        Complex64::one() / num_traits::pow(z, e.unsigned_abs() as usize)
    }
}

/// An exact point of the unit circle close to `e^{iθ}`, via `t = tan(θ/2)` rounded to `2^-bits`.
pub fn unit_point(theta: f64, bits: u32) -> GaussianRational {
    let theta = theta.rem_euclid(std::f64::consts::TAU);
    if (theta - std::f64::consts::PI).abs() < 1e-3 {
        return -unit_point(theta - std::f64::consts::PI, bits);
    }
    let t = (theta / 2.0).tan();
    let scale = rational::pow2(i64::from(bits));
    let t = Rational::from_integer(rational::floor(&(rational::from_f64(t).unwrap_or_default() * &scale))) / scale;
    let one = Rational::one();
    let den = &one + &t * &t;
    gr((&one - &t * &t) / &den, (&t * rational::int(2)) / den)
}

/// `|z|²` exactly.
pub fn modulus_sq(z: &GaussianRational) -> Rational {
    z.norm_sqr()
}

/// Relative distance `|a − b| / max(|a|, |b|)`, or the absolute distance for tiny values.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    let d = (a - b).norm();
    if scale < 1e-300 {
        d
    } else {
        d / scale.max(1e-300)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    #[test]
    fn unit_points_are_exact() {
        for k in 0..64 {
            let u = unit_point(k as f64 * std::f64::consts::TAU / 64.0, 30);
            assert!(modulus_sq(&u).is_one());
            let c = to_c64(&u);
            let want = Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 64.0);
            assert!((c - want).norm() < 1e-6, "{k}");
        }
    }

    #[test]
    fn powers() {
        let z = gr(rat(0, 1), rat(2, 1));
        assert_eq!(powi(&z, -1).unwrap(), gr(rat(0, 1), rat(-1, 2)));
        assert_eq!(powi(&z, 2).unwrap(), gr_int(-4, 0));
        assert!(powi(&gr_int(0, 0), -1).is_none());
        assert!((powi64(Complex64::new(0.0, 2.0), -1) - Complex64::new(0.0, -0.5)).norm() < 1e-15);
    }
}
