use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::map::{p_gamma, Endomorphism};
use super::EndoError;
use crate::complex::{qc_to_c64, to_c64};
use crate::domain::BandDomain;
use crate::tri::Membership;

/// Result of solving `q = p_γ(λ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OrbitMatch {
    In(Complex64),
    Out,
    /// Moduli agree but no branch within the search bound matched.
    Uncertain,
}

impl OrbitMatch {
    pub fn membership(self) -> Membership {
        match self {
            OrbitMatch::In(_) => Membership::In,
            OrbitMatch::Out => Membership::Out,
            OrbitMatch::Uncertain => Membership::Boundary,
        }
    }
}

/// `λ` with `p_γ(λ) = q`: `Re λ = ln|q₂|` forces `ln|q₁| = −γ·Re λ`, and
/// `Im λ = arg q₂ + 2πk` must satisfy `−γ·Im λ ≡ arg q₁ (mod 2π)` for some `|k| ≤ bound`.
pub fn orbit_parameter(q: [Complex64; 2], gamma: f64, bound: i64, tol: f64) -> OrbitMatch {
    if q.iter().any(|c| c.norm() == 0.0 || !c.norm().is_finite()) {
        return OrbitMatch::Out;
    }
    let re = q[1].norm().ln();
    let modulus_gap = q[0].norm().ln() + gamma * re;
    if modulus_gap.abs() > tol * (1.0 + re.abs() * gamma) {
        return OrbitMatch::Out;
    }
    let (a1, a2) = (q[0].arg(), q[1].arg());
    for step in 0..=2 * bound.max(0) {
        let k = if step % 2 == 0 { step / 2 } else { -(step + 1) / 2 };
        let im = a2 + TAU * k as f64;
        let phase = (-gamma * im - a1 + PI).rem_euclid(TAU) - PI;
        if phase.abs() <= tol * (1.0 + im.abs() * gamma) {
            return OrbitMatch::In(Complex64::new(re, im));
        }
    }
    OrbitMatch::Uncertain
}

/// Whether `w ∼_γ z`, i.e. `w = z·p_γ(λ)` for some `λ`.
pub fn same_orbit(w: [Complex64; 2], z: [Complex64; 2], gamma: f64, bound: i64) -> Membership {
    if z.iter().chain(&w).any(|c| c.norm() == 0.0) {
        return Membership::Out;
    }
    orbit_parameter([w[0] / z[0], w[1] / z[1]], gamma, bound, 1e-9).membership()
}

/// Preimages of `w` inside `band` under a map with constant twist.
pub fn preimages(f: &Endomorphism, w: [Complex64; 2], band: &BandDomain) -> Result<Vec<[Complex64; 2]>, EndoError> {
    let (a, m, h) = f.parts().ok_or_else(|| EndoError::Unsupported("preimages of a non-standard map".into()))?;
    if !h.is_constant() {
        return Err(EndoError::Unsupported("preimages under a nonconstant twist".into()));
    }
    let g = band.gamma().to_f64();
    let p = p_gamma(g, qc_to_c64(&h.constant_term()));
    let scale = [to_c64(&a[0]) * p[0], to_c64(&a[1]) * p[1]];
    let target = [w[0] / scale[0], w[1] / scale[1]];
    Ok(m.preimages_c64(target)?.into_iter().filter(|z| band.contains_f64(*z, 1e-12).is_in()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::ExponentMatrix;
    use crate::scalar::GammaSpec;

    #[test]
    fn orbit_examples() {
        let g = 2f64.sqrt();
        let z = [Complex64::new(0.3, 0.2), Complex64::new(-0.5, 0.1)];
        let p = p_gamma(g, Complex64::new(1.0, 1.0));
        let w = [z[0] * p[0], z[1] * p[1]];
        assert_eq!(same_orbit(w, z, g, 1), Membership::In);
        assert_eq!(same_orbit([z[0] * 2.0, z[1] * 2.0], z, g, 5), Membership::Out);
        assert_eq!(same_orbit([z[0] * 2.0, z[1]], z, g, 5), Membership::Out);
        assert_eq!(same_orbit(z, z, g, 0), Membership::In);
        let p = p_gamma(g, Complex64::new(0.0, 1.0 + 40.0 * TAU));
        assert_eq!(same_orbit([z[0] * p[0], z[1] * p[1]], z, g, 10), Membership::Boundary);
        match orbit_parameter(p, g, 50, 1e-9) {
            OrbitMatch::In(l) => assert!((l.im - (1.0 + 40.0 * TAU)).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn square_has_four_preimages() {
        let band = BandDomain::type_ii(GammaSpec::sqrt(2).unwrap()).unwrap();
        let f = Endomorphism::monomial(ExponentMatrix::scalar(2));
        let pre = preimages(&f, [Complex64::new(0.1, 0.2), Complex64::new(0.3, -0.4)], &band).unwrap();
        assert_eq!(pre.len(), 4);
    }
}
