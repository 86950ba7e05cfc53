//! Fixed-point sets of normal-form endomorphisms.
//!
//! For `M = I` the map is `z·a·p_γ(h(z))`. Writing `a = p_γ(λ₀)`, a point is
//! fixed iff `p_γ(h(z) + λ₀) = (1, 1)`, and since `γ` is irrational the kernel
//! of `p_γ` is trivial, so the fixed set is the zero set of `h + λ₀`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::map::{p_gamma, Endomorphism};
use super::orbit::{orbit_parameter, OrbitMatch};
use super::twist::Twist;
use super::EndoError;
use crate::complex::{qc_to_c64, to_c64};
use crate::domain::{BandDomain, DomainKind};

/// Orbit search bound when locating `λ₀`.
const ORBIT_BOUND: i64 = 64;
/// Radii per annulus probe.
const RADII: usize = 11;
const MIN_CIRCLE_POINTS: usize = 512;
const MAX_CIRCLE_POINTS: usize = 65536;

#[derive(Clone, Debug, PartialEq)]
pub enum FixedPointClass {
    WholeDomain,
    /// `{h + λ₀ = 0} ∩ D`, with one located point when refinement succeeded.
    AnalyticCurve { h: Twist, lambda0: Complex64, witness: Option<[Complex64; 2]> },
    Empty,
    /// Complete list of isolated fixed points.
    Isolated { points: Vec<[Complex64; 2]> },
    /// Search was not exhaustive; `points` are those found.
    Other { points: Vec<[Complex64; 2]>, note: String },
}

pub fn fixed_point_class(f: &Endomorphism, kind: &DomainKind) -> Result<FixedPointClass, EndoError> {
    let (a, m, h) = f.parts().ok_or_else(|| EndoError::Unsupported("fixed points of a non-standard map".into()))?;
    let band = kind.canonical_band().ok_or_else(|| EndoError::Unsupported(format!("no normal form for {kind}")))?;
    let g = band.gamma().to_f64();
    let a64 = [to_c64(&a[0]), to_c64(&a[1])];
    if m.is_identity() {
        if h.is_constant() {
            let p = p_gamma(g, qc_to_c64(&h.constant_term()));
            let one = Complex64::new(1.0, 0.0);
            let fixed = (a64[0] * p[0] - one).norm() < 1e-12 && (a64[1] * p[1] - one).norm() < 1e-12;
            return Ok(if fixed { FixedPointClass::WholeDomain } else { FixedPointClass::Empty });
        }
        return Ok(match orbit_parameter(a64, g, ORBIT_BOUND, 1e-12) {
            OrbitMatch::Out => FixedPointClass::Empty,
            OrbitMatch::Uncertain => FixedPointClass::Other { points: vec![], note: "coefficient not located on the p_γ-orbit of (1, 1)".into() },
            OrbitMatch::In(lambda0) => match probe_zero(h, lambda0, &band) {
                Some(witness) => FixedPointClass::AnalyticCurve { h: h.clone(), lambda0, witness },
                None => FixedPointClass::Empty,
            },
        });
    }
    if h.is_constant() {
        let p = p_gamma(g, qc_to_c64(&h.constant_term()));
        let target = [(a64[0] * p[0]).inv(), (a64[1] * p[1]).inv()];
        let b = m.sub_identity();
        if b.det() == 0 {
            return Ok(FixedPointClass::Other { points: vec![], note: "det(M − I) = 0".into() });
        }
        let points: Vec<_> = b.preimages_c64(target)?.into_iter().filter(|z| band.contains_f64(*z, 1e-12).is_in()).collect();
        return Ok(if points.is_empty() { FixedPointClass::Empty } else { FixedPointClass::Isolated { points } });
    }
    let points = newton_fixed_points(f, &band);
    Ok(FixedPointClass::Other { points, note: "bounded Newton search".into() })
}

/// Winding number of `w ↦ h(w, z₂) + λ₀` around `|w| = ρ`, refining the sampling until
/// successive arguments differ by less than π/4.
fn winding(h: &Twist, lambda0: Complex64, z2: Complex64, rho: f64) -> Option<i64> {
    let mut n = MIN_CIRCLE_POINTS;
    while n <= MAX_CIRCLE_POINTS {
        let mut total = 0.0;
        let mut prev = h.eval_c64([Complex64::new(rho, 0.0), z2]) + lambda0;
        let mut ok = prev.norm() > 1e-300;
        for j in 1..=n {
            let w = Complex64::from_polar(rho, TAU * j as f64 / n as f64);
            let cur = h.eval_c64([w, z2]) + lambda0;
            let step = (cur / prev).arg();
            if cur.norm() <= 1e-300 || step.abs() > std::f64::consts::FRAC_PI_4 {
                ok = false;
                break;
            }
            total += step;
            prev = cur;
        }
        if ok {
            return Some((total / TAU).round() as i64);
        }
        n *= 2;
    }
    None
}

/// Probes `{h + λ₀ = 0} ∩ D` by argument-principle counts on annuli inside each admissible `z₁`-range.
///
/// `Some(_)` once a count certifies a zero; the inner value is a located zero when Newton converges.
fn probe_zero(h: &Twist, lambda0: Complex64, band: &BandDomain) -> Option<Option<[Complex64; 2]>> {
    let g = band.gamma().to_f64();
    let complete = band.axes().z2;
    let (poles1, _) = h.pole_orders();
    for e in [0i32, -1, 1, -2, 2, -3, 3] {
        for t in 0..8 {
            let z2 = Complex64::from_polar(2f64.powi(e), TAU * t as f64 / 8.0);
            let scale = z2.norm().powf(g);
            let hi = (band.upper_f64() / scale).min(4096.0) * (1.0 - 1e-6);
            let lo = (band.lower_f64() / scale).max(hi / 4096.0) * (1.0 + 1e-6);
            if !(lo < hi) {
                continue;
            }
            let radii: Vec<f64> = (0..RADII).map(|j| hi * (lo / hi).powf(j as f64 / (RADII - 1) as f64)).collect();
            let counts: Vec<Option<i64>> = radii.iter().map(|&r| winding(h, lambda0, z2, r)).collect();
            let mut annuli: Vec<(f64, f64)> = Vec::new();
            for j in 0..RADII - 1 {
                if let (Some(outer), Some(inner)) = (counts[j], counts[j + 1]) {
                    if outer != inner {
                        annuli.push((radii[j + 1], radii[j]));
                    }
                }
            }
            if complete && band.lower_f64() == 0.0 {
                if let Some(c) = counts[RADII - 1] {
                    if c + poles1 as i64 > 0 {
                        annuli.push((0.0, radii[RADII - 1]));
                    }
                }
            }
            if let Some(&(r_in, r_out)) = annuli.first() {
                let w = refine_zero(h, lambda0, z2, r_in, r_out).filter(|w| band.contains_f64([*w, z2], 0.0).is_in());
                return Some(w.map(|w| [w, z2]));
            }
        }
    }
    None
}

/// Newton iteration in `z₁` for `h(·, z₂) + λ₀`, from starts spread over the annulus.
fn refine_zero(h: &Twist, lambda0: Complex64, z2: Complex64, r_in: f64, r_out: f64) -> Option<Complex64> {
    for s in 0..16 {
        let r = r_in + (r_out - r_in) * (0.25 + 0.5 * ((s / 8) as f64));
        let mut w = Complex64::from_polar(r, TAU * (s % 8) as f64 / 8.0);
        for _ in 0..60 {
            let v = h.eval_c64([w, z2]) + lambda0;
            let d = h.gradient_c64([w, z2])[0];
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            w -= step;
            if step.norm() < 1e-14 * (1.0 + w.norm()) {
                let val = (h.eval_c64([w, z2]) + lambda0).norm();
                if val < 1e-10 && w.norm() > r_in * (1.0 - 1e-9) && w.norm() < r_out * (1.0 + 1e-9) {
                    return Some(w);
                }
                break;
            }
        }
    }
    None
}

/// Newton on `F(z) − z` from a grid of starts inside the band.
fn newton_fixed_points(f: &Endomorphism, band: &BandDomain) -> Vec<[Complex64; 2]> {
    let g = band.gamma().to_f64();
    let mut found: Vec<[Complex64; 2]> = Vec::new();
    let mid = if band.upper_f64().is_finite() { (band.upper_f64() * band.lower_f64().max(1e-3)).sqrt() } else { 1.0 };
    for e in -2..=2 {
        for t1 in 0..6 {
            for t2 in 0..6 {
                let z2 = Complex64::from_polar(2f64.powi(e), TAU * t2 as f64 / 6.0);
                let z1 = Complex64::from_polar(mid / z2.norm().powf(g), TAU * t1 as f64 / 6.0);
                if let Some(z) = newton2(f, g, [z1, z2]) {
                    let new = found.iter().all(|p| (p[0] - z[0]).norm() + (p[1] - z[1]).norm() > 1e-8);
                    if new && band.contains_f64(z, 1e-12).is_in() {
                        found.push(z);
                    }
                }
            }
        }
    }
    found
}

fn newton2(f: &Endomorphism, g: f64, mut z: [Complex64; 2]) -> Option<[Complex64; 2]> {
    let resid = |z: [Complex64; 2]| -> Option<[Complex64; 2]> {
        let w = f.evaluate(g, z).ok()?;
        Some([w[0] - z[0], w[1] - z[1]])
    };
    for _ in 0..80 {
        let r = resid(z)?;
        if r[0].norm() + r[1].norm() < 1e-13 * (1.0 + z[0].norm() + z[1].norm()) {
            return Some(z);
        }
        let eps = 1e-7;
        let mut jac = [[Complex64::new(0.0, 0.0); 2]; 2];
        for j in 0..2 {
            let mut zp = z;
            let hstep = eps * (1.0 + z[j].norm());
            zp[j] += hstep;
            let rp = resid(zp)?;
            jac[0][j] = (rp[0] - r[0]) / hstep;
            jac[1][j] = (rp[1] - r[1]) / hstep;
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det.norm() < 1e-300 {
            return None;
        }
        let dx = [(jac[1][1] * r[0] - jac[0][1] * r[1]) / det, (jac[0][0] * r[1] - jac[1][0] * r[0]) / det];
        z = [z[0] - dx[0], z[1] - dx[1]];
        if z.iter().any(|c| !c.norm().is_finite() || c.norm() == 0.0) {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{gr, gr_int, lift};
    use crate::endo::ExponentMatrix;
    use crate::scalar::rational::rat;
    use crate::scalar::GammaSpec;

    fn t2() -> DomainKind {
        DomainKind::type_ii(GammaSpec::sqrt(2).unwrap())
    }

    #[test]
    fn curve_for_linear_twist() {
        let h = Twist::from_terms([((1, 0), lift(&gr_int(1, 0))), ((0, 0), lift(&gr(rat(-1, 2), rat(0, 1))))]).unwrap();
        let f = Endomorphism::twisted_identity(h);
        match fixed_point_class(&f, &t2()).unwrap() {
            FixedPointClass::AnalyticCurve { witness: Some(w), lambda0, .. } => {
                assert!(lambda0.norm() < 1e-12);
                assert!((w[0] - Complex64::new(0.5, 0.0)).norm() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identity_and_square() {
        assert_eq!(fixed_point_class(&Endomorphism::identity(), &t2()).unwrap(), FixedPointClass::WholeDomain);
        let sq = Endomorphism::monomial(ExponentMatrix::scalar(2));
        assert_eq!(fixed_point_class(&sq, &t2()).unwrap(), FixedPointClass::Empty);
        let rot = Endomorphism::scaling([gr_int(-1, 0), gr_int(1, 0)]);
        assert_eq!(fixed_point_class(&rot, &t2()).unwrap(), FixedPointClass::Empty);
    }

    #[test]
    fn zero_free_twist_is_empty() {
        let h = Twist::from_terms([((1, 0), lift(&gr_int(1, 0))), ((0, 0), lift(&gr_int(-5, 0)))]).unwrap();
        let f = Endomorphism::twisted_identity(h);
        let strip = DomainKind::type_iii(GammaSpec::sqrt(2).unwrap(), crate::scalar::rational::int(2));
        // z₁ = 5 needs |z₂|^γ in (1/10, 2/5): still inside the strip for suitable z₂.
        assert!(matches!(fixed_point_class(&f, &strip).unwrap(), FixedPointClass::AnalyticCurve { .. }));
        let h = Twist::from_terms([((0, 0), lift(&gr_int(1, 0))), ((1, 0), lift(&gr_int(0, 0)))]).unwrap();
        assert_eq!(fixed_point_class(&Endomorphism::twisted_identity(h), &t2()).unwrap(), FixedPointClass::Empty);
    }
}
