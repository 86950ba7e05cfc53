use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::matrix::ExponentMatrix;
use super::twist::Twist;
use super::EndoError;
use crate::complex::{modulus_sq, to_c64, GaussianRational};
use crate::domain::{DomainKind, ModulusPoint, PointC2};
use crate::scalar::rational::Rational;
use crate::scalar::{GammaSpec, LogLinear, Precision, QuadExt, Scalar, Sign};
use crate::tri::{Membership, Tri};

/// `p_γ(λ) = (e^{−γλ}, e^{λ})`.
pub fn p_gamma(gamma: f64, lambda: Complex64) -> [Complex64; 2] {
    [(-gamma * lambda).exp(), lambda.exp()]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endomorphism {
    /// `a · Φ_M(z) · p_γ(h(z))`.
    Standard { a: [GaussianRational; 2], m: ExponentMatrix, h: Twist },
    /// `z ↦ (h(z), 0)`.
    AxisCollapse1 { h: Twist },
    /// `z ↦ (0, h(z))`.
    AxisCollapse2 { h: Twist },
    Constant { value: PointC2 },
}

impl Endomorphism {
    pub fn standard(a: [GaussianRational; 2], m: ExponentMatrix, h: Twist) -> Result<Self, EndoError> {
        if a.iter().any(|c| c.is_zero()) {
            return Err(EndoError::ZeroCoordinate);
        }
        Ok(Endomorphism::Standard { a, m, h })
    }

    pub fn identity() -> Self {
        Self::scaling([GaussianRational::one(), GaussianRational::one()])
    }

    /// `z ↦ a·z`.
    pub fn scaling(a: [GaussianRational; 2]) -> Self {
        Endomorphism::Standard { a, m: ExponentMatrix::IDENTITY, h: Twist::zero() }
    }

    /// `z ↦ Φ_M(z)`.
    pub fn monomial(m: ExponentMatrix) -> Self {
        Endomorphism::Standard { a: [GaussianRational::one(), GaussianRational::one()], m, h: Twist::zero() }
    }

    /// `z ↦ z·p_γ(h(z))`.
    pub fn twisted_identity(h: Twist) -> Self {
        Endomorphism::Standard { a: [GaussianRational::one(), GaussianRational::one()], m: ExponentMatrix::IDENTITY, h }
    }

    pub fn parts(&self) -> Option<(&[GaussianRational; 2], &ExponentMatrix, &Twist)> {
        match self {
            Endomorphism::Standard { a, m, h } => Some((a, m, h)),
            _ => None,
        }
    }

    pub fn degree(&self, gamma: &GammaSpec) -> Option<QuadExt> {
        self.parts()?.1.degree(gamma)
    }

    pub fn evaluate(&self, gamma: f64, z: [Complex64; 2]) -> Result<[Complex64; 2], EndoError> {
        match self {
            Endomorphism::Standard { a, m, h } => {
                if z.iter().any(|c| c.is_zero()) {
                    return Err(EndoError::ZeroCoordinate);
                }
                let phi = m.apply_c64(z);
                let p = p_gamma(gamma, h.eval_c64(z));
                Ok([to_c64(&a[0]) * phi[0] * p[0], to_c64(&a[1]) * phi[1] * p[1]])
            }
            Endomorphism::AxisCollapse1 { h } => Ok([h.eval_c64(z), Complex64::zero()]),
            Endomorphism::AxisCollapse2 { h } => Ok([Complex64::zero(), h.eval_c64(z)]),
            Endomorphism::Constant { value } => Ok([to_c64(&value.0[0]), to_c64(&value.0[1])]),
        }
    }

    /// `ρ ↦ β·ρ^α` on level sets.
    pub fn level_map(&self, gamma: &GammaSpec) -> Option<LevelMap> {
        let (a, m, _) = self.parts()?;
        Some(LevelMap { alpha: m.degree(gamma)?, log_beta_sq: beta_form(a, gamma).ok()? })
    }

    /// `log|F₁(z)|²` and `log|F₂(z)|²` as exact log-linear forms.
    ///
    /// Needs a twist value whose real part times `γ` is representable.
    pub fn image_moduli(&self, gamma: &GammaSpec, z: &PointC2) -> Result<ModulusPoint, EndoError> {
        match self {
            Endomorphism::Standard { a, m, h } => {
                let mz = z.moduli();
                let [Some(x1), Some(x2)] = &mz.0 else { return Err(EndoError::ZeroCoordinate) };
                let hv = h.eval_exact(&z.0)?.ok_or(EndoError::ZeroCoordinate)?;
                let re2 = Scalar::Exact(hv.re.scale(&Rational::from_integer(2.into())));
                let shift1 = re2.try_mul(&gamma.as_scalar()).or_else(|_| gamma.as_scalar().try_mul(&re2))?.neg();
                let comb = |p: i64, q: i64| x1.scale(&Rational::from_integer(p.into())).add(&x2.scale(&Rational::from_integer(q.into())));
                let w1 = LogLinear::log(Scalar::int(1), modulus_sq(&a[0]))?.add(&comb(m.k2, m.k1)).with_offset(shift1);
                let w2 = LogLinear::log(Scalar::int(1), modulus_sq(&a[1]))?.add(&comb(m.l2, m.l1)).with_offset(re2);
                Ok(ModulusPoint([Some(w1), Some(w2)]))
            }
            Endomorphism::Constant { value } => Ok(value.moduli()),
            Endomorphism::AxisCollapse1 { h } | Endomorphism::AxisCollapse2 { h } => {
                let hv = h.eval_exact(&z.0)?.ok_or(EndoError::ZeroCoordinate)?;
                let (Some(re), Some(im)) = (hv.re.as_rational(), hv.im.as_rational()) else {
                    return Err(EndoError::Unsupported("irrational axis value".into()));
                };
                let p = PointC2::new(crate::complex::gr(re.clone(), im.clone()), GaussianRational::zero()).moduli();
                let v = p.0[0].clone();
                Ok(ModulusPoint(if matches!(self, Endomorphism::AxisCollapse1 { .. }) { [v, None] } else { [None, v] }))
            }
        }
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |z: &GaussianRational| {
            let s = |r: &Rational| crate::scalar::rational::format_rational(r);
            let im = |r: &Rational| if r.is_one() { "i".to_string() } else { format!("{}i", s(r)) };
            match (z.re.is_zero(), z.im.is_zero()) {
                (_, true) => s(&z.re),
                (true, false) if z.im.is_negative() => format!("-{}", im(&-&z.im)),
                (true, false) => im(&z.im),
                (false, false) if z.im.is_negative() => format!("({}-{})", s(&z.re), im(&-&z.im)),
                (false, false) => format!("({}+{})", s(&z.re), im(&z.im)),
            }
        };
        match self {
            Endomorphism::Standard { a, m, h } => {
                write!(f, "({}, {})·Φ{}", c(&a[0]), c(&a[1]), m)?;
                if !h.is_zero() {
                    write!(f, "·p({h})")?;
                }
                Ok(())
            }
            Endomorphism::AxisCollapse1 { h } => write!(f, "({h}, 0)"),
            Endomorphism::AxisCollapse2 { h } => write!(f, "(0, {h})"),
            Endomorphism::Constant { value } => write!(f, "const({}, {})", c(&value.0[0]), c(&value.0[1])),
        }
    }
}

/// `log β² = log|a₁|² + γ·log|a₂|²`.
pub fn beta_form(a: &[GaussianRational; 2], gamma: &GammaSpec) -> Result<LogLinear, EndoError> {
    Ok(LogLinear::log(Scalar::int(1), modulus_sq(&a[0]))?.add(&LogLinear::log(gamma.as_scalar(), modulus_sq(&a[1]))?))
}

/// The induced level map `ρ ↦ β·ρ^α`, with `β` kept as an exact statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMap {
    pub alpha: QuadExt,
    /// `log β²`.
    pub log_beta_sq: LogLinear,
}

impl LevelMap {
    pub fn beta_f64(&self) -> f64 {
        (self.log_beta_sq.to_f64() / 2.0).exp()
    }

    pub fn apply_f64(&self, rho: f64) -> f64 {
        self.beta_f64() * rho.powf(self.alpha.to_f64())
    }

    /// Level map of `F∘G` from those of `F` (self) and `G`.
    pub fn then_after(&self, g: &LevelMap) -> Result<LevelMap, EndoError> {
        Ok(LevelMap {
            alpha: self.alpha.try_mul(&g.alpha)?,
            log_beta_sq: self.log_beta_sq.add(&g.log_beta_sq.scaled(&Scalar::Exact(self.alpha.clone()))?),
        })
    }
}

/// Outcome of checking the normal-form conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub verdict: Tri,
    pub violations: Vec<String>,
    pub undecided: Vec<String>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.verdict == Tri::True
    }
}

struct Report {
    violations: Vec<String>,
    undecided: Vec<String>,
}

impl Report {
    fn require(&mut self, ok: bool, clause: &str) {
        if !ok {
            self.violations.push(clause.to_string());
        }
    }

    /// `f ≤ 0` (`strict = false`) or `f < 0`.
    fn require_sign(&mut self, f: &LogLinear, strict: bool, clause: &str, prec: Precision) {
        match f.sign(prec) {
            Ok(Sign::Negative) => {}
            Ok(Sign::Zero) if !strict => {}
            Ok(Sign::Zero | Sign::Positive) => self.violations.push(clause.to_string()),
            Ok(Sign::Unknown) | Err(_) => self.undecided.push(clause.to_string()),
        }
    }

    fn membership(&mut self, m: Membership, clause: &str) {
        match m {
            Membership::In => {}
            Membership::Out => self.violations.push(clause.to_string()),
            Membership::Boundary => self.undecided.push(clause.to_string()),
        }
    }
}

pub fn validate(f: &Endomorphism, kind: &DomainKind, prec: Precision) -> Result<Validation, EndoError> {
    let band = kind.canonical_band().ok_or_else(|| EndoError::Unsupported(format!("no normal form for {kind}")))?;
    let gamma = band.gamma().clone();
    let type_i = matches!(kind, DomainKind::TypeI { .. });
    let mut r = Report { violations: Vec::new(), undecided: Vec::new() };
    match f {
        Endomorphism::Standard { a, m, h } => match m.degree(&gamma) {
            None if gamma.exact().is_none() => r.require(false, "non-algebraic exponent forces the diagonal form k1 = l2 = 0, k2 = l1"),
            None => r.require(false, "exponent matrix admits no degree"),
            Some(alpha) => {
                let log_beta_sq = beta_form(a, &gamma)?;
                if type_i {
                    r.require(m.entries().iter().all(|&e| e >= 0), "complete domain needs nonnegative exponents");
                    r.require(h.is_polynomial(), "complete domain needs a polynomial twist");
                }
                match kind {
                    DomainKind::TypeIII { r_sq, .. } => {
                        let one = QuadExt::from_int(1);
                        r.require(alpha.try_cmp(&one)?.is_le(), "degree above 1");
                        r.require(alpha.try_cmp(&-one)?.is_ge(), "degree below -1");
                        if alpha.is_zero() {
                            r.membership(band.membership(&PointC2(a.clone()), prec), "constant level outside the strip");
                        } else {
                            let l = LogLinear::log(Scalar::int(1), r_sq.clone())?;
                            let al = l.scaled(&Scalar::Exact(alpha.clone()))?;
                            for (sign, tag) in [(1, "+"), (-1, "−")] {
                                let shifted = if sign > 0 { log_beta_sq.add(&al) } else { log_beta_sq.sub(&al) };
                                r.require_sign(&shifted.sub(&l), false, &format!("β·r^{{{tag}α}} above r"), prec);
                                r.require_sign(&shifted.neg().sub(&l), false, &format!("β·r^{{{tag}α}} below 1/r"), prec);
                            }
                        }
                    }
                    _ => {
                        r.require(!alpha.signum().is_lt(), "negative degree on a half-plane domain");
                        if alpha.is_zero() {
                            r.membership(band.membership(&PointC2(a.clone()), prec), "constant level outside the domain");
                        } else if alpha.is_positive() {
                            r.require_sign(&log_beta_sq, false, "β above 1", prec);
                        }
                    }
                }
            }
        },
        Endomorphism::AxisCollapse1 { h } | Endomorphism::AxisCollapse2 { h } => {
            r.require(type_i, "axis collapse needs the axes inside the domain");
            r.require(h.is_polynomial(), "complete domain needs a polynomial twist");
        }
        Endomorphism::Constant { value } => r.membership(band.membership(value, prec), "constant outside the domain"),
    }
    r.violations.dedup();
    let verdict = if !r.violations.is_empty() {
        Tri::False
    } else if !r.undecided.is_empty() {
        Tri::Uncertain
    } else {
        Tri::True
    };
    Ok(Validation { verdict, violations: r.violations, undecided: r.undecided })
}

/// Proper self-maps: nonzero degree, constant twist, level map onto (`β = 1`),
/// and on strips additionally `|α| = 1` with unimodular matrix.
pub fn is_proper_selfmap(f: &Endomorphism, kind: &DomainKind, prec: Precision) -> Result<Tri, EndoError> {
    let Some((a, m, h)) = f.parts() else { return Ok(Tri::False) };
    let gamma = kind.gamma().ok_or_else(|| EndoError::Unsupported(format!("no normal form for {kind}")))?;
    let Some(alpha) = m.degree(gamma) else { return Ok(Tri::False) };
    if alpha.is_zero() || !h.is_constant() {
        return Ok(Tri::False);
    }
    if matches!(kind, DomainKind::TypeIII { .. }) && !(super::matrix::is_unit(&alpha) && m.det().abs() == 1) {
        return Ok(Tri::False);
    }
    if matches!(kind, DomainKind::TypeI { .. } | DomainKind::TypeII { .. }) && !alpha.is_positive() {
        return Ok(Tri::False);
    }
    Ok(match beta_form(a, gamma)?.sign(prec)? {
        Sign::Zero => Tri::True,
        Sign::Negative | Sign::Positive => Tri::False,
        Sign::Unknown => Tri::Uncertain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{gr, gr_int, lift};
    use crate::scalar::rational::{int, rat};

    fn s2() -> GammaSpec {
        GammaSpec::sqrt(2).unwrap()
    }

    fn strip() -> DomainKind {
        DomainKind::type_iii(s2(), int(2))
    }

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn validate_examples() {
        let f = Endomorphism::scaling([gr(rat(1, 2), int(0)), gr_int(1, 0)]);
        let v = validate(&f, &strip(), p()).unwrap();
        assert_eq!(v.verdict, Tri::False);
        assert!(v.violations.iter().any(|s| s.contains("below 1/r")));
        let inv = Endomorphism::standard([gr(rat(3, 5), rat(4, 5)), gr_int(0, 1)], ExponentMatrix::scalar(-1), Twist::zero()).unwrap();
        assert!(validate(&inv, &strip(), p()).unwrap().is_valid());
        let sq = Endomorphism::monomial(ExponentMatrix::scalar(2));
        assert!(validate(&sq, &DomainKind::type_ii(s2()), p()).unwrap().is_valid());
        assert!(validate(&sq, &strip(), p()).unwrap().violations.contains(&"degree above 1".to_string()));
        assert!(!validate(&inv, &DomainKind::type_ii(s2()), p()).unwrap().is_valid());
        let frac = Endomorphism::monomial(ExponentMatrix::new(-1, 2, 1, -1));
        assert!(validate(&frac, &strip(), p()).unwrap().is_valid());
        let wide = Endomorphism::scaling([gr_int(2, 0), gr_int(1, 0)]);
        assert!(!validate(&wide, &DomainKind::type_ii(s2()), p()).unwrap().is_valid());
        let collapse = Endomorphism::AxisCollapse1 { h: Twist::monomial(1, 1, lift(&gr_int(1, 0))) };
        assert!(validate(&collapse, &DomainKind::type_i(s2()), p()).unwrap().is_valid());
        assert!(!validate(&collapse, &DomainKind::type_ii(s2()), p()).unwrap().is_valid());
        let off_diag = Endomorphism::monomial(ExponentMatrix::new(-1, 2, 1, -1));
        assert!(!validate(&off_diag, &DomainKind::type_ii(GammaSpec::half_pi()), p()).unwrap().is_valid());
    }

    #[test]
    fn evaluate_examples() {
        let z = [Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)];
        assert_eq!(Endomorphism::identity().evaluate(1.5, z).unwrap(), z);
        let g = GammaSpec::half_pi().to_f64();
        let f = Endomorphism::twisted_identity(Twist::constant_gr(gr_int(1, 0)));
        let w = f.evaluate(g, z).unwrap();
        assert!((w[0].re - 0.1039).abs() < 1e-4 && (w[1].re - 1.3591).abs() < 1e-4);
        assert!(Endomorphism::identity().evaluate(g, [Complex64::zero(), Complex64::one()]).is_err());
    }

    #[test]
    fn level_map_examples() {
        let lm = Endomorphism::monomial(ExponentMatrix::scalar(2)).level_map(&s2()).unwrap();
        assert_eq!(lm.alpha, QuadExt::from_int(2));
        assert!(lm.log_beta_sq.is_trivially_zero());
        let lm = Endomorphism::scaling([gr_int(0, 1), gr_int(-1, 0)]).level_map(&s2()).unwrap();
        assert_eq!(lm.beta_f64(), 1.0);
        let f = Endomorphism::monomial(ExponentMatrix::new(-1, 2, 1, -1));
        let lm = f.level_map(&s2()).unwrap();
        let z = [Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)];
        let level = |w: [Complex64; 2]| w[0].norm() * w[1].norm().powf(2f64.sqrt());
        let (lin, lout) = (level(z), level(f.evaluate(2f64.sqrt(), z).unwrap()));
        assert!((lin - 0.187).abs() < 1e-3 && (lout - 0.499).abs() < 2e-3);
        assert!((lm.apply_f64(lin) - lout).abs() < 1e-12);
    }

    #[test]
    fn proper_examples() {
        let sq = Endomorphism::monomial(ExponentMatrix::scalar(2));
        assert_eq!(is_proper_selfmap(&sq, &DomainKind::type_ii(s2()), p()).unwrap(), Tri::True);
        let tw = Endomorphism::twisted_identity(Twist::monomial(1, 0, lift(&gr_int(1, 0))));
        assert_eq!(is_proper_selfmap(&tw, &DomainKind::type_ii(s2()), p()).unwrap(), Tri::False);
        let frac = Endomorphism::monomial(ExponentMatrix::new(-1, 2, 1, -1));
        assert_eq!(is_proper_selfmap(&frac, &strip(), p()).unwrap(), Tri::False);
        let inv = Endomorphism::monomial(ExponentMatrix::scalar(-1));
        assert_eq!(is_proper_selfmap(&inv, &strip(), p()).unwrap(), Tri::True);
    }

    #[test]
    fn image_moduli_are_exact() {
        let f = Endomorphism::standard([gr_int(2, 0), gr(rat(1, 2), int(0))], ExponentMatrix::new(-1, 2, 1, -1), Twist::constant_gr(gr_int(1, 0))).unwrap();
        let z = PointC2::new(gr(rat(1, 2), rat(1, 3)), gr_int(1, -1));
        let mp = f.image_moduli(&s2(), &z).unwrap();
        let w = f.evaluate(2f64.sqrt(), [to_c64(&z.0[0]), to_c64(&z.0[1])]).unwrap();
        for j in 0..2 {
            assert!((mp.0[j].as_ref().unwrap().to_f64() - w[j].norm_sqr().ln()).abs() < 1e-12);
        }
    }
}
