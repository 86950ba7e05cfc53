use num_complex::Complex64;

use super::map::{Endomorphism, LevelMap};
use super::EndoError;
use crate::complex::{powi, GaussianRational};
use crate::scalar::{GammaSpec, QuadExt};

/// A composite outside the closed normal-form class, kept as a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpaqueComposite {
    /// Outermost map first.
    chain: Vec<Endomorphism>,
    level: LevelMap,
}

impl OpaqueComposite {
    pub fn chain(&self) -> &[Endomorphism] {
        &self.chain
    }

    pub fn level_map(&self) -> &LevelMap {
        &self.level
    }

    pub fn degree(&self) -> &QuadExt {
        &self.level.alpha
    }

    pub fn evaluate(&self, gamma: f64, z: [Complex64; 2]) -> Result<[Complex64; 2], EndoError> {
        self.chain.iter().rev().try_fold(z, |w, f| f.evaluate(gamma, w))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Composite {
    Closed(Endomorphism),
    Opaque(OpaqueComposite),
}

impl Composite {
    pub fn evaluate(&self, gamma: f64, z: [Complex64; 2]) -> Result<[Complex64; 2], EndoError> {
        match self {
            Composite::Closed(f) => f.evaluate(gamma, z),
            Composite::Opaque(o) => o.evaluate(gamma, z),
        }
    }

    pub fn level_map(&self, gamma: &GammaSpec) -> Option<LevelMap> {
        match self {
            Composite::Closed(f) => f.level_map(gamma),
            Composite::Opaque(o) => Some(o.level.clone()),
        }
    }

    pub fn degree(&self, gamma: &GammaSpec) -> Option<QuadExt> {
        self.level_map(gamma).map(|l| l.alpha)
    }

    pub fn closed(&self) -> Option<&Endomorphism> {
        match self {
            Composite::Closed(f) => Some(f),
            Composite::Opaque(_) => None,
        }
    }

    fn chain(&self) -> Vec<Endomorphism> {
        match self {
            Composite::Closed(f) => vec![f.clone()],
            Composite::Opaque(o) => o.chain.clone(),
        }
    }
}

/// `F∘G = (a_F·Φ_F(a_G))·Φ_{A_F A_G}(z)·p_γ(c_F·h_G + h_F∘G)`.
///
/// Closed when `h_F` is constant (then `h_F∘G = h_F`) or `h_G ≡ 0`
/// (then `h_F∘G` is `h_F` pulled back by a monomial map); opaque otherwise.
pub fn compose(f: &Endomorphism, g: &Endomorphism, gamma: &GammaSpec) -> Result<Composite, EndoError> {
    let (Some((af, mf, hf)), Some((ag, mg, hg))) = (f.parts(), g.parts()) else {
        return Err(EndoError::KindMismatch("composition needs two standard maps".into()));
    };
    let cf = mf.conjugate_degree(gamma).ok_or(EndoError::NoDegree)?;
    if g.degree(gamma).is_none() {
        return Err(EndoError::NoDegree);
    }
    let pulled = if hf.is_constant() {
        hf.clone()
    } else if hg.is_zero() {
        hf.substitute_monomial(ag, mg)?
    } else {
        let level = f.level_map(gamma).ok_or(EndoError::NoDegree)?.then_after(&g.level_map(gamma).ok_or(EndoError::NoDegree)?)?;
        return Ok(Composite::Opaque(OpaqueComposite { chain: vec![f.clone(), g.clone()], level }));
    };
    let phi_a = [mono(&ag[0], &ag[1], mf.k2, mf.k1)?, mono(&ag[0], &ag[1], mf.l2, mf.l1)?];
    let a = [&af[0] * &phi_a[0], &af[1] * &phi_a[1]];
    let h = hg.scale_real(&cf)?.try_add(&pulled)?;
    Ok(Composite::Closed(Endomorphism::standard(a, mf.compose(mg)?, h)?))
}

fn mono(x: &GaussianRational, y: &GaussianRational, p: i64, q: i64) -> Result<GaussianRational, EndoError> {
    Ok(powi(x, p).ok_or(EndoError::ZeroCoordinate)? * powi(y, q).ok_or(EndoError::ZeroCoordinate)?)
}

/// Composition of possibly opaque composites; closed whenever the closed form applies.
pub fn compose_composites(f: &Composite, g: &Composite, gamma: &GammaSpec) -> Result<Composite, EndoError> {
    if let (Composite::Closed(a), Composite::Closed(b)) = (f, g) {
        return compose(a, b, gamma);
    }
    let level = f.level_map(gamma).ok_or(EndoError::NoDegree)?.then_after(&g.level_map(gamma).ok_or(EndoError::NoDegree)?)?;
    let mut chain = f.chain();
    chain.extend(g.chain());
    Ok(Composite::Opaque(OpaqueComposite { chain, level }))
}

/// `F∘F`, closed form required; used by the involution certificates.
pub fn square(f: &Endomorphism, gamma: &GammaSpec) -> Result<Endomorphism, EndoError> {
    match compose(f, f, gamma)? {
        Composite::Closed(e) => Ok(e),
        Composite::Opaque(_) => Err(EndoError::Unsupported("square has no closed form".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{gr, gr_int, lift, to_c64};
    use crate::endo::{ExponentMatrix, Twist};
    use crate::scalar::rational::rat;

    fn s2() -> GammaSpec {
        GammaSpec::sqrt(2).unwrap()
    }

    fn close(a: [Complex64; 2], b: [Complex64; 2]) -> bool {
        (0..2).all(|j| crate::complex::rel_err(a[j], b[j]) < 1e-12)
    }

    #[test]
    fn powers_multiply() {
        let sq = Endomorphism::monomial(ExponentMatrix::scalar(2));
        let cu = Endomorphism::monomial(ExponentMatrix::scalar(3));
        let c = compose(&sq, &cu, &s2()).unwrap();
        assert_eq!(c, Composite::Closed(Endomorphism::monomial(ExponentMatrix::scalar(6))));
        assert_eq!(c.degree(&s2()), Some(QuadExt::from_int(6)));
    }

    #[test]
    fn scaling_after_twist() {
        let a = [gr(rat(1, 2), rat(1, 2)), gr_int(0, 1)];
        let f = Endomorphism::scaling(a.clone());
        let h = Twist::monomial(1, -1, lift(&gr_int(1, 2)));
        let g = Endomorphism::twisted_identity(h.clone());
        let c = compose(&f, &g, &s2()).unwrap();
        assert_eq!(c, Composite::Closed(Endomorphism::standard(a, ExponentMatrix::IDENTITY, h).unwrap()));
    }

    #[test]
    fn twist_pairs_go_opaque() {
        let f = Endomorphism::twisted_identity(Twist::monomial(1, 0, lift(&gr_int(1, 0))));
        let g = Endomorphism::twisted_identity(Twist::monomial(0, 1, lift(&gr_int(1, 0))));
        let c = compose(&f, &g, &s2()).unwrap();
        assert!(matches!(c, Composite::Opaque(_)));
        assert_eq!(c.degree(&s2()), Some(QuadExt::from_int(1)));
        let z = [Complex64::new(0.3, 0.1), Complex64::new(0.2, -0.4)];
        let g2 = 2f64.sqrt();
        assert!(close(c.evaluate(g2, z).unwrap(), f.evaluate(g2, g.evaluate(g2, z).unwrap()).unwrap()));
    }

    #[test]
    fn closed_form_matches_pointwise() {
        let g2 = 2f64.sqrt();
        let f = Endomorphism::standard(
            [gr(rat(1, 3), rat(1, 5)), gr_int(2, -1)],
            ExponentMatrix::new(-1, 2, 1, -1),
            Twist::from_terms([((1, 0), lift(&gr_int(1, 1))), ((0, -1), lift(&gr(rat(1, 2), rat(0, 1))))]).unwrap(),
        )
        .unwrap();
        let g = Endomorphism::standard([gr_int(1, 1), gr(rat(2, 3), rat(0, 1))], ExponentMatrix::new(3, 4, 2, 3), Twist::zero()).unwrap();
        let c = compose(&f, &g, &s2()).unwrap();
        let closed = c.closed().expect("closed");
        let z = [to_c64(&gr(rat(1, 2), rat(1, 4))), to_c64(&gr(rat(3, 4), rat(-1, 8)))];
        assert!(close(closed.evaluate(g2, z).unwrap(), f.evaluate(g2, g.evaluate(g2, z).unwrap()).unwrap()));
        let alpha = c.degree(&s2()).unwrap();
        assert_eq!(alpha, f.degree(&s2()).unwrap().try_mul(&g.degree(&s2()).unwrap()).unwrap());
    }

    #[test]
    fn kind_mismatch() {
        let c = Endomorphism::AxisCollapse1 { h: Twist::zero() };
        assert!(matches!(compose(&c, &Endomorphism::identity(), &s2()), Err(EndoError::KindMismatch(_))));
    }
}
