use super::compose::square;
use super::map::{validate, Endomorphism, Validation};
use super::matrix::ExponentMatrix;
use super::twist::Twist;
use super::EndoError;
use crate::complex::{gr, gr_int, GaussianRational};
use crate::domain::DomainKind;
use crate::scalar::rational::rat;
use crate::scalar::{GammaSpec, Precision};

/// An involution with its closed-form square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionEntry {
    pub map: Endomorphism,
    pub square: Endomorphism,
    pub validation: Validation,
}

impl InvolutionEntry {
    pub fn square_is_identity(&self) -> bool {
        self.square == Endomorphism::identity()
    }
}

/// `{a·z⁻¹ : |a₁||a₂|^γ = 1}` with checked exact members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionFamily {
    pub description: String,
    pub members: Vec<InvolutionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionCatalog {
    pub kind: DomainKind,
    pub maps: Vec<InvolutionEntry>,
    pub family: Option<InvolutionFamily>,
    /// Candidates that fail validation on this kind, with the failing clauses.
    pub rejected: Vec<(Endomorphism, Validation)>,
}

fn entry(map: Endomorphism, kind: &DomainKind, gamma: &GammaSpec) -> Result<InvolutionEntry, EndoError> {
    let validation = validate(&map, kind, Precision::default())?;
    let square = square(&map, gamma)?;
    Ok(InvolutionEntry { map, square, validation })
}

fn sign_maps() -> Vec<Endomorphism> {
    [(-1, 1), (1, -1), (-1, -1)].into_iter().map(|(s, t)| Endomorphism::scaling([gr_int(s, 0), gr_int(t, 0)])).collect()
}

/// Unimodular coefficient pairs: `|a₁| = |a₂| = 1`, hence `|a₁||a₂|^γ = 1` for every `γ`.
fn unimodular_coefficients() -> Vec<[GaussianRational; 2]> {
    vec![
        [gr_int(1, 0), gr_int(1, 0)],
        [gr_int(-1, 0), gr_int(-1, 0)],
        [gr_int(0, 1), gr_int(-1, 0)],
        [gr(rat(3, 5), rat(4, 5)), gr_int(0, 1)],
        [gr(rat(-5, 13), rat(12, 13)), gr(rat(8, 17), rat(-15, 17))],
    ]
}

/// Involutive automorphisms of the half-plane and strip types.
pub fn involutions(kind: &DomainKind) -> Result<InvolutionCatalog, EndoError> {
    let gamma = match kind {
        DomainKind::TypeII { gamma } | DomainKind::TypeIII { gamma, .. } => gamma.clone(),
        other => return Err(EndoError::NoCatalog(other.to_string())),
    };
    let maps = sign_maps().into_iter().map(|m| entry(m, kind, &gamma)).collect::<Result<Vec<_>, _>>()?;
    let inverses: Vec<Endomorphism> = unimodular_coefficients()
        .into_iter()
        .map(|a| Endomorphism::standard(a, ExponentMatrix::scalar(-1), Twist::zero()))
        .collect::<Result<_, _>>()?;
    let mut rejected = Vec::new();
    let family = if matches!(kind, DomainKind::TypeIII { .. }) {
        let members = inverses.into_iter().map(|m| entry(m, kind, &gamma)).collect::<Result<Vec<_>, _>>()?;
        Some(InvolutionFamily { description: "a·z⁻¹ with |a₁||a₂|^γ = 1".into(), members })
    } else {
        for m in inverses {
            let v = validate(&m, kind, Precision::default())?;
            rejected.push((m, v));
        }
        None
    };
    Ok(InvolutionCatalog { kind: kind.clone(), maps, family, rejected })
}

impl InvolutionCatalog {
    /// Every listed map validates and squares to the identity in closed form.
    pub fn all_certified(&self) -> bool {
        let ok = |e: &InvolutionEntry| e.validation.is_valid() && e.square_is_identity() && e.map != Endomorphism::identity();
        self.maps.iter().all(ok) && self.family.as_ref().is_none_or(|f| f.members.iter().all(ok))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::int;

    #[test]
    fn half_plane_catalog() {
        let c = involutions(&DomainKind::type_ii(GammaSpec::sqrt(2).unwrap())).unwrap();
        assert_eq!(c.maps.len(), 3);
        assert!(c.family.is_none());
        assert!(c.all_certified());
        assert!(c.rejected.iter().all(|(_, v)| v.violations.iter().any(|s| s.contains("negative degree"))));
    }

    #[test]
    fn strip_catalog() {
        let c = involutions(&DomainKind::type_iii(GammaSpec::sqrt(2).unwrap(), int(2))).unwrap();
        assert_eq!(c.maps.len(), 3);
        assert!(c.family.as_ref().unwrap().members.len() >= 2);
        assert!(c.all_certified());
        let c = involutions(&DomainKind::type_iii(GammaSpec::half_pi(), int(3))).unwrap();
        assert!(c.all_certified());
    }

    #[test]
    fn other_kinds_have_no_catalog() {
        assert!(matches!(involutions(&DomainKind::BoundedHyperbolic), Err(EndoError::NoCatalog(_))));
    }
}
