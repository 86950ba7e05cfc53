//! Reinhardt domains given by one monomial band plus optional axis pieces.
//!
//! A [`BandDomain`] is `{lower < |z₁||z₂|^γ < upper}` together with chosen
//! pieces of the coordinate axes. Bounds are kept squared so that every
//! comparison is a sign question about `log|z₁|² + γ·log|z₂|²`.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::{modulus_sq, GaussianRational};
use crate::loggeom::{self, GeomError, Lineality, LogConstraint, LogRegion, RationalLine};
use crate::scalar::rational::{self, exact_sqrt, Rational};
use crate::scalar::{gl2z_equivalent, GammaSpec, Interval, LogLinear, Precision, QuadExt, Scalar, ScalarError, Sign};
use crate::tri::{Membership, Tri};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("invalid domain: {0}")]
    Invalid(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("not of type I, II or III: {0}")]
    NotSpecialType(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Which pieces of the coordinate axes belong to the domain.
///
/// `z1` is the punctured line `ℂ*×{0}`, `z2` is `{0}×ℂ*`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Axes {
    pub z1: bool,
    pub z2: bool,
    pub origin: bool,
}

impl Axes {
    pub const NONE: Axes = Axes { z1: false, z2: false, origin: false };
    pub const ALL: Axes = Axes { z1: true, z2: true, origin: true };
}

/// An exact point of `ℂ²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointC2(pub [GaussianRational; 2]);

impl PointC2 {
    pub fn new(z1: GaussianRational, z2: GaussianRational) -> Self {
        Self([z1, z2])
    }

    pub fn moduli(&self) -> ModulusPoint {
        ModulusPoint(self.0.clone().map(|z| {
            let m = modulus_sq(&z);
            (!m.is_zero()).then(|| LogLinear::log(Scalar::int(1), m).expect("positive modulus"))
        }))
    }
}

/// `log|z_j|²` per coordinate, `None` for a zero coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusPoint(pub [Option<LogLinear>; 2]);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandDomain {
    gamma: GammaSpec,
    lower_sq: Rational,
    upper_sq: Option<Rational>,
    axes: Axes,
}

impl BandDomain {
    /// `{lower < |z₁||z₂|^γ < upper}` plus axis pieces; `upper = None` means no upper bound.
    pub fn new(gamma: GammaSpec, lower: Rational, upper: Option<Rational>, axes: Axes) -> Result<Self, DomainError> {
        if lower.is_negative() || upper.as_ref().is_some_and(|u| u.is_negative()) {
            return Err(DomainError::Invalid("bounds must be nonnegative".into()));
        }
        let sq = |r: &Rational| r * r;
        Self::from_squared(gamma, sq(&lower), upper.as_ref().map(sq), axes)
    }

    pub(crate) fn from_squared(gamma: GammaSpec, lower_sq: Rational, upper_sq: Option<Rational>, axes: Axes) -> Result<Self, DomainError> {
        if lower_sq.is_negative() {
            return Err(DomainError::Invalid("lower bound must be nonnegative".into()));
        }
        if let Some(u) = &upper_sq {
            if u <= &lower_sq {
                return Err(DomainError::Invalid("upper bound must exceed lower bound".into()));
            }
        }
        if lower_sq.is_positive() && (axes.z1 || axes.z2 || axes.origin) {
            return Err(DomainError::Invalid("axis pieces need lower bound 0".into()));
        }
        if axes.origin && !(axes.z1 && axes.z2) {
            return Err(DomainError::Invalid("origin requires both axes".into()));
        }
        Ok(Self { gamma, lower_sq, upper_sq, axes })
    }

    /// `D_γ = {|z₁||z₂|^γ < 1}`, axes included.
    pub fn type_i(gamma: GammaSpec) -> Result<Self, DomainError> {
        require_irrational(&gamma)?;
        Self::from_squared(gamma, Rational::zero(), Some(Rational::one()), Axes::ALL)
    }

    /// `D_γ* = D_γ ∩ ℂ*²`.
    pub fn type_ii(gamma: GammaSpec) -> Result<Self, DomainError> {
        require_irrational(&gamma)?;
        Self::from_squared(gamma, Rational::zero(), Some(Rational::one()), Axes::NONE)
    }

    /// `D_{γ,r} = {1/r < |z₁||z₂|^γ < r}`.
    pub fn type_iii(gamma: GammaSpec, r: Rational) -> Result<Self, DomainError> {
        Self::type_iii_sq(gamma, &r * &r)
    }

    pub fn type_iii_sq(gamma: GammaSpec, r_sq: Rational) -> Result<Self, DomainError> {
        require_irrational(&gamma)?;
        if r_sq <= Rational::one() {
            return Err(DomainError::Invalid("strip needs r > 1".into()));
        }
        Self::from_squared(gamma, r_sq.recip(), Some(r_sq), Axes::NONE)
    }

    /// `ℂ*²`, as a band with no bounds.
    pub fn punctured_plane_pair() -> Self {
        Self { gamma: GammaSpec::Rational(Rational::one()), lower_sq: Rational::zero(), upper_sq: None, axes: Axes::NONE }
    }

    pub fn gamma(&self) -> &GammaSpec {
        &self.gamma
    }

    pub fn axes(&self) -> Axes {
        self.axes
    }

    pub fn lower_sq(&self) -> &Rational {
        &self.lower_sq
    }

    pub fn upper_sq(&self) -> Option<&Rational> {
        self.upper_sq.as_ref()
    }

    /// Unsquared lower bound when it is rational.
    pub fn lower(&self) -> Option<Rational> {
        exact_sqrt(&self.lower_sq)
    }

    pub fn upper(&self) -> Option<Option<Rational>> {
        match &self.upper_sq {
            None => Some(None),
            Some(u) => exact_sqrt(u).map(Some),
        }
    }

    pub fn lower_f64(&self) -> f64 {
        rational::to_f64(&self.lower_sq).sqrt()
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper_sq.as_ref().map_or(f64::INFINITY, |u| rational::to_f64(u).sqrt())
    }

    pub fn level_f64(&self, z: [Complex64; 2]) -> f64 {
        z[0].norm() * z[1].norm().powf(self.gamma.to_f64())
    }

    /// Floating-point membership; points within relative `margin` of the boundary are `Boundary`.
    pub fn contains_f64(&self, z: [Complex64; 2], margin: f64) -> Membership {
        match (z[0].norm() == 0.0, z[1].norm() == 0.0) {
            (true, true) => return bool_membership(self.axes.origin),
            (false, true) => return bool_membership(self.axes.z1),
            (true, false) => return bool_membership(self.axes.z2),
            (false, false) => {}
        }
        let ll = z[0].norm().ln() + self.gamma.to_f64() * z[1].norm().ln();
        let side = |d: f64| {
            if d > margin {
                Membership::In
            } else if d < -margin {
                Membership::Out
            } else {
                Membership::Boundary
            }
        };
        let mut m = Membership::In;
        if self.upper_sq.is_some() {
            m = m.and(side(self.upper_f64().ln() - ll));
        }
        if self.lower_sq.is_positive() {
            m = m.and(side(ll - self.lower_f64().ln()));
        }
        m
    }

    /// `log|z₁|² + γ·log|z₂|²`, i.e. twice the log-level.
    pub fn level_form(&self, m1: &LogLinear, m2: &LogLinear) -> Result<LogLinear, ScalarError> {
        Ok(m1.add(&m2.scaled(&self.gamma.as_scalar())?))
    }

    pub fn membership(&self, z: &PointC2, prec: Precision) -> Membership {
        self.membership_moduli(&z.moduli(), prec)
    }

    pub fn membership_moduli(&self, m: &ModulusPoint, prec: Precision) -> Membership {
        match (&m.0[0], &m.0[1]) {
            (None, None) => bool_membership(self.axes.origin),
            (Some(_), None) => bool_membership(self.axes.z1),
            (None, Some(_)) => bool_membership(self.axes.z2),
            (Some(a), Some(b)) => self.band_membership(a, b, prec).unwrap_or(Membership::Boundary),
        }
    }

    fn band_membership(&self, m1: &LogLinear, m2: &LogLinear, prec: Precision) -> Result<Membership, ScalarError> {
        let level = self.level_form(m1, m2)?;
        let mut acc = Membership::In;
        if let Some(u) = &self.upper_sq {
            acc = acc.and(strictly_negative(&level.sub(&LogLinear::log(Scalar::int(1), u.clone())?), prec)?);
        }
        if self.lower_sq.is_positive() {
            acc = acc.and(strictly_negative(&LogLinear::log(Scalar::int(1), self.lower_sq.clone())?.sub(&level), prec)?);
        }
        Ok(acc)
    }

    pub fn log_image(&self) -> Result<LogRegion, DomainError> {
        let g = self.gamma.as_scalar();
        let mut cs = Vec::new();
        if let Some(u) = &self.upper_sq {
            cs.push(match exact_sqrt(u) {
                Some(r) => LogConstraint::new(vec![Scalar::int(1), g.clone()], r)?,
                None => LogConstraint::new(vec![Scalar::int(2), g.scale(&rational::int(2))], u.clone())?,
            });
        }
        if self.lower_sq.is_positive() {
            let inv = self.lower_sq.recip();
            cs.push(match exact_sqrt(&inv) {
                Some(r) => LogConstraint::new(vec![Scalar::int(-1), g.neg()], r)?,
                None => LogConstraint::new(vec![Scalar::int(-2), g.scale(&rational::int(-2))], inv)?,
            });
        }
        if cs.is_empty() {
            return Ok(LogRegion::whole(2));
        }
        Ok(LogRegion::new(2, cs)?)
    }

    /// The slices `D ∩ {z₁ = 0}` and `D ∩ {z₂ = 0}`.
    pub fn slices(&self) -> [AxisSlice; 2] {
        let piece = |axis: bool| match (axis, self.axes.origin) {
            (false, _) => Slice::Empty,
            (true, true) => Slice::Plane,
            (true, false) => Slice::PuncturedPlane,
        };
        [
            AxisSlice { axis: "z1=0", slice: piece(self.axes.z2) },
            AxisSlice { axis: "z2=0", slice: piece(self.axes.z1) },
        ]
    }
}

fn bool_membership(b: bool) -> Membership {
    if b {
        Membership::In
    } else {
        Membership::Out
    }
}

fn strictly_negative(f: &LogLinear, prec: Precision) -> Result<Membership, ScalarError> {
    Ok(match f.sign(prec)? {
        Sign::Negative => Membership::In,
        Sign::Positive => Membership::Out,
        Sign::Zero | Sign::Unknown => Membership::Boundary,
    })
}

fn require_irrational(g: &GammaSpec) -> Result<(), DomainError> {
    if g.is_irrational() {
        Ok(())
    } else {
        Err(DomainError::Invalid("types I-III need an irrational exponent".into()))
    }
}

/// `{|z₁| < r₁, |z₂| < r₂}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polydisc {
    radii: [Rational; 2],
}

impl Polydisc {
    pub fn new(r1: Rational, r2: Rational) -> Result<Self, DomainError> {
        if !r1.is_positive() || !r2.is_positive() {
            return Err(DomainError::Invalid("radii must be positive".into()));
        }
        Ok(Self { radii: [r1, r2] })
    }

    pub fn unit() -> Self {
        Self { radii: [Rational::one(), Rational::one()] }
    }

    pub fn radii(&self) -> &[Rational; 2] {
        &self.radii
    }
}

/// Any domain the classifier accepts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Band(BandDomain),
    Polydisc(Polydisc),
}

impl Domain {
    pub fn membership(&self, z: &PointC2, prec: Precision) -> Membership {
        match self {
            Domain::Band(b) => b.membership(z, prec),
            Domain::Polydisc(p) => {
                let inside = |w: &GaussianRational, r: &Rational| {
                    if modulus_sq(w) < r * r {
                        Membership::In
                    } else {
                        Membership::Out
                    }
                };
                inside(&z.0[0], &p.radii[0]).and(inside(&z.0[1], &p.radii[1]))
            }
        }
    }

    pub fn log_image(&self) -> Result<LogRegion, DomainError> {
        match self {
            Domain::Band(b) => b.log_image(),
            Domain::Polydisc(p) => Ok(LogRegion::new(
                2,
                vec![
                    LogConstraint::new(vec![Scalar::int(1), Scalar::int(0)], p.radii[0].clone())?,
                    LogConstraint::new(vec![Scalar::int(0), Scalar::int(1)], p.radii[1].clone())?,
                ],
            )?),
        }
    }

    pub fn slices(&self) -> [AxisSlice; 2] {
        match self {
            Domain::Band(b) => b.slices(),
            Domain::Polydisc(_) => [AxisSlice { axis: "z1=0", slice: Slice::Disc }, AxisSlice { axis: "z2=0", slice: Slice::Disc }],
        }
    }
}

impl From<BandDomain> for Domain {
    fn from(b: BandDomain) -> Self {
        Domain::Band(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Slice {
    Empty,
    Disc,
    Plane,
    PuncturedPlane,
}

impl Slice {
    /// Kobayashi hyperbolicity of the one-dimensional slice.
    pub fn is_hyperbolic(self) -> bool {
        matches!(self, Slice::Empty | Slice::Disc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxisSlice {
    pub axis: &'static str,
    pub slice: Slice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoconvexCertificate {
    pub pseudoconvex: bool,
    pub criterion: String,
    pub slices: Vec<AxisSlice>,
}

/// Always true here: the log image is an intersection of half-planes and
/// every representable slice (empty, disc, plane, punctured plane) is pseudoconvex.
pub fn is_pseudoconvex(d: &Domain) -> PseudoconvexCertificate {
    PseudoconvexCertificate {
        pseudoconvex: true,
        criterion: "logarithmic image is an intersection of open half-planes, hence convex; slices are pseudoconvex".into(),
        slices: d.slices().to_vec(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicCertificate {
    pub hyperbolic: Tri,
    /// A real line direction inside the log image when one exists.
    pub line_direction: Option<Vec<Scalar>>,
    pub slices: Vec<AxisSlice>,
    pub reason: String,
}

pub fn is_hyperbolic(d: &Domain) -> Result<HyperbolicCertificate, DomainError> {
    let region = d.log_image()?;
    let slices = d.slices().to_vec();
    match loggeom::lineality_directions(&region) {
        Lineality::Uncertain(why) => Ok(HyperbolicCertificate {
            hyperbolic: Tri::Uncertain,
            line_direction: None,
            slices,
            reason: format!("lineality undecided: {why}"),
        }),
        Lineality::Basis(b) if !b.is_empty() => Ok(HyperbolicCertificate {
            hyperbolic: Tri::False,
            line_direction: Some(b[0].clone()),
            slices,
            reason: "logarithmic image contains a real line".into(),
        }),
        Lineality::Basis(_) => {
            let bad = slices.iter().find(|s| !s.slice.is_hyperbolic()).copied();
            Ok(HyperbolicCertificate {
                hyperbolic: Tri::from_bool(bad.is_none()),
                line_direction: None,
                reason: match bad {
                    Some(s) => format!("slice {} is not hyperbolic", s.axis),
                    None => "no real line in the logarithmic image; slices hyperbolic".into(),
                },
                slices,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainKind {
    BoundedHyperbolic,
    /// `D_γ`, complete half-plane type.
    TypeI { gamma: GammaSpec },
    /// `D_γ*`, punctured half-plane type.
    TypeII { gamma: GammaSpec },
    /// `D_{γ,r}`, strip type; `r_sq = r²`.
    TypeIII { gamma: GammaSpec, r_sq: Rational },
    RationalLine { v: Vec<i64> },
    Other { diagnostics: String },
}

impl DomainKind {
    pub fn gamma(&self) -> Option<&GammaSpec> {
        match self {
            DomainKind::TypeI { gamma } | DomainKind::TypeII { gamma } | DomainKind::TypeIII { gamma, .. } => Some(gamma),
            _ => None,
        }
    }

    /// Stable short name used in reports.
    pub fn tag(&self) -> &'static str {
        match self {
            DomainKind::BoundedHyperbolic => "bounded-hyperbolic",
            DomainKind::TypeI { .. } => "complete-half-plane",
            DomainKind::TypeII { .. } => "half-plane",
            DomainKind::TypeIII { .. } => "strip",
            DomainKind::RationalLine { .. } => "rational-line",
            DomainKind::Other { .. } => "other",
        }
    }

    /// The normalized band model: `D_γ`, `D_γ*` or `D_{γ,r}`.
    pub fn canonical_band(&self) -> Option<BandDomain> {
        match self {
            DomainKind::TypeI { gamma } => BandDomain::type_i(gamma.clone()).ok(),
            DomainKind::TypeII { gamma } => BandDomain::type_ii(gamma.clone()).ok(),
            DomainKind::TypeIII { gamma, r_sq } => BandDomain::type_iii_sq(gamma.clone(), r_sq.clone()).ok(),
            _ => None,
        }
    }

    pub fn type_i(gamma: GammaSpec) -> Self {
        DomainKind::TypeI { gamma }
    }

    pub fn type_ii(gamma: GammaSpec) -> Self {
        DomainKind::TypeII { gamma }
    }

    pub fn type_iii(gamma: GammaSpec, r: Rational) -> Self {
        DomainKind::TypeIII { gamma, r_sq: &r * &r }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainKind::BoundedHyperbolic => f.write_str("bounded hyperbolic"),
            DomainKind::TypeI { gamma } => write!(f, "TypeI({gamma})"),
            DomainKind::TypeII { gamma } => write!(f, "TypeII({gamma})"),
            DomainKind::TypeIII { gamma, r_sq } => match exact_sqrt(r_sq) {
                Some(r) => write!(f, "TypeIII({gamma}, {})", rational::format_rational(&r)),
                None => write!(f, "TypeIII({gamma}, √{})", rational::format_rational(r_sq)),
            },
            DomainKind::RationalLine { v } => write!(f, "RationalLine({v:?})"),
            DomainKind::Other { diagnostics } => write!(f, "Other({diagnostics})"),
        }
    }
}

pub fn classify(d: &Domain) -> Result<DomainKind, DomainError> {
    let hyp = is_hyperbolic(d)?;
    match hyp.hyperbolic {
        Tri::True => return Ok(DomainKind::BoundedHyperbolic),
        Tri::Uncertain => return Err(DomainError::Undecided(hyp.reason)),
        Tri::False => {}
    }
    let Domain::Band(b) = d else {
        return Err(DomainError::Undecided("non-hyperbolic polydisc".into()));
    };
    if b.axes.origin {
        return Ok(match (&b.upper_sq, b.gamma.is_irrational()) {
            (None, _) => DomainKind::Other { diagnostics: "whole space C^2".into() },
            (Some(_), true) => DomainKind::TypeI { gamma: b.gamma.clone() },
            (Some(_), false) => DomainKind::Other { diagnostics: "complete domain with rational exponent".into() },
        });
    }
    match loggeom::rational_line_direction(&b.log_image()?) {
        RationalLine::Direction(v) => return Ok(DomainKind::RationalLine { v }),
        RationalLine::Uncertain(why) => return Err(DomainError::Undecided(why)),
        RationalLine::Absent => {}
    }
    if b.axes.z1 || b.axes.z2 {
        return Ok(DomainKind::Other { diagnostics: "punctured axis without the origin".into() });
    }
    Ok(match (&b.upper_sq, b.lower_sq.is_positive()) {
        (Some(_), false) | (None, true) => DomainKind::TypeII { gamma: b.gamma.clone() },
        (Some(u), true) => match exact_sqrt(&(u / &b.lower_sq)) {
            Some(r_sq) => DomainKind::TypeIII { gamma: b.gamma.clone(), r_sq },
            None => return Err(DomainError::Undecided("strip width is not a rational square".into())),
        },
        (None, false) => DomainKind::Other { diagnostics: "unbounded band without a rational line".into() },
    })
}

/// Biholomorphic equivalence of two special-type domains.
///
/// Type I: `γ ~ 1/γ`. Type II: `γ` up to integral Möbius maps of determinant
/// ±1, decided by periodic continued fractions for quadratic `γ`. Type III:
/// equal `r` and `γ′ = ±γ + n`; any other monomial change would force an
/// algebraic number to an irrational algebraic power.
pub fn equivalent(d1: &Domain, d2: &Domain) -> Result<Tri, DomainError> {
    let k1 = classify(d1)?;
    let k2 = classify(d2)?;
    kinds_equivalent(&k1, &k2)
}

pub fn kinds_equivalent(k1: &DomainKind, k2: &DomainKind) -> Result<Tri, DomainError> {
    use DomainKind::*;
    match (k1, k2) {
        (TypeI { gamma: a }, TypeI { gamma: b }) => Ok(gamma_relation(a, b, &[Relation::Identity, Relation::Reciprocal])),
        (TypeII { gamma: a }, TypeII { gamma: b }) => match (a.quad(), b.quad()) {
            (Some(x), Some(y)) => Ok(Tri::from_bool(gl2z_equivalent(x, y)?)),
            _ => Ok(match gamma_relation(a, b, &[Relation::Identity, Relation::Reciprocal, Relation::Shift, Relation::NegShift]) {
                Tri::True => Tri::True,
                Tri::False if both_enclosed(a, b) => Tri::Uncertain,
                other => other,
            }),
        },
        (TypeIII { gamma: a, r_sq: ra }, TypeIII { gamma: b, r_sq: rb }) => {
            let rel = gamma_relation(a, b, &[Relation::Shift, Relation::NegShift]);
            if ra == rb {
                return Ok(match rel {
                    Tri::False if both_enclosed(a, b) => Tri::Uncertain,
                    other => other,
                });
            }
            // Different r: only a transcendental rescaling could relate them.
            Ok(if both_enclosed(a, b) && a != b { Tri::Uncertain } else { Tri::False })
        }
        (TypeI { .. } | TypeII { .. } | TypeIII { .. }, TypeI { .. } | TypeII { .. } | TypeIII { .. }) => Ok(Tri::False),
        (k, _) | (_, k) if !matches!(k, TypeI { .. } | TypeII { .. } | TypeIII { .. }) => {
            Err(DomainError::NotSpecialType(k.to_string()))
        }
        _ => unreachable!("all pairs handled"),
    }
}

fn both_enclosed(a: &GammaSpec, b: &GammaSpec) -> bool {
    matches!((a, b), (GammaSpec::Enclosed(_), GammaSpec::Enclosed(_)))
}

#[derive(Clone, Copy)]
enum Relation {
    Identity,
    Reciprocal,
    /// `γ′ = γ + n`.
    Shift,
    /// `γ′ = n − γ`.
    NegShift,
}

/// Whether `b` is one of the listed images of `a`.
fn gamma_relation(a: &GammaSpec, b: &GammaSpec, rels: &[Relation]) -> Tri {
    match (a.exact(), b.exact()) {
        (Some(x), Some(y)) => Tri::from_bool(rels.iter().any(|r| exact_relation(&x, &y, *r))),
        (None, None) => {
            let (GammaSpec::Enclosed(x), GammaSpec::Enclosed(y)) = (a, b) else { unreachable!() };
            let mut any_overlap = false;
            for r in rels {
                match enclosed_relation(x, y, *r) {
                    Tri::True => return Tri::True,
                    Tri::Uncertain => any_overlap = true,
                    Tri::False => {}
                }
            }
            if any_overlap {
                Tri::Uncertain
            } else {
                Tri::False
            }
        }
        // Algebraic versus non-algebraic.
        _ => Tri::False,
    }
}

fn exact_relation(x: &QuadExt, y: &QuadExt, r: Relation) -> bool {
    let Ok(diff) = y.try_sub(x) else { return false };
    let Ok(sum) = y.try_add(x) else { return false };
    match r {
        Relation::Identity => diff.is_zero(),
        Relation::Reciprocal => x.recip().ok().is_some_and(|inv| &inv == y),
        Relation::Shift => diff.as_rational().is_some_and(|d| d.is_integer()),
        Relation::NegShift => sum.as_rational().is_some_and(|s| s.is_integer()),
    }
}

fn enclosed_relation(x: &Interval, y: &Interval, r: Relation) -> Tri {
    let candidates: Vec<Interval> = match r {
        Relation::Identity => vec![x.clone()],
        Relation::Reciprocal => x.recip().map(|v| vec![v]).unwrap_or_default(),
        Relation::Shift | Relation::NegShift => {
            let base = if matches!(r, Relation::Shift) { x.clone() } else { x.neg() };
            let n = rational::floor(&(y.lo() - base.lo()));
            (0..2)
                .map(|k| {
                    let shift = Interval::point(Rational::from_integer(&n + num_bigint::BigInt::from(k)));
                    base.add(&shift)
                })
                .collect()
        }
    };
    let mut out = Tri::False;
    for c in candidates {
        if &c == y {
            return Tri::True;
        }
        if c.intersects(y) {
            out = Tri::Uncertain;
        }
    }
    out
}
