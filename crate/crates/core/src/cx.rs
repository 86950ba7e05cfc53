//! A non-pseudoconvex Reinhardt domain whose endomorphisms are rotations and constants.
//!
//! `D = D_γ ∖ ((ℂ∖𝔻)×{0} ∪ {0}×(ℂ∖𝔻) ∪ I₁ ∪ I₂)` with
//! `I₁ = {|z₁| = 2, |z₂| ≤ 4^{−1/γ}}` and `I₂ = {|z₁| ≥ 2^{−(γ+1)}, |z₂| = 2}`.
//! `I₁` sits at levels `≤ 1/2` and `I₂` at levels `≥ 1/2`, so each level set
//! `V_r` loses one torus, two when `r = 1/2`.
//!
//! Membership works on exact log-moduli `ℓⱼ = log|zⱼ|²`. Slit circles are
//! rational equalities (`ℓ₁ = log 4`), decided exactly; the closed slit
//! conditions go through interval refinement.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{gr, gr_int, gr_real, modulus_sq, to_c64, unit_point, GaussianRational};
use crate::domain::{BandDomain, ModulusPoint, PointC2};
use crate::endo::{Endomorphism, ExponentMatrix, Twist};
use crate::scalar::rational::{self, int, rat};
use crate::scalar::{GammaSpec, LogLinear, Precision, Rational, Scalar, Sign};
use crate::tri::Membership;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CxError {
    #[error("the exponent must be given as an enclosure")]
    NotEnclosed,
    #[error("the exponent must exceed 1")]
    GammaTooSmall,
    #[error("radius {0} is not strictly between 4^(-1/γ) and 2^(-1/γ)")]
    Radius(String),
    #[error("witness disc check failed: {0}")]
    Verification(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleDomain {
    gamma: GammaSpec,
    prec: Precision,
}

fn log_of(x: Rational) -> LogLinear {
    LogLinear::log(Scalar::int(1), x).expect("positive argument")
}

fn sign_of(f: &LogLinear, prec: Precision) -> Sign {
    f.sign(prec).unwrap_or(Sign::Unknown)
}

impl CounterexampleDomain {
    pub fn new(gamma: GammaSpec) -> Result<Self, CxError> {
        if !matches!(gamma, GammaSpec::Enclosed(_)) {
            return Err(CxError::NotEnclosed);
        }
        if gamma.exceeds(&Rational::one()) != Some(true) {
            return Err(CxError::GammaTooSmall);
        }
        Ok(Self { gamma, prec: Precision::default() })
    }

    pub fn with_precision(mut self, prec: Precision) -> Self {
        self.prec = prec;
        self
    }

    pub fn gamma(&self) -> &GammaSpec {
        &self.gamma
    }

    /// The ambient `D_γ`, axes included.
    pub fn ambient(&self) -> BandDomain {
        BandDomain::type_i(self.gamma.clone()).expect("valid exponent")
    }

    fn g(&self) -> Scalar {
        self.gamma.as_scalar()
    }

    pub fn membership(&self, z: &PointC2) -> Membership {
        self.membership_moduli(&z.moduli())
    }

    pub fn membership_moduli(&self, m: &ModulusPoint) -> Membership {
        let p = self.prec;
        let below = |f: &LogLinear| match sign_of(f, p) {
            Sign::Negative => Membership::In,
            Sign::Zero | Sign::Positive => Membership::Out,
            Sign::Unknown => Membership::Boundary,
        };
        match (&m.0[0], &m.0[1]) {
            (None, None) => Membership::In,
            (Some(l), None) | (None, Some(l)) => below(l),
            (Some(l1), Some(l2)) => {
                let Ok(gl2) = l2.scaled(&self.g()) else { return Membership::Boundary };
                let level = below(&l1.add(&gl2));
                // I₁: ℓ₁ = log 4 and γℓ₂ + log 16 ≤ 0.
                let on_i1 = self.on_circle(l1).and(self.nonpositive(&gl2.add(&log_of(int(16)))));
                // I₂: ℓ₂ = log 4 and ℓ₁ + (γ+1)·log 4 ≥ 0.
                let i2_form = LogLinear::log(self.g(), int(4)).ok().map(|f| l1.add(&f).add(&log_of(int(4))).neg());
                let on_i2 = match i2_form {
                    Some(f) => self.on_circle(l2).and(self.nonpositive(&f)),
                    None => Membership::Boundary,
                };
                level.and(on_i1.not()).and(on_i2.not())
            }
        }
    }

    /// `ℓ = log 4` as a membership statement.
    fn on_circle(&self, l: &LogLinear) -> Membership {
        match sign_of(&l.sub(&log_of(int(4))), self.prec) {
            Sign::Zero => Membership::In,
            Sign::Negative | Sign::Positive => Membership::Out,
            Sign::Unknown => Membership::Boundary,
        }
    }

    fn nonpositive(&self, f: &LogLinear) -> Membership {
        match sign_of(f, self.prec) {
            Sign::Negative | Sign::Zero => Membership::In,
            Sign::Positive => Membership::Out,
            Sign::Unknown => Membership::Boundary,
        }
    }

    /// Floating-point membership for plotting and sampling; `margin` widens every boundary into `Boundary`.
    pub fn membership_f64(&self, z: [Complex64; 2], margin: f64) -> Membership {
        let g = self.gamma.to_f64();
        let (r1, r2) = (z[0].norm(), z[1].norm());
        let cmp = |x: f64| {
            if x < -margin {
                Membership::In
            } else if x > margin {
                Membership::Out
            } else {
                Membership::Boundary
            }
        };
        if r1 == 0.0 || r2 == 0.0 {
            return cmp(r1.max(r2) - 1.0);
        }
        let level = cmp(r1 * r2.powf(g) - 1.0);
        let i1 = cmp((r1 - 2.0).abs() - margin).not().and(cmp(r2 - 4f64.powf(-1.0 / g)));
        let i2 = cmp((r2 - 2.0).abs() - margin).not().and(cmp(2f64.powf(-(g + 1.0)) - r1));
        level.and(i1.not()).and(i2.not())
    }

    /// Slits in `(log|z₁|, log|z₂|)`: `I₁` is `x = log 2, y ≤ y₁`; `I₂` is `y = log 2, x ≥ x₂`.
    pub fn slits_log(&self) -> SlitGeometry {
        let g = self.gamma.to_f64();
        let l2 = 2f64.ln();
        SlitGeometry { i1_x: l2, i1_y_max: -2.0 * l2 / g, i2_y: l2, i2_x_min: -(g + 1.0) * l2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlitGeometry {
    pub i1_x: f64,
    pub i1_y_max: f64,
    pub i2_y: f64,
    pub i2_x_min: f64,
}

/// A point known through its exact log-moduli, with exact real parts where a twist needs them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CxPoint {
    pub exact: Option<PointC2>,
    pub moduli: ModulusPoint,
    pub re: [Option<Rational>; 2],
}

impl CxPoint {
    pub fn from_exact(p: PointC2) -> Self {
        let moduli = p.moduli();
        let re = [Some(p.0[0].re.clone()), Some(p.0[1].re.clone())];
        Self { exact: Some(p), moduli, re }
    }

    /// `|zⱼ|² ≥ (Re zⱼ)²` for each coordinate with a declared real part.
    pub fn is_consistent(&self, prec: Precision) -> bool {
        if self.exact.is_some() {
            return true;
        }
        (0..2).all(|j| match (&self.moduli.0[j], &self.re[j]) {
            (_, None) => true,
            (None, Some(x)) => x.is_zero(),
            (Some(_), Some(x)) if x.is_zero() => true,
            (Some(l), Some(x)) => matches!(sign_of(&l.sub(&log_of(x * x)), prec), Sign::Positive | Sign::Zero),
        })
    }

    /// A concrete point with these moduli and real parts.
    pub fn approx(&self) -> [Complex64; 2] {
        if let Some(p) = &self.exact {
            return [to_c64(&p.0[0]), to_c64(&p.0[1])];
        }
        let mut out = [Complex64::zero(); 2];
        for j in 0..2 {
            let Some(l) = &self.moduli.0[j] else { continue };
            let r2 = l.to_f64().exp();
            out[j] = match &self.re[j] {
                Some(x) => {
                    let x = rational::to_f64(x);
                    Complex64::new(x, (r2 - x * x).max(0.0).sqrt())
                }
                None => Complex64::new(r2.sqrt(), 0.0),
            };
        }
        out
    }
}

/// `Re h(z)` for twists affine in `z₁, z₂` with rational real-part data.
fn twist_real_part(h: &Twist, re: &[Option<Rational>; 2]) -> Option<Rational> {
    let mut acc = Rational::zero();
    for (&(i, j), c) in h.terms() {
        match (i, j) {
            (0, 0) => acc += c.re.as_rational()?,
            (1, 0) | (0, 1) => {
                if !c.im.is_zero() {
                    return None;
                }
                let x = re[usize::from(i == 0)].as_ref()?;
                acc += c.re.as_rational()? * x;
            }
            _ => return None,
        }
    }
    Some(acc)
}

/// Affine data `(c₀₀, c₁₀, c₀₁)` of a twist with rational real coefficients on the linear terms.
fn affine_parts(h: &Twist) -> Option<(Rational, Rational, Rational)> {
    let mut out = (Rational::zero(), Rational::zero(), Rational::zero());
    for (&(i, j), c) in h.terms() {
        let r = c.re.as_rational()?.clone();
        match (i, j) {
            (0, 0) => out.0 = r,
            (1, 0) if c.im.is_zero() => out.1 = r,
            (0, 1) if c.im.is_zero() => out.2 = r,
            _ => return None,
        }
    }
    Some(out)
}

fn shift(gamma: &Scalar, r: &Rational) -> (Scalar, Scalar) {
    let two_r = r * int(2);
    (gamma.scale(&-two_r.clone()), Scalar::rational(two_r))
}

/// Exact log-moduli of `F(p)`; `None` when they are not representable.
pub fn image_of(f: &Endomorphism, gamma: &GammaSpec, p: &CxPoint) -> Option<ModulusPoint> {
    if let Some(z) = &p.exact {
        return f.image_moduli(gamma, z).ok();
    }
    match f {
        Endomorphism::Constant { value } => Some(value.moduli()),
        Endomorphism::Standard { a, m, h } => {
            let [Some(l1), Some(l2)] = &p.moduli.0 else { return None };
            let r = twist_real_part(h, &p.re)?;
            let (s1, s2) = shift(&gamma.as_scalar(), &r);
            let comb = |x: i64, y: i64| l1.scale(&int(x)).add(&l2.scale(&int(y)));
            let w1 = log_of(modulus_sq(&a[0])).add(&comb(m.k2, m.k1)).with_offset(s1);
            let w2 = log_of(modulus_sq(&a[1])).add(&comb(m.l2, m.l1)).with_offset(s2);
            Some(ModulusPoint([Some(w1), Some(w2)]))
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Survive,
    Reject,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub name: String,
    pub map: Endomorphism,
    pub expected: Expectation,
}

impl Candidate {
    fn new(name: &str, map: Endomorphism, expected: Expectation) -> Self {
        Self { name: name.into(), map, expected }
    }
}

fn real(n: i64, d: i64) -> GaussianRational {
    gr_real(rat(n, d))
}

fn const_twist(re: i64, im: i64) -> Twist {
    Twist::constant_gr(gr_int(re, im))
}

/// Rotations, in-domain constants, and twelve maps of `D_γ` that must not preserve `D`.
pub fn builtin_catalog() -> Vec<Candidate> {
    use Expectation::*;
    let one = gr_int(1, 0);
    let scale = |a: GaussianRational, b: GaussianRational| Endomorphism::scaling([a, b]);
    let twisted = |h: Twist| Endomorphism::twisted_identity(h);
    let constant = |a: GaussianRational, b: GaussianRational| Endomorphism::Constant { value: PointC2::new(a, b) };
    vec![
        Candidate::new("identity", Endomorphism::identity(), Survive),
        Candidate::new("rotation (i z1, -z2)", scale(gr_int(0, 1), gr_int(-1, 0)), Survive),
        Candidate::new("rotation (-z1, z2)", scale(gr_int(-1, 0), one.clone()), Survive),
        Candidate::new("rotation (-z1, -z2)", scale(gr_int(-1, 0), gr_int(-1, 0)), Survive),
        Candidate::new("rotation ((3+4i)/5 z1, z2)", scale(gr(rat(3, 5), rat(4, 5)), one.clone()), Survive),
        Candidate::new("rotation z p(i)", twisted(const_twist(0, 1)), Survive),
        Candidate::new("constant (1/2, 1/2)", constant(real(1, 2), real(1, 2)), Survive),
        Candidate::new("constant (0, 0)", constant(gr_int(0, 0), gr_int(0, 0)), Survive),
        Candidate::new("constant (i/2, 0)", constant(gr(rat(0, 1), rat(1, 2)), gr_int(0, 0)), Survive),
        Candidate::new("scaling (1/2, 1)", scale(real(1, 2), one.clone()), Reject),
        Candidate::new("scaling (2, 1)", scale(gr_int(2, 0), one.clone()), Reject),
        Candidate::new("scaling (1, 1/2)", scale(one.clone(), real(1, 2)), Reject),
        Candidate::new("scaling (-1/2, i)", scale(real(-1, 2), gr_int(0, 1)), Reject),
        Candidate::new("scaling (2i, -1)", scale(gr_int(0, 2), gr_int(-1, 0)), Reject),
        Candidate::new("square z^2", Endomorphism::monomial(ExponentMatrix::scalar(2)), Reject),
        Candidate::new("twist z p(1)", twisted(const_twist(1, 0)), Reject),
        Candidate::new("twist z p(-1)", twisted(const_twist(-1, 0)), Reject),
        Candidate::new("twist z p(1/2 + i)", twisted(Twist::constant_gr(gr(rat(1, 2), rat(1, 1)))), Reject),
        Candidate::new("twist z p(z1)", twisted(Twist::monomial(1, 0, crate::complex::lift(&one))), Reject),
        Candidate::new("constant (2, 0)", constant(gr_int(2, 0), gr_int(0, 0)), Reject),
        Candidate::new("constant (2, 1/5)", constant(gr_int(2, 0), real(1, 5)), Reject),
    ]
}

/// Exact log-modulus targets on `I₁`, on `I₂`, and at or above level 1.
fn targets(gamma: &Scalar) -> Vec<ModulusPoint> {
    let mut out = Vec::new();
    let pair = |a: LogLinear, b: LogLinear| ModulusPoint([Some(a), Some(b)]);
    for (n, d) in [(1, 64), (1, 16), (1, 8), (1, 5), (1, 4), (3, 10), (7, 20), (2, 5)] {
        out.push(pair(log_of(int(4)), log_of(rat(n * n, d * d))));
    }
    for (n, d) in [(3, 5), (3, 4), (9, 10)] {
        // |t₁| = (n/d)·2^{−γ}.
        let l1 = LogLinear::log(gamma.scale(&int(-2)), int(2)).expect("positive").add(&log_of(rat(n * n, d * d)));
        out.push(pair(l1, log_of(int(4))));
    }
    for (n, d) in [(1, 1), (5, 4), (3, 2), (7, 4)] {
        out.push(pair(log_of(rat(n * n, d * d)), LogLinear::new()));
    }
    out
}

const TWIST_REAL_PARTS: [(i64, i64); 6] = [(-1, 4), (1, 4), (-1, 2), (1, 2), (-1, 1), (1, 1)];

/// Solves `F(z) = t` on log-moduli, for each target and twist real part.
fn constructed_points(f: &Endomorphism, gamma: &Scalar) -> Vec<CxPoint> {
    let Endomorphism::Standard { a, m, h } = f else { return Vec::new() };
    let Some((c0, c1, c2)) = affine_parts(h) else { return Vec::new() };
    let det = m.det();
    if det == 0 {
        return Vec::new();
    }
    let options: Vec<(Rational, [Option<Rational>; 2])> = if c1.is_zero() && c2.is_zero() {
        vec![(c0, [None, None])]
    } else {
        TWIST_REAL_PARTS
            .iter()
            .map(|&(n, d)| {
                let r = rat(n, d);
                let re = if !c1.is_zero() {
                    [Some((&r - &c0) / &c1), (!c2.is_zero()).then(Rational::zero)]
                } else {
                    [None, Some((&r - &c0) / &c2)]
                };
                (r, re)
            })
            .collect()
    };
    let inv_det = Rational::new(1.into(), det.into());
    let mut out = Vec::new();
    for t in targets(gamma) {
        let [Some(t1), Some(t2)] = &t.0 else { continue };
        for (r, re) in &options {
            let (s1, s2) = shift(gamma, r);
            let u1 = t1.sub(&log_of(modulus_sq(&a[0]))).sub(&LogLinear::constant(s1));
            let u2 = t2.sub(&log_of(modulus_sq(&a[1]))).sub(&LogLinear::constant(s2));
            let l1 = u1.scale(&int(m.l1)).sub(&u2.scale(&int(m.k1))).scale(&inv_det);
            let l2 = u2.scale(&int(m.k2)).sub(&u1.scale(&int(m.l2))).scale(&inv_det);
            out.push(CxPoint { exact: None, moduli: ModulusPoint([Some(l1), Some(l2)]), re: re.clone() });
        }
    }
    out
}

/// Exact points of `D` drawn log-uniformly, axes included.
pub fn sample_points(d: &CounterexampleDomain, n: usize, seed: u64) -> Vec<PointC2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut tries = 0usize;
    while out.len() < n && tries < 50 * n + 100 {
        tries += 1;
        let k: u8 = rng.gen_range(0..20);
        let z1 = random_coord(&mut rng, k == 0);
        let z2 = random_coord(&mut rng, k == 1);
        let p = PointC2::new(z1, z2);
        let screened = d.membership_f64([to_c64(&p.0[0]), to_c64(&p.0[1])], SCREEN_MARGIN);
        if screened.is_in() && d.membership(&p).is_in() {
            out.push(p);
        }
    }
    out
}

fn random_coord(rng: &mut ChaCha8Rng, axis: bool) -> GaussianRational {
    if axis {
        return GaussianRational::zero();
    }
    let r = rational::from_f64(2f64.powf(rng.gen_range(-6.0..3.0))).expect("finite");
    let r = rational::round_down(&r, 20);
    unit_point(rng.gen_range(0.0..TAU), 16) * gr_real(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessMethod {
    Constructed,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Survives { checked: usize, undecided: usize },
    Rejected { witness: CxPoint, image: ModulusPoint, method: WitnessMethod },
}

impl Verdict {
    pub fn survives(&self) -> bool {
        matches!(self, Verdict::Survives { .. })
    }
}

#[derive(Clone, Debug)]
pub struct HarnessEntry {
    pub candidate: Candidate,
    pub verdict: Verdict,
}

impl HarnessEntry {
    pub fn as_expected(&self) -> bool {
        self.verdict.survives() == (self.candidate.expected == Expectation::Survive)
    }
}

#[derive(Clone, Debug)]
pub struct HarnessReport {
    pub entries: Vec<HarnessEntry>,
}

impl HarnessReport {
    pub fn survivors(&self) -> impl Iterator<Item = &HarnessEntry> {
        self.entries.iter().filter(|e| e.verdict.survives())
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &HarnessEntry> {
        self.entries.iter().filter(|e| !e.as_expected())
    }
}

/// Witness `z` must be definitely In, its image definitely Out.
pub fn verify_witness(d: &CounterexampleDomain, f: &Endomorphism, z: &CxPoint) -> Option<ModulusPoint> {
    if !z.is_consistent(d.prec) || !d.membership_moduli(&z.moduli).is_in() {
        return None;
    }
    let image = image_of(f, &d.gamma, z)?;
    d.membership_moduli(&image).is_out().then_some(image)
}

/// Searches each candidate for a point of `D` mapped outside `D`: constructed preimages
/// of slit targets first, then `samples` seeded exact points. Sampled images are screened
/// in floating point and only those not clearly inside are settled exactly.
pub fn reject_candidates(d: &CounterexampleDomain, catalog: &[Candidate], samples: usize, seed: u64) -> HarnessReport {
    let pool = sample_points(d, samples, seed);
    let g = d.gamma.as_scalar();
    let gf = d.gamma.to_f64();
    let entries = catalog
        .iter()
        .map(|c| {
            let constructed = constructed_points(&c.map, &g)
                .into_iter()
                .find_map(|z| verify_witness(d, &c.map, &z).map(|img| (z, img, WitnessMethod::Constructed)));
            let mut undecided = 0;
            let found = constructed.or_else(|| {
                pool.iter().find_map(|p| {
                    let z = CxPoint::from_exact(p.clone());
                    let screened = c.map.evaluate(gf, z.approx()).map(|w| d.membership_f64(w, SCREEN_MARGIN));
                    if matches!(screened, Ok(Membership::In)) {
                        return None;
                    }
                    let image = image_of(&c.map, &d.gamma, &z);
                    match image.as_ref().map(|m| d.membership_moduli(m)) {
                        Some(Membership::Out) => Some((z, image.expect("computed"), WitnessMethod::Sampled)),
                        Some(Membership::In) => None,
                        _ => {
                            undecided += 1;
                            None
                        }
                    }
                })
            });
            let verdict = match found {
                Some((witness, image, method)) => Verdict::Rejected { witness, image, method },
                None => Verdict::Survives { checked: pool.len(), undecided },
            };
            HarnessEntry { candidate: c.clone(), verdict }
        })
        .collect();
    HarnessReport { entries }
}

/// Relative margin for the floating-point screen; anything closer goes to exact arithmetic.
const SCREEN_MARGIN: f64 = 1e-6;

/// The disc `λ ↦ (2e^{iθ₀}, ρλ)`: its boundary circle lies in `D`, its center on the removed slit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessDisc {
    pub center: PointC2,
    pub radius: Rational,
    /// Index of the coordinate that varies.
    pub direction: usize,
    pub boundary: Vec<PointC2>,
}

const BOUNDARY_SAMPLES: usize = 64;

/// Checks `4^{−1/γ} < ρ < 2^{−1/γ}` exactly, then the 64 boundary points and the center.
pub fn witness_disc(d: &CounterexampleDomain, rho: Rational, theta0: f64) -> Result<WitnessDisc, CxError> {
    if !rho.is_positive() {
        return Err(CxError::Radius(rational::format_rational(&rho)));
    }
    let g_log_rho_sq = LogLinear::log(d.gamma.as_scalar(), &rho * &rho).map_err(|_| CxError::Radius(rational::format_rational(&rho)))?;
    let above = sign_of(&g_log_rho_sq.add(&log_of(int(16))), d.prec) == Sign::Positive;
    let below = sign_of(&g_log_rho_sq.add(&log_of(int(4))), d.prec) == Sign::Negative;
    if !(above && below) {
        return Err(CxError::Radius(rational::format_rational(&rho)));
    }
    let c1 = unit_point(theta0, 24) * gr_real(int(2));
    let center = PointC2::new(c1.clone(), GaussianRational::zero());
    if !d.membership(&center).is_out() {
        return Err(CxError::Verification("center is not outside the domain".into()));
    }
    if !d.ambient().membership(&center, d.prec).is_in() {
        return Err(CxError::Verification("center is not in the ambient domain".into()));
    }
    let boundary: Vec<PointC2> = (0..BOUNDARY_SAMPLES)
        .map(|k| PointC2::new(c1.clone(), unit_point(TAU * k as f64 / BOUNDARY_SAMPLES as f64, 24) * gr_real(rho.clone())))
        .collect();
    if let Some(bad) = boundary.iter().position(|p| !d.membership(p).is_in()) {
        return Err(CxError::Verification(format!("boundary sample {bad} is not inside")));
    }
    Ok(WitnessDisc { center, radius: rho, direction: 1, boundary })
}

/// `ρ = 1/2` when admissible, otherwise a short dyadic inside the admissible interval.
pub fn pseudoconvexity_witness(d: &CounterexampleDomain) -> Result<WitnessDisc, CxError> {
    if let Ok(w) = witness_disc(d, rat(1, 2), 0.0) {
        return Ok(w);
    }
    let g = d.gamma.to_f64();
    let mid = 0.5 * (4f64.powf(-1.0 / g) + 2f64.powf(-1.0 / g));
    let mut last = CxError::Radius(format!("{mid}"));
    for bits in [8, 16, 32, 48] {
        let rho = rational::round_down(&rational::from_f64(mid).ok_or(CxError::GammaTooSmall)?, bits);
        match witness_disc(d, rho, 0.0) {
            Ok(w) => return Ok(w),
            Err(e) => last = e,
        }
    }
    Err(last)
}
