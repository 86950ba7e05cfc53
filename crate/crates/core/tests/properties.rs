//! Invariants checked on generated inputs.

use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

use rk_core::complex::{gr, gr_int, to_c64, unit_point};
use rk_core::cstarlab::{check_conjugating, CStarEndo, CandidateConj};
use rk_core::cx::{sample_points, CounterexampleDomain};
use rk_core::domain::{classify, equivalent, BandDomain, Domain, DomainKind, PointC2};
use rk_core::embed::{cstar_lift, cstar_unlift, EmbeddedCStar};
use rk_core::endo::{compose, compose_composites, enumerate_matrices, fixed_point_class, Composite, Endomorphism, ExponentMatrix, FixedPointClass, Twist};
use rk_core::loggeom::{dot_exact, lineality_directions, rational_line_direction, Lineality, RationalLine};
use rk_core::scalar::interval::{exp_rational, ln_rational};
use rk_core::scalar::rational::{int, rat};
use rk_core::scalar::{galois_conjugate, lattice_decompose, log_compare, GammaSpec, Interval, Precision, QuadExt, TriCmp};
use rk_core::tri::Tri;

fn gammas() -> Vec<GammaSpec> {
    vec![
        GammaSpec::sqrt(2).unwrap(),
        GammaSpec::quadratic(5, rat(1, 2), rat(1, 2)).unwrap(),
        GammaSpec::quadratic(3, rat(1, 3), rat(2, 1)).unwrap(),
    ]
}

fn gamma_strategy() -> impl Strategy<Value = GammaSpec> {
    (0..3usize).prop_map(|i| gammas().swap_remove(i))
}

fn small_rat() -> impl Strategy<Value = num_rational::BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn positive_rat() -> impl Strategy<Value = num_rational::BigRational> {
    (1i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn quad(d: i64) -> impl Strategy<Value = QuadExt> {
    (small_rat(), small_rat()).prop_map(move |(p, q)| QuadExt::new(d, p, q).unwrap())
}

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, failure_persistence: None, ..ProptestConfig::default() }
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

fn torus_point(t: [f64; 4]) -> [Complex64; 2] {
    [Complex64::from_polar(t[0].exp(), t[1]), Complex64::from_polar(t[2].exp(), t[3])]
}

proptest! {
    #![proptest_config(cases(96))]

    #[test]
    fn lattice_decompose_recovers_coordinates(g in gamma_strategy(), k in -100i64..=100, l in -100i64..=100) {
        let gq = g.quad().unwrap().clone();
        let x = QuadExt::from_int(k).try_add(&gq.scale(&int(l))).unwrap();
        prop_assert_eq!(lattice_decompose(&x, &gq).unwrap(), Some((BigInt::from(k), BigInt::from(l))));
    }

    #[test]
    fn lattice_decompose_rejects_off_lattice(g in gamma_strategy(), k in -20i64..=20, l in -20i64..=20) {
        let gq = g.quad().unwrap().clone();
        let x = QuadExt::from_int(k).try_add(&gq.scale(&int(l))).unwrap().scale(&rat(1, 7));
        let expected = (k % 7 == 0 && l % 7 == 0).then(|| (BigInt::from(k / 7), BigInt::from(l / 7)));
        prop_assert_eq!(lattice_decompose(&x, &gq).unwrap(), expected);
    }

    #[test]
    fn galois_conjugation_is_a_field_automorphism(x in quad(7), y in quad(7)) {
        let c = galois_conjugate;
        prop_assert_eq!(c(&x.try_add(&y).unwrap()), c(&x).try_add(&c(&y)).unwrap());
        prop_assert_eq!(c(&x.try_mul(&y).unwrap()), c(&x).try_mul(&c(&y)).unwrap());
        prop_assert_eq!(c(&c(&x)), x.clone());
        prop_assert_eq!(x.try_mul(&c(&x)).unwrap(), QuadExt::rational(x.norm()));
    }

    #[test]
    fn exp_and_ln_enclose_each_other(x in small_rat(), bits in 24u32..160) {
        let e = exp_rational(&x, bits).unwrap();
        prop_assert!(e.lo() <= e.hi() && e.lo() > &int(0));
        prop_assert!(e.ln(bits).unwrap().contains(&x));
        let xf = rk_core::scalar::rational::to_f64(&x);
        prop_assert!((e.mid_f64() - xf.exp()).abs() <= 1e-6 * xf.exp());
    }

    #[test]
    fn ln_of_positive_rational_round_trips(x in positive_rat(), bits in 24u32..160) {
        let l = ln_rational(&x, bits).unwrap();
        prop_assert!(l.exp(bits).unwrap().contains(&x));
    }

    #[test]
    fn integer_power_is_enclosed(x in positive_rat(), n in -4i64..=4, bits in 32u32..128) {
        let p = Interval::point(x.clone()).pow(&Interval::point(int(n)), bits).unwrap();
        let exact = rk_core::scalar::rational::pow_int(&x, n).unwrap();
        prop_assert!(p.contains(&exact));
    }

    #[test]
    fn exp_is_additive_up_to_enclosure(a in small_rat(), b in small_rat()) {
        let ea = exp_rational(&a, 96).unwrap();
        let eb = exp_rational(&b, 96).unwrap();
        let ab = exp_rational(&(&a + &b), 96).unwrap();
        prop_assert!(ea.mul(&eb).intersects(&ab));
    }

    #[test]
    fn log_compare_is_stable_under_precision(g in gamma_strategy(), base in positive_rat(), t in positive_rat()) {
        let low = log_compare(&base, &g, &t, Precision { start: 32, max: 128 }).unwrap();
        let high = log_compare(&base, &g, &t, Precision { start: 256, max: 2048 }).unwrap();
        if low != TriCmp::Uncertain {
            prop_assert_eq!(low, high);
        }
        if base == int(1) {
            prop_assert_eq!(high, if t > int(1) { TriCmp::Less } else if t < int(1) { TriCmp::Greater } else { TriCmp::Uncertain });
        }
    }
}

fn band(g: &GammaSpec, lower: &num_rational::BigRational, width: &num_rational::BigRational) -> BandDomain {
    BandDomain::new(g.clone(), lower.clone(), Some(lower + width), rk_core::domain::Axes::NONE).unwrap()
}

proptest! {
    #![proptest_config(cases(48))]

    #[test]
    fn lineality_vectors_annihilate_every_constraint(g in gamma_strategy(), lower in positive_rat(), width in positive_rat()) {
        let region = band(&g, &lower, &width).log_image().unwrap();
        let Lineality::Basis(basis) = lineality_directions(&region) else {
            return Err(TestCaseError::fail("quadratic band has an exact lineality space"));
        };
        prop_assert_eq!(basis.len(), 1);
        for c in region.constraints() {
            for d in &basis {
                prop_assert!(dot_exact(c.weights(), d).unwrap().is_zero());
            }
        }
        prop_assert_eq!(rational_line_direction(&region), RationalLine::Absent);
    }

    #[test]
    fn rational_line_is_primitive_and_in_lineality(p in 1i64..=9, q in 1i64..=9, upper in positive_rat()) {
        prop_assume!(num_integer::gcd(p, q) == 1);
        let g = GammaSpec::rational(rat(p, q)).unwrap();
        let d = BandDomain::new(g, int(0), Some(upper), rk_core::domain::Axes::NONE).unwrap();
        let region = d.log_image().unwrap();
        let RationalLine::Direction(v) = rational_line_direction(&region) else {
            return Err(TestCaseError::fail("rational band has a rational line"));
        };
        prop_assert_eq!(num_integer::gcd(v[0], v[1]), 1);
        // (1, p/q)·v = 0.
        prop_assert_eq!(q * v[0] + p * v[1], 0);
        let x = region.interior_point().to_vec();
        for t in [-50i64, -3, 0, 7, 1000] {
            let moved: Vec<_> = x.iter().zip(&v).map(|(xi, vi)| xi + int(t * vi)).collect();
            prop_assert!(rk_core::loggeom::contains_point(&region, &moved, Precision::default()).unwrap().is_in());
        }
    }

    #[test]
    fn membership_is_rotation_invariant(
        g in gamma_strategy(),
        r in positive_rat(),
        z in (-30i64..=30, -30i64..=30, -30i64..=30, -30i64..=30),
        theta in (0.0..std::f64::consts::TAU, 0.0..std::f64::consts::TAU),
    ) {
        let d = BandDomain::type_iii(g, &int(1) + &r).unwrap();
        let p = PointC2::new(gr(rat(z.0, 8), rat(z.1, 8)), gr(rat(z.2, 8), rat(z.3, 8)));
        let (u1, u2) = (unit_point(theta.0, 12), unit_point(theta.1, 12));
        let q = PointC2::new(&p.0[0] * &u1, &p.0[1] * &u2);
        let prec = Precision::default();
        prop_assert_eq!(d.membership(&p, prec), d.membership(&q, prec));
    }

    #[test]
    fn classify_recovers_constructors(g in gamma_strategy(), r in positive_rat()) {
        let r = &int(1) + &r;
        let cases = [
            (BandDomain::type_i(g.clone()).unwrap(), DomainKind::type_i(g.clone())),
            (BandDomain::type_ii(g.clone()).unwrap(), DomainKind::type_ii(g.clone())),
            (BandDomain::type_iii(g.clone(), r.clone()).unwrap(), DomainKind::type_iii(g.clone(), r)),
        ];
        for (d, k) in cases {
            prop_assert_eq!(classify(&Domain::Band(d)).unwrap(), k);
        }
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(g in gamma_strategy(), a in positive_rat(), b in positive_rat(), s in positive_rat()) {
        let d1 = Domain::Band(band(&g, &a, &b));
        let d2 = Domain::Band(band(&g, &(&a * &s), &(&b * &s)));
        let normal = Domain::Band(BandDomain::type_iii_sq(g.clone(), &(&a + &b) / &a).unwrap());
        let d3 = Domain::Band(BandDomain::type_ii(g.clone()).unwrap());
        prop_assert_eq!(equivalent(&d1, &d1).unwrap(), Tri::True);
        // Scaling both bounds keeps their ratio, hence the class.
        prop_assert_eq!(equivalent(&d1, &d2).unwrap(), Tri::True);
        prop_assert_eq!(equivalent(&d2, &normal).unwrap(), Tri::True);
        prop_assert_eq!(equivalent(&d1, &d3).unwrap(), equivalent(&d3, &d1).unwrap());
        prop_assert_eq!(equivalent(&d1, &d3).unwrap(), Tri::False);
    }
}

fn primitive_vector() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-10i64..=10, 2..=4).prop_filter("primitive", |v| v.iter().fold(0, |g, &x| num_integer::gcd(g, x)) == 1)
}

proptest! {
    #![proptest_config(cases(96))]

    #[test]
    fn embedding_round_trips(v in primitive_vector(), log_r in -2.0f64..2.0, arg in 0.0..std::f64::consts::TAU) {
        let e = EmbeddedCStar::new(v.clone()).unwrap();
        prop_assert_eq!(e.pairing(), 1);
        let lambda = Complex64::from_polar(log_r.exp(), arg);
        let z = e.embed(&lambda).unwrap();
        prop_assert!(close(e.parameter(&z).unwrap(), lambda, 1e-12));
        let once = e.retract(&z).unwrap();
        let twice = e.retract(&once).unwrap();
        for (a, b) in once.iter().zip(&twice) {
            prop_assert!(close(*a, *b, 1e-12));
        }
    }

    #[test]
    fn properness_profile_grows(v in primitive_vector(), m in 2u32..=6) {
        let e = EmbeddedCStar::new(v).unwrap();
        let (up, down) = e.properness_profile(m);
        for s in [&up, &down] {
            prop_assert!(s.windows(2).all(|w| w[1] > w[0]));
        }
    }

    #[test]
    fn cstar_lift_round_trips(h in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..=4)) {
        let h: Vec<Complex64> = h.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        let back = cstar_unlift(&cstar_lift(&h), 1e-12).unwrap();
        for (a, b) in back.iter().zip(&h) {
            prop_assert!(close(*a, *b, 1e-12));
        }
    }
}

fn matrix() -> impl Strategy<Value = ExponentMatrix> {
    (-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2)
        .prop_map(|(a, b, c, d)| ExponentMatrix::new(a, b, c, d))
        .prop_filter("invertible over Q", |m| m.det() != 0)
}

fn endo() -> impl Strategy<Value = Endomorphism> {
    let coeff = (1i64..=3, -2i64..=2, 1i64..=3, -2i64..=2);
    let twist = prop_oneof![
        Just(Twist::zero()),
        (-3i64..=3, -3i64..=3).prop_map(|(a, b)| Twist::constant_gr(gr(rat(a, 4), rat(b, 4)))),
        (-1i64..=1, -1i64..=1).prop_map(|(m, n)| Twist::monomial(m, n, rk_core::complex::lift(&gr(rat(1, 5), rat(1, 9))))),
    ];
    let monoid: Vec<ExponentMatrix> = enumerate_matrices(&GammaSpec::sqrt(2).unwrap(), 3).into_iter().map(|(m, _)| m).collect();
    (coeff, prop::sample::select(monoid), twist).prop_map(|((a, b, c, d), m, h)| {
        Endomorphism::standard([gr(rat(a, 2), rat(b, 3)), gr(rat(c, 3), rat(d, 2))], m, h).unwrap()
    })
}

fn torus() -> impl Strategy<Value = [f64; 4]> {
    (-0.3f64..0.3, 0.0..std::f64::consts::TAU, -0.3f64..0.3, 0.0..std::f64::consts::TAU).prop_map(|(a, b, c, d)| [a, b, c, d])
}

proptest! {
    #![proptest_config(cases(256))]

    #[test]
    fn composition_is_associative(f in endo(), g in endo(), h in endo(), t in torus()) {
        let gamma = GammaSpec::sqrt(2).unwrap();
        let wrap = |e: &Endomorphism| Composite::Closed(e.clone());
        let left = compose_composites(&compose(&f, &g, &gamma).unwrap(), &wrap(&h), &gamma).unwrap();
        let right = compose_composites(&wrap(&f), &compose(&g, &h, &gamma).unwrap(), &gamma).unwrap();
        prop_assert_eq!(left.degree(&gamma), right.degree(&gamma));
        let z = torus_point(t);
        let tame = |w: &[Complex64; 2]| w.iter().all(|c| c.norm().is_finite() && c.norm() < 1e12);
        if let (Ok(a), Ok(b)) = (left.evaluate(gamma.to_f64(), z), right.evaluate(gamma.to_f64(), z)) {
            // Overflowing samples say nothing about associativity.
            prop_assume!(tame(&a) && tame(&b));
            for j in 0..2 {
                prop_assert!(close(a[j], b[j], 1e-9), "{:?} vs {:?}", a, b);
            }
        }
    }

    #[test]
    fn identity_is_neutral(f in endo()) {
        let gamma = GammaSpec::sqrt(2).unwrap();
        let id = Endomorphism::identity();
        let (left, right) = (compose(&id, &f, &gamma).unwrap(), compose(&f, &id, &gamma).unwrap());
        prop_assert_eq!(left.closed(), Some(&f));
        prop_assert_eq!(right.closed(), Some(&f));
    }

    #[test]
    fn multiplicity_is_multiplicative(m in matrix(), n in matrix()) {
        let mn = m.compose(&n).unwrap();
        prop_assert_eq!(mn.multiplicity().unwrap(), m.multiplicity().unwrap() * n.multiplicity().unwrap());
    }

    #[test]
    fn fixed_points_move_under_conjugation(a in (1i64..=4, 1i64..=4), s in (prop::bool::ANY, prop::bool::ANY)) {
        let gamma = GammaSpec::sqrt(2).unwrap();
        let kind = DomainKind::type_iii(gamma.clone(), int(2));
        let f = Endomorphism::standard([gr(rat(a.0, 2), rat(0, 1)), gr(rat(a.1, 2), rat(0, 1))], ExponentMatrix::scalar(-1), Twist::zero()).unwrap();
        let sign = |b: bool| gr_int(if b { -1 } else { 1 }, 0);
        let psi = Endomorphism::scaling([sign(s.0), sign(s.1)]);
        let g = compose(&psi, &f, &gamma).unwrap();
        let g = compose_composites(&g, &Composite::Closed(psi.clone()), &gamma).unwrap();
        let g64 = gamma.to_f64();
        match fixed_point_class(&f, &kind).unwrap() {
            FixedPointClass::Isolated { points } => {
                for p in points {
                    let q = psi.evaluate(g64, p).unwrap();
                    let gq = g.evaluate(g64, q).unwrap();
                    prop_assert!(close(gq[0], q[0], 1e-12) && close(gq[1], q[1], 1e-12));
                }
            }
            FixedPointClass::Empty => {}
            other => return Err(TestCaseError::fail(format!("unexpected class {other:?}"))),
        }
    }
}

/// `g = φ∘f∘φ⁻¹` written out term by term for `φ(z) = a·z^{±1}`, optionally conjugated.
///
/// With `e = ±1`, `g(w) = a^{1−m}·w^m·exp(Σ e·c_k·a^{−ek}·w^{ek})`; conjugation replaces `a`, `c_k` by their conjugates.
fn conjugated(phi: &CandidateConj, f: &CStarEndo) -> CStarEndo {
    let a = if phi.conjugate { phi.a.conj() } else { phi.a };
    let e = i64::from(phi.exponent);
    let mut terms = std::collections::BTreeMap::new();
    for (&k, &ck) in &f.laurent {
        let ck = if phi.conjugate { ck.conj() } else { ck };
        *terms.entry(e * k).or_insert(Complex64::new(0.0, 0.0)) += ck * e as f64 * a.powi(-(e * k) as i32);
    }
    *terms.entry(0).or_insert(Complex64::new(0.0, 0.0)) += a.ln() * (1 - f.m) as f64;
    CStarEndo::new(f.m, terms)
}

proptest! {
    #![proptest_config(cases(128))]

    #[test]
    fn symbolic_conjugate_passes_the_check(
        m in -3i64..=3,
        coeffs in prop::collection::vec(((-2i64..=2), (-0.4f64..0.4), (-0.4f64..0.4)), 0..=3),
        a in (-0.7f64..0.7, 0.0..std::f64::consts::TAU),
        exponent in prop::sample::select(vec![1i8, -1]),
        conj in prop::bool::ANY,
    ) {
        let f = CStarEndo::new(m, coeffs.into_iter().map(|(k, re, im)| (k, Complex64::new(re, im))).collect::<std::collections::BTreeMap<_, _>>());
        let phi = CandidateConj::new(Complex64::from_polar(a.0.exp(), a.1), exponent, conj).unwrap();
        let g = conjugated(&phi, &f);
        let out = check_conjugating(&phi, &f, &g, 64);
        prop_assert!(out.pass, "residual {} at {:?}", out.worst_residual, out.worst_at);
    }

    #[test]
    fn cstar_endo_never_vanishes(m in -4i64..=4, c in (-2i64..=2, -1.0f64..1.0), z in (-2.0f64..2.0, 0.0..std::f64::consts::TAU)) {
        let f = CStarEndo::new(m, [(c.0, Complex64::new(c.1, 0.5))]);
        if let Ok(v) = f.eval(Complex64::from_polar(z.0.exp(), z.1)) {
            prop_assert!(v.norm() > 0.0);
        }
    }

    #[test]
    fn counterexample_membership_ignores_arguments(
        l in (-4.0f64..2.0, -4.0f64..2.0),
        t in (0.0..std::f64::consts::TAU, 0.0..std::f64::consts::TAU, 0.0..std::f64::consts::TAU, 0.0..std::f64::consts::TAU),
    ) {
        let d = CounterexampleDomain::new(GammaSpec::half_pi()).unwrap();
        let a = [Complex64::from_polar(l.0.exp(), t.0), Complex64::from_polar(l.1.exp(), t.1)];
        let b = [Complex64::from_polar(l.0.exp(), t.2), Complex64::from_polar(l.1.exp(), t.3)];
        prop_assert_eq!(d.membership_f64(a, 1e-9), d.membership_f64(b, 1e-9));
    }
}

#[test]
fn counterexample_lies_in_its_ambient_band() {
    let d = CounterexampleDomain::new(GammaSpec::half_pi()).unwrap();
    let ambient = d.ambient();
    let prec = Precision::default();
    let points = sample_points(&d, 2000, 11);
    assert_eq!(points.len(), 2000);
    for p in &points {
        assert!(ambient.membership(p, prec).is_in(), "{:?}", [to_c64(&p.0[0]), to_c64(&p.0[1])]);
        let u = unit_point(2.0, 12);
        let q = PointC2::new(&p.0[0] * &u, p.0[1].clone());
        assert!(d.membership(&q).is_in());
    }
}
