//! One function per subcommand; each returns a finished report or a failure with its exit code.

use std::io::Read;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rk_core::complex::{rel_err, GaussianRational};
use rk_core::cx::{self, Candidate, CounterexampleDomain, CxPoint, Expectation, Verdict, WitnessMethod};
use rk_core::domain::{self, Domain, DomainKind, ModulusPoint, PointC2};
use rk_core::embed::EmbeddedCStar;
use rk_core::endo::{self, Composite, EndoError, Endomorphism, InvolutionEntry, Validation};
use rk_core::schema::{self, endomorphism_json, gamma_json, quad_json, DomainInput};
use rk_core::scalar::rational::{format_rational, to_f64};
use rk_core::scalar::{GammaSpec, Precision, Scalar};
use rk_core::tri::Tri;

use crate::render;
use crate::report::{self, Failure, Output, Report};
use crate::{CatalogChoice, Ctx};

/// Upper bound on the entry range accepted by `endo enumerate`.
const MAX_ENUMERATE: i64 = 24;

struct Input {
    bytes: Vec<u8>,
    value: Value,
}

fn read_input(command: &str, path: &Path) -> Result<Input, Failure> {
    let mut bytes = Vec::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(path).map(|b| bytes = b)
    };
    res.map_err(|e| Failure::new(report::EXIT_OTHER, command, format!("cannot read {}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes).map_err(|e| Failure::schema(command, format!("malformed JSON: {e}")))?;
    Ok(Input { bytes, value })
}

fn field<'a>(command: &str, v: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    v.get(key).ok_or_else(|| Failure::schema(command, format!("missing field {key:?}")))
}

fn reject_unknown(command: &str, v: &Value, allowed: &[&str]) -> Result<(), Failure> {
    let o = v.as_object().ok_or_else(|| Failure::schema(command, "input must be a JSON object"))?;
    match o.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Failure::schema(command, format!("unknown field {k:?}"))),
        None => Ok(()),
    }
}

fn domain_of(command: &str, v: &Value) -> Result<DomainInput, Failure> {
    schema::parse_domain(v).map_err(|e| Failure::schema(command, e))
}

fn plain_domain(command: &str, v: &Value) -> Result<Domain, Failure> {
    match domain_of(command, v)? {
        DomainInput::Plain(d) => Ok(d),
        DomainInput::Counterexample(_) => {
            Err(Failure::new(report::EXIT_OTHER, command, "the counterexample domain has no normal form; use `rk counterexample`"))
        }
    }
}

fn kind_of(command: &str, d: &Domain) -> Result<DomainKind, Failure> {
    domain::classify(d).map_err(|e| Failure::new(report::EXIT_OTHER, command, e.to_string()))
}

fn endo_failure(command: &str, e: EndoError) -> Failure {
    Failure::new(report::EXIT_OTHER, command, e.to_string())
}

fn scalar_text(s: &Scalar) -> String {
    match s {
        Scalar::Exact(x) => x.compact(),
        other => other.to_string(),
    }
}

/// `(√2, -1)` style.
fn direction_text(v: &[Scalar]) -> String {
    format!("({})", v.iter().map(scalar_text).collect::<Vec<_>>().join(", "))
}

fn complex_json(z: &GaussianRational) -> Value {
    json!([format_rational(&z.re), format_rational(&z.im)])
}

fn point_json(p: &PointC2) -> Value {
    json!([complex_json(&p.0[0]), complex_json(&p.0[1])])
}

fn c64_json(z: [Complex64; 2]) -> Value {
    json!([[z[0].re, z[0].im], [z[1].re, z[1].im]])
}

/// `log|zⱼ|²` per coordinate; `null` on an axis.
fn moduli_json(m: &ModulusPoint) -> Value {
    Value::Array(m.0.iter().map(|l| l.as_ref().map_or(Value::Null, |l| json!(l.to_f64()))).collect())
}

fn kind_json(k: &DomainKind) -> Value {
    let mut v = json!({"kind": k.tag(), "description": k.to_string()});
    if let Some(g) = k.gamma() {
        v["gamma"] = gamma_json(g);
    }
    match k {
        DomainKind::TypeIII { r_sq, .. } => v["r_squared"] = json!(format_rational(r_sq)),
        DomainKind::RationalLine { v: dir } => v["v"] = json!(dir),
        _ => {}
    }
    v
}

fn precision(ctx: &Ctx) -> Precision {
    Precision::with_start(ctx.bits)
}

fn rng(ctx: &Ctx) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(ctx.seed)
}

/// A point of `ℂ*²` with moduli in `[1/2, 2]` and uniform arguments.
fn random_torus_point(rng: &mut ChaCha8Rng) -> [Complex64; 2] {
    let mut c = || Complex64::from_polar(2f64.powf(rng.gen_range(-1.0..1.0)), rng.gen_range(0.0..std::f64::consts::TAU));
    [c(), c()]
}

pub fn classify(ctx: &Ctx, path: &Path) -> Result<Output, Failure> {
    const CMD: &str = "classify";
    let input = read_input(CMD, path)?;
    let result = match domain_of(CMD, &input.value)? {
        DomainInput::Plain(d) => {
            let hyp = domain::is_hyperbolic(&d).map_err(|e| Failure::new(report::EXIT_OTHER, CMD, e.to_string()))?;
            let pc = domain::is_pseudoconvex(&d);
            let mut out = match domain::classify(&d) {
                Ok(k) => kind_json(&k),
                Err(e) => json!({"kind": "undecided", "description": e.to_string()}),
            };
            out["hyperbolic"] = json!({
                "value": report::tri(hyp.hyperbolic),
                "reason": hyp.reason,
                "witness": hyp.line_direction.as_deref().map(direction_text),
                "slices": hyp.slices,
            });
            out["pseudoconvex"] = json!({
                "value": report::tri(Tri::from_bool(pc.pseudoconvex)),
                "criterion": pc.criterion,
                "slices": pc.slices,
            });
            out
        }
        DomainInput::Counterexample(cd) => {
            let cd = cd.with_precision(precision(ctx));
            let disc = cx::pseudoconvexity_witness(&cd);
            json!({
                "kind": "counterexample",
                "description": format!("D_γ with slits I1, I2 and axis tails removed, γ = {}", cd.gamma()),
                "gamma": gamma_json(cd.gamma()),
                "hyperbolic": {"value": "uncertain", "reason": "not decided for slit domains"},
                "pseudoconvex": match disc {
                    Ok(w) => json!({
                        "value": "false",
                        "criterion": "Hartogs figure: a disc whose boundary lies in the domain and whose center does not",
                        "witness_disc": disc_json(&w),
                    }),
                    Err(e) => json!({"value": "uncertain", "criterion": e.to_string()}),
                },
            })
        }
    };
    Ok(Output::Json(Report::new(CMD, &input.bytes, ctx, result)))
}

fn disc_json(w: &cx::WitnessDisc) -> Value {
    json!({
        "center": point_json(&w.center),
        "center_membership": "out",
        "radius": format_rational(&w.radius),
        "varying_coordinate": w.direction + 1,
        "boundary_points": w.boundary.len(),
        "boundary_membership": "in",
    })
}

fn gamma_or_domain(command: &str, v: &Value) -> Result<(GammaSpec, Option<DomainKind>), Failure> {
    match (v.get("gamma"), v.get("domain")) {
        (Some(_), Some(_)) => Err(Failure::schema(command, "give either gamma or domain, not both")),
        (Some(g), None) => Ok((schema::parse_gamma(g).map_err(|e| Failure::schema(command, e))?, None)),
        (None, Some(d)) => {
            let kind = kind_of(command, &plain_domain(command, d)?)?;
            let gamma = kind.gamma().cloned().ok_or_else(|| Failure::new(report::EXIT_OTHER, command, format!("{kind} has no exponent γ")))?;
            Ok((gamma, Some(kind)))
        }
        (None, None) => Err(Failure::schema(command, "missing field \"gamma\" or \"domain\"")),
    }
}

fn map_of(command: &str, v: &Value) -> Result<Endomorphism, Failure> {
    schema::parse_endomorphism(v).map_err(|e| Failure::schema(command, e))
}

pub fn degree(ctx: &Ctx, path: &Path) -> Result<Output, Failure> {
    const CMD: &str = "endo degree";
    let input = read_input(CMD, path)?;
    reject_unknown(CMD, &input.value, &["gamma", "domain", "map"])?;
    let (gamma, _) = gamma_or_domain(CMD, &input.value)?;
    let f = map_of(CMD, field(CMD, &input.value, "map")?)?;
    let Some((_, m, _)) = f.parts() else {
        return Err(Failure::new(report::EXIT_INVALID_ENDO, CMD, "degree is defined for maps a·z^M·p_γ(h) only")
            .with_details(json!({"violations": ["map is not of standard form"]})));
    };
    let Some(alpha) = m.degree(&gamma) else {
        return Err(Failure::new(report::EXIT_INVALID_ENDO, CMD, "exponent matrix admits no degree for this γ")
            .with_details(json!({"violations": ["α·(1, γ)·M ≠ (1, γ)·α has no solution"]})));
    };
    let level = f.level_map(&gamma);
    let result = json!({
        "gamma": gamma_json(&gamma),
        "M": m.entries(),
        "det": m.det().to_string(),
        "alpha": alpha.to_string(),
        "statement": format!("α = {alpha}"),
        "alpha_exact": quad_json(&alpha),
        "conjugate_degree": m.conjugate_degree(&gamma).map(|c| c.to_string()),
        "multiplicity": m.multiplicity().ok().map(|k| k.to_string()),
        "level_map": level.map(|l| json!({
            "alpha": l.alpha.to_string(),
            "beta": l.beta_f64(),
            "log_beta_sq": l.log_beta_sq.to_f64() + 0.0,
        })),
    });
    Ok(Output::Json(Report::new(CMD, &input.bytes, ctx, result)))
}

fn validation_json(v: &Validation) -> Value {
    json!({"verdict": report::tri(v.verdict), "violations": v.violations, "undecided": v.undecided})
}

pub fn validate(ctx: &Ctx, path: &Path) -> Result<Output, Failure> {
    const CMD: &str = "endo validate";
    let input = read_input(CMD, path)?;
    reject_unknown(CMD, &input.value, &["domain", "map"])?;
    let d = plain_domain(CMD, field(CMD, &input.value, "domain")?)?;
    let f = map_of(CMD, field(CMD, &input.value, "map")?)?;
    let kind = kind_of(CMD, &d)?;
    let v = endo::validate(&f, &kind, precision(ctx)).map_err(|e| endo_failure(CMD, e))?;
    let mut result = kind_json(&kind);
    result["map"] = json!(f.to_string());
    result["validation"] = validation_json(&v);
    let exit = if v.verdict == Tri::False { report::EXIT_INVALID_ENDO } else { report::EXIT_OK };
    Ok(Output::Json(Report::new(CMD, &input.bytes, ctx, result).with_exit(exit)))
}

pub fn compose(ctx: &Ctx, path: &Path) -> Result<Output, Failure> {
    const CMD: &str = "endo compose";
    let input = read_input(CMD, path)?;
    reject_unknown(CMD, &input.value, &["gamma", "domain", "maps"])?;
    let (gamma, kind) = gamma_or_domain(CMD, &input.value)?;
    let maps = field(CMD, &input.value, "maps")?
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Failure::schema(CMD, "maps must be a list [F, G]"))?;
    let f = map_of(CMD, &maps[0])?;
    let g = map_of(CMD, &maps[1])?;
    if let Some(kind) = &kind {
        let mut violations = Vec::new();
        for (name, m) in [("F", &f), ("G", &g)] {
            let v = endo::validate(m, kind, precision(ctx)).map_err(|e| endo_failure(CMD, e))?;
            if v.verdict == Tri::False {
                violations.extend(v.violations.iter().map(|c| format!("{name}: {c}")));
            }
        }
        if !violations.is_empty() {
            return Err(Failure::new(report::EXIT_INVALID_ENDO, CMD, format!("not an endomorphism of {kind}"))
                .with_details(json!({"violations": violations})));
        }
    }
    let c = endo::compose(&f, &g, &gamma).map_err(|e| endo_failure(CMD, e))?;
    let gf = gamma.to_f64();
    let mut rng = rng(ctx);
    let mut worst = 0f64;
    let mut checked = 0usize;
    for _ in 0..ctx.samples {
        let z = random_torus_point(&mut rng);
        let (Ok(lhs), Ok(rhs)) = (c.evaluate(gf, z), g.evaluate(gf, z).and_then(|w| f.evaluate(gf, w))) else { continue };
        worst = worst.max(rel_err(lhs[0], rhs[0])).max(rel_err(lhs[1], rhs[1]));
        checked += 1;
    }
    let mut result = json!({
        "gamma": gamma_json(&gamma),
        "F": f.to_string(),
        "G": g.to_string(),
        "degree": c.degree(&gamma).map(|a| a.to_string()),
        "residual": {"samples": checked, "max_relative_error": worst},
    });
    match &c {
        Composite::Closed(h) => {
            result["form"] = json!("closed");
            result["map"] = json!(h.to_string());
            result["map_json"] = endomorphism_json(h);
        }
        Composite::Opaque(o) => {
            result["form"] = json!("opaque");
            result["chain"] = o.chain().iter().map(|m| json!(m.to_string())).collect();
        }
    }
    Ok(Output::Json(Report::new(CMD, &input.bytes, ctx, result)))
}

pub fn enumerate(ctx: &Ctx, path: &Path) -> Result<Output, Failure> {
    const CMD: &str = "endo enumerate";
    let input = read_input(CMD, path)?;
    reject_unknown(CMD, &input.value, &["gamma", "n"])?;
    let gamma = schema::parse_gamma(field(CMD, &input.value, "gamma")?).map_err(|e| Failure::schema(CMD, e))?;
    let n = field(CMD, &input.value, "n")?
        .as_i64()
        .filter(|n| (0..=MAX_ENUMERATE).contains(n))
        .ok_or_else(|| Failure::schema(CMD, format!("n must be an integer in 0..={MAX_ENUMERATE}")))?;
    let found = endo::enumerate_matrices(&gamma, n);
    let matrices: Vec<Value> = found.iter().map(|(m, a)| json!({"M": m.entries(), "alpha": a.to_string()})).collect();
    let result = json!({"gamma": gamma_json(&gamma), "n": n, "count": matrices.len(), "matrices": matrices});
    Ok(Output::Json(Report::new(CMD, &input.bytes, ctx, result)))
}

fn involution_json(e: &InvolutionEntry) -> Value {
    json!({
        "map": e.map.to_string(),
        "square": e.square.to_string(),
        "square_is_identity": e.square_is_identity(),
        "validation": validation_json(&e.validation),
    })
}

pub fn involutions(ctx: &Ctx, path: &Path) -> Result<Output, Failure> {
    const CMD: &str = "endo involutions";
    let input = read_input(CMD, path)?;
    let d = plain_domain(CMD, &input.value)?;
    let kind = kind_of(CMD, &d)?;
    let cat = endo::involutions(&kind).map_err(|e| endo_failure(CMD, e))?;
    let mut result = kind_json(&kind);
    result["count"] = json!(cat.maps.len());
    result["entries"] = cat.maps.iter().map(involution_json).collect();
    result["family"] = cat.family.as_ref().map_or(Value::Null, |f| {
        json!({"description": f.description, "members": f.members.iter().map(involution_json).collect::<Vec<_>>()})
    });
    result["rejected"] =
        cat.rejected.iter().map(|(m, v)| json!({"map": m.to_string(), "validation": validation_json(v)})).collect();
    result["all_certified"] = json!(cat.all_certified());
    Ok(Output::Json(Report::new(CMD, &input.bytes, ctx, result)))
}

pub fn embed(ctx: &Ctx, path: &Path) -> Result<Output, Failure> {
    const CMD: &str = "embed";
    let input = read_input(CMD, path)?;
    let no_line = |why: String| Failure::new(report::EXIT_NO_LINE, CMD, why);
    let d = match domain_of(CMD, &input.value)? {
        DomainInput::Plain(d) => d,
        DomainInput::Counterexample(_) => return Err(no_line("only real lines of irrational type".into())),
    };
    let kind = kind_of(CMD, &d)?;
    let v = match &kind {
        DomainKind::RationalLine { v } => v.clone(),
        DomainKind::TypeI { .. } | DomainKind::TypeII { .. } | DomainKind::TypeIII { .. } => {
            return Err(no_line("only real lines of irrational type".into()).with_details(kind_json(&kind)))
        }
        other => return Err(no_line(format!("no rational line: {other}")).with_details(kind_json(other))),
    };
    let e = EmbeddedCStar::new(v).map_err(|e| Failure::new(report::EXIT_OTHER, CMD, e.to_string()))?;
    // The bare curve λ^v may run along the boundary; translate it through an interior point b.
    let region = d.log_image().map_err(|e| Failure::new(report::EXIT_OTHER, CMD, e.to_string()))?;
    let anchor: Vec<_> = region.interior_point().to_vec();
    let base: Vec<f64> = anchor.iter().map(|x| to_f64(x).exp()).collect();
    let fail = |e: rk_core::embed::EmbedError| Failure::new(report::EXIT_OTHER, CMD, e.to_string());
    let scale = |z: &[Complex64], inv: bool| -> Vec<Complex64> {
        z.iter().zip(&base).map(|(w, b)| if inv { w / b } else { w * b }).collect()
    };
    let retract = |z: &[Complex64]| e.retract(&scale(z, true)).map(|r| scale(&r, false));
    let mut rng = rng(ctx);
    let (mut param, mut roundtrip, mut idem) = (0f64, 0f64, 0f64);
    let mut on_curve = rk_core::tri::Membership::In;
    let max_err = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(x, y)| rel_err(*x, *y)).fold(0.0, f64::max);
    for _ in 0..ctx.samples {
        let lam = Complex64::from_polar(2f64.powf(rng.gen_range(-1.0..1.0)), rng.gen_range(0.0..std::f64::consts::TAU));
        let curve = scale(&e.embed(&lam).map_err(fail)?, false);
        param = param.max(rel_err(e.parameter(&scale(&curve, true)).map_err(fail)?, lam));
        roundtrip = roundtrip.max(max_err(&retract(&curve).map_err(fail)?, &curve));
        let z = random_torus_point(&mut rng);
        let r = retract(&z).map_err(fail)?;
        idem = idem.max(max_err(&retract(&r).map_err(fail)?, &r));
        if let Domain::Band(b) = &d {
            on_curve = on_curve.and(b.contains_f64([curve[0], curve[1]], 1e-9));
        }
    }
    let mut result = kind_json(&kind);
    result["v"] = json!(e.v());
    result["k"] = json!(e.k());
    result["pairing"] = json!(e.pairing().to_string());
    result["base_point_log"] = anchor.iter().map(|x| json!(format_rational(x))).collect();
    result["curve_in_domain"] = json!(report::membership(on_curve));
    result["residuals"] = json!({
        "samples": ctx.samples,
        "parameter": param,
        "retract_embed": roundtrip,
        "idempotence": idem,
    });
    Ok(Output::Json(Report::new(CMD, &input.bytes, ctx, result)))
}

pub fn render(_ctx: &Ctx, path: &Path, view: [f64; 4]) -> Result<Output, Failure> {
    const CMD: &str = "render";
    let input = read_input(CMD, path)?;
    let scene = match domain_of(CMD, &input.value)? {
        DomainInput::Plain(d) => {
            let lineality = domain::is_hyperbolic(&d).ok().and_then(|h| h.line_direction);
            render::Scene::plain(&d, lineality.as_deref()).map_err(|e| Failure::new(report::EXIT_OTHER, CMD, e))?
        }
        DomainInput::Counterexample(cd) => render::Scene::counterexample(&cd),
    };
    Ok(Output::Svg(render::svg(&scene, view)))
}

fn is_rotation(c: &Candidate) -> bool {
    c.expected == Expectation::Survive && matches!(c.map.parts(), Some((_, m, _)) if m.is_identity())
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Survives { checked, undecided } => json!({"verdict": "survives", "checked": checked, "undecided": undecided}),
        Verdict::Rejected { witness, image, method } => json!({
            "verdict": "rejected",
            "witness": witness_json(witness, image, method),
        }),
    }
}

fn witness_json(z: &CxPoint, image: &ModulusPoint, method: &WitnessMethod) -> Value {
    json!({
        "method": match method { WitnessMethod::Constructed => "constructed", WitnessMethod::Sampled => "sampled" },
        "exact": z.exact.as_ref().map(point_json),
        "approx": c64_json(z.approx()),
        "log_moduli_sq": moduli_json(&z.moduli),
        "image_log_moduli_sq": moduli_json(image),
        "membership": "in",
        "image_membership": "out",
    })
}

pub fn counterexample(ctx: &Ctx, gamma: Option<&Path>, catalog: CatalogChoice, check: bool) -> Result<Output, Failure> {
    const CMD: &str = "counterexample";
    let (bytes, gamma) = match gamma {
        Some(p) => {
            let input = read_input(CMD, p)?;
            let g = schema::parse_gamma(&input.value).map_err(|e| Failure::schema(CMD, e))?;
            (input.bytes, g)
        }
        None => (Vec::new(), GammaSpec::half_pi()),
    };
    let d = CounterexampleDomain::new(gamma).map_err(|e| Failure::schema(CMD, e))?.with_precision(precision(ctx));
    let mut cat = cx::builtin_catalog();
    if catalog == CatalogChoice::Rotations {
        cat.retain(is_rotation);
    }
    let rep = cx::reject_candidates(&d, &cat, ctx.samples, ctx.seed);
    let entries: Vec<Value> = rep
        .entries
        .iter()
        .map(|e| {
            let mut v = json!({
                "candidate": e.candidate.name,
                "map": e.candidate.map.to_string(),
                "expected": match e.candidate.expected { Expectation::Survive => "survive", Expectation::Reject => "reject" },
                "as_expected": e.as_expected(),
            });
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, verdict_json(&e.verdict)) {
                dst.extend(src);
            }
            v
        })
        .collect();
    let unexpected_survivors: Vec<&str> =
        rep.survivors().filter(|e| e.candidate.expected == Expectation::Reject).map(|e| e.candidate.name.as_str()).collect();
    let wrongly_rejected: Vec<&str> = rep
        .entries
        .iter()
        .filter(|e| !e.verdict.survives() && e.candidate.expected == Expectation::Survive)
        .map(|e| e.candidate.name.as_str())
        .collect();
    let mut result = json!({
        "gamma": gamma_json(d.gamma()),
        "catalog": match catalog { CatalogChoice::Builtin => "builtin", CatalogChoice::Rotations => "rotations" },
        "samples": ctx.samples,
        "candidates": entries.len(),
        "rejected": rep.entries.iter().filter(|e| !e.verdict.survives()).count(),
        "survived": rep.survivors().count(),
        "unexpected_survivors": unexpected_survivors,
        "unexpected_rejections": wrongly_rejected,
        "entries": entries,
    });
    if check {
        result["witness_disc"] = match cx::pseudoconvexity_witness(&d) {
            Ok(w) => disc_json(&w),
            Err(e) => return Err(Failure::new(report::EXIT_OTHER, CMD, e.to_string())),
        };
    }
    let exit = if !unexpected_survivors.is_empty() {
        report::EXIT_SURVIVAL
    } else if !wrongly_rejected.is_empty() {
        report::EXIT_OTHER
    } else {
        report::EXIT_OK
    };
    Ok(Output::Json(Report::new(CMD, &bytes, ctx, result).with_exit(exit)))
}
