//! JSON input schema ("rk-1") for exponents, domains, endomorphisms and log regions.
//!
//! Rationals travel as strings (`"3/2"`, `"-0.25"`, `"7"`), so no value is
//! ever rounded through a float.

use serde::Deserialize;
use serde_json::Value;

use crate::complex::{gr, gr_int, lift, GaussianRational};
use crate::cx::CounterexampleDomain;
use crate::domain::{Axes, BandDomain, Domain, PointC2, Polydisc};
use crate::endo::{Endomorphism, ExponentMatrix, Twist};
use crate::loggeom::{LogConstraint, LogRegion};
use crate::scalar::rational::parse_rational;
use crate::scalar::{GammaSpec, QuadExt, Rational, Scalar};

pub const SCHEMA_VERSION: &str = "rk-1";

/// Largest accepted exponent-matrix entry in absolute value.
pub const MAX_MATRIX_ENTRY: i64 = 1 << 20;
/// Largest accepted twist exponent in absolute value.
pub const MAX_TWIST_EXPONENT: i64 = 64;
/// Largest accepted number of twist terms or constraints.
pub const MAX_TERMS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("schema: {0}")]
pub struct SchemaError(pub String);

fn err(e: impl std::fmt::Display) -> SchemaError {
    SchemaError(e.to_string())
}

fn rational(s: &str) -> Result<Rational, SchemaError> {
    parse_rational(s).map_err(err)
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum GammaJson {
    Quadratic { d: i64, p: String, q: String },
    Enclosed { lo: String, hi: String },
    Rational { value: String },
    #[serde(rename = "half_pi")]
    HalfPi,
}

impl GammaJson {
    fn build(self) -> Result<GammaSpec, SchemaError> {
        match self {
            GammaJson::Quadratic { d, p, q } => GammaSpec::quadratic(d, rational(&p)?, rational(&q)?).map_err(err),
            GammaJson::Enclosed { lo, hi } => GammaSpec::enclosed(rational(&lo)?, rational(&hi)?).map_err(err),
            GammaJson::Rational { value } => GammaSpec::rational(rational(&value)?).map_err(err),
            GammaJson::HalfPi => Ok(GammaSpec::half_pi()),
        }
    }
}

pub fn parse_gamma(v: &Value) -> Result<GammaSpec, SchemaError> {
    GammaJson::deserialize(v).map_err(err)?.build()
}

/// A weight: a rational string, a quadratic number, or a multiple of an enclosed constant.
pub fn parse_scalar(v: &Value) -> Result<Scalar, SchemaError> {
    match v {
        Value::String(s) => Ok(Scalar::rational(rational(s)?)),
        Value::Object(o) => {
            let coef = match o.get("coef") {
                Some(Value::String(c)) => rational(c)?,
                Some(_) => return Err(SchemaError("coef must be a rational string".into())),
                None => Rational::from_integer(1.into()),
            };
            let mut o = o.clone();
            o.remove("coef");
            match parse_gamma(&Value::Object(o))? {
                GammaSpec::Quadratic(q) => Ok(Scalar::Exact(q.scale(&coef))),
                GammaSpec::Rational(r) => Ok(Scalar::rational(r * coef)),
                enclosed => Ok(enclosed.as_scalar().scale(&coef)),
            }
        }
        _ => Err(SchemaError("scalar must be a string or an object".into())),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AxesJson {
    #[serde(default)]
    z1: bool,
    #[serde(default)]
    z2: bool,
    #[serde(default)]
    origin: bool,
}

/// A parsed domain document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainInput {
    Plain(Domain),
    Counterexample(CounterexampleDomain),
}

/// `{"gamma", "lower", "upper", "axes"}`, `{"polydisc": [r1, r2]}` or `{"counterexample": gamma}`.
pub fn parse_domain(v: &Value) -> Result<DomainInput, SchemaError> {
    let o = v.as_object().ok_or_else(|| SchemaError("domain must be an object".into()))?;
    if let Some(g) = o.get("counterexample") {
        if o.len() != 1 {
            return Err(SchemaError("counterexample takes no other fields".into()));
        }
        return CounterexampleDomain::new(parse_gamma(g)?).map(DomainInput::Counterexample).map_err(err);
    }
    if let Some(r) = o.get("polydisc") {
        if o.len() != 1 {
            return Err(SchemaError("polydisc takes no other fields".into()));
        }
        let radii: Vec<String> = Vec::deserialize(r).map_err(err)?;
        let [r1, r2] = radii.as_slice() else { return Err(SchemaError("polydisc needs two radii".into())) };
        return Polydisc::new(rational(r1)?, rational(r2)?).map(|p| DomainInput::Plain(Domain::Polydisc(p))).map_err(err);
    }
    for k in o.keys() {
        if !["gamma", "lower", "upper", "axes"].contains(&k.as_str()) {
            return Err(SchemaError(format!("unknown field {k:?}")));
        }
    }
    let gamma = parse_gamma(o.get("gamma").ok_or_else(|| SchemaError("missing gamma".into()))?)?;
    let text = |key: &str| -> Result<Option<Rational>, SchemaError> {
        match o.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => rational(s).map(Some),
            Some(_) => Err(SchemaError(format!("{key} must be a rational string"))),
        }
    };
    let lower = text("lower")?.unwrap_or_default();
    let upper = text("upper")?;
    let axes = match o.get("axes") {
        Some(a) => {
            let a = AxesJson::deserialize(a).map_err(err)?;
            Axes { z1: a.z1, z2: a.z2, origin: a.origin }
        }
        None => Axes::NONE,
    };
    BandDomain::new(gamma, lower, upper, axes).map(|b| DomainInput::Plain(Domain::Band(b))).map_err(err)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    k2: i64,
    k1: i64,
    l2: i64,
    l1: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    m: i64,
    n: i64,
    re: String,
    im: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistJson {
    terms: Vec<TermJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EndoJson {
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    a: Option<[[String; 2]; 2]>,
    #[serde(rename = "M", default)]
    m: Option<MatrixJson>,
    #[serde(default)]
    h: Option<TwistJson>,
    #[serde(default)]
    value: Option<[[String; 2]; 2]>,
}

fn complex(p: &[String; 2]) -> Result<GaussianRational, SchemaError> {
    Ok(gr(rational(&p[0])?, rational(&p[1])?))
}

fn twist(t: Option<TwistJson>) -> Result<Twist, SchemaError> {
    let Some(t) = t else { return Ok(Twist::zero()) };
    if t.terms.len() > MAX_TERMS {
        return Err(SchemaError(format!("at most {MAX_TERMS} twist terms")));
    }
    let mut terms = Vec::with_capacity(t.terms.len());
    for term in t.terms {
        if term.m.abs() > MAX_TWIST_EXPONENT || term.n.abs() > MAX_TWIST_EXPONENT {
            return Err(SchemaError(format!("twist exponents are limited to ±{MAX_TWIST_EXPONENT}")));
        }
        terms.push(((term.m, term.n), lift(&gr(rational(&term.re)?, rational(&term.im)?))));
    }
    Twist::from_terms(terms).map_err(err)
}

/// Kinds: `"standard"` (default), `"axis1"`, `"axis2"`, `"constant"`.
pub fn parse_endomorphism(v: &Value) -> Result<Endomorphism, SchemaError> {
    let e = EndoJson::deserialize(v).map_err(err)?;
    match e.kind.as_deref().unwrap_or("standard") {
        "standard" => {
            let a = match &e.a {
                Some(a) => [complex(&a[0])?, complex(&a[1])?],
                None => [gr_int(1, 0), gr_int(1, 0)],
            };
            let m = match e.m {
                Some(m) => {
                    if [m.k2, m.k1, m.l2, m.l1].iter().any(|x| x.abs() > MAX_MATRIX_ENTRY) {
                        return Err(SchemaError(format!("matrix entries are limited to ±{MAX_MATRIX_ENTRY}")));
                    }
                    ExponentMatrix::new(m.k2, m.k1, m.l2, m.l1)
                }
                None => ExponentMatrix::IDENTITY,
            };
            Endomorphism::standard(a, m, twist(e.h)?).map_err(err)
        }
        "axis1" => Ok(Endomorphism::AxisCollapse1 { h: twist(e.h)? }),
        "axis2" => Ok(Endomorphism::AxisCollapse2 { h: twist(e.h)? }),
        "constant" => {
            let v = e.value.ok_or_else(|| SchemaError("constant needs value".into()))?;
            Ok(Endomorphism::Constant { value: PointC2::new(complex(&v[0])?, complex(&v[1])?) })
        }
        other => Err(SchemaError(format!("unknown endomorphism kind {other:?}"))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintJson {
    weights: Vec<Value>,
    bound: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionJson {
    constraints: Vec<ConstraintJson>,
}

pub fn parse_region(v: &Value) -> Result<LogRegion, SchemaError> {
    let r = RegionJson::deserialize(v).map_err(err)?;
    if r.constraints.len() > MAX_TERMS {
        return Err(SchemaError(format!("at most {MAX_TERMS} constraints")));
    }
    let dim = r.constraints.first().map_or(2, |c| c.weights.len());
    if dim == 0 || dim > 8 {
        return Err(SchemaError("dimension must be between 1 and 8".into()));
    }
    let mut cs = Vec::with_capacity(r.constraints.len());
    for c in r.constraints {
        let w = c.weights.iter().map(parse_scalar).collect::<Result<Vec<_>, _>>()?;
        cs.push(LogConstraint::new(w, rational(&c.bound)?).map_err(err)?);
    }
    LogRegion::new(dim, cs).map_err(err)
}

/// Parses raw bytes as one JSON document of the given shape.
pub fn parse_bytes<T>(bytes: &[u8], f: fn(&Value) -> Result<T, SchemaError>) -> Result<T, SchemaError> {
    let v: Value = serde_json::from_slice(bytes).map_err(err)?;
    f(&v)
}

/// `p + q·√d` as a quadratic-number JSON object.
pub fn quad_json(x: &QuadExt) -> Value {
    use crate::scalar::rational::format_rational;
    match x.d() {
        Some(d) => serde_json::json!({"kind": "quadratic", "d": d, "p": format_rational(x.p()), "q": format_rational(x.q())}),
        None => Value::String(format_rational(x.p())),
    }
}

fn quad_text(x: &QuadExt) -> Value {
    match x.as_rational() {
        Some(r) => Value::String(crate::scalar::rational::format_rational(r)),
        None => quad_json(x),
    }
}

fn complex_json(z: &GaussianRational) -> Value {
    use crate::scalar::rational::format_rational;
    serde_json::json!([format_rational(&z.re), format_rational(&z.im)])
}

/// The input form of an exponent; enclosures print their endpoints.
pub fn gamma_json(g: &GammaSpec) -> Value {
    use crate::scalar::rational::format_rational;
    match g {
        GammaSpec::Quadratic(q) => quad_json(q),
        GammaSpec::Enclosed(iv) => serde_json::json!({"kind": "enclosed", "lo": format_rational(iv.lo()), "hi": format_rational(iv.hi())}),
        GammaSpec::Rational(r) => serde_json::json!({"kind": "rational", "value": format_rational(r)}),
    }
}

/// The input form of an endomorphism; irrational twist coefficients appear as quadratic objects.
pub fn endomorphism_json(f: &Endomorphism) -> Value {
    use serde_json::json;
    let twist = |h: &Twist| {
        let terms: Vec<Value> = h.terms().map(|(&(m, n), c)| json!({"m": m, "n": n, "re": quad_text(&c.re), "im": quad_text(&c.im)})).collect();
        json!({"terms": terms})
    };
    match f {
        Endomorphism::Standard { a, m, h } => json!({
            "a": [complex_json(&a[0]), complex_json(&a[1])],
            "M": {"k2": m.k2, "k1": m.k1, "l2": m.l2, "l1": m.l1},
            "h": twist(h),
        }),
        Endomorphism::AxisCollapse1 { h } => json!({"kind": "axis1", "h": twist(h)}),
        Endomorphism::AxisCollapse2 { h } => json!({"kind": "axis2", "h": twist(h)}),
        Endomorphism::Constant { value } => json!({"kind": "constant", "value": [complex_json(&value.0[0]), complex_json(&value.0[1])]}),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn gamma_forms() {
        let g = parse_gamma(&json!({"kind":"quadratic","d":2,"p":"0","q":"1"})).unwrap();
        assert_eq!(g, GammaSpec::sqrt(2).unwrap());
        // Contains 311/198, so the irrationality guard rejects it.
        assert!(parse_gamma(&json!({"kind":"enclosed","lo":"15707/10000","hi":"15709/10000"})).is_err());
        assert!(parse_gamma(&json!({"kind":"enclosed","lo":"1570796326/1000000000","hi":"1570796327/1000000000"})).is_ok());
        assert!(parse_gamma(&json!({"kind":"enclosed","lo":"1","hi":"2"})).is_err());
        assert!(parse_gamma(&json!({"kind":"quadratic","d":4,"p":"0","q":"1"})).is_err());
        assert!(parse_gamma(&json!({"kind":"cubic"})).is_err());
        assert!(parse_gamma(&json!("1.5")).is_err());
    }

    #[test]
    fn domain_forms() {
        let d = parse_domain(&json!({"gamma":{"kind":"quadratic","d":2,"p":"0","q":"1"},"lower":"0","upper":"1","axes":{"z1":true,"z2":true,"origin":true}})).unwrap();
        assert!(matches!(d, DomainInput::Plain(Domain::Band(_))));
        assert!(matches!(parse_domain(&json!({"polydisc":["1","1"]})).unwrap(), DomainInput::Plain(Domain::Polydisc(_))));
        assert!(matches!(parse_domain(&json!({"counterexample":{"kind":"half_pi"}})).unwrap(), DomainInput::Counterexample(_)));
        assert!(parse_domain(&json!({"gamma":{"kind":"half_pi"},"upper":1})).is_err());
        assert!(parse_domain(&json!({"gamma":{"kind":"half_pi"},"extra":"1"})).is_err());
    }

    #[test]
    fn endo_forms() {
        let f = parse_endomorphism(&json!({"a":[["1","0"],["1","0"]],"M":{"k2":1,"k1":0,"l2":0,"l1":1},"h":{"terms":[{"m":0,"n":0,"re":"0","im":"0"}]}})).unwrap();
        assert_eq!(f, Endomorphism::identity());
        assert!(parse_endomorphism(&json!({"a":[["0","0"],["1","0"]]})).is_err());
        assert!(parse_endomorphism(&json!({"M":{"k2":9999999,"k1":0,"l2":0,"l1":1}})).is_err());
        assert!(parse_endomorphism(&json!({"kind":"constant","value":[["1/2","0"],["0","0"]]})).is_ok());
        let g = parse_endomorphism(&json!({"a":[["1/2","1/3"],["2","0"]],"M":{"k2":2,"k1":-1,"l2":0,"l1":3},"h":{"terms":[{"m":1,"n":-2,"re":"3/7","im":"-1"}]}})).unwrap();
        assert_eq!(parse_endomorphism(&endomorphism_json(&g)).unwrap(), g);
    }

    #[test]
    fn region_form() {
        let r = parse_region(&json!({"constraints":[{"weights":["1",{"kind":"quadratic","d":2,"p":"0","q":"1"}],"bound":"1"}]})).unwrap();
        assert_eq!(r.dim(), 2);
        assert!(parse_region(&json!({"constraints":[{"weights":["0","0"],"bound":"1"}]})).is_err());
    }
}
