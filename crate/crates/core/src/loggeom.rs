//! Logarithmic images as intersections of open half-spaces `w·x < log b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::rational::{self, Rational};
use crate::scalar::{Interval, LogLinear, Precision, QuadExt, Scalar, ScalarError, Sign};
use crate::tri::Membership;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("constraint weights are all zero")]
    ZeroWeights,
    #[error("constraint bound must be positive")]
    NonPositiveBound,
    #[error("region is empty or no interior point could be certified: {0}")]
    Empty(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `{x : w·x < log(bound)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogConstraint {
    weights: Vec<Scalar>,
    bound: Rational,
}

impl LogConstraint {
    pub fn new(weights: Vec<Scalar>, bound: Rational) -> Result<Self, GeomError> {
        if weights.iter().all(Scalar::is_zero) {
            return Err(GeomError::ZeroWeights);
        }
        if !bound.is_positive() {
            return Err(GeomError::NonPositiveBound);
        }
        Ok(Self { weights, bound })
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    /// `w·x − log(bound)` as an exact form.
    pub fn slack_form(&self, x: &[Rational]) -> Result<LogLinear, ScalarError> {
        let mut f = LogLinear::new().with_log(Scalar::int(-1), self.bound.clone())?;
        for (w, xi) in self.weights.iter().zip(x) {
            f = f.with_offset(w.scale(xi));
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogRegion {
    dim: usize,
    constraints: Vec<LogConstraint>,
    witness: Vec<Rational>,
}

impl LogRegion {
    /// Builds the region and certifies an interior point.
    pub fn new(dim: usize, constraints: Vec<LogConstraint>) -> Result<Self, GeomError> {
        for c in &constraints {
            if c.weights.len() != dim {
                return Err(GeomError::Dimension { expected: dim, got: c.weights.len() });
            }
        }
        let mut region = Self { dim, constraints, witness: vec![Rational::zero(); dim] };
        region.witness = region.find_interior_point()?;
        Ok(region)
    }

    pub fn whole(dim: usize) -> Self {
        Self { dim, constraints: Vec::new(), witness: vec![Rational::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LogConstraint] {
        &self.constraints
    }

    /// A certified interior point.
    pub fn interior_point(&self) -> &[Rational] {
        &self.witness
    }

    fn find_interior_point(&self) -> Result<Vec<Rational>, GeomError> {
        let zero = vec![Rational::zero(); self.dim];
        if contains_point(self, &zero, Precision::default())? == Membership::In {
            return Ok(zero);
        }
        let rows: Vec<(Vec<f64>, f64)> = self
            .constraints
            .iter()
            .map(|c| (c.weights.iter().map(Scalar::to_f64).collect(), rational::to_f64(&c.bound).ln()))
            .collect();
        let mut eps = 1.0;
        while eps > 1e-13 {
            if let Some(x) = relax(&rows, self.dim, eps) {
                let exact: Vec<Rational> = x.iter().map(|v| rational::from_f64(*v).unwrap_or_default()).collect();
                if contains_point(self, &exact, Precision::default())? == Membership::In {
                    return Ok(exact);
                }
            }
            eps /= 16.0;
        }
        Err(GeomError::Empty("no interior point found".into()))
    }
}

/// Cyclic projections onto `w·x ≤ c − ε`.
fn relax(rows: &[(Vec<f64>, f64)], dim: usize, eps: f64) -> Option<Vec<f64>> {
    let mut x = vec![0.0; dim];
    for _ in 0..10_000 {
        let mut clean = true;
        for (w, c) in rows {
            let dot: f64 = w.iter().zip(&x).map(|(a, b)| a * b).sum();
            let excess = dot - (c - eps);
            if excess > 0.0 {
                clean = false;
                let n2: f64 = w.iter().map(|a| a * a).sum();
                if n2 == 0.0 {
                    return None;
                }
                for (xi, wi) in x.iter_mut().zip(w) {
                    *xi -= excess * (1.0 + 1e-9) / n2 * wi;
                }
            }
        }
        if clean {
            return Some(x);
        }
    }
    None
}

/// Strict containment; exact boundary hits and undecided signs give `Boundary`.
pub fn contains_point(region: &LogRegion, x: &[Rational], prec: Precision) -> Result<Membership, GeomError> {
    if x.len() != region.dim {
        return Err(GeomError::Dimension { expected: region.dim, got: x.len() });
    }
    let mut acc = Membership::In;
    for c in &region.constraints {
        let m = match c.slack_form(x)?.sign(prec)? {
            Sign::Negative => Membership::In,
            Sign::Positive => Membership::Out,
            Sign::Zero | Sign::Unknown => Membership::Boundary,
        };
        acc = acc.and(m);
        if acc == Membership::Out {
            break;
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lineality {
    /// Basis of `{d : w·d = 0 for every constraint}`.
    Basis(Vec<Vec<Scalar>>),
    Uncertain(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalLine {
    Direction(Vec<i64>),
    Absent,
    Uncertain(String),
}

/// Row entries as `a + b·E` for a single enclosed constant `E`.
struct LinearRows {
    rows: Vec<Vec<(Rational, Rational)>>,
}

fn linear_rows(region: &LogRegion) -> Result<LinearRows, String> {
    let mut base: Option<Interval> = None;
    let mut rows = Vec::new();
    for c in &region.constraints {
        let mut row = Vec::new();
        for w in &c.weights {
            row.push(match w {
                Scalar::Exact(x) => match x.as_rational() {
                    Some(r) => (r.clone(), Rational::zero()),
                    None => return Err("quadratic and enclosed weights mixed".into()),
                },
                Scalar::Enclosed { coef, base: b } => {
                    match &base {
                        Some(prev) if prev != b => return Err("weights involve two enclosed constants".into()),
                        _ => base = Some(b.clone()),
                    }
                    (Rational::zero(), coef.clone())
                }
            });
        }
        rows.push(row);
    }
    Ok(LinearRows { rows })
}

fn is_enclosed(region: &LogRegion) -> bool {
    region.constraints.iter().flat_map(|c| &c.weights).any(|w| matches!(w, Scalar::Enclosed { .. }))
}

pub fn lineality_directions(region: &LogRegion) -> Lineality {
    let n = region.dim;
    let nonzero: Vec<&LogConstraint> = region.constraints.iter().filter(|c| !c.weights.iter().all(Scalar::is_zero)).collect();
    if nonzero.is_empty() {
        return Lineality::Basis(standard_basis(n));
    }
    if is_enclosed(region) {
        return enclosed_lineality(region);
    }
    let rows: Vec<Vec<QuadExt>> =
        nonzero.iter().map(|c| c.weights.iter().map(|w| w.exact().cloned().expect("exact weights")).collect()).collect();
    let null = match nullspace(&rows, n) {
        Ok(v) => v,
        Err(e) => return Lineality::Uncertain(e.to_string()),
    };
    if n == 2 && null.len() == 1 {
        // Keep the natural orientation (w₂, −w₁) of the first constraint.
        let w = &rows[0];
        return Lineality::Basis(vec![vec![Scalar::Exact(w[1].clone()), Scalar::Exact(-&w[0])]]);
    }
    Lineality::Basis(null.into_iter().map(|v| v.into_iter().map(Scalar::Exact).collect()).collect())
}

fn enclosed_lineality(region: &LogRegion) -> Lineality {
    if region.dim != 2 {
        return Lineality::Uncertain("enclosed weights are only resolved in dimension 2".into());
    }
    let lr = match linear_rows(region) {
        Ok(lr) => lr,
        Err(e) => return Lineality::Uncertain(e),
    };
    let first = region.constraints.iter().position(|c| !c.weights.iter().all(Scalar::is_zero)).expect("nonzero row");
    let u = &lr.rows[first];
    for r in &lr.rows {
        // (r₁·u₂ − r₂·u₁) as a polynomial in E; E is taken to be non-algebraic.
        let c0 = &r[0].0 * &u[1].0 - &r[1].0 * &u[0].0;
        let c1 = &r[0].0 * &u[1].1 + &r[0].1 * &u[1].0 - &r[1].0 * &u[0].1 - &r[1].1 * &u[0].0;
        let c2 = &r[0].1 * &u[1].1 - &r[1].1 * &u[0].1;
        if !(c0.is_zero() && c1.is_zero() && c2.is_zero()) {
            return Lineality::Basis(Vec::new());
        }
    }
    let w = &region.constraints[first].weights;
    Lineality::Basis(vec![vec![w[1].clone(), w[0].neg()]])
}

pub fn rational_line_direction(region: &LogRegion) -> RationalLine {
    let n = region.dim;
    let rational_rows: Vec<Vec<QuadExt>> = if is_enclosed(region) {
        match linear_rows(region) {
            Ok(lr) => lr
                .rows
                .iter()
                .flat_map(|r| {
                    [
                        r.iter().map(|(a, _)| QuadExt::rational(a.clone())).collect::<Vec<_>>(),
                        r.iter().map(|(_, b)| QuadExt::rational(b.clone())).collect(),
                    ]
                })
                .collect(),
            Err(e) => return RationalLine::Uncertain(e),
        }
    } else {
        region
            .constraints
            .iter()
            .flat_map(|c| {
                let ex: Vec<&QuadExt> = c.weights.iter().map(|w| w.exact().expect("exact weights")).collect();
                [
                    ex.iter().map(|x| QuadExt::rational(x.p().clone())).collect::<Vec<_>>(),
                    ex.iter().map(|x| QuadExt::rational(x.q().clone())).collect(),
                ]
            })
            .collect()
    };
    let null = match nullspace(&rational_rows, n) {
        Ok(v) => v,
        Err(e) => return RationalLine::Uncertain(e.to_string()),
    };
    match null.first() {
        None => RationalLine::Absent,
        Some(v) => RationalLine::Direction(primitive(v.iter().map(|x| x.p().clone()).collect())),
    }
}

/// Clears denominators, divides by the gcd and makes the first nonzero entry positive.
pub fn primitive(v: Vec<Rational>) -> Vec<i64> {
    let l = rational::common_denominator(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let mut out: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        out = out.into_iter().map(|x| -x).collect();
    }
    out.into_iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect()
}

fn standard_basis(n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| (0..n).map(|j| Scalar::int(i64::from(i == j))).collect()).collect()
}

/// Null space basis by exact row reduction.
pub fn nullspace(rows: &[Vec<QuadExt>], n: usize) -> Result<Vec<Vec<QuadExt>>, ScalarError> {
    let mut m: Vec<Vec<QuadExt>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][col].recip()?;
        for j in 0..n {
            m[r][j] = m[r][j].try_mul(&inv)?;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..n {
                    let t = f.try_mul(&m[r][j])?;
                    m[i][j] = m[i][j].try_sub(&t)?;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![QuadExt::zero(); n];
        v[free] = QuadExt::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[row][free];
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Exact `w·d` for a constraint row and a direction.
pub fn dot_exact(w: &[Scalar], d: &[Scalar]) -> Result<Scalar, ScalarError> {
    let mut acc = Scalar::int(0);
    for (a, b) in w.iter().zip(d) {
        acc = acc.try_add(&a.try_mul(b)?)?;
    }
    Ok(acc)
}
