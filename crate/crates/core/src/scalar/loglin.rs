//! Signs of linear forms in logarithms, `Σ cᵢ·log xᵢ + c₀`.
//!
//! Exact zeros are recognised when every coefficient is exact: a form with
//! coefficients in `ℚ(√d)` vanishes iff its rational and `√d` parts vanish
//! separately, and each part vanishes iff the matching product of powers is 1.
//! Everything else is settled by interval refinement.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gamma::GammaSpec;
use super::interval::Interval;
use super::quad::QuadExt;
use super::rational::{self, Rational};
use super::value::Scalar;
use super::ScalarError;

/// Largest integer exponent used by the exact product test.
const MAX_EXACT_EXPONENT: u64 = 4096;
/// Bit budget for intermediate products in the exact test.
const MAX_EXACT_BITS: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
    Unknown,
}

impl Sign {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriCmp {
    Less,
    Greater,
    Uncertain,
}

/// Interval precision schedule: start at `start` bits, double up to `max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start: u32,
    pub max: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Self { start: 64, max: 512 }
    }
}

impl Precision {
    pub fn with_start(start: u32) -> Self {
        let start = start.clamp(16, 4096);
        Self { start, max: start.max(512) }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogLinear {
    logs: Vec<(Scalar, Rational)>,
    offsets: Vec<Scalar>,
}

impl LogLinear {
    pub fn new() -> Self {
        Self::default()
    }

    /// `c·log(x)`.
    pub fn log(coef: Scalar, x: Rational) -> Result<Self, ScalarError> {
        Self::new().with_log(coef, x)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new().with_offset(c)
    }

    pub fn with_log(mut self, coef: Scalar, x: Rational) -> Result<Self, ScalarError> {
        if !x.is_positive() {
            return Err(ScalarError::NonPositive("logarithm argument".into()));
        }
        if !coef.is_zero() && !x.is_one() {
            self.logs.push((coef, x));
        }
        Ok(self)
    }

    pub fn with_offset(mut self, c: Scalar) -> Self {
        if !c.is_zero() {
            self.offsets.push(c);
        }
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.logs.extend(o.logs.iter().cloned());
        r.offsets.extend(o.offsets.iter().cloned());
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            logs: self.logs.iter().map(|(c, x)| (c.scale(r), x.clone())).filter(|(c, _)| !c.is_zero()).collect(),
            offsets: self.offsets.iter().map(|c| c.scale(r)).filter(|c| !c.is_zero()).collect(),
        }
    }

    /// Multiplies every coefficient by `s`; fails when a product is not representable.
    pub fn scaled(&self, s: &Scalar) -> Result<Self, ScalarError> {
        let logs = self.logs.iter().map(|(c, x)| Ok((c.try_mul(s)?, x.clone()))).collect::<Result<Vec<_>, ScalarError>>()?;
        let offsets = self.offsets.iter().map(|c| c.try_mul(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { logs, offsets })
    }

    pub fn is_trivially_zero(&self) -> bool {
        self.logs.is_empty() && self.offsets.is_empty()
    }

    pub fn enclose(&self, bits: u32) -> Result<Interval, ScalarError> {
        let w = bits + 8;
        let mut acc = Interval::point(Rational::zero());
        for (c, x) in &self.logs {
            let l = super::interval::ln_rational(x, w)?;
            acc = acc.add(&c.to_interval(w).mul(&l).round_out(w));
        }
        for c in &self.offsets {
            acc = acc.add(&c.to_interval(w));
        }
        Ok(acc.round_out(bits))
    }

    pub fn to_f64(&self) -> f64 {
        let l: f64 = self.logs.iter().map(|(c, x)| c.to_f64() * ln_f64(x)).sum();
        l + self.offsets.iter().map(Scalar::to_f64).sum::<f64>()
    }

    pub fn sign(&self, prec: Precision) -> Result<Sign, ScalarError> {
        let n = self.normalize()?;
        if n.is_exact() {
            if n.logs.is_empty() {
                let c = n.exact_offset.exact().cloned().unwrap_or_else(QuadExt::zero);
                return Ok(Sign::from_ordering(c.signum()));
            }
            if n.exact_offset.is_zero() && exact_zero(&n.logs) == Some(true) {
                return Ok(Sign::Zero);
            }
        } else if n.logs.is_empty() && n.enclosed_offsets.len() == 1 && n.exact_offset.is_zero() {
            if let Some(s) = n.enclosed_offsets[0].sign() {
                return Ok(Sign::from_ordering(s));
            }
        }
        let form = n.into_form();
        let mut bits = prec.start.max(16);
        loop {
            let iv = form.enclose(bits)?;
            match iv.sign() {
                Some(Ordering::Less) => return Ok(Sign::Negative),
                Some(Ordering::Greater) => return Ok(Sign::Positive),
                _ => {}
            }
            if bits >= prec.max {
                return Ok(Sign::Unknown);
            }
            bits = (bits * 2).min(prec.max);
        }
    }

    fn normalize(&self) -> Result<Normal, ScalarError> {
        let mut logs: Vec<(Scalar, Rational)> = Vec::new();
        for (c, x) in &self.logs {
            match logs.iter_mut().find(|(c2, x2)| x2 == x && c2.try_add(c).is_ok()) {
                Some(slot) => slot.0 = slot.0.try_add(c)?,
                None => logs.push((c.clone(), x.clone())),
            }
        }
        logs.retain(|(c, x)| !c.is_zero() && !x.is_one());
        collapse_enclosed(&mut logs);
        let mut exact_offset = Scalar::int(0);
        let mut enclosed_offsets: Vec<Scalar> = Vec::new();
        for c in &self.offsets {
            match c {
                Scalar::Exact(_) => exact_offset = exact_offset.try_add(c)?,
                Scalar::Enclosed { .. } => match enclosed_offsets.iter_mut().find(|e| e.try_add(c).is_ok()) {
                    Some(slot) => *slot = slot.try_add(c)?,
                    None => enclosed_offsets.push(c.clone()),
                },
            }
        }
        enclosed_offsets.retain(|c| !c.is_zero());
        Ok(Normal { logs, exact_offset, enclosed_offsets })
    }
}

struct Normal {
    logs: Vec<(Scalar, Rational)>,
    exact_offset: Scalar,
    enclosed_offsets: Vec<Scalar>,
}

impl Normal {
    fn is_exact(&self) -> bool {
        self.enclosed_offsets.is_empty() && self.logs.iter().all(|(c, _)| c.exact().is_some())
    }

    fn into_form(self) -> LogLinear {
        let mut offsets = self.enclosed_offsets;
        if !self.exact_offset.is_zero() {
            offsets.push(self.exact_offset);
        }
        LogLinear { logs: self.logs, offsets }
    }
}

fn ln_f64(x: &Rational) -> f64 {
    let v = rational::to_f64(x);
    if v.is_finite() && v > 0.0 {
        v.ln()
    } else {
        // Split off a power of two for values beyond double range.
        let e = rational::bit_exponent(x);
        rational::to_f64(&(x * rational::pow2(-e))).ln() + e as f64 * std::f64::consts::LN_2
    }
}

/// Rewrites each group of enclosed-coefficient logs sharing a base as one
/// term `(c/L)·log Π xᵢ^{L·cᵢ/c}`, so exact cancellations inside a group vanish.
fn collapse_enclosed(logs: &mut Vec<(Scalar, Rational)>) {
    let mut bases: Vec<Interval> = Vec::new();
    for (c, _) in logs.iter() {
        if let Scalar::Enclosed { base, .. } = c {
            if !bases.contains(base) {
                bases.push(base.clone());
            }
        }
    }
    for base in bases {
        let (group, rest): (Vec<_>, Vec<_>) = logs
            .drain(..)
            .partition(|(c, _)| matches!(c, Scalar::Enclosed { base: b, .. } if *b == base));
        *logs = rest;
        if group.len() < 2 {
            logs.extend(group);
            continue;
        }
        let parts: Vec<(Rational, &Rational)> = group
            .iter()
            .map(|(c, x)| match c {
                Scalar::Enclosed { coef, .. } => (coef.clone(), x),
                Scalar::Exact(_) => unreachable!("partitioned on enclosed"),
            })
            .collect();
        match power_product(&parts) {
            Some((_, x)) if x.is_one() => {}
            Some((inv_l, x)) => logs.push((Scalar::enclosed(inv_l, base.clone()), x)),
            None => logs.extend(group.iter().cloned()),
        }
    }
}

/// `Σ eᵢ log xᵢ = (1/L)·log X`; returns `(1/L, X)` within the exact budget.
fn power_product(parts: &[(Rational, &Rational)]) -> Option<(Rational, Rational)> {
    let l = rational::common_denominator(parts.iter().map(|(e, _)| e));
    let mut x = Rational::one();
    let mut budget = 0u64;
    for (e, base) in parts {
        let n = (e * Rational::from_integer(l.clone())).to_integer();
        let k = n.abs().to_u64().filter(|k| *k <= MAX_EXACT_EXPONENT)?;
        budget += k * (base.numer().bits() + base.denom().bits());
        if budget > MAX_EXACT_BITS {
            return None;
        }
        let p = num_traits::pow((*base).clone(), k as usize);
        x = if n.is_negative() { x / p } else { x * p };
    }
    Some((Rational::new(BigInt::one(), l), x))
}

/// `Some(true)` iff `Σ cᵢ log xᵢ = 0` exactly; `None` when the exponents are too large to test.
fn exact_zero(logs: &[(Scalar, Rational)]) -> Option<bool> {
    let coefs: Vec<&QuadExt> = logs.iter().map(|(c, _)| c.exact()).collect::<Option<_>>()?;
    let rational_parts: Vec<(Rational, &Rational)> = coefs.iter().zip(logs).map(|(c, (_, x))| (c.p().clone(), x)).collect();
    let root_parts: Vec<(Rational, &Rational)> = coefs.iter().zip(logs).map(|(c, (_, x))| (c.q().clone(), x)).collect();
    Some(product_is_one(&rational_parts)? && product_is_one(&root_parts)?)
}

/// Decides `Π xᵢ^{eᵢ} = 1` for rational exponents.
fn product_is_one(parts: &[(Rational, &Rational)]) -> Option<bool> {
    power_product(parts).map(|(_, x)| x.is_one())
}

/// Compares `base^γ` with `threshold`.
pub fn log_compare(base: &Rational, gamma: &GammaSpec, threshold: &Rational, prec: Precision) -> Result<TriCmp, ScalarError> {
    if !base.is_positive() || !threshold.is_positive() {
        return Err(ScalarError::NonPositive("log_compare input".into()));
    }
    let form = LogLinear::log(gamma.as_scalar(), base.clone())?.with_log(Scalar::int(-1), threshold.clone())?;
    Ok(match form.sign(prec)? {
        Sign::Negative => TriCmp::Less,
        Sign::Positive => TriCmp::Greater,
        Sign::Zero | Sign::Unknown => TriCmp::Uncertain,
    })
}
