//! Outward-rounded rational intervals with rigorous `exp`, `ln` and `sqrt`.
//!
//! Precision is measured in significant (relative) bits: every rounding step
//! keeps roughly `bits` leading bits of each endpoint.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{self, bit_exponent, exact_sqrt, pow2, round_down, round_up, Rational};
use super::ScalarError;

/// Arguments of `exp` beyond this magnitude are rejected rather than expanded.
pub const EXP_ARG_LIMIT: i64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, ScalarError> {
        if lo > hi {
            return Err(ScalarError::InvalidInterval);
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn mid_f64(&self) -> f64 {
        rational::to_f64(&self.midpoint())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Definite sign, or `None` when the interval straddles or touches zero non-trivially.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn round_out(&self, bits: u32) -> Self {
        Self { lo: round_down(&self.lo, bits), hi: round_up(&self.hi, bits) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let a = &self.lo * r;
        let b = &self.hi * r;
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().cloned().unwrap_or_default();
        let hi = c.iter().max().cloned().unwrap_or_default();
        Self { lo, hi }
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.contains_zero() {
            return Err(ScalarError::ZeroDivision);
        }
        Ok(Self { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn abs_max(&self) -> Rational {
        std::cmp::max(self.lo.abs(), self.hi.abs())
    }

    /// Enclosure of `√x` for a rational `x ≥ 0`.
    pub fn sqrt(x: &Rational, bits: u32) -> Self {
        assert!(!x.is_negative(), "square root of a negative rational");
        if let Some(r) = exact_sqrt(x) {
            return Self::point(r);
        }
        let e = i64::from(bits) + 2 - bit_exponent(x) / 2;
        let n = rational::floor(&(x * pow2(2 * e)));
        let s = n.sqrt();
        let unit = pow2(-e);
        let lo = Rational::from_integer(s.clone()) * &unit;
        let hi = Rational::from_integer(s + BigInt::one()) * &unit;
        Self { lo, hi }
    }

    pub fn exp(&self, bits: u32) -> Result<Self, ScalarError> {
        let lo = exp_rational(&self.lo, bits)?;
        if self.is_point() {
            return Ok(lo);
        }
        let hi = exp_rational(&self.hi, bits)?;
        Ok(Self { lo: lo.lo, hi: hi.hi })
    }

    pub fn ln(&self, bits: u32) -> Result<Self, ScalarError> {
        if !self.lo.is_positive() {
            return Err(ScalarError::NonPositive("logarithm argument".into()));
        }
        let lo = ln_rational(&self.lo, bits)?;
        if self.is_point() {
            return Ok(lo);
        }
        let hi = ln_rational(&self.hi, bits)?;
        Ok(Self { lo: lo.lo, hi: hi.hi })
    }

    /// `self^e` for a positive base.
    pub fn pow(&self, e: &Interval, bits: u32) -> Result<Self, ScalarError> {
        let w = bits + 16;
        e.mul(&self.ln(w)?).round_out(w).exp(bits)
    }

    /// Compares two intervals; `None` when they overlap.
    pub fn try_cmp(&self, o: &Self) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && o.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", rational::format_rational(&self.lo), rational::format_rational(&self.hi))
    }
}

/// Rigorous enclosure of `e^x`.
pub fn exp_rational(x: &Rational, bits: u32) -> Result<Interval, ScalarError> {
    if x.is_zero() {
        return Ok(Interval::point(Rational::one()));
    }
    if x.abs() > Rational::from_integer(BigInt::from(EXP_ARG_LIMIT)) {
        return Err(ScalarError::OutOfRange("exponential argument".into()));
    }
    // Reduce to |y| ≤ 1/2, then square back up.
    let s = (bit_exponent(&x.abs()) + 2).max(0);
    let y = x * pow2(-s);
    let w = bits + s as u32 + 16;
    let tiny = pow2(-(i64::from(w) + 4));
    let yi = Interval::point(y.clone());
    let mut term = Interval::point(Rational::one());
    let mut sum = term.clone();
    let mut k = 1i64;
    loop {
        term = term.mul(&yi).scale(&rational::rat(1, k)).round_out(w);
        sum = sum.add(&term).round_out(w);
        if term.abs_max() < tiny && k >= 2 {
            break;
        }
        k += 1;
    }
    // Tail beyond term k is at most 2·|term_k|·|y|/(k+1).
    let tail = term.abs_max() * y.abs() * rational::rat(2, k + 1);
    let mut acc = Interval { lo: round_down(&(&sum.lo - &tail), w), hi: round_up(&(&sum.hi + &tail), w) };
    for _ in 0..s {
        acc = acc.mul(&acc).round_out(w);
    }
    Ok(acc.round_out(bits))
}

/// Rigorous enclosure of `ln x` for `x > 0`.
pub fn ln_rational(x: &Rational, bits: u32) -> Result<Interval, ScalarError> {
    if !x.is_positive() {
        return Err(ScalarError::NonPositive("logarithm argument".into()));
    }
    if x.is_one() {
        return Ok(Interval::point(Rational::zero()));
    }
    let one = Rational::one();
    let two = rational::int(2);
    let mut k = bit_exponent(x);
    let mut m = x * pow2(-k);
    while m < one {
        k -= 1;
        m *= &two;
    }
    while m >= two {
        k += 1;
        m /= &two;
    }
    let w = bits + 16 + (64 - k.unsigned_abs().leading_zeros());
    let t = (&m - &one) / (&m + &one);
    let mut acc = atanh_series(&t, w).scale(&two);
    if k != 0 {
        acc = acc.add(&ln2(w).scale(&rational::int(k)));
    }
    Ok(acc.round_out(bits))
}

/// `ln 2 = 2·atanh(1/3)`, cached per working precision.
fn ln2(w: u32) -> Interval {
    thread_local! {
        static CACHE: std::cell::RefCell<std::collections::HashMap<u32, Interval>> = Default::default();
    }
    CACHE.with(|c| {
        c.borrow_mut()
            .entry(w)
            .or_insert_with(|| atanh_series(&rational::rat(1, 3), w).scale(&rational::int(2)))
            .clone()
    })
}

/// `atanh(t)` for `0 ≤ t ≤ 1/3`, summed in `w`-bit fixed point.
///
/// The lower sum truncates every step and the upper sum rounds every step up,
/// so both are rigorous; after the last term the tail is at most
/// `t^{2J+3}/(1−t²) ≤ P_J·t²·9/8 ≤ P_J/8`.
fn atanh_series(t: &Rational, w: u32) -> Interval {
    if t.is_zero() {
        return Interval::point(Rational::zero());
    }
    let scale = BigInt::one() << w;
    let num = t.numer() * &scale;
    let t_lo = num.div_floor_(t.denom());
    let t_hi = num.div_ceil_(t.denom());
    let lo = fixed_atanh(&t_lo, w, false);
    let hi = fixed_atanh(&t_hi, w, true);
    let s = Rational::from_integer(scale);
    Interval { lo: Rational::from_integer(lo) / &s, hi: Rational::from_integer(hi) / s }
}

trait DivRound {
    fn div_floor_(&self, d: &BigInt) -> BigInt;
    fn div_ceil_(&self, d: &BigInt) -> BigInt;
}

impl DivRound for BigInt {
    fn div_floor_(&self, d: &BigInt) -> BigInt {
        num_integer::Integer::div_floor(self, d)
    }

    fn div_ceil_(&self, d: &BigInt) -> BigInt {
        -num_integer::Integer::div_floor(&-self, d)
    }
}

fn fixed_atanh(t: &BigInt, w: u32, up: bool) -> BigInt {
    let shift = |x: BigInt| -> BigInt {
        if up {
            -((-x) >> w)
        } else {
            x >> w
        }
    };
    let div = |x: &BigInt, d: i64| -> BigInt {
        let d = BigInt::from(d);
        if up {
            x.div_ceil_(&d)
        } else {
            x.div_floor_(&d)
        }
    };
    let t2 = shift(t * t);
    let mut power = t.clone();
    let mut sum = t.clone();
    let mut j = 1i64;
    while power > BigInt::one() {
        power = shift(&power * &t2);
        sum += div(&power, 2 * j + 1);
        j += 1;
    }
    if up {
        sum += (&power >> 3u32) + 1;
    }
    sum
}
