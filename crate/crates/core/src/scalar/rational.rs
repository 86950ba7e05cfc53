use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ScalarError;

/// Exact rational number; always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Longest accepted textual rational, to keep untrusted input from allocating without bound.
const MAX_RATIONAL_LEN: usize = 4096;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"`, `"a/b"` or a plain decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Parse(format!("not a rational: {s:?}"));
    if s.is_empty() || s.len() > MAX_RATIONAL_LEN {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_int(n).ok_or_else(bad)?;
        let d = parse_int(d).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(ScalarError::ZeroDivision);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let w = match whole {
            "" | "-" | "+" => BigInt::zero(),
            _ => parse_int(whole).ok_or_else(bad)?,
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = w.abs() * &scale + f;
        let n = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(n, scale));
    }
    parse_int(s).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form: `"n"` or `"n/d"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Extreme exponents: scale both parts down before dividing.
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        let shift = (nb - db).clamp(-2000, 2000);
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        if shift > 1023 {
            sign * f64::INFINITY
        } else if shift < -1074 {
            0.0
        } else {
            let scaled = r.abs() / pow2(shift);
            sign * scaled.to_f64().unwrap_or(1.0) * 2f64.powi(shift as i32)
        }
    })
}

/// Exact conversion of a finite double.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// `2^e` as a rational, for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Approximate `log2 |r|` from bit lengths; off by at most one.
pub fn bit_exponent(r: &Rational) -> i64 {
    r.numer().bits() as i64 - r.denom().bits() as i64
}

/// Largest `2^-bits`-relative grid point not above `x`.
pub fn round_down(x: &Rational, bits: u32) -> Rational {
    round_with(x, bits, floor)
}

/// Smallest `2^-bits`-relative grid point not below `x`.
pub fn round_up(x: &Rational, bits: u32) -> Rational {
    round_with(x, bits, ceil)
}

fn round_with(x: &Rational, bits: u32, f: fn(&Rational) -> BigInt) -> Rational {
    if x.is_zero() || x.denom().bits() as i64 <= i64::from(bits) && x.numer().bits() <= u64::from(bits) {
        return x.clone();
    }
    let shift = i64::from(bits) - bit_exponent(x);
    let scale = pow2(shift);
    Rational::from_integer(f(&(x * &scale))) / scale
}

/// Exact square root when `r` is the square of a rational.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

pub fn is_perfect_square_int(n: &BigInt) -> bool {
    n.sign() != BigSign::Minus && {
        let s = n.sqrt();
        &s * &s == *n
    }
}

/// Squarefree test by trial division; `|n| ≤ 10^12` keeps this cheap.
pub fn is_squarefree(n: i64) -> bool {
    let mut m = n.unsigned_abs();
    if m == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

/// `base^e` for an integer exponent of either sign; `None` on `0^negative`.
pub fn pow_int(base: &Rational, e: i64) -> Option<Rational> {
    if e < 0 && base.is_zero() {
        return None;
    }
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    Some(if e < 0 { p.recip() } else { p })
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
