use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, Zero};

use super::interval::Interval;
use super::rational::{self, format_rational, Rational};
use super::ScalarError;

/// Largest accepted radicand.
pub const MAX_RADICAND: i64 = 1_000_000_000_000;

/// `p + q·√d` with `d` squarefree and greater than one.
///
/// Rational values (`q = 0`) carry no field and mix freely with any `d`;
/// two irrational operands must share `d`. The field marker of a rational
/// value is normalized to `0`.
#[derive(Clone, Debug)]
pub struct QuadExt {
    d: i64,
    p: Rational,
    q: Rational,
}

impl QuadExt {
    pub fn new(d: i64, p: Rational, q: Rational) -> Result<Self, ScalarError> {
        if !(2..=MAX_RADICAND).contains(&d) || !rational::is_squarefree(d) {
            return Err(ScalarError::BadRadicand(d));
        }
        Ok(Self::raw(d, p, q))
    }

    pub(crate) fn raw(d: i64, p: Rational, q: Rational) -> Self {
        let d = if q.is_zero() { 0 } else { d };
        Self { d, p, q }
    }

    pub fn rational(p: Rational) -> Self {
        Self::raw(0, p, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(rational::int(n))
    }

    /// `√d` itself.
    pub fn sqrt(d: i64) -> Result<Self, ScalarError> {
        Self::new(d, Rational::zero(), Rational::one())
    }

    /// The radicand, or `None` for a rational value.
    pub fn d(&self) -> Option<i64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.p)
    }

    /// Common radicand of two operands, `0` when both are rational.
    pub fn field(&self, other: &Self) -> Result<i64, ScalarError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(ScalarError::IncompatibleField(a, b)),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ScalarError> {
        let d = self.field(o)?;
        Ok(Self::raw(d, &self.p + &o.p, &self.q + &o.q))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ScalarError> {
        let d = self.field(o)?;
        Ok(Self::raw(d, &self.p - &o.p, &self.q - &o.q))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        let d = self.field(o)?;
        let dd = Rational::from_integer(BigInt::from(d));
        let p = &self.p * &o.p + &self.q * &o.q * dd;
        let q = &self.p * &o.q + &self.q * &o.p;
        Ok(Self::raw(d, p, q))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, ScalarError> {
        self.try_mul(&o.recip()?)
    }

    /// `p² − q²d`, nonzero for nonzero values since `d` is not a square.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * Rational::from_integer(BigInt::from(self.d))
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroDivision);
        }
        let n = self.norm();
        Ok(Self::raw(self.d, &self.p / &n, -&self.q / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::raw(self.d, &self.p * r, &self.q * r)
    }

    pub fn conjugate(&self) -> Self {
        Self::raw(self.d, self.p.clone(), -&self.q)
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sp = self.p.cmp(&Rational::zero());
        let sq = self.q.cmp(&Rational::zero());
        if sq == Ordering::Equal {
            return sp;
        }
        if sp == Ordering::Equal || sp == sq {
            return sq;
        }
        // Opposite signs: compare p² with q²d.
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * Rational::from_integer(BigInt::from(self.d));
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn try_cmp(&self, o: &Self) -> Result<Ordering, ScalarError> {
        Ok(self.try_sub(o)?.signum())
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return rational::floor(&self.p);
        }
        let mut bits = 64;
        loop {
            let iv = self.to_interval(bits);
            let lo = rational::floor(iv.lo());
            if lo == rational::floor(iv.hi()) {
                return lo;
            }
            bits *= 2;
        }
    }

    /// `x − ⌊x⌋`.
    pub fn fract(&self) -> Self {
        let f = Rational::from_integer(self.floor());
        Self::raw(self.d, &self.p - f, self.q.clone())
    }

    /// `√d` enclosed to `bits` relative bits.
    pub fn to_interval(&self, bits: u32) -> Interval {
        if self.is_rational() {
            return Interval::point(self.p.clone());
        }
        let root = Interval::sqrt(&Rational::from_integer(BigInt::from(self.d)), bits + 8);
        Interval::point(self.p.clone()).add(&root.scale(&self.q)).round_out(bits)
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.p) + rational::to_f64(&self.q) * (self.d as f64).sqrt()
    }

    /// Short form for vectors: `√2`, `-√2`, `3`, `1 + 2·√5`.
    pub fn compact(&self) -> String {
        if self.is_rational() {
            return format_rational(&self.p);
        }
        let q = if self.q.is_one() {
            String::new()
        } else if self.q == -Rational::one() {
            "-".into()
        } else {
            format!("{}·", format_rational(&self.q))
        };
        let root = format!("{q}√{}", self.d);
        if self.p.is_zero() {
            root
        } else {
            format!("{} + {root}", format_rational(&self.p))
        }
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.q == o.q && (self.q.is_zero() || self.d == o.d)
    }
}

impl Eq for QuadExt {}

impl std::hash::Hash for QuadExt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.d.hash(state);
        self.p.hash(state);
        self.q.hash(state);
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.p));
        }
        let (op, q) = if self.q.is_negative() { ("-", -&self.q) } else { ("+", self.q.clone()) };
        write!(f, "{} {op} {}·√{}", format_rational(&self.p), format_rational(&q), self.d)
    }
}

// Operator forms panic on a field mismatch; use the `try_` forms on untrusted data.
macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt {
                self.$try(&o).expect("quadratic field mismatch")
            }
        }
        impl<'a> $tr<&'a QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, o: &QuadExt) -> QuadExt {
                self.$try(o).expect("quadratic field mismatch")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        Self::raw(self.d, -self.p, -self.q)
    }
}

impl<'a> Neg for &'a QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::raw(self.d, -&self.p, -&self.q)
    }
}

impl std::ops::Rem for QuadExt {
    type Output = QuadExt;
    fn rem(self, _: QuadExt) -> QuadExt {
        QuadExt::from_int(0)
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Num for QuadExt {
    type FromStrRadixErr = ScalarError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, ScalarError> {
        if radix != 10 {
            return Err(ScalarError::Parse("only base 10".into()));
        }
        rational::parse_rational(s).map(Self::rational)
    }
}

/// Galois conjugate `p − q√d`.
pub fn galois_conjugate(x: &QuadExt) -> QuadExt {
    x.conjugate()
}

/// Solves `x = k + γ·l` over the integers.
pub fn lattice_decompose(x: &QuadExt, gamma: &QuadExt) -> Result<Option<(BigInt, BigInt)>, ScalarError> {
    if gamma.is_rational() {
        return Err(ScalarError::RationalGamma);
    }
    x.field(gamma)?;
    let l = &x.q / &gamma.q;
    let k = &x.p - &gamma.p * &l;
    Ok((l.is_integer() && k.is_integer()).then(|| (k.to_integer(), l.to_integer())))
}
