//! Continued fractions of quadratic irrationals and `GL₂(ℤ)` equivalence.
//!
//! Two irrationals are related by an integral Möbius map of determinant ±1
//! iff their continued fractions share a tail. For quadratic irrationals the
//! tail is periodic, so comparing the cycles of complete quotients decides it.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::quad::QuadExt;
use super::ScalarError;

/// Iteration cap; periods of the radicands accepted here are far shorter.
const MAX_STEPS: usize = 200_000;

/// Partial quotients `[a₀; a₁, …]` up to the start of the period, then one period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicCf {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
    cycle: Vec<QuadExt>,
}

pub fn periodic_cf(x: &QuadExt) -> Result<PeriodicCf, ScalarError> {
    if x.is_rational() {
        return Err(ScalarError::RationalGamma);
    }
    let mut seen: HashMap<QuadExt, usize> = HashMap::new();
    let mut states: Vec<QuadExt> = Vec::new();
    let mut quotients: Vec<BigInt> = Vec::new();
    let mut cur = x.clone();
    for i in 0..MAX_STEPS {
        if let Some(&start) = seen.get(&cur) {
            return Ok(PeriodicCf {
                preperiod: quotients[..start].to_vec(),
                period: quotients[start..].to_vec(),
                cycle: states[start..].to_vec(),
            });
        }
        seen.insert(cur.clone(), i);
        let a = cur.floor();
        let frac = cur.fract();
        states.push(cur);
        quotients.push(a);
        cur = frac.recip()?;
    }
    Err(ScalarError::OutOfRange("continued fraction period".into()))
}

/// Whether `y = (a·x + b)/(c·x + d)` for some integer matrix with `ad − bc = ±1`.
pub fn gl2z_equivalent(x: &QuadExt, y: &QuadExt) -> Result<bool, ScalarError> {
    if x.d() != y.d() {
        return Ok(false);
    }
    let cx = periodic_cf(x)?;
    let cy = periodic_cf(y)?;
    Ok(cx.cycle.iter().any(|s| cy.cycle.contains(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::int;

    fn q(d: i64, p: i64, qq: i64) -> QuadExt {
        QuadExt::new(d, int(p), int(qq)).unwrap()
    }

    #[test]
    fn sqrt2_expansion() {
        let cf = periodic_cf(&q(2, 0, 1)).unwrap();
        assert_eq!(cf.preperiod, vec![BigInt::from(1)]);
        assert_eq!(cf.period, vec![BigInt::from(2)]);
        let cf = periodic_cf(&q(7, 0, 1)).unwrap();
        let p: Vec<i64> = cf.period.iter().map(|b| b.try_into().unwrap()).collect();
        assert_eq!(p, vec![1, 1, 1, 4]);
    }

    #[test]
    fn equivalences() {
        let s2 = q(2, 0, 1);
        assert!(gl2z_equivalent(&s2, &q(2, 5, 1)).unwrap());
        assert!(gl2z_equivalent(&s2, &s2.recip().unwrap()).unwrap());
        assert!(gl2z_equivalent(&s2, &(-&s2)).unwrap());
        // (3√2 + 1)/(2√2 + 1) is a unimodular image of √2.
        let num = &s2.scale(&int(3)) + &QuadExt::from_int(1);
        let den = &s2.scale(&int(2)) + &QuadExt::from_int(1);
        assert!(gl2z_equivalent(&s2, &(&num / &den)).unwrap());
        // 2√2 has period (1,4), not equivalent to √2.
        assert!(!gl2z_equivalent(&s2, &q(2, 0, 2)).unwrap());
        assert!(!gl2z_equivalent(&s2, &q(3, 0, 1)).unwrap());
    }
}
