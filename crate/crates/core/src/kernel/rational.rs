//! Arbitrary-precision rationals and small helpers around them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Always renders as `num/den`, even for integers.
pub fn fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale both to keep the ratio representable.
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Exact rational value of a finite double.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Simplest rational strictly inside `(lo, hi)`, by Stern–Brocot descent.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !lo.is_negative() {
        simplest_positive(lo, hi)
    } else {
        -simplest_positive(&-hi, &-lo)
    }
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    // continued-fraction walk on the open interval (lo, hi), 0 <= lo < hi
    let fl = lo.floor();
    if &(fl.clone() + Rational::one()) < hi {
        return fl + Rational::one();
    }
    if lo == &fl {
        // lo integer and hi <= lo + 1
        let frac_hi = hi - &fl;
        return fl + Rational::one() / simplest_above(&(Rational::one() / frac_hi));
    }
    let a = fl.clone();
    let lo_f = lo - &a;
    let hi_f = hi - &a;
    let inner = simplest_positive(&(Rational::one() / hi_f), &(Rational::one() / lo_f));
    a + Rational::one() / inner
}

fn simplest_above(x: &Rational) -> Rational {
    // smallest-denominator rational strictly greater than x (x > 0): floor(x) + 1
    x.floor() + Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("-2/5"), Some(rat(-2, 5)));
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fraction_string(&int(2)), "2/1");
    }

    #[test]
    fn simplest_rational_in_interval() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 2)), int(0));
        assert_eq!(simplest_between(&rat(3, 2), &rat(7, 2)), int(2));
        assert_eq!(simplest_between(&rat(-7, 2), &rat(-3, 2)), int(-2));
        let s = simplest_between(&rat(141, 100), &rat(142, 100));
        assert!(s > rat(141, 100) && s < rat(142, 100));
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = Rational::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400));
        assert!((to_f64(&big) - 3.0).abs() < 1e-12);
    }
}
