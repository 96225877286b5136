//! Real algebraic numbers: a square-free defining polynomial plus an
//! isolating interval with rational endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use super::upoly::{count_roots_closed, count_roots_half_open, UPoly};
use crate::error::{Error, Result};

/// A real root of `poly` located in `[lo, hi]`.
///
/// Either `lo == hi` (a rational root), or `poly(lo)` and `poly(hi)` are
/// nonzero with opposite signs and no other root of `poly` lies in the
/// closed interval.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    poly: UPoly<Rational>,
    lo: Rational,
    hi: Rational,
}

/// One distinct real root together with its multiplicity in the input.
#[derive(Clone, Debug)]
pub struct RealRoot {
    pub value: AlgebraicNumber,
    pub multiplicity: usize,
}

impl AlgebraicNumber {
    pub fn from_rational(q: Rational) -> Self {
        let poly = UPoly::new(vec![-q.clone(), Rational::one()]);
        AlgebraicNumber { poly, lo: q.clone(), hi: q }
    }

    /// Trusted constructor: `poly` square-free and `[lo, hi]` isolating.
    pub(crate) fn new_unchecked(poly: UPoly<Rational>, lo: Rational, hi: Rational) -> Self {
        if lo == hi {
            return Self::from_rational(lo);
        }
        let mut a = AlgebraicNumber { poly: poly.primitive(), lo, hi };
        a.normalize_rational();
        a
    }

    /// Validating constructor.
    pub fn new(poly: UPoly<Rational>, lo: Rational, hi: Rational) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sf = poly.square_free_part();
        if lo > hi {
            return Err(Error::InvalidInterval);
        }
        let seq = sf.sturm_sequence();
        if count_roots_closed(&seq, &lo, &hi) != 1 {
            return Err(Error::InvalidInterval);
        }
        if sf.eval(&lo).is_zero() {
            return Ok(Self::from_rational(lo));
        }
        if sf.eval(&hi).is_zero() {
            return Ok(Self::from_rational(hi));
        }
        Ok(Self::new_unchecked(sf, lo, hi))
    }

    /// Degree-1 defining polynomials collapse to the rational they define.
    fn normalize_rational(&mut self) {
        if self.poly.degree() == Some(1) {
            let q = -self.poly.coeff(0) / self.poly.coeff(1);
            self.lo = q.clone();
            self.hi = q;
        }
    }

    pub fn defining_poly(&self) -> &UPoly<Rational> {
        &self.poly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Halves the isolating interval.
    pub fn bisect(&mut self) {
        if self.is_rational() {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        let fm = self.poly.eval(&mid);
        if fm.is_zero() {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        let flo = self.poly.eval(&self.lo);
        if flo.is_positive() == fm.is_positive() {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Refines until the interval is no wider than `width`.
    pub fn refine_to(&mut self, width: &Rational) {
        while !self.is_rational() && &self.width() > width {
            self.bisect();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut a = self.clone();
        a.refine_to(&Rational::new(1.into(), num_bigint::BigInt::from(2).pow(60)));
        rational::to_f64(&((&a.lo + &a.hi) / Rational::from_integer(2.into())))
    }

    /// Sign of the number.
    pub fn signum(&self) -> i32 {
        self.cmp_rational(&Rational::zero()) as i32
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if self.is_rational() {
            return self.lo.cmp(q);
        }
        if q < &self.lo {
            return Ordering::Greater;
        }
        if q > &self.hi {
            return Ordering::Less;
        }
        if self.poly.eval(q).is_zero() {
            return Ordering::Equal;
        }
        let mut a = self.clone();
        loop {
            a.bisect();
            if a.is_rational() {
                return a.lo.cmp(q);
            }
            if q < &a.lo {
                return Ordering::Greater;
            }
            if q > &a.hi {
                return Ordering::Less;
            }
        }
    }

    /// Exact equality: a shared root of the defining polynomials inside
    /// both intervals.
    pub fn equals(&self, other: &Self) -> bool {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => return a == b,
            (Some(a), None) => return other.cmp_rational(a) == Ordering::Equal,
            (None, Some(b)) => return self.cmp_rational(b) == Ordering::Equal,
            _ => {}
        }
        let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
        if lo > hi {
            return false;
        }
        let g = self.poly.gcd(&other.poly);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        count_roots_closed(&g.sturm_sequence(), lo, hi) > 0
    }

    /// Exact total order.
    pub fn compare(&self, other: &Self) -> Ordering {
        if self.equals(other) {
            return Ordering::Equal;
        }
        if let Some(q) = other.as_rational() {
            return self.cmp_rational(q);
        }
        if let Some(q) = self.as_rational() {
            return other.cmp_rational(q).reverse();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            a.bisect();
            b.bisect();
            if let Some(q) = b.as_rational() {
                return a.cmp_rational(&q.clone());
            }
            if let Some(q) = a.as_rational() {
                return b.cmp_rational(&q.clone()).reverse();
            }
        }
    }

    /// Decimal value with 12 digits after the point, marked approximate.
    pub fn approx_string(&self) -> String {
        format!("{:.12} (approx)", self.to_f64())
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for AlgebraicNumber {}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => {
                write!(f, "root of {} in [{}, {}]", super::upoly::render_univariate(&self.poly, "s"), self.lo, self.hi)
            }
        }
    }
}

/// All distinct real roots of `f`, ascending, with multiplicities.
pub fn isolate_real_roots(f: &UPoly<Rational>) -> Result<Vec<RealRoot>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let parts = f.square_free_decomposition();
    let sqf = f.square_free_part();
    let values = isolate_square_free(&sqf);
    let mut out = Vec::with_capacity(values.len());
    for v in values {
        let (lo, hi) = (v.lo.clone(), v.hi.clone());
        let multiplicity = parts
            .iter()
            .position(|g| g.degree().unwrap_or(0) > 0 && count_roots_closed(&g.sturm_sequence(), &lo, &hi) > 0)
            .map(|i| i + 1)
            .expect("every root of the square-free part belongs to one factor");
        out.push(RealRoot { value: v, multiplicity });
    }
    Ok(out)
}

/// Distinct real roots of a square-free polynomial, ascending.
pub fn isolate_square_free(sqf: &UPoly<Rational>) -> Vec<AlgebraicNumber> {
    if sqf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sqf = sqf.primitive();
    let seq = sqf.sturm_sequence();
    let b = sqf.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    // depth-first, left half last pushed so it is processed first
    while let Some((a, b)) = stack.pop() {
        let n = count_roots_half_open(&seq, &a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(isolate_single(&sqf, &seq, a, b));
            continue;
        }
        let mid = (&a + &b) / Rational::from_integer(2.into());
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out
}

/// Exactly one root in `(a, b]`; shrink until the endpoints are not roots.
fn isolate_single(f: &UPoly<Rational>, seq: &[UPoly<Rational>], mut a: Rational, mut b: Rational) -> AlgebraicNumber {
    loop {
        if f.eval(&b).is_zero() {
            return AlgebraicNumber::from_rational(b);
        }
        if !f.eval(&a).is_zero() {
            return rational_or_interval(f, a, b);
        }
        let mid = (&a + &b) / Rational::from_integer(2.into());
        if count_roots_half_open(seq, &a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
}

/// A rational root `p/q` of a primitive integer polynomial has `q | lc`.
/// Rationals with denominator at most `|lc|` are `1/lc^2` apart, so once the
/// interval is narrower than that the simplest rational inside it is the
/// only candidate.
fn rational_or_interval(f: &UPoly<Rational>, mut a: Rational, mut b: Rational) -> AlgebraicNumber {
    let lc = f.leading().expect("nonzero").abs();
    let gap = Rational::one() / (&lc * &lc * Rational::from_integer(2.into()));
    let fa_pos = f.eval(&a).is_positive();
    while &b - &a > gap {
        let mid = (&a + &b) / Rational::from_integer(2.into());
        let fm = f.eval(&mid);
        if fm.is_zero() {
            return AlgebraicNumber::from_rational(mid);
        }
        if fm.is_positive() == fa_pos {
            a = mid;
        } else {
            b = mid;
        }
    }
    let cand = rational::simplest_between(&a, &b);
    if cand.denom() <= lc.numer() && f.eval(&cand).is_zero() {
        return AlgebraicNumber::from_rational(cand);
    }
    AlgebraicNumber::new_unchecked(f.clone(), a, b)
}
