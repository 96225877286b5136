//! Arithmetic in `Q(theta)` for a single real algebraic `theta`.
//!
//! Elements are rational polynomials in `theta`, reduced modulo the
//! defining polynomial of `theta`. That polynomial is only square-free, not
//! irreducible, so zero tests and inverses go through a gcd with the
//! modulus and a root count on the isolating interval of `theta`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::algebraic::AlgebraicNumber;
use super::poly::Poly;
use super::rational::Rational;
use super::resultant::resultant;
use super::upoly::{count_roots_closed, Field, UPoly};

#[derive(Debug)]
pub struct NumberField {
    generator: AlgebraicNumber,
}

impl NumberField {
    pub fn new(generator: AlgebraicNumber) -> Arc<Self> {
        Arc::new(NumberField { generator })
    }

    pub fn generator(&self) -> &AlgebraicNumber {
        &self.generator
    }

    fn modulus(&self) -> &UPoly<Rational> {
        self.generator.defining_poly()
    }

    /// Does the (nonzero) rational polynomial `g` vanish at the generator?
    fn vanishes_at_generator(&self, g: &UPoly<Rational>) -> bool {
        let common = g.gcd(self.modulus());
        if common.degree().unwrap_or(0) == 0 {
            return false;
        }
        let (lo, hi) = self.generator.interval();
        count_roots_closed(&common.sturm_sequence(), lo, hi) > 0
    }

    fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b)
            || (a.generator.defining_poly() == b.generator.defining_poly() && a.generator.equals(&b.generator))
    }
}

/// An element of `Q` (no field) or of `Q(theta)`.
#[derive(Clone)]
pub struct FieldElem {
    field: Option<Arc<NumberField>>,
    rep: UPoly<Rational>,
}

impl FieldElem {
    pub fn rational(q: Rational) -> Self {
        FieldElem { field: None, rep: UPoly::constant(q) }
    }

    /// The generator itself as an element of its field.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, UPoly::x())
    }

    /// Value `p(theta)`.
    pub fn from_poly(field: &Arc<NumberField>, p: UPoly<Rational>) -> Self {
        if let Some(q) = field.generator.as_rational() {
            return Self::rational(p.eval(q));
        }
        let rep = if p.degree().unwrap_or(0) >= field.modulus().degree().unwrap() { p.rem(field.modulus()) } else { p };
        let mut e = FieldElem { field: Some(field.clone()), rep };
        e.demote();
        e
    }

    fn demote(&mut self) {
        if self.rep.degree().unwrap_or(0) == 0 {
            self.field = None;
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    pub fn rep(&self) -> &UPoly<Rational> {
        &self.rep
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.field.is_none() {
            Some(self.rep.coeff(0))
        } else if Field::is_zero_elem(self) {
            Some(Rational::zero())
        } else {
            None
        }
    }

    fn join(&self, other: &Self) -> Option<Arc<NumberField>> {
        match (&self.field, &other.field) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => {
                assert!(NumberField::same(a, b), "arithmetic across different number fields");
                Some(a.clone())
            }
        }
    }

    fn build(field: Option<Arc<NumberField>>, rep: UPoly<Rational>) -> Self {
        match field {
            None => FieldElem { field: None, rep },
            Some(f) => Self::from_poly(&f, rep),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = <Self as Field>::one_elem();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Standalone algebraic number equal to this element.
    ///
    /// The defining polynomial is `Res_s(m(s), z - rep(s))`; the right root is
    /// picked by refining the generator until an interval enclosure of
    /// `rep(theta)` isolates a single root.
    pub fn to_algebraic(&self) -> AlgebraicNumber {
        let Some(field) = &self.field else {
            return AlgebraicNumber::from_rational(self.rep.coeff(0));
        };
        if Field::is_zero_elem(self) {
            return AlgebraicNumber::from_rational(Rational::zero());
        }
        let vars = ["s", "z"];
        let m = Poly::from_upoly(&vars, "s", field.modulus());
        let e = Poly::from_upoly(&vars, "s", &self.rep);
        let zs = Poly::var(&vars, "z").sub(&e);
        let res = resultant(&m, &zs, "s").expect("modulus has positive degree");
        let d = res.to_upoly("z").expect("resultant is univariate in z").square_free_part();
        let seq = d.sturm_sequence();
        let mut gen = field.generator.clone();
        loop {
            let (glo, ghi) = gen.interval();
            let (lo, hi) = self.rep.eval_interval(glo, ghi);
            if count_roots_closed(&seq, &lo, &hi) == 1 {
                if d.eval(&lo).is_zero() {
                    return AlgebraicNumber::from_rational(lo);
                }
                if d.eval(&hi).is_zero() {
                    return AlgebraicNumber::from_rational(hi);
                }
                return AlgebraicNumber::new_unchecked(d, lo, hi);
            }
            gen.bisect();
            if let Some(q) = gen.as_rational() {
                return AlgebraicNumber::from_rational(self.rep.eval(q));
            }
        }
    }

    /// Exact equality, valid across different fields.
    pub fn equals(&self, other: &Self) -> bool {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) if !NumberField::same(a, b) => self.to_algebraic().equals(&other.to_algebraic()),
            _ => Field::is_zero_elem(&self.sub(other)),
        }
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) if !NumberField::same(a, b) => self.to_algebraic().compare(&other.to_algebraic()),
            _ => self.sub(other).sign().cmp(&0),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.field {
            None => super::rational::to_f64(&self.rep.coeff(0)),
            Some(f) => {
                let mut g = f.generator.clone();
                g.refine_to(&Rational::new(1.into(), num_bigint::BigInt::from(2).pow(80)));
                let (lo, hi) = g.interval();
                let mid = (lo + hi) / Rational::from_integer(2.into());
                super::rational::to_f64(&self.rep.eval(&mid))
            }
        }
    }
}

impl Field for FieldElem {
    fn zero_elem() -> Self {
        Self::rational(Rational::zero())
    }
    fn one_elem() -> Self {
        Self::rational(Rational::one())
    }
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
    fn is_zero_elem(&self) -> bool {
        if self.rep.is_zero() {
            return true;
        }
        match &self.field {
            None => false,
            Some(f) => f.vanishes_at_generator(&self.rep),
        }
    }
    fn add(&self, other: &Self) -> Self {
        Self::build(self.join(other), self.rep.add(&other.rep))
    }
    fn sub(&self, other: &Self) -> Self {
        Self::build(self.join(other), self.rep.sub(&other.rep))
    }
    fn mul(&self, other: &Self) -> Self {
        Self::build(self.join(other), self.rep.mul(&other.rep))
    }
    fn neg(&self) -> Self {
        FieldElem { field: self.field.clone(), rep: self.rep.neg() }
    }
    fn inv(&self) -> Self {
        match &self.field {
            None => {
                let c = self.rep.coeff(0);
                assert!(!c.is_zero(), "inverse of zero");
                Self::rational(c.recip())
            }
            Some(f) => {
                // invert modulo the factor of the modulus that keeps theta
                let g = self.rep.gcd(f.modulus());
                let reduced = f.modulus().div_rem(&g).0;
                assert!(!f.vanishes_at_generator(&self.rep), "inverse of zero");
                let (one, s, _) = self.rep.ext_gcd(&reduced);
                debug_assert_eq!(one.degree(), Some(0));
                Self::from_poly(f, s)
            }
        }
    }
    fn sign(&self) -> i32 {
        if Field::is_zero_elem(self) {
            return 0;
        }
        match &self.field {
            None => Field::sign(&self.rep.coeff(0)),
            Some(f) => {
                let mut g = f.generator.clone();
                loop {
                    let (lo, hi) = g.interval();
                    let (a, b) = self.rep.eval_interval(lo, hi);
                    if a.is_positive() {
                        return 1;
                    }
                    if b.is_negative() {
                        return -1;
                    }
                    g.bisect();
                    if let Some(q) = g.as_rational() {
                        return Field::sign(&self.rep.eval(q));
                    }
                }
            }
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            None => write!(f, "{}", self.rep.coeff(0)),
            Some(_) => write!(f, "{}", super::upoly::render_univariate(&self.rep, "a")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::algebraic::isolate_real_roots;
    use crate::kernel::rational::int;

    fn sqrt2() -> Arc<NumberField> {
        let f = UPoly::new(vec![int(-2), int(0), int(1)]);
        NumberField::new(isolate_real_roots(&f).unwrap()[1].value.clone())
    }

    #[test]
    fn arithmetic_in_quadratic_field() {
        let k = sqrt2();
        let a = FieldElem::generator(&k);
        let two = a.mul(&a);
        assert_eq!(two.as_rational(), Some(int(2)));
        let inv = a.inv();
        assert!(inv.mul(&a).equals(&FieldElem::one_elem()));
        assert_eq!(a.sign(), 1);
        assert_eq!(a.neg().sign(), -1);
        assert!((a.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn zero_test_with_reducible_modulus() {
        // theta = 1 as a root of (s - 1)(s^2 - 2): s^2 - 2 evaluates to -1, s - 1 to 0
        let m = UPoly::new(vec![int(2), int(-2), int(-1), int(1)]);
        let roots = isolate_real_roots(&m).unwrap();
        let one = roots.iter().find(|r| r.value.as_rational() == Some(&int(1))).unwrap();
        assert!(one.value.is_rational());
        // irrational root sqrt 2 of the reducible cubic
        let r = roots.iter().find(|r| !r.value.is_rational() && r.value.signum() > 0).unwrap();
        let k = NumberField::new(r.value.clone());
        let e = FieldElem::from_poly(&k, UPoly::new(vec![int(-1), int(1)]));
        assert!(!Field::is_zero_elem(&e));
        let z = FieldElem::from_poly(&k, UPoly::new(vec![int(-2), int(0), int(1)]));
        assert!(Field::is_zero_elem(&z));
        assert!(e.inv().mul(&e).equals(&FieldElem::one_elem()));
    }

    #[test]
    fn cross_field_equality() {
        let k = sqrt2();
        let four = UPoly::new(vec![int(-8), int(0), int(1)]);
        let l = NumberField::new(isolate_real_roots(&four).unwrap()[1].value.clone());
        // 2*sqrt2 in Q(sqrt 2) vs sqrt 8 in Q(sqrt 8)
        let a = FieldElem::generator(&k).mul(&FieldElem::rational(int(2)));
        let b = FieldElem::generator(&l);
        assert!(a.equals(&b));
        assert!(!a.equals(&FieldElem::generator(&k)));
        assert_eq!(FieldElem::generator(&k).compare(&b), Ordering::Less);
    }
}
