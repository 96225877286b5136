//! Dense univariate polynomials over an exact field.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Exact field operations needed by [`UPoly`].
///
/// `is_zero_elem` must be exact; for algebraic extensions it is the decision
/// procedure, not a structural check.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    /// Sign as -1, 0 or 1.
    fn sign(&self) -> i32;
}

impl Field for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn sign(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// Coefficients stored lowest degree first; no trailing zeros.
#[derive(Clone, Debug)]
pub struct UPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: F, deg: usize) -> Self {
        let mut v = vec![F::zero_elem(); deg];
        v.push(c);
        Self::new(v)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![F::zero_elem(), F::one_elem()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero_elem)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(F::neg).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero_elem(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(F::one_elem());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_rational(&Rational::from_integer((i as i64).into()))))
            .collect();
        Self::new(v)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero_elem(), |acc, c| acc.mul(x).add(c))
    }

    /// Euclidean division; panics when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero_elem(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&lead_inv);
            if !c.is_zero_elem() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&c.mul(dc));
                }
            }
            // the top coefficient is zero by construction; force it so
            // extension fields do not carry a nonzero representative
            r[k + dd] = F::zero_elem();
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv()),
            None => Self::zero(),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(F::one_elem()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(F::one_elem()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.leading() {
            Some(l) => {
                let li = l.inv();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
            None => (r0, s0, t0),
        }
    }

    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's square-free decomposition: returns `[g_1, g_2, ...]` with
    /// `self = lc * prod g_i^i`, each `g_i` monic and square-free.
    pub fn square_free_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_rem(&a0).0;
        let mut c = d.div_rem(&a0).0;
        let mut dd = c.sub(&b.derivative());
        loop {
            let a = b.gcd(&dd);
            out.push(a.clone());
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = dd.div_rem(&a).0;
            dd = c.sub(&b.derivative());
        }
        out
    }

    /// Sturm sequence of `self` (taken as is; callers pass square-free input).
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut prev = self.clone();
        let mut cur = self.derivative();
        while !cur.is_zero() {
            let r = prev.rem(&cur).neg();
            seq.push(cur.clone());
            prev = cur;
            cur = r;
        }
        seq
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Composition `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }
}

/// Sign variations of a Sturm sequence at a point.
pub fn sign_variations<F: Field>(seq: &[UPoly<F>], x: &F) -> usize {
    count_variations(seq.iter().map(|p| p.eval(x).sign()))
}

/// Sign variations at +infinity (`positive = true`) or -infinity.
pub fn sign_variations_at_infinity<F: Field>(seq: &[UPoly<F>], positive: bool) -> usize {
    count_variations(seq.iter().map(|p| match (p.degree(), p.leading()) {
        (Some(d), Some(l)) => {
            let s = l.sign();
            if !positive && d % 2 == 1 {
                -s
            } else {
                s
            }
        }
        _ => 0,
    }))
}

fn count_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Number of distinct roots of a square-free polynomial in `(a, b]`.
pub fn count_roots_half_open<F: Field>(seq: &[UPoly<F>], a: &F, b: &F) -> usize {
    sign_variations(seq, a).saturating_sub(sign_variations(seq, b))
}

/// Number of distinct roots in the closed interval `[a, b]`.
pub fn count_roots_closed<F: Field>(seq: &[UPoly<F>], a: &F, b: &F) -> usize {
    let at_a = usize::from(seq[0].eval(a).is_zero_elem());
    count_roots_half_open(seq, a, b) + at_a
}

pub fn count_real_roots<F: Field>(seq: &[UPoly<F>]) -> usize {
    sign_variations_at_infinity(seq, false).saturating_sub(sign_variations_at_infinity(seq, true))
}

impl UPoly<Rational> {
    /// Integer-content-free, positive leading coefficient version.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return Self::zero();
        }
        let den = self.coeffs.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<num_bigint::BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -1 } else { 1 };
        Self::new(ints.into_iter().map(|c| Rational::from_integer(c * sign / &g)).collect())
    }

    /// Cauchy bound: every root has absolute value strictly below it.
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().expect("zero polynomial").abs();
        let m = self.coeffs[..self.coeffs.len() - 1].iter().map(|c| c.abs() / &lead).fold(Rational::zero(), |a, b| {
            if b > a {
                b
            } else {
                a
            }
        });
        m + Rational::one()
    }

    /// Interval enclosure of the values on `[lo, hi]`.
    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut acc = (Rational::zero(), Rational::zero());
        for c in self.coeffs.iter().rev() {
            let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let mn = prods.iter().min().unwrap().clone();
            let mx = prods.iter().max().unwrap().clone();
            acc = (mn + c, mx + c);
        }
        acc
    }
}

impl PartialEq for UPoly<Rational> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl fmt::Display for UPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_univariate(self, "s", f)
    }
}

pub fn fmt_univariate(p: &UPoly<Rational>, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(&render_univariate(p, var))
}

pub fn render_univariate(p: &UPoly<Rational>, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    fn p(v: &[i64]) -> UPoly<Rational> {
        UPoly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (s-1)(s+2) and (s-1)(s-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn extended_gcd_identity() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, p(&[1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn yun_decomposition() {
        // (s-1)^2 (s+1)^3 s
        let f = p(&[-1, 1]).pow(2).mul(&p(&[1, 1]).pow(3)).mul(&p(&[0, 1]));
        let d = f.square_free_decomposition();
        assert_eq!(d[0], p(&[0, 1]));
        assert_eq!(d[1], p(&[-1, 1]));
        assert_eq!(d[2], p(&[1, 1]));
        assert_eq!(f.square_free_part(), p(&[0, -1, 0, 1]));
    }

    #[test]
    fn sturm_counts_roots_at_endpoints() {
        let f = p(&[0, -1, 0, 1]); // s^3 - s
        let seq = f.sturm_sequence();
        assert_eq!(count_real_roots(&seq), 3);
        assert_eq!(count_roots_half_open(&seq, &int(-1), &int(1)), 2);
        assert_eq!(count_roots_closed(&seq, &int(-1), &int(1)), 3);
        assert_eq!(count_roots_half_open(&seq, &rat(-1, 2), &rat(1, 2)), 1);
    }

    #[test]
    fn renders_polynomials() {
        assert_eq!(render_univariate(&p(&[-2, 0, 1]), "s"), "s^2 - 2");
        assert_eq!(render_univariate(&UPoly::new(vec![rat(1, 2), int(-1)]), "z"), "-z + 1/2");
    }
}
