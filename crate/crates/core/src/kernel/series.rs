//! Truncated Puiseux series and reparametrization of arcs.
//!
//! An arc is three finite series in a parameter `t` with rational exponents
//! and coefficients in one number field. Reparametrizing by a new parameter
//! `rho` (distance to the origin, or a transversal coordinate) produces
//! coefficients of the form `value * base^exp` with a rational `exp`; these
//! are kept symbolically as [`ScaledCoeff`] so no radicals are ever formed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::FieldElem;
use super::rational::{self, Rational};
use super::upoly::Field;
use crate::error::{Error, Result};

/// Coefficient types a [`PuiseuxSeries`] can carry.
pub trait SeriesCoeff: Clone + fmt::Debug {
    fn is_zero_coeff(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Exact equality.
    fn same(&self, other: &Self) -> bool;
}

impl SeriesCoeff for FieldElem {
    fn is_zero_coeff(&self) -> bool {
        Field::is_zero_elem(self)
    }
    fn to_f64(&self) -> f64 {
        FieldElem::to_f64(self)
    }
    fn same(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

/// `value * base^exp`, with `base > 0`.
#[derive(Clone)]
pub struct ScaledCoeff {
    value: FieldElem,
    base: FieldElem,
    exp: Rational,
}

impl ScaledCoeff {
    pub fn new(value: FieldElem, base: FieldElem, exp: Rational) -> Self {
        assert!(base.sign() > 0, "scaled coefficient needs a positive base");
        let one = <FieldElem as Field>::one_elem();
        if exp.is_zero() || base.equals(&one) {
            return ScaledCoeff { value, base: one, exp: Rational::zero() };
        }
        if exp.is_integer() {
            let v = value.mul(&base.pow(exp.to_integer().to_i64().expect("exponent fits in i64")));
            return ScaledCoeff { value: v, base: one, exp: Rational::zero() };
        }
        ScaledCoeff { value, base, exp }
    }

    pub fn plain(value: FieldElem) -> Self {
        ScaledCoeff { value, base: <FieldElem as Field>::one_elem(), exp: Rational::zero() }
    }

    pub fn value(&self) -> &FieldElem {
        &self.value
    }

    pub fn base(&self) -> &FieldElem {
        &self.base
    }

    pub fn exp(&self) -> &Rational {
        &self.exp
    }

    pub fn signum(&self) -> i32 {
        self.value.sign()
    }

    pub fn neg(&self) -> Self {
        ScaledCoeff { value: self.value.neg(), base: self.base.clone(), exp: self.exp.clone() }
    }

    /// Exact equality by raising both sides to a common integer power.
    pub fn equals(&self, other: &Self) -> bool {
        let (s1, s2) = (self.signum(), other.signum());
        if s1 != s2 {
            return false;
        }
        if s1 == 0 {
            return true;
        }
        if self.exp == other.exp && self.base.equals(&other.base) {
            return self.value.equals(&other.value);
        }
        let l: BigInt = self.exp.denom().lcm(other.exp.denom());
        let l_i = l.to_i64().expect("denominator fits in i64");
        let side = |c: &ScaledCoeff| {
            let v = if c.value.sign() < 0 { c.value.neg() } else { c.value.clone() };
            let e = (&c.exp * Rational::from_integer(l.clone())).to_integer();
            v.pow(l_i).mul(&c.base.pow(e.to_i64().expect("exponent fits in i64")))
        };
        side(self).equals(&side(other))
    }
}

impl SeriesCoeff for ScaledCoeff {
    fn is_zero_coeff(&self) -> bool {
        self.signum() == 0
    }
    fn to_f64(&self) -> f64 {
        let v = self.value.to_f64();
        if self.exp.is_zero() {
            v
        } else {
            v * self.base.to_f64().powf(rational::to_f64(&self.exp))
        }
    }
    fn same(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Debug for ScaledCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ScaledCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp.is_zero() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "({})*({})^({})", self.value, self.base, self.exp)
        }
    }
}

/// Finite sum of `c * t^e` with `0 <= e` strictly increasing.
///
/// `truncation = None` means the sum is exact; otherwise every omitted term
/// has exponent `>= truncation` and every stored exponent is below it.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries<C> {
    terms: Vec<(Rational, C)>,
    truncation: Option<Rational>,
}

impl<C: SeriesCoeff> PuiseuxSeries<C> {
    pub fn new(terms: Vec<(Rational, C)>, truncation: Option<Rational>) -> Self {
        let mut merged: Vec<(Rational, C)> = Vec::new();
        let mut sorted = terms;
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        for (e, c) in sorted {
            assert!(!e.is_negative(), "negative exponent in series");
            if let Some(tr) = &truncation {
                if &e >= tr {
                    continue;
                }
            }
            if let Some(last) = merged.last() {
                assert!(last.0 != e, "duplicate exponent in series");
            }
            if !c.is_zero_coeff() {
                merged.push((e, c));
            }
        }
        PuiseuxSeries { terms: merged, truncation }
    }

    pub fn zero() -> Self {
        PuiseuxSeries { terms: Vec::new(), truncation: None }
    }

    pub fn terms(&self) -> &[(Rational, C)] {
        &self.terms
    }

    pub fn truncation(&self) -> Option<&Rational> {
        self.truncation.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.truncation.is_none()
    }

    /// True when the known part is zero and nothing is omitted.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.truncation.is_none()
    }

    pub fn leading(&self) -> Option<&(Rational, C)> {
        self.terms.first()
    }

    pub fn coeff_at(&self, e: &Rational) -> Option<&C> {
        self.terms.iter().find(|(x, _)| x == e).map(|(_, c)| c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms.iter().map(|(e, c)| c.to_f64() * t.powf(rational::to_f64(e))).sum()
    }
}

impl PuiseuxSeries<FieldElem> {
    /// Largest exponent present, if any.
    pub fn max_exponent(&self) -> Option<&Rational> {
        self.terms.last().map(|(e, _)| e)
    }
}

impl<C: SeriesCoeff + fmt::Display> fmt::Display for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
            } else if e.is_integer() {
                write!(f, "{c}*t^{e}")?;
            } else {
                write!(f, "{c}*t^({e})")?;
            }
        }
        if let Some(tr) = &self.truncation {
            write!(f, " + O(t^({tr}))")?;
        }
        Ok(())
    }
}

/// New parameter chosen for [`reparametrize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parameter {
    /// `rho = |A(t)|`.
    Radius,
    /// `rho = |A_j(t)|` for a coordinate `j` carrying the leading term.
    Coordinate(usize),
}

/// Result of [`reparametrize`]: the three coordinates as series in `rho`.
pub type Reparametrized = [PuiseuxSeries<ScaledCoeff>; 3];

/// Reparametrizes by distance to the origin; see [`reparametrize`].
pub fn radius_reparametrize(arc: &[PuiseuxSeries<FieldElem>; 3], depth: &Rational) -> Result<Reparametrized> {
    reparametrize(arc, Parameter::Radius, depth)
}

/// Rewrites an exact arc in terms of a new parameter `rho`.
///
/// With `t = tau^N` all exponents become integers and the parameter
/// function reads `rho^m = C tau^(mK) (1 + w(tau))` (`m = 2` for the squared
/// norm, `m = 1` for a coordinate). Setting `sigma = tau (1+w)^(1/(mK))`
/// gives `rho^m = C sigma^(mK)`; `tau(sigma)` is obtained by Lagrange
/// inversion and substituted into each coordinate. A term `a sigma^e` then
/// becomes `a C^(-e/(mK)) rho^(e/K)`.
///
/// Terms with `rho`-exponent below `depth` are exact. The output is exact
/// (no truncation) when `w` vanishes identically.
pub fn reparametrize(
    arc: &[PuiseuxSeries<FieldElem>; 3],
    param: Parameter,
    depth: &Rational,
) -> Result<Reparametrized> {
    for c in arc {
        if !c.is_exact() {
            return Err(Error::InvalidArc("input coordinates must be exact finite sums".into()));
        }
    }
    if arc.iter().all(|c| c.terms().is_empty()) {
        return Err(Error::InvalidArc("arc is identically zero".into()));
    }
    if arc.iter().any(|c| c.terms().first().is_some_and(|(e, _)| e.is_zero())) {
        return Err(Error::InvalidArc("arc does not pass through the origin (constant term)".into()));
    }
    let n: BigInt = rational::lcm_denominators(arc.iter().flat_map(|c| c.terms().iter().map(|(e, _)| e)));
    let dense: Vec<Vec<FieldElem>> = arc.iter().map(|c| to_dense(c, &n)).collect();

    let (m, k, param_poly) = match param {
        Parameter::Radius => {
            let k = dense.iter().filter_map(|d| valuation(d)).min().unwrap();
            let mut sq: Vec<FieldElem> = Vec::new();
            for d in &dense {
                sq = add_dense(&sq, &mul_full(d, d));
            }
            (2usize, k, sq)
        }
        Parameter::Coordinate(j) => {
            let d = &dense[j];
            let k = valuation(d).ok_or_else(|| Error::InvalidArc(format!("coordinate {} is zero", j + 1)))?;
            let kmin = dense.iter().filter_map(|d| valuation(d)).min().unwrap();
            if k != kmin {
                return Err(Error::InvalidArc(format!("coordinate {} is not transversal to the arc", j + 1)));
            }
            let p = if d[k].sign() < 0 { d.iter().map(|c| c.neg()).collect() } else { d.clone() };
            (1usize, k, p)
        }
    };
    let mk = m * k;
    let c_lead = param_poly[mk].clone();
    debug_assert!(c_lead.sign() > 0);
    let c_inv = c_lead.inv();
    // 1 + w(tau), as a finite polynomial
    let one_plus_w: Vec<FieldElem> = param_poly[mk..].iter().map(|c| c.mul(&c_inv)).collect();
    let exact = one_plus_w.iter().skip(1).all(Field::is_zero_elem);

    let max_len = dense.iter().map(Vec::len).max().unwrap();
    let terms_needed = if exact {
        max_len
    } else {
        let prod = depth * Rational::from_integer(BigInt::from(k));
        prod.ceil().to_integer().to_usize().unwrap_or(usize::MAX).max(k + 1)
    };

    // tau(sigma) mod sigma^terms_needed
    let tau = if exact {
        let mut t = vec![<FieldElem as Field>::zero_elem(); terms_needed.max(2)];
        t[1] = <FieldElem as Field>::one_elem();
        t
    } else {
        let mut t = vec![<FieldElem as Field>::zero_elem(); terms_needed];
        for idx in 1..terms_needed {
            // [sigma^idx] tau = (1/idx) [tau^(idx-1)] (1+w)^(-idx/(mK))
            let alpha = Rational::new(BigInt::from(-(idx as i64)), BigInt::from(mk as i64));
            let h = pow_rational(&one_plus_w, &alpha, idx);
            let c = h[idx - 1].mul(&FieldElem::rational(Rational::new(BigInt::one(), BigInt::from(idx as i64))));
            t[idx] = c;
        }
        t
    };
    let len = if exact { max_len } else { terms_needed };
    let trunc = if exact { None } else { Some(Rational::new(BigInt::from(len as i64), BigInt::from(k as i64))) };

    let mut powers: Vec<Vec<FieldElem>> = vec![one_series(len)];
    let out_coords: Vec<PuiseuxSeries<ScaledCoeff>> = dense
        .iter()
        .map(|d| {
            let mut acc = vec![<FieldElem as Field>::zero_elem(); len];
            for (e, a) in d.iter().enumerate() {
                if Field::is_zero_elem(a) || e >= len {
                    continue;
                }
                while powers.len() <= e {
                    let next = mul_trunc(powers.last().unwrap(), &tau, len);
                    powers.push(next);
                }
                for (i, c) in powers[e].iter().enumerate() {
                    acc[i] = acc[i].add(&c.mul(a));
                }
            }
            let terms = acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !Field::is_zero_elem(c))
                .map(|(e, c)| {
                    let rho_exp = Rational::new(BigInt::from(e as i64), BigInt::from(k as i64));
                    let base_exp = Rational::new(BigInt::from(-(e as i64)), BigInt::from(mk as i64));
                    (rho_exp, ScaledCoeff::new(c, c_lead.clone(), base_exp))
                })
                .collect();
            PuiseuxSeries::new(terms, trunc.clone())
        })
        .collect();
    let mut it = out_coords.into_iter();
    Ok([it.next().unwrap(), it.next().unwrap(), it.next().unwrap()])
}

/// Dense coefficients in `tau = t^(1/n)`.
fn to_dense(s: &PuiseuxSeries<FieldElem>, n: &BigInt) -> Vec<FieldElem> {
    let mut out: Vec<FieldElem> = Vec::new();
    for (e, c) in s.terms() {
        let idx = (e * Rational::from_integer(n.clone())).to_integer().to_usize().expect("exponent too large");
        if out.len() <= idx {
            out.resize(idx + 1, <FieldElem as Field>::zero_elem());
        }
        out[idx] = c.clone();
    }
    out
}

fn valuation(d: &[FieldElem]) -> Option<usize> {
    d.iter().position(|c| !Field::is_zero_elem(c))
}

fn one_series(len: usize) -> Vec<FieldElem> {
    let mut v = vec![<FieldElem as Field>::zero_elem(); len.max(1)];
    v[0] = <FieldElem as Field>::one_elem();
    v.truncate(len);
    v
}

fn add_dense(a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn mul_full(a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    mul_trunc(a, b, a.len() + b.len() - 1)
}

fn mul_trunc(a: &[FieldElem], b: &[FieldElem], len: usize) -> Vec<FieldElem> {
    let mut out = vec![<FieldElem as Field>::zero_elem(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if Field::is_zero_elem(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// `f^alpha mod tau^len` for `f(0) = 1`.
fn pow_rational(f: &[FieldElem], alpha: &Rational, len: usize) -> Vec<FieldElem> {
    let mut g = vec![<FieldElem as Field>::zero_elem(); len];
    if len == 0 {
        return g;
    }
    g[0] = <FieldElem as Field>::one_elem();
    for k in 1..len {
        let mut acc = <FieldElem as Field>::zero_elem();
        for j in 1..=k.min(f.len().saturating_sub(1)) {
            if Field::is_zero_elem(&f[j]) {
                continue;
            }
            let w = alpha * Rational::from_integer(BigInt::from(j as i64))
                - Rational::from_integer(BigInt::from((k - j) as i64));
            acc = acc.add(&f[j].mul(&g[k - j]).mul(&FieldElem::rational(w)));
        }
        g[k] = acc.mul(&FieldElem::rational(Rational::new(BigInt::one(), BigInt::from(k as i64))));
    }
    g
}
