//! Sparse multivariate polynomials with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::upoly::UPoly;

/// Exponent vector, one entry per variable of the owning [`Poly`].
pub type Monomial = Vec<u32>;

/// A polynomial over the rationals in an ordered list of named variables.
///
/// Terms are kept in a `BTreeMap`, so the last entry is the lex-leading
/// term with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(vars: &[&str]) -> Self {
        Poly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let i = p.index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut m = vec![0; vars.len()];
        m[i] = 1;
        p.terms.insert(m, Rational::one());
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "exponent arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Re-express over a different (super)set of variables.
    pub fn with_vars(&self, vars: &[&str]) -> Self {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).unwrap_or_else(|| panic!("variable {v} dropped")))
            .collect();
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut nm = vec![0; vars.len()];
            for (i, &e) in m.iter().enumerate() {
                nm[map[i]] += e;
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        for v in &other.vars {
            if !vars.contains(&v.as_str()) {
                vars.push(v);
            }
        }
        (self.with_vars(&vars), other.with_vars(&vars))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.index_of(var) {
            Some(i) => self.terms.keys().map(|m| m[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }

    pub fn neg(&self) -> Self {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut out = Poly { vars: a.vars.clone(), terms: BTreeMap::new() };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let mut acc = Self::constant(&vars, Rational::one());
        let mut base = self.clone();
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

    /// Evaluates at a full assignment (one rational per variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += t;
        }
        sum
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().zip(point).fold(super::rational::to_f64(c), |acc, (&e, &x)| acc * x.powi(e as i32)))
            .sum()
    }

    /// Gradient evaluated in floating point.
    pub fn grad_f64(&self, point: &[f64]) -> Vec<f64> {
        (0..self.vars.len())
            .map(|i| {
                self.terms
                    .iter()
                    .filter(|(m, _)| m[i] > 0)
                    .map(|(m, c)| {
                        let mut t = super::rational::to_f64(c) * m[i] as f64;
                        for (j, (&e, &x)) in m.iter().zip(point).enumerate() {
                            let e = if j == i { e - 1 } else { e };
                            t *= x.powi(e as i32);
                        }
                        t
                    })
                    .sum()
            })
            .collect()
    }

    /// Replaces variable `var` by the polynomial `value`.
    pub fn substitute(&self, var: &str, value: &Poly) -> Self {
        let Some(i) = self.index_of(var) else {
            return self.clone();
        };
        let (me, val) = self.aligned(value);
        let vars: Vec<&str> = me.vars.iter().map(String::as_str).collect();
        let mut out = Self::zero(&vars);
        let mut powers: Vec<Poly> = vec![Self::constant(&vars, Rational::one())];
        for (m, c) in &me.terms {
            let e = m[i] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(&val);
                powers.push(next);
            }
            let mut rest = m.clone();
            rest[i] = 0;
            let mono = Self::from_terms(&vars, [(rest, c.clone())]);
            out = out.add(&mono.mul(&powers[e]));
        }
        out
    }

    /// Coefficients with respect to `var`, lowest power first; each
    /// coefficient keeps the full variable list (with `var` absent).
    pub fn coeffs_in(&self, var: &str) -> Vec<Poly> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let Some(i) = self.index_of(var) else {
            return vec![self.clone()];
        };
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&vars); d + 1];
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest[i] as usize;
            rest[i] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Exact quotient in lex order; `None` if `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (mut r, d) = self.aligned(divisor);
        let names = r.vars.clone();
        let vars: Vec<&str> = names.iter().map(String::as_str).collect();
        let (lm, lc) = d.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = Self::zero(&vars);
        while let Some((m, c)) = r.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if m.iter().zip(&lm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = m.iter().zip(&lm).map(|(a, b)| a - b).collect();
            let qc = c / &lc;
            let t = Self::from_terms(&vars, [(qm, qc)]);
            r = r.sub(&t.mul(&d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Univariate view when only `var` occurs.
    pub fn to_upoly(&self, var: &str) -> Option<UPoly<Rational>> {
        let i = self.index_of(var);
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            let e = match i {
                Some(i) => {
                    if m.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                        return None;
                    }
                    m[i] as usize
                }
                None => {
                    if m.iter().any(|&e| e > 0) {
                        return None;
                    }
                    0
                }
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn from_upoly(vars: &[&str], var: &str, p: &UPoly<Rational>) -> Self {
        let i = vars.iter().position(|v| *v == var).expect("variable not in list");
        Self::from_terms(
            vars,
            p.coeffs().iter().enumerate().map(|(e, c)| {
                let mut m = vec![0; vars.len()];
                m[i] = e as u32;
                (m, c.clone())
            }),
        )
    }
}

impl fmt::Display for Poly {
    /// Renders in the germ-file expression grammar, highest total degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        // lead with a positive term when there is one
        if let Some(i) = terms.iter().position(|(_, c)| c.is_positive()) {
            let t = terms.remove(i);
            terms.insert(0, t);
        }
        let mut first = true;
        for (m, c) in terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
                .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::int;

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn arithmetic_and_display() {
        let x = Poly::var(&XY, "x");
        let y = Poly::var(&XY, "y");
        let q = y.pow(3).sub(&x.pow(2).mul(&y));
        assert_eq!(q.to_string(), "y^3 - x^2*y");
        assert!(q.is_homogeneous());
        assert_eq!(q.total_degree(), Some(3));
        let e = x.add(&y).pow(3);
        assert_eq!(e.to_string(), "x^3 + 3*x^2*y + 3*x*y^2 + y^3");
    }

    #[test]
    fn substitution_and_exact_division() {
        let x = Poly::var(&XY, "x");
        let y = Poly::var(&XY, "y");
        let f = y.pow(2).sub(&x.pow(2));
        let g = f.substitute("y", &y.add(&x));
        assert_eq!(g.to_string(), "2*x*y + y^2");
        assert_eq!(f.div_exact(&y.sub(&x)), Some(y.add(&x)));
        assert_eq!(f.div_exact(&y), None);
        assert_eq!(g.eval(&[int(1), int(2)]), int(8));
    }

    #[test]
    fn coefficient_extraction() {
        let x = Poly::var(&XY, "x");
        let y = Poly::var(&XY, "y");
        let f = y.pow(2).mul(&x).add(&x.pow(3));
        let cs = f.coeffs_in("y");
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], x.pow(3));
        assert!(cs[1].is_zero());
        assert_eq!(cs[2], x);
    }
}
