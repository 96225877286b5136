use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::kernel::rational::{self, Rational};
use crate::kernel::{Field, FieldElem, NumberField, PuiseuxSeries};
use crate::parse::parse_arc_literal;

/// A real half-branch through the origin: three exact finite series in a
/// positive parameter `t`, all coefficients in one number field.
#[derive(Clone, Debug)]
pub struct PuiseuxArc {
    coords: [PuiseuxSeries<FieldElem>; 3],
    label: String,
}

impl PuiseuxArc {
    pub fn from_terms(coords: [Vec<(Rational, FieldElem)>; 3], label: impl Into<String>) -> Result<Self> {
        let [a, b, c] = coords;
        let coords = [PuiseuxSeries::new(a, None), PuiseuxSeries::new(b, None), PuiseuxSeries::new(c, None)];
        if coords.iter().all(|c| c.terms().is_empty()) {
            return Err(Error::InvalidArc("arc is identically zero".into()));
        }
        if coords.iter().any(|c| c.terms().iter().any(|(e, _)| !e.is_positive())) {
            return Err(Error::InvalidArc("every exponent must be positive (the arc starts at the origin)".into()));
        }
        let mut field: Option<std::sync::Arc<NumberField>> = None;
        for (_, c) in coords.iter().flat_map(|c| c.terms()) {
            if let Some(f) = c.field() {
                match &field {
                    None => field = Some(f.clone()),
                    Some(g) if std::sync::Arc::ptr_eq(f, g) || f.generator().equals(g.generator()) => {}
                    Some(_) => return Err(Error::InvalidArc("coefficients from two different number fields".into())),
                }
            }
        }
        Ok(PuiseuxArc { coords, label: label.into() })
    }

    /// Parses the literal syntax `(expr, expr, expr)` with terms `c*t^(a/b)`.
    pub fn from_literal(text: &str, label: impl Into<String>) -> Result<Self> {
        let [a, b, c] = parse_arc_literal(text)?;
        let lift = |v: Vec<(Rational, Rational)>| v.into_iter().map(|(e, c)| (e, FieldElem::rational(c))).collect();
        Self::from_terms([lift(a), lift(b), lift(c)], label)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn coords(&self) -> &[PuiseuxSeries<FieldElem>; 3] {
        &self.coords
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Exact equality of the three series.
    pub fn same_arc(&self, other: &PuiseuxArc) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| {
            a.terms().len() == b.terms().len()
                && a.terms().iter().zip(b.terms()).all(|((e1, c1), (e2, c2))| e1 == e2 && c1.equals(c2))
        })
    }

    /// Smallest exponent over all coordinates: `|A(t)| ~ t^k`.
    pub fn leading_exponent(&self) -> Rational {
        self.coords.iter().filter_map(|c| c.leading().map(|(e, _)| e.clone())).min().unwrap()
    }

    /// Coefficients of `t^k` for the leading exponent `k`.
    pub fn leading_vector(&self) -> [FieldElem; 3] {
        let k = self.leading_exponent();
        let get = |i: usize| self.coords[i].coeff_at(&k).cloned().unwrap_or_else(FieldElem::zero_elem);
        [get(0), get(1), get(2)]
    }

    /// Largest exponent divided by the leading exponent.
    pub fn depth_ratio(&self) -> Rational {
        let max = self.coords.iter().filter_map(|c| c.max_exponent().cloned()).max().unwrap();
        max / self.leading_exponent()
    }

    pub fn eval(&self, t: f64) -> [f64; 3] {
        [self.coords[0].eval_f64(t), self.coords[1].eval_f64(t), self.coords[2].eval_f64(t)]
    }

    /// The point of the arc at Euclidean distance `r` from the origin.
    pub fn point_at_radius(&self, r: f64) -> [f64; 3] {
        let norm = |t: f64| {
            let p = self.eval(t);
            (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
        };
        let k = rational::to_f64(&self.leading_exponent());
        let v: f64 = self.leading_vector().iter().map(|c| c.to_f64().powi(2)).sum::<f64>().sqrt();
        let guess = (r / v).powf(1.0 / k);
        let (mut lo, mut hi) = (guess * 0.5, guess * 2.0);
        while norm(lo) > r {
            lo *= 0.5;
        }
        while norm(hi) < r {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if norm(mid) < r {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= f64::EPSILON * hi {
                break;
            }
        }
        self.eval(0.5 * (lo + hi))
    }
}

fn fmt_coeff(c: &FieldElem) -> String {
    match c.as_rational() {
        Some(q) => q.to_string(),
        None => format!("({c})"),
    }
}

fn fmt_series(s: &PuiseuxSeries<FieldElem>) -> String {
    if s.terms().is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in s.terms().iter().enumerate() {
        let (neg, c) = match c.as_rational() {
            Some(q) if q.is_negative() => (true, FieldElem::rational(-q)),
            _ => (false, c.clone()),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let tpow = if e.is_one() {
            "t".to_string()
        } else if e.is_integer() {
            format!("t^{e}")
        } else {
            format!("t^({e})")
        };
        if c.as_rational().is_some_and(|q| q.is_one()) {
            out.push_str(&tpow);
        } else {
            out.push_str(&format!("{}*{tpow}", fmt_coeff(&c)));
        }
    }
    out
}

impl fmt::Display for PuiseuxArc {
    /// Arc literal syntax; algebraic coefficients are polynomials in `a`,
    /// the generator of the coefficient field.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", fmt_series(&self.coords[0]), fmt_series(&self.coords[1]), fmt_series(&self.coords[2]))
    }
}

impl PuiseuxArc {
    /// Generator of the coefficient field, if any coefficient is irrational.
    pub fn field(&self) -> Option<&std::sync::Arc<NumberField>> {
        self.coords.iter().flat_map(|c| c.terms()).find_map(|(_, c)| c.field())
    }
}

/// A curve germ given by its branches.
#[derive(Clone, Debug, Default)]
pub struct CurveGerm {
    pub branches: Vec<PuiseuxArc>,
}

impl CurveGerm {
    pub fn new(branches: Vec<PuiseuxArc>) -> Self {
        CurveGerm { branches }
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.branches.iter().map(PuiseuxArc::label).collect()
    }

    /// Branches permuted so that new branch `i` is old branch `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> CurveGerm {
        CurveGerm { branches: perm.iter().map(|&i| self.branches[i].clone()).collect() }
    }
}
