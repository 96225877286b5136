use std::fmt;

use num_traits::{One, Zero};

use super::arc::PuiseuxArc;
use crate::error::{Error, Result};
use crate::kernel::rational::{fraction_string, Rational};
use crate::kernel::series::{reparametrize, Parameter, Reparametrized, ScaledCoeff};
use crate::kernel::{Field, FieldElem, PuiseuxSeries};

/// A contact order: a rational `>= 1`, or infinite for coinciding arcs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Contact {
    Finite(Rational),
    Infinite,
}

impl Contact {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Contact::Finite(q) => Some(q),
            Contact::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Contact::Infinite)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Contact::Finite(q) => crate::kernel::rational::to_f64(q),
            Contact::Infinite => f64::INFINITY,
        }
    }

    /// `num/den` or `inf`.
    pub fn fraction(&self) -> String {
        match self {
            Contact::Finite(q) => fraction_string(q),
            Contact::Infinite => "inf".into(),
        }
    }
}

impl fmt::Display for Contact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contact::Finite(q) => write!(f, "{q}"),
            Contact::Infinite => f.write_str("inf"),
        }
    }
}

/// Exponent depth used when none is given: `2 (e_A + e_B) + 2`, where `e`
/// is an arc's largest exponent over its leading one.
pub fn default_depth(a: &PuiseuxArc, b: &PuiseuxArc) -> Rational {
    let two = Rational::from_integer(2.into());
    &two * (a.depth_ratio() + b.depth_ratio()) + &two
}

pub fn contact_order(a: &PuiseuxArc, b: &PuiseuxArc) -> Result<Contact> {
    contact_order_with_depth(a, b, &default_depth(a, b))
}

/// Contact order measured on the planes `x_j = s` transversal to the
/// common tangent.
///
/// Arcs with different tangent half-lines have contact 1. Otherwise both
/// are reparametrized by `s = |x_j|` for the first coordinate `j` of the
/// tangent, and the answer is the first exponent where the expansions
/// differ. Moving between the plane `x_j = s` and the sphere of the same
/// radius displaces each point by `O(dist)`, so the two orders agree.
pub fn contact_order_with_depth(a: &PuiseuxArc, b: &PuiseuxArc, depth: &Rational) -> Result<Contact> {
    let va = a.leading_vector();
    let vb = b.leading_vector();
    let Some(j) = same_direction(&va, &vb) else {
        return Ok(Contact::Finite(Rational::one()));
    };
    let ra = reparametrize(a.coords(), Parameter::Coordinate(j), depth)?;
    let rb = reparametrize(b.coords(), Parameter::Coordinate(j), depth)?;
    first_difference(&ra, &rb)
}

/// Contact order from the radius expansions of both arcs.
///
/// Radius expansions rarely terminate, so equal arcs are recognized from
/// their parametrizations before any truncation can run out.
pub fn contact_order_radius(a: &PuiseuxArc, b: &PuiseuxArc, depth: &Rational) -> Result<Contact> {
    if a.same_arc(b) {
        return Ok(Contact::Infinite);
    }
    let ra = reparametrize(a.coords(), Parameter::Radius, depth)?;
    let rb = reparametrize(b.coords(), Parameter::Radius, depth)?;
    first_difference(&ra, &rb)
}

/// Index of the first nonzero tangent coordinate when `u` and `v` point
/// the same way.
fn same_direction(u: &[FieldElem; 3], v: &[FieldElem; 3]) -> Option<usize> {
    let j = (0..3).find(|&i| !u[i].is_zero_elem())?;
    if u[j].sign() != v[j].sign() {
        return None;
    }
    let (uj, vj) = (u[j].inv(), v[j].inv());
    (0..3).all(|i| u[i].mul(&uj).equals(&v[i].mul(&vj))).then_some(j)
}

fn first_difference(a: &Reparametrized, b: &Reparametrized) -> Result<Contact> {
    let bound = match (min_truncation(a), min_truncation(b)) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x),
        (Some(x), Some(y)) => Some(x.min(y)),
    };
    let mut best: Option<Rational> = None;
    for (sa, sb) in a.iter().zip(b) {
        if let Some(e) = first_mismatch(sa, sb, bound.as_ref()) {
            if best.as_ref().is_none_or(|b| &e < b) {
                best = Some(e);
            }
        }
    }
    match (best, bound) {
        (Some(e), _) => Ok(Contact::Finite(e)),
        (None, None) => Ok(Contact::Infinite),
        (None, Some(bound)) => Err(Error::Truncation { bound }),
    }
}

fn min_truncation(r: &Reparametrized) -> Option<Rational> {
    r.iter().filter_map(|s| s.truncation().cloned()).min()
}

fn first_mismatch(
    a: &PuiseuxSeries<ScaledCoeff>,
    b: &PuiseuxSeries<ScaledCoeff>,
    bound: Option<&Rational>,
) -> Option<Rational> {
    let zero = ScaledCoeff::plain(FieldElem::rational(Rational::zero()));
    let mut exps: Vec<&Rational> = a.terms().iter().chain(b.terms()).map(|(e, _)| e).collect();
    exps.sort();
    exps.dedup();
    for e in exps {
        if bound.is_some_and(|bd| e >= bd) {
            break;
        }
        let ca = a.coeff_at(e).unwrap_or(&zero);
        let cb = b.coeff_at(e).unwrap_or(&zero);
        if !ca.equals(cb) {
            return Some(e.clone());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    fn arc(s: &str) -> PuiseuxArc {
        PuiseuxArc::from_literal(s, s).unwrap()
    }

    fn both_routes(a: &str, b: &str) -> Contact {
        let (a, b) = (arc(a), arc(b));
        let plane = contact_order(&a, &b).unwrap();
        let depth = default_depth(&a, &b) + int(4);
        match contact_order_radius(&a, &b, &depth) {
            Ok(radius) => assert_eq!(plane, radius, "routes disagree"),
            Err(Error::Truncation { .. }) => assert!(plane.is_infinite()),
            Err(e) => panic!("{e}"),
        }
        plane
    }

    #[test]
    fn examples() {
        assert_eq!(both_routes("(t, 0, 0)", "(0, t, 0)"), Contact::Finite(int(1)));
        assert_eq!(contact_order(&arc("(t, t^2, 0)"), &arc("(t, t^2, 0)")).unwrap(), Contact::Infinite);
        assert_eq!(both_routes("(t, t^2, 0)", "(t, t^2, t^3)"), Contact::Finite(int(3)));
    }

    #[test]
    fn equal_arcs_through_the_radius_route() {
        let a = arc("(t, t^(5/2), 0)");
        assert_eq!(contact_order_radius(&a, &a.clone(), &default_depth(&a, &a)).unwrap(), Contact::Infinite);
    }

    #[test]
    fn opposite_tangents() {
        assert_eq!(both_routes("(t, t^2, 0)", "(-t, t^2, 0)"), Contact::Finite(int(1)));
    }

    #[test]
    fn reparametrization_invariance() {
        // the same curve traced as (t, t^2) and (2t, 4t^2)
        let c = contact_order(&arc("(t, t^2, 0)"), &arc("(2*t, 4*t^2, 0)")).unwrap();
        assert_eq!(c, Contact::Infinite);
        let c = contact_order(&arc("(t, t^2, t^3)"), &arc("(2*t, 4*t^2, 0)")).unwrap();
        assert_eq!(c, Contact::Finite(int(3)));
    }

    #[test]
    fn fractional_orders() {
        assert_eq!(both_routes("(t, t^(3/2), 0)", "(t, 0, t^(3/2))"), Contact::Finite(rat(3, 2)));
        assert_eq!(both_routes("(0, t^2, t^3)", "(0, t^2, -t^3)"), Contact::Finite(rat(3, 2)));
    }

    #[test]
    fn non_monomial_parameter() {
        // x-coordinate t + t^2 forces a genuine reversion
        assert_eq!(both_routes("(t + t^2, t^2, 0)", "(t, t^2, 0)"), Contact::Finite(int(3)));
        assert_eq!(both_routes("(t + t^2, t^2 + 2*t^3, 0)", "(t, t^2, 0)"), Contact::Finite(int(4)));
    }

    #[test]
    fn truncation_is_reported() {
        let a = arc("(t + t^2, t^2 + 2*t^3 + t^4, 0)");
        let b = arc("(t, t^2, 0)");
        // same curve: x = t + t^2, y = (t + t^2)^2
        match contact_order(&a, &b) {
            Err(Error::Truncation { .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
