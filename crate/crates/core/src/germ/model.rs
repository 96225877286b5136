use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kernel::{Poly, Rational};
use crate::parse::parse_assignments;

pub const SOURCE_VARS: [&str; 2] = ["x", "y"];

/// A corank-1 homogeneous germ `(x, y) -> (x, p(x, y), q(x, y))`.
#[derive(Clone, Debug)]
pub struct MapGerm {
    name: String,
    p: Poly,
    q: Poly,
    d2: u32,
    d3: u32,
}

impl MapGerm {
    pub fn new(name: impl Into<String>, p: Poly, q: Poly) -> Result<Self> {
        let p = p.with_vars(&SOURCE_VARS);
        let q = q.with_vars(&SOURCE_VARS);
        let d2 = check_component(&p, "p")?;
        let d3 = check_component(&q, "q")?;
        Ok(MapGerm { name: name.into(), p, q, d2, d3 })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn d2(&self) -> u32 {
        self.d2
    }

    pub fn d3(&self) -> u32 {
        self.d3
    }

    /// Non-fatal remarks about the germ.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        let g = self.d2.gcd(&self.d3);
        if g > 1 {
            w.push(format!("gcd(d2, d3) = {g} > 1; the generic-germ hypothesis on coprime degrees does not hold"));
        }
        w
    }

    /// `f o (x, y + c x)`.
    pub fn sheared(&self, c: &Rational) -> MapGerm {
        let shift = Poly::var(&SOURCE_VARS, "y").add(&Poly::var(&SOURCE_VARS, "x").scale(c));
        MapGerm {
            name: format!("{} sheared by {c}", self.name),
            p: self.p.substitute("y", &shift),
            q: self.q.substitute("y", &shift),
            d2: self.d2,
            d3: self.d3,
        }
    }

    /// `(x, lambda p, mu q)`.
    pub fn scaled(&self, lambda: &Rational, mu: &Rational) -> MapGerm {
        assert!(!lambda.is_zero() && !mu.is_zero(), "scaling factors must be nonzero");
        MapGerm {
            name: format!("{} scaled by ({lambda}, {mu})", self.name),
            p: self.p.scale(lambda),
            q: self.q.scale(mu),
            d2: self.d2,
            d3: self.d3,
        }
    }

    /// `(x, q, p)`: swaps the two target coordinates.
    pub fn swapped(&self) -> MapGerm {
        MapGerm {
            name: format!("{} swapped", self.name),
            p: self.q.clone(),
            q: self.p.clone(),
            d2: self.d3,
            d3: self.d2,
        }
    }

    pub fn to_file_string(&self) -> String {
        format!("name = \"{}\"\np = {}\nq = {}\n", self.name, self.p, self.q)
    }
}

impl fmt::Display for MapGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, {}, {})", self.p, self.q)
    }
}

fn check_component(f: &Poly, which: &str) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(Error::NonHomogeneous { which: which.into() });
    }
    let d = f.total_degree().unwrap();
    if d < 2 {
        return Err(Error::DegreeTooLow { which: which.into(), degree: d });
    }
    Ok(d)
}

/// Parses and validates a germ file.
pub fn parse_germ(text: &str) -> Result<MapGerm> {
    let a = parse_assignments(text, &SOURCE_VARS, &["p", "q"])?;
    let mut p = None;
    let mut q = None;
    for (k, poly, _) in a.entries {
        match k.as_str() {
            "p" => p = Some(poly),
            _ => q = Some(poly),
        }
    }
    MapGerm::new(a.name.unwrap_or_else(|| "germ".into()), p.unwrap(), q.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;

    #[test]
    fn parses_examples() {
        let e1 = parse_germ("p = y^2\nq = y^3 - x^2*y").unwrap();
        assert_eq!((e1.d2(), e1.d3()), (2, 3));
        let e2 = parse_germ("name = \"e2\"\np = y^2\nq = (x+y)^3").unwrap();
        assert_eq!((e2.d2(), e2.d3()), (2, 3));
        assert_eq!(e2.name(), "e2");
        assert!(e1.warnings().is_empty());
    }

    #[test]
    fn rejects_invalid() {
        assert!(matches!(parse_germ("p = y^2 + x\nq = y^3"), Err(Error::NonHomogeneous { .. })));
        assert!(matches!(parse_germ("p = y\nq = y^3"), Err(Error::DegreeTooLow { .. })));
        assert!(matches!(parse_germ("p = 0\nq = y^3"), Err(Error::ZeroPolynomial)));
        assert!(matches!(parse_germ("p = y^2\nq = y^^3"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn shear_and_scale_preserve_degrees() {
        let e1 = parse_germ("p = y^2\nq = y^3 - x^2*y").unwrap();
        let s = e1.sheared(&rat(1, 2));
        assert_eq!(s.p(), &crate::parse::parse_poly("(y + 1/2*x)^2", &SOURCE_VARS).unwrap());
        assert!(s.p().is_homogeneous() && s.q().is_homogeneous());
        let t = e1.scaled(&rat(2, 1), &rat(-1, 3));
        assert_eq!((t.d2(), t.d3()), (2, 3));
        let back = parse_germ(&e1.to_file_string()).unwrap();
        assert_eq!(back.p(), e1.p());
        assert_eq!(back.q(), e1.q());
    }
}
