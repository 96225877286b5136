use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::model::MapGerm;
use crate::contact::PuiseuxArc;
use crate::error::{Error, Result};
use crate::kernel::resultant::{divided_difference, resultant};
use crate::kernel::upoly::count_roots_closed;
use crate::kernel::{isolate_real_roots, AlgebraicNumber, Field, FieldElem, NumberField, Poly, Rational, UPoly};

pub const SYSTEM_VARS: [&str; 2] = ["s", "s'"];

/// The double-point system in slope coordinates `y = s x`, `y' = s' x`.
#[derive(Clone, Debug)]
pub struct DoublePointSystem {
    pub p_tilde: Poly,
    pub q_tilde: Poly,
    /// Whether the line `x = 0` lies in the double-point set.
    pub vertical_in_d: bool,
}

/// Divided differences of `p` and `q` in `y`, restricted to lines through
/// the origin, with the common power of `x` removed.
pub fn double_point_system(f: &MapGerm) -> Result<DoublePointSystem> {
    let p_tilde = slope_form(f.p(), "p")?;
    let q_tilde = slope_form(f.q(), "q")?;
    let p01 = f.p().eval(&[Rational::zero(), Rational::from_integer(1.into())]);
    let q01 = f.q().eval(&[Rational::zero(), Rational::from_integer(1.into())]);
    let vertical_in_d = (f.d2().is_multiple_of(2) || p01.is_zero()) && (f.d3().is_multiple_of(2) || q01.is_zero());
    Ok(DoublePointSystem { p_tilde, q_tilde, vertical_in_d })
}

fn slope_form(g: &Poly, which: &str) -> Result<Poly> {
    let dd = divided_difference(g, "y", "y'");
    if dd.is_zero() {
        return Err(Error::FiniteDeterminacy(format!(
            "{which}: second or third coordinate independent of y after divided difference; \
             germ cannot be finitely determined"
        )));
    }
    // homogeneous of degree d - 1, so setting x = 1 divides out x^(d-1)
    let iy = dd.index_of("y").unwrap();
    let iz = dd.index_of("y'").unwrap();
    Ok(Poly::from_terms(&SYSTEM_VARS, dd.terms().map(|(m, c)| (vec![m[iy], m[iz]], c.clone()))))
}

/// A half-line from the origin in the source plane.
#[derive(Clone, Debug)]
pub enum Ray {
    /// `{(x, alpha x) : sign(x) = x_sign}`.
    Slope { slope: AlgebraicNumber, x_sign: i8 },
    /// `{(0, y) : sign(y) = y_sign}`.
    Vertical { y_sign: i8 },
}

impl Ray {
    pub fn is_vertical(&self) -> bool {
        matches!(self, Ray::Vertical { .. })
    }

    /// Sign of `x` on the ray (0 for vertical rays).
    pub fn x_sign(&self) -> i8 {
        match self {
            Ray::Slope { x_sign, .. } => *x_sign,
            Ray::Vertical { .. } => 0,
        }
    }

    /// Position in the counter-clockwise order starting just after the
    /// downward vertical: down, x > 0 by slope, up, x < 0 by slope.
    fn half_index(&self) -> u8 {
        match self {
            Ray::Vertical { y_sign } if *y_sign < 0 => 0,
            Ray::Slope { x_sign, .. } if *x_sign > 0 => 1,
            Ray::Vertical { .. } => 2,
            Ray::Slope { .. } => 3,
        }
    }

    pub fn angle_cmp(&self, other: &Ray) -> Ordering {
        self.half_index().cmp(&other.half_index()).then_with(|| match (self, other) {
            (Ray::Slope { slope: a, .. }, Ray::Slope { slope: b, .. }) => a.compare(b),
            _ => Ordering::Equal,
        })
    }

    /// Unit direction, for numerics.
    pub fn direction_f64(&self) -> (f64, f64) {
        match self {
            Ray::Slope { slope, x_sign } => {
                let a = slope.to_f64();
                let n = (1.0 + a * a).sqrt();
                (*x_sign as f64 / n, *x_sign as f64 * a / n)
            }
            Ray::Vertical { y_sign } => (0.0, *y_sign as f64),
        }
    }

    /// Angle in `[-pi/2, 3pi/2)`, for numerics.
    pub fn angle_f64(&self) -> f64 {
        let (x, y) = self.direction_f64();
        let a = y.atan2(x);
        if a < -std::f64::consts::FRAC_PI_2 {
            a + 2.0 * std::f64::consts::PI
        } else {
            a
        }
    }

    pub fn short_label(&self) -> String {
        match self {
            Ray::Slope { slope, x_sign } => {
                let side = if *x_sign > 0 { "x>0" } else { "x<0" };
                match slope.as_rational() {
                    Some(q) => format!("({side}, slope {q})"),
                    None => format!("({side}, slope {})", slope.approx_string()),
                }
            }
            Ray::Vertical { y_sign } => format!("(x=0, {})", if *y_sign > 0 { "y>0" } else { "y<0" }),
        }
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ray::Slope { slope, x_sign } => {
                let side = if *x_sign > 0 { "x>0" } else { "x<0" };
                match slope.as_rational() {
                    Some(q) => write!(f, "{side}, slope {q}"),
                    None => write!(f, "{side}, slope {slope} ~ {}", slope.approx_string()),
                }
            }
            Ray::Vertical { y_sign } => write!(f, "x=0, {}", if *y_sign > 0 { "y>0" } else { "y<0" }),
        }
    }
}

/// Double rays in counter-clockwise order with the image pairing.
#[derive(Clone, Debug)]
pub struct RaySystem {
    pub rays: Vec<Ray>,
    /// `pairing[i]` is the ray whose image arc coincides with that of ray `i`.
    pub pairing: Vec<usize>,
    pub vertical_in_d: bool,
}

impl RaySystem {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Pairing classes as sorted index pairs, in order of first ray.
    pub fn classes(&self) -> Vec<(usize, usize)> {
        (0..self.rays.len()).filter(|&i| i < self.pairing[i]).map(|i| (i, self.pairing[i])).collect()
    }

    /// Index of the pairing class containing each ray.
    pub fn class_of(&self) -> Vec<usize> {
        let classes = self.classes();
        (0..self.rays.len()).map(|i| classes.iter().position(|&(a, b)| a == i || b == i).unwrap()).collect()
    }
}

/// Real slopes of the double-point set with their partners.
pub fn double_rays(f: &MapGerm) -> Result<RaySystem> {
    let sys = double_point_system(f)?;
    let p01 = f.p().eval(&[Rational::zero(), Rational::from_integer(1.into())]);
    let q01 = f.q().eval(&[Rational::zero(), Rational::from_integer(1.into())]);
    if p01.is_zero() && q01.is_zero() {
        return Err(Error::FiniteDeterminacy("the line x = 0 is mapped to the origin".into()));
    }

    let mut rays = Vec::new();
    let mut pairing = Vec::new();
    let slopes = slope_pairs(&sys)?;
    for (i, partner) in slopes.iter().enumerate() {
        if let Some(j) = partner.partner {
            for sign in [1i8, -1] {
                rays.push((Ray::Slope { slope: partner.slope.clone(), x_sign: sign }, (i, j, sign)));
            }
        }
    }
    if sys.vertical_in_d {
        rays.push((Ray::Vertical { y_sign: 1 }, (usize::MAX, usize::MAX, 1)));
        rays.push((Ray::Vertical { y_sign: -1 }, (usize::MAX, usize::MAX, -1)));
    }
    rays.sort_by(|a, b| a.0.angle_cmp(&b.0));
    for (idx, (ray, (i, j, sign))) in rays.iter().enumerate() {
        let partner = if ray.is_vertical() {
            rays.iter().position(|(r, (_, _, s))| r.is_vertical() && s != sign).unwrap()
        } else {
            rays.iter().position(|(r, (k, _, s))| !r.is_vertical() && *k == *j && s == sign).unwrap()
        };
        debug_assert!(partner != idx && (ray.is_vertical() || i != j));
        pairing.push(partner);
    }
    let rs = RaySystem { rays: rays.into_iter().map(|(r, _)| r).collect(), pairing, vertical_in_d: sys.vertical_in_d };
    for (a, b) in rs.classes() {
        let arc_a = image_arc(f, &rs.rays[a]);
        let arc_b = image_arc(f, &rs.rays[b]);
        if !arc_a.same_arc(&arc_b) {
            return Err(Error::FiniteDeterminacy(format!(
                "paired rays {} and {} have different image arcs",
                rs.rays[a], rs.rays[b]
            )));
        }
    }
    Ok(rs)
}

/// A real root of the eliminant and its (unique) partner, if any.
#[derive(Clone, Debug)]
pub struct SlopePair {
    pub slope: AlgebraicNumber,
    pub partner: Option<usize>,
}

/// Solves `p~ = q~ = 0` over the reals.
///
/// `R(s) = Res_{s'}(p~, q~)` holds every solution's first coordinate. For a
/// root `alpha_i` the partners are the real roots of
/// `gcd(p~(alpha_i, s'), q~(alpha_i, s'))` over `Q(alpha_i)`; since the
/// system is symmetric these are again roots of `R` and are located by
/// Sturm counts inside the isolating intervals of the other roots.
pub fn slope_pairs(sys: &DoublePointSystem) -> Result<Vec<SlopePair>> {
    let p = &sys.p_tilde;
    let q = &sys.q_tilde;
    if p.constant_value().is_some_and(|c| !c.is_zero()) || q.constant_value().is_some_and(|c| !c.is_zero()) {
        return Ok(Vec::new());
    }
    if p.degree_in("s'") == 0 && q.degree_in("s'") == 0 {
        return Ok(Vec::new());
    }
    let r = resultant(p, q, "s'")?;
    if r.is_zero() {
        return Err(Error::FiniteDeterminacy(
            "the double-point equations share a factor; the double-point set is not a finite union of lines".into(),
        ));
    }
    let r = r.to_upoly("s").expect("resultant depends on s only");
    if r.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let roots: Vec<AlgebraicNumber> = isolate_real_roots(&r)?.into_iter().map(|rr| rr.value).collect();
    let mut out = Vec::with_capacity(roots.len());
    for (i, alpha) in roots.iter().enumerate() {
        let field = NumberField::new(alpha.clone());
        let pa = specialize(p, &field);
        let qa = specialize(q, &field);
        let g = pa.gcd(&qa);
        let mut partners = Vec::new();
        if g.degree().unwrap_or(0) > 0 {
            let seq = g.sturm_sequence();
            for (j, beta) in roots.iter().enumerate() {
                let (lo, hi) = beta.interval();
                let hit = if lo == hi {
                    Field::is_zero_elem(&g.eval(&FieldElem::rational(lo.clone())))
                } else {
                    count_roots_closed(&seq, &FieldElem::rational(lo.clone()), &FieldElem::rational(hi.clone())) > 0
                };
                if hit {
                    partners.push(j);
                }
            }
        }
        if partners.contains(&i) {
            return Err(Error::FiniteDeterminacy(format!(
                "singular ray off the origin at slope {} (cross-cap line)",
                display_slope(alpha)
            )));
        }
        if partners.len() >= 2 {
            return Err(Error::FiniteDeterminacy(format!(
                "ray of slope {} is identified with {} other rays (triple point line)",
                display_slope(alpha),
                partners.len()
            )));
        }
        out.push(SlopePair { slope: alpha.clone(), partner: partners.first().copied() });
    }
    Ok(out)
}

fn display_slope(a: &AlgebraicNumber) -> String {
    match a.as_rational() {
        Some(q) => q.to_string(),
        None => a.approx_string(),
    }
}

/// `h(alpha, s')` as a polynomial in `s'` over `Q(alpha)`.
fn specialize(h: &Poly, field: &std::sync::Arc<NumberField>) -> UPoly<FieldElem> {
    let coeffs = h.coeffs_in("s'");
    UPoly::new(
        coeffs
            .iter()
            .map(|c| FieldElem::from_poly(field, c.to_upoly("s").expect("coefficient depends on s only")))
            .collect(),
    )
}

/// Image of a ray as an arc in a positive parameter `t`.
pub fn image_arc(f: &MapGerm, ray: &Ray) -> PuiseuxArc {
    let one = Rational::from_integer(1.into());
    let (x, p_lead, q_lead, sign) = match ray {
        Ray::Slope { slope, x_sign } => {
            let field = NumberField::new(slope.clone());
            let p1 = FieldElem::from_poly(&field, restrict(f.p()));
            let q1 = FieldElem::from_poly(&field, restrict(f.q()));
            (FieldElem::rational(Rational::from_integer((*x_sign as i64).into())), p1, q1, *x_sign)
        }
        Ray::Vertical { y_sign } => {
            let p0 = f.p().eval(&[Rational::zero(), one.clone()]);
            let q0 = f.q().eval(&[Rational::zero(), one.clone()]);
            (FieldElem::rational(Rational::zero()), FieldElem::rational(p0), FieldElem::rational(q0), *y_sign)
        }
    };
    let sgn = |d: u32| FieldElem::rational(Rational::from_integer(((sign as i64).pow(d)).into()));
    let coords = [
        vec![(one.clone(), x)],
        vec![(Rational::from_integer(f.d2().into()), p_lead.mul(&sgn(f.d2())))],
        vec![(Rational::from_integer(f.d3().into()), q_lead.mul(&sgn(f.d3())))],
    ];
    PuiseuxArc::from_terms(coords, ray.short_label()).expect("image arcs of valid germs are nonconstant")
}

/// `g(1, s)` as a univariate polynomial in `s`.
pub fn restrict(g: &Poly) -> UPoly<Rational> {
    let iy = g.index_of("y").unwrap();
    let mut coeffs = vec![Rational::zero(); g.degree_in("y") as usize + 1];
    for (m, c) in g.terms() {
        coeffs[m[iy] as usize] += c;
    }
    UPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::parse_germ;
    use crate::kernel::rational::int;
    use crate::parse::parse_poly;

    fn germ(p: &str, q: &str) -> MapGerm {
        parse_germ(&format!("p = {p}\nq = {q}")).unwrap()
    }

    #[test]
    fn system_examples() {
        let s = double_point_system(&germ("y^2", "y^3 - x^2*y")).unwrap();
        assert_eq!(s.p_tilde, parse_poly("s + s'", &SYSTEM_VARS).unwrap());
        assert_eq!(s.q_tilde, parse_poly("s^2 + s*s' + s'^2 - 1", &SYSTEM_VARS).unwrap());
        assert!(!s.vertical_in_d);
        let s = double_point_system(&germ("y^2", "(x+y)^3")).unwrap();
        assert_eq!(s.q_tilde, parse_poly("(1+s)^2 + (1+s)*(1+s') + (1+s')^2", &SYSTEM_VARS).unwrap());
        assert!(!s.vertical_in_d);
        assert!(matches!(double_point_system(&germ("x^2", "y^3")), Err(Error::FiniteDeterminacy(_))));
        let s = double_point_system(&germ("x^2*y^2", "y^5")).unwrap();
        assert!(!s.vertical_in_d);
        let s = double_point_system(&germ("x*y", "y^4 + x^4")).unwrap();
        assert!(s.vertical_in_d);
    }

    #[test]
    fn e1_rays() {
        let rs = double_rays(&germ("y^2", "y^3 - x^2*y")).unwrap();
        assert_eq!(rs.len(), 4);
        let slopes: Vec<(i8, Rational)> = rs
            .rays
            .iter()
            .map(|r| match r {
                Ray::Slope { slope, x_sign } => (*x_sign, slope.as_rational().unwrap().clone()),
                _ => panic!(),
            })
            .collect();
        assert_eq!(slopes, vec![(1, int(-1)), (1, int(1)), (-1, int(-1)), (-1, int(1))]);
        assert_eq!(rs.pairing, vec![1, 0, 3, 2]);
        assert!(!rs.vertical_in_d);
    }

    #[test]
    fn twisted_cubic_germ_has_no_rays() {
        let rs = double_rays(&germ("y^2", "(x+y)^3")).unwrap();
        assert!(rs.is_empty());
    }

    #[test]
    fn irrational_slopes() {
        // (y^2, y^5 - 2x^4 y): partners +-2^(1/4)
        let rs = double_rays(&germ("y^2", "y^5 - 2*x^4*y")).unwrap();
        assert_eq!(rs.len(), 4);
        for r in &rs.rays {
            if let Ray::Slope { slope, .. } = r {
                assert!((slope.to_f64().abs() - 2f64.powf(0.25)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn vertical_rays_pair_with_each_other() {
        let rs = double_rays(&germ("y^2", "x^3*y")).unwrap();
        assert!(rs.vertical_in_d);
        let v: Vec<usize> = (0..rs.len()).filter(|&i| rs.rays[i].is_vertical()).collect();
        assert_eq!(v.len(), 2);
        assert_eq!(rs.pairing[v[0]], v[1]);
    }

    #[test]
    fn cross_cap_double_line_is_vertical() {
        let rs = double_rays(&germ("y^2", "x*y")).unwrap();
        assert_eq!(rs.len(), 2);
        assert!(rs.rays.iter().all(Ray::is_vertical));
    }

    #[test]
    fn rejects_degenerate_germs() {
        assert!(matches!(double_rays(&germ("(y-x)^2", "(y-x)^3")), Err(Error::FiniteDeterminacy(_))));
        assert!(matches!(double_rays(&germ("y^3 - x^2*y", "y^4 - x^2*y^2")), Err(Error::FiniteDeterminacy(_))));
    }

    #[test]
    fn image_arcs_of_partners_agree() {
        let f = germ("y^2", "y^3 - x^2*y");
        let rs = double_rays(&f).unwrap();
        let a = image_arc(&f, &rs.rays[0]);
        assert_eq!(a.to_string(), "(t, t^2, 0)");
        let g = germ("y^2", "y^3");
        let v = image_arc(&g, &Ray::Vertical { y_sign: 1 });
        assert_eq!(v.to_string(), "(0, t^2, t^3)");
    }
}
