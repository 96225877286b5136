use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::germ::{restrict, MapGerm, Ray, RaySystem};
use crate::kernel::Rational;

/// Arc of source directions between two cyclically consecutive double
/// rays, counter-clockwise from `start` to `end`. Both are `None` for the
/// full circle of a germ without double rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub start: Option<usize>,
    pub end: Option<usize>,
    /// A vertical direction lies strictly inside the sector.
    pub vertical_interior: bool,
    /// An endpoint is vertical.
    pub vertical_boundary: bool,
    pub contains_positive_x: bool,
    pub contains_negative_x: bool,
    /// The sector passes through the downward vertical, where the cyclic
    /// ray order restarts.
    pub wraps: bool,
}

impl Sector {
    pub fn contains_vertical(&self) -> bool {
        self.vertical_interior || self.vertical_boundary
    }

    pub fn is_full_circle(&self) -> bool {
        self.start.is_none()
    }

    /// Start and end angles with `end > start`, both in radians.
    pub fn angle_range(&self, rs: &RaySystem) -> (f64, f64) {
        match (self.start, self.end) {
            (Some(s), Some(e)) => {
                let (a, mut b) = (rs.rays[s].angle_f64(), rs.rays[e].angle_f64());
                if b <= a {
                    b += 2.0 * PI;
                }
                (a, b)
            }
            _ => (-PI / 2.0, 1.5 * PI),
        }
    }

    pub fn label(&self, rs: &RaySystem) -> String {
        match (self.start, self.end) {
            (Some(s), Some(e)) => format!("{} -> {}", rs.rays[s].short_label(), rs.rays[e].short_label()),
            _ => "full circle".into(),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.start, self.end) {
            (Some(s), Some(e)) => write!(f, "r{} -> r{}", s + 1, e + 1),
            _ => f.write_str("full circle"),
        }
    }
}

/// Quarter index in the counter-clockwise order: 0 downward vertical,
/// 1 the open half `x > 0`, 2 upward vertical, 3 the open half `x < 0`.
fn quarter(r: &Ray) -> u8 {
    match r {
        Ray::Vertical { y_sign } if *y_sign < 0 => 0,
        Ray::Slope { x_sign, .. } if *x_sign > 0 => 1,
        Ray::Vertical { .. } => 2,
        Ray::Slope { .. } => 3,
    }
}

pub fn sector_decomposition(rs: &RaySystem) -> Vec<Sector> {
    let n = rs.len();
    if n == 0 {
        return vec![Sector {
            start: None,
            end: None,
            vertical_interior: true,
            vertical_boundary: false,
            contains_positive_x: true,
            contains_negative_x: true,
            wraps: true,
        }];
    }
    (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let (hs, he) = (quarter(&rs.rays[i]), quarter(&rs.rays[j]));
            let wraps = j <= i;
            let (vertical_interior, contains_positive_x, contains_negative_x) = if wraps {
                // covers hs..=3, then 0..=he; the downward vertical is
                // interior unless it is the end ray
                (he != 0 || hs < 2, hs <= 1 || he >= 1, true)
            } else {
                (hs < 2 && he > 2, hs <= 1 && he >= 1, he == 3)
            };
            Sector {
                start: Some(i),
                end: Some(j),
                vertical_interior,
                vertical_boundary: rs.rays[i].is_vertical() || rs.rays[j].is_vertical(),
                contains_positive_x,
                contains_negative_x,
                wraps,
            }
        })
        .collect()
}

/// Minimum contact order between the image arcs of directions in the
/// closed sector.
///
/// A vertical arc has vanishing first coordinate, so its contact with any
/// other arc is 1. Two slope arcs share the tangent `(±1, 0, 0)` and meet
/// with order `d_j` at the first target coordinate that separates them;
/// over a whole sector, coordinate `j` separates some pair exactly when
/// `f_j(1, s)` is non-constant.
pub fn sector_exponent(f: &MapGerm, sec: &Sector) -> Result<Rational> {
    if sec.contains_vertical() {
        return Ok(Rational::from_integer(1.into()));
    }
    [(f.d2(), f.p()), (f.d3(), f.q())]
        .into_iter()
        .filter(|(_, g)| restrict(g).degree().unwrap_or(0) > 0)
        .map(|(d, _)| Rational::from_integer(d.into()))
        .min()
        .ok_or_else(|| Error::FiniteDeterminacy("sector collapses to a curve".into()))
}
