use crate::classifier::Sector;
use crate::contact::PuiseuxArc;
use crate::error::{Error, Result};
use crate::germ::{MapGerm, RaySystem};

/// Radii used when none are given: 16 values log-spaced in `[1e-4, 1e-1]`.
pub const DEFAULT_RADII: (f64, f64, usize) = (1e-4, 1e-1, 16);

/// Distances below this are treated as zero.
pub const COINCIDENCE: f64 = 1e-12;

/// Fits with a larger RMS residual drop their largest decade.
pub const RESIDUAL_LIMIT: f64 = 0.05;

/// Strictly decreasing, log-spaced radii from `hi` down to `lo`.
pub fn radius_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && count >= 2) {
        return Err(Error::Oracle(format!("bad radius grid {lo},{hi},{count}")));
    }
    let (a, b) = (hi.ln(), lo.ln());
    Ok((0..count).map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp()).collect())
}

/// Points of an arc on spheres of decreasing radii.
#[derive(Clone, Debug)]
pub struct SampledArc {
    pub radii: Vec<f64>,
    pub points: Vec<[f64; 3]>,
}

fn norm(p: &[f64; 3]) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

pub(crate) fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    norm(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]])
}

/// Solves `|gamma(t)| = r` by bracketing and bisection; `|gamma|` must be
/// increasing near 0.
pub fn point_at_radius(gamma: &dyn Fn(f64) -> [f64; 3], r: f64) -> [f64; 3] {
    let f = |t: f64| norm(&gamma(t));
    let (mut lo, mut hi) = (r, r);
    while f(lo) > r && lo > 1e-300 {
        lo *= 0.5;
    }
    while f(hi) < r {
        hi *= 2.0;
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    gamma(0.5 * (lo + hi))
}

impl SampledArc {
    pub fn sample(gamma: &dyn Fn(f64) -> [f64; 3], radii: &[f64]) -> Self {
        let points = radii.iter().map(|&r| point_at_radius(gamma, r)).collect();
        SampledArc { radii: radii.to_vec(), points }
    }

    pub fn from_arc(arc: &PuiseuxArc, radii: &[f64]) -> Self {
        Self::sample(&|t| arc.eval(t), radii)
    }

    /// Largest relative deviation of `|point|` from its radius.
    pub fn radius_error(&self) -> f64 {
        self.radii.iter().zip(&self.points).map(|(r, p)| (norm(p) - r).abs() / r).fold(0.0, f64::max)
    }
}

/// A log-log regression of distance against radius.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactEstimate {
    /// Fitted slope, `f64::INFINITY` when the arcs coincide numerically.
    pub order: f64,
    pub residual: f64,
    /// Samples used by the final fit, as `(ln r, ln dist)`.
    pub used: Vec<(f64, f64)>,
    pub infinite: bool,
}

fn fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let rss: f64 = points.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
    (slope, (rss / n).sqrt())
}

/// Order of vanishing of `dist(A(r), B(r))` in `r`.
///
/// Distances below the floating-point resolution of the points (`64 eps r`)
/// carry no information and are left out; if nothing usable remains the
/// arcs are reported as coinciding.
pub fn estimate_contact(a: &SampledArc, b: &SampledArc) -> Result<ContactEstimate> {
    if a.radii != b.radii {
        return Err(Error::Oracle("arcs sampled on different radius grids".into()));
    }
    let radii = &a.radii;
    let span = radii.iter().cloned().fold(0.0, f64::max) / radii.iter().cloned().fold(f64::INFINITY, f64::min);
    if radii.len() < 4 || span < 100.0 * (1.0 - 1e-9) {
        return Err(Error::Oracle("need at least 4 radii spanning at least 2 decades".into()));
    }
    let d: Vec<f64> = a.points.iter().zip(&b.points).map(|(p, q)| dist(p, q)).collect();
    let infinite = ContactEstimate { order: f64::INFINITY, residual: 0.0, used: Vec::new(), infinite: true };
    if d.iter().all(|&x| x < COINCIDENCE) {
        return Ok(infinite);
    }
    let usable: Vec<(f64, f64)> = radii
        .iter()
        .zip(&d)
        .filter(|(r, x)| **x > 64.0 * f64::EPSILON * **r && **x >= COINCIDENCE)
        .map(|(r, x)| (r.ln(), x.ln()))
        .collect();
    if usable.len() < 4 {
        return Ok(infinite);
    }
    let (mut slope, mut residual) = fit(&usable);
    let mut used = usable.clone();
    if residual > RESIDUAL_LIMIT {
        let top = usable.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let trimmed: Vec<(f64, f64)> = usable.iter().copied().filter(|p| p.0 < top - std::f64::consts::LN_10).collect();
        if trimmed.len() >= 4 {
            (slope, residual) = fit(&trimmed);
            used = trimmed;
        }
    }
    Ok(ContactEstimate { order: slope, residual, used, infinite: false })
}

/// Image under `f` of the source direction at angle `theta`.
pub fn direction_arc(f: &MapGerm, theta: f64) -> impl Fn(f64) -> [f64; 3] + '_ {
    let (c, s) = (theta.cos(), theta.sin());
    let pv = f.p().eval_f64(&[c, s]);
    let qv = f.q().eval_f64(&[c, s]);
    let (d2, d3) = (f.d2() as i32, f.d3() as i32);
    move |t: f64| [c * t, pv * t.powi(d2), qv * t.powi(d3)]
}

#[derive(Clone, Debug)]
pub struct SectorEstimate {
    /// Minimum over reliable pairs, or over all pairs if none is reliable.
    pub exponent: f64,
    pub residual: f64,
    /// Angles of the minimizing pair.
    pub pair: (f64, f64),
    /// Whether the minimum came from a fit within the residual limit.
    pub reliable: bool,
}

/// Minimum estimated contact over pairs of `samples` evenly spaced
/// directions in the closed sector.
///
/// Fits whose residual stays above [`RESIDUAL_LIMIT`] are still in the
/// pre-asymptotic regime on this radius grid; they only count when no pair
/// fits cleanly.
pub fn estimate_sector_exponent(
    f: &MapGerm,
    rs: &RaySystem,
    sec: &Sector,
    samples: usize,
    radii: &[f64],
) -> Result<SectorEstimate> {
    if samples < 2 {
        return Err(Error::Oracle("need >= 2 directions".into()));
    }
    let (a, b) = sec.angle_range(rs);
    // the full circle would sample its starting direction twice
    let denom = if sec.is_full_circle() { samples } else { samples - 1 };
    let angles: Vec<f64> = (0..samples).map(|i| a + (b - a) * i as f64 / denom as f64).collect();
    let arcs: Vec<SampledArc> = angles.iter().map(|&t| SampledArc::sample(&direction_arc(f, t), radii)).collect();
    let mut best: Option<(bool, SectorEstimate)> = None;
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            let e = estimate_contact(&arcs[i], &arcs[j])?;
            if e.infinite {
                continue;
            }
            let reliable = e.residual <= RESIDUAL_LIMIT;
            let cand =
                SectorEstimate { exponent: e.order, residual: e.residual, pair: (angles[i], angles[j]), reliable };
            let better = match &best {
                None => true,
                Some((r, cur)) => (reliable && !r) || (reliable == *r && cand.exponent < cur.exponent),
            };
            if better {
                best = Some((reliable, cand));
            }
        }
    }
    best.map(|(_, e)| e).ok_or_else(|| Error::Oracle("all sampled directions have coinciding images".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(s: &str) -> SampledArc {
        let radii = radius_grid(1e-4, 1e-1, 16).unwrap();
        SampledArc::from_arc(&PuiseuxArc::from_literal(s, s).unwrap(), &radii)
    }

    #[test]
    fn grid_and_radii() {
        let g = radius_grid(1e-4, 1e-1, 16).unwrap();
        assert!(g.windows(2).all(|w| w[0] > w[1]));
        assert!((g[0] - 0.1).abs() < 1e-15 && (g[15] - 1e-4).abs() < 1e-18);
        assert!(arc("(t, t^2, t^(5/2))").radius_error() < 1e-9);
    }

    #[test]
    fn contact_examples() {
        let e = estimate_contact(&arc("(t, 0, 0)"), &arc("(0, t, 0)")).unwrap();
        assert!((e.order - 1.0).abs() < 0.05);
        let e = estimate_contact(&arc("(t, t^2, 0)"), &arc("(t, t^2, t^3)")).unwrap();
        assert!((e.order - 3.0).abs() < 0.1, "{}", e.order);
        assert!(estimate_contact(&arc("(t, t^2, 0)"), &arc("(t, t^2, 0)")).unwrap().infinite);
    }

    #[test]
    fn short_grids_rejected() {
        let radii = radius_grid(1e-2, 1e-1, 8).unwrap();
        let a = SampledArc::sample(&|t| [t, 0.0, 0.0], &radii);
        let b = SampledArc::sample(&|t| [0.0, t, 0.0], &radii);
        assert!(estimate_contact(&a, &b).is_err());
    }
}
