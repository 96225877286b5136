use super::arcs::dist;
use crate::error::{Error, Result};
use crate::kernel::Poly;

/// A closed polyline on the sphere of radius `radius`; the last point
/// connects back to the first.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkPolyline {
    pub points: Vec<[f64; 3]>,
    pub radius: f64,
}

fn add(a: [f64; 3], b: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn scale_to(p: [f64; 3], r: f64) -> [f64; 3] {
    let n = dot(p, p).sqrt();
    [p[0] * r / n, p[1] * r / n, p[2] * r / n]
}

impl LinkPolyline {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn centroid(&self) -> [f64; 3] {
        let n = self.points.len() as f64;
        let s = self.points.iter().fold([0.0; 3], |acc, p| add(acc, *p, 1.0));
        [s[0] / n, s[1] / n, s[2] / n]
    }

    pub fn length(&self) -> f64 {
        (0..self.len()).map(|i| dist(&self.points[i], &self.points[(i + 1) % self.len()])).sum()
    }

    pub fn scaled(&self, factor: f64) -> LinkPolyline {
        LinkPolyline {
            points: self.points.iter().map(|p| [p[0] * factor, p[1] * factor, p[2] * factor]).collect(),
            radius: self.radius * factor,
        }
    }

    /// Starts at the vertex of largest `x` (then `y`, `z`) and runs
    /// counter-clockwise seen from outside the sphere around the centroid
    /// direction (around `+z` when the centroid is near the origin).
    pub fn canonicalized(&self) -> LinkPolyline {
        let mut pts = self.points.clone();
        let c = self.centroid();
        let axis = if dot(c, c).sqrt() < 1e-6 * self.radius { [0.0, 0.0, 1.0] } else { c };
        let n = (0..pts.len()).fold([0.0; 3], |acc, i| add(acc, cross(pts[i], pts[(i + 1) % pts.len()]), 1.0));
        if dot(n, axis) < 0.0 {
            pts.reverse();
        }
        let start = (0..pts.len())
            .max_by(|&i, &j| {
                let (a, b) = (pts[i], pts[j]);
                a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])).then(a[2].total_cmp(&b[2]))
            })
            .unwrap();
        pts.rotate_left(start);
        LinkPolyline { points: pts, radius: self.radius }
    }

    /// Point at arc-length fraction `s` in `[0, 1)`, pushed radially onto
    /// the sphere.
    pub fn at_fraction(&self, s: f64) -> [f64; 3] {
        let total = self.length();
        let mut target = s.rem_euclid(1.0) * total;
        for i in 0..self.len() {
            let (a, b) = (self.points[i], self.points[(i + 1) % self.len()]);
            let l = dist(&a, &b);
            if target <= l || i + 1 == self.len() {
                let t = if l > 0.0 { (target / l).min(1.0) } else { 0.0 };
                return scale_to(add(a, [b[0] - a[0], b[1] - a[1], b[2] - a[2]], t), self.radius);
            }
            target -= l;
        }
        self.points[0]
    }

    /// Closest point to `p` among the radially projected segments:
    /// `(distance, arc-length fraction)`. Inverts [`Self::at_fraction`].
    pub fn project(&self, p: [f64; 3]) -> (f64, f64) {
        let n = self.len();
        let seg = |i: usize| (self.points[i], self.points[(i + 1) % n]);
        let chord = |i: usize, t: f64| {
            let (a, b) = seg(i);
            add(a, [b[0] - a[0], b[1] - a[1], b[2] - a[2]], t)
        };
        // coarse pass on the chords, then a golden-section search on the
        // projected curve near the best chord
        let coarse = (0..n)
            .map(|i| {
                let (a, b) = seg(i);
                let ab = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                let l2 = dot(ab, ab);
                let t = if l2 > 0.0 {
                    (dot([p[0] - a[0], p[1] - a[1], p[2] - a[2]], ab) / l2).clamp(0.0, 1.0)
                } else {
                    0.0
                };
                (dist(&p, &chord(i, t)), i)
            })
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .unwrap()
            .1;
        let offsets: Vec<f64> = (0..n)
            .scan(0.0, |acc, i| {
                let o = *acc;
                *acc += dist(&self.points[i], &self.points[(i + 1) % n]);
                Some(o)
            })
            .collect();
        let total = self.length();
        let mut best = (f64::INFINITY, 0.0);
        for i in [(coarse + n - 1) % n, coarse, (coarse + 1) % n] {
            let f = |t: f64| dist(&p, &scale_to(chord(i, t), self.radius));
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            let g = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..80 {
                let (m1, m2) = (hi - g * (hi - lo), lo + g * (hi - lo));
                if f(m1) <= f(m2) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let t = 0.5 * (lo + hi);
            let d = f(t);
            if d < best.0 {
                let (a, b) = seg(i);
                best = (d, (offsets[i] + t * dist(&a, &b)) / total);
            }
        }
        best
    }
}

struct Surface<'a> {
    phi: &'a Poly,
    radius: f64,
}

impl Surface<'_> {
    fn value(&self, p: [f64; 3]) -> f64 {
        self.phi.eval_f64(&p)
    }

    /// Gradient of `phi` projected to the tangent plane of the sphere.
    fn tangential_gradient(&self, p: [f64; 3]) -> ([f64; 3], f64) {
        let g = self.phi.grad_f64(&p);
        let g = [g[0], g[1], g[2]];
        let n = scale_to(p, 1.0);
        let gt = add(g, n, -dot(g, n));
        (gt, dot(g, g).sqrt())
    }

    /// Newton steps along the tangential gradient, staying on the sphere.
    fn correct(&self, mut q: [f64; 3]) -> Result<[f64; 3]> {
        for _ in 0..40 {
            let v = self.value(q);
            let (gt, g) = self.tangential_gradient(q);
            let gt2 = dot(gt, gt);
            if gt2.sqrt() <= 1e-10 * g.max(1e-300) {
                return Err(self.diverged(q));
            }
            if v.abs() <= 1e-13 * g * self.radius {
                return Ok(q);
            }
            q = scale_to(add(q, gt, -v / gt2), self.radius);
        }
        Err(self.diverged(q))
    }

    fn diverged(&self, q: [f64; 3]) -> Error {
        Error::Oracle(format!(
            "corrector diverged near ({:.6}, {:.6}, {:.6}); the link is singular there",
            q[0], q[1], q[2]
        ))
    }

    fn tangent(&self, p: [f64; 3]) -> [f64; 3] {
        let (gt, _) = self.tangential_gradient(p);
        scale_to(cross(scale_to(p, 1.0), gt), 1.0)
    }
}

fn sphere_point(r: f64, lat: f64, lon: f64) -> [f64; 3] {
    [r * lat.cos() * lon.cos(), r * lat.cos() * lon.sin(), r * lat.sin()]
}

/// Components of `{phi = 0}` on the sphere of radius `r`, traced with
/// steps of length `step * r`, sorted by centroid `(z, y, x)` and put in
/// canonical start and orientation.
pub fn trace_link(phi: &Poly, r: f64, step: f64) -> Result<Vec<LinkPolyline>> {
    if !phi.is_homogeneous() {
        return Err(Error::Oracle("phi must be homogeneous".into()));
    }
    if !(r > 0.0 && step > 0.0 && step < 0.5) {
        return Err(Error::Oracle("need radius > 0 and 0 < step < 0.5".into()));
    }
    let surf = Surface { phi, radius: r };
    let h = step * r;
    let seeds = seeds(&surf)?;
    if seeds.is_empty() {
        return Err(Error::Oracle("empty link: phi has no zeros on the sphere".into()));
    }
    let mut comps: Vec<LinkPolyline> = Vec::new();
    for seed in seeds {
        let near = comps.iter().any(|c| c.points.iter().any(|p| dist(p, &seed) < 2.0 * h));
        if near {
            continue;
        }
        comps.push(trace_from(&surf, seed, h)?);
    }
    let mut comps: Vec<LinkPolyline> = comps.iter().map(LinkPolyline::canonicalized).collect();
    comps.sort_by(|a, b| {
        let (ca, cb) = (a.centroid(), b.centroid());
        ca[2].total_cmp(&cb[2]).then(ca[1].total_cmp(&cb[1])).then(ca[0].total_cmp(&cb[0]))
    });
    Ok(comps)
}

/// Sign changes of `phi` along the edges of a latitude-longitude grid,
/// refined by bisection and Newton correction.
fn seeds(surf: &Surface) -> Result<Vec<[f64; 3]>> {
    use std::f64::consts::PI;
    let (nlat, nlon) = (48usize, 96usize);
    let r = surf.radius;
    let grid: Vec<Vec<[f64; 3]>> = (0..=nlat)
        .map(|i| {
            let lat = -PI / 2.0 + PI * (i as f64 + 0.5) / (nlat as f64 + 1.0);
            (0..nlon).map(|j| sphere_point(r, lat, 2.0 * PI * j as f64 / nlon as f64)).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut edge = |a: [f64; 3], b: [f64; 3]| -> Result<()> {
        let (fa, fb) = (surf.value(a), surf.value(b));
        if fa == 0.0 || fa.signum() == fb.signum() {
            return Ok(());
        }
        let (mut lo, mut hi) = (a, b);
        for _ in 0..60 {
            let mid = scale_to(add(lo, hi, 1.0), r);
            if surf.value(mid).signum() == fa.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(surf.correct(lo)?);
        Ok(())
    };
    for i in 0..=nlat {
        for j in 0..nlon {
            edge(grid[i][j], grid[i][(j + 1) % nlon])?;
            if i < nlat {
                edge(grid[i][j], grid[i + 1][j])?;
            }
        }
    }
    Ok(out)
}

fn trace_from(surf: &Surface, start: [f64; 3], h: f64) -> Result<LinkPolyline> {
    let mut pts = vec![start];
    let mut p = start;
    let mut left = false;
    for _ in 0..200_000 {
        let mut step = h;
        let next = loop {
            let guess = scale_to(add(p, surf.tangent(p), step), surf.radius);
            if let Ok(q) = surf.correct(guess) {
                if dist(&q, &p) <= 1.5 * step && dot(surf.tangent(q), surf.tangent(p)) > 0.5 {
                    break q;
                }
            }
            if step <= h * 1e-3 {
                return Err(surf.diverged(p));
            }
            step *= 0.5;
        };
        let back = dist(&next, &start);
        if back > 2.0 * h {
            left = true;
        }
        if left && back <= 1.01 * h {
            // keep the last point unless it nearly duplicates the start
            if back > 0.3 * h {
                pts.push(next);
            }
            return Ok(LinkPolyline { points: pts, radius: surf.radius });
        }
        pts.push(next);
        p = next;
    }
    Err(Error::Oracle("link component did not close".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_phi_file;

    fn phi(s: &str) -> Poly {
        parse_phi_file(&format!("phi = {s}")).unwrap()
    }

    #[test]
    fn cone_has_two_circles() {
        let comps = trace_link(&phi("x^2 + y^2 - z^2"), 2.0, 0.02).unwrap();
        assert_eq!(comps.len(), 2);
        for (c, sign) in comps.iter().zip([-1.0, 1.0]) {
            for p in &c.points {
                assert!((p[2] - sign * 2.0 / 2f64.sqrt()).abs() < 1e-9);
                assert!(((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt() - 2.0).abs() < 1e-12);
            }
            for w in c.points.windows(2) {
                assert!(dist(&w[0], &w[1]) <= 1.5 * 0.04);
            }
            assert!(dist(c.points.last().unwrap(), &c.points[0]) <= 1.5 * 0.04);
            let expected = 2.0 * std::f64::consts::PI * 2.0 / 2f64.sqrt();
            assert!((c.length() - expected).abs() / expected < 1e-3);
        }
    }

    #[test]
    fn plane_is_a_great_circle() {
        let comps = trace_link(&phi("z"), 1.0, 0.05).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].points.iter().all(|p| p[2].abs() < 1e-12));
    }

    #[test]
    fn empty_link_rejected() {
        assert!(trace_link(&phi("x^2 + y^2 + z^2"), 1.0, 0.05).is_err());
    }

    #[test]
    fn projection_inverts_fraction() {
        let c = &trace_link(&phi("z"), 1.0, 0.05).unwrap()[0];
        for s in [0.0, 0.1, 0.37, 0.9] {
            let (d, t) = c.project(c.at_fraction(s));
            assert!(d < 1e-3 && (t - s).abs() < 1e-6, "{s} {t} {d}");
        }
    }
}
