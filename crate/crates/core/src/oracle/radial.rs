use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arcs::dist;
use super::link::{scale_to, LinkPolyline};
use crate::error::{Error, Result};

/// Piecewise-linear map `H_L` between links: source component `i` (on the
/// unit sphere) goes to target component `matching[i]` (on the sphere of
/// radius `radius`) by equal arc-length fractions.
#[derive(Clone, Debug)]
pub struct LinkCorrespondence {
    source: Vec<LinkPolyline>,
    target: Vec<LinkPolyline>,
    matching: Vec<usize>,
    radius: f64,
    tolerance: f64,
}

impl LinkCorrespondence {
    pub fn new(source: Vec<LinkPolyline>, target: Vec<LinkPolyline>, matching: Vec<usize>) -> Result<Self> {
        let bad = |m: &str| Err(Error::Oracle(m.into()));
        if source.is_empty() || source.len() != target.len() || matching.len() != source.len() {
            return bad("component counts of the links and the matching differ");
        }
        let mut seen = matching.clone();
        seen.sort_unstable();
        if seen.iter().enumerate().any(|(i, &j)| i != j) {
            return bad("component matching is not a bijection");
        }
        if source.iter().any(|c| (c.radius - 1.0).abs() > 1e-12) {
            return bad("source link must lie on the unit sphere");
        }
        let radius = target[0].radius;
        if target.iter().any(|c| (c.radius - radius).abs() > 1e-12 * radius) {
            return bad("target components lie on different spheres");
        }
        // twice the largest chord sag of the source polylines
        let sag = source
            .iter()
            .flat_map(|c| (0..c.len()).map(move |i| dist(&c.points[i], &c.points[(i + 1) % c.len()])))
            .fold(0.0, f64::max)
            .powi(2);
        Ok(LinkCorrespondence { source, target, matching, radius, tolerance: (sag + 1e-9).max(1e-9) })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn source(&self) -> &[LinkPolyline] {
        &self.source
    }

    /// `H_L` at a point of the unit sphere lying on the source link.
    pub fn map_link(&self, u: [f64; 3]) -> Result<[f64; 3]> {
        let (comp, (d, s)) = self
            .source
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.project(u)))
            .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
            .unwrap();
        if d > self.tolerance {
            return Err(Error::Oracle(format!(
                "point ({:.6}, {:.6}, {:.6}) is {d:.3e} away from the traced link",
                u[0], u[1], u[2]
            )));
        }
        Ok(self.target[self.matching[comp]].at_fraction(s))
    }

    /// The correspondence from the target link (rescaled to the unit
    /// sphere) back to the source link (rescaled to radius `radius`).
    pub fn inverse(&self) -> LinkCorrespondence {
        let mut matching = vec![0; self.matching.len()];
        for (i, &j) in self.matching.iter().enumerate() {
            matching[j] = i;
        }
        let source: Vec<LinkPolyline> = self.target.iter().map(|c| c.scaled(1.0 / self.radius)).collect();
        let target = self.source.iter().map(|c| c.scaled(self.radius)).collect();
        LinkCorrespondence::new(source, target, matching).expect("inverse of a valid correspondence")
    }

    /// A point of the source link chosen by `(component, fraction)`.
    pub fn source_point(&self, comp: usize, s: f64) -> [f64; 3] {
        self.source[comp].at_fraction(s)
    }
}

/// `H(p) = (|p| / R) H_L(p / |p|)`: radially project to the unit sphere,
/// apply `H_L`, and rescale to the radius of `p`.
pub fn radial_extension(h: &LinkCorrespondence, p: [f64; 3]) -> Result<[f64; 3]> {
    let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    if r == 0.0 {
        return Ok([0.0; 3]);
    }
    let w = h.map_link(scale_to(p, 1.0))?;
    Ok(scale_to(w, r))
}

#[derive(Clone, Debug)]
pub struct LipschitzReport {
    pub c_emp: f64,
    pub c_hl: f64,
    /// `max{1 + C_HL / R, 2}`.
    pub bound: f64,
    pub bound_ok: bool,
    /// Largest `| |H(p)| - |p| | / |p|` over the samples.
    pub sphere_error: f64,
    pub pairs: usize,
}

/// Slack allowed on the bound.
pub const BOUND_SLACK: f64 = 1.05;

/// Empirical Lipschitz constants of `H` on points of the cone over the
/// source link with radii in `[1e-3, 1]`, and of `H_L` on the link.
pub fn lipschitz_estimate(h: &LinkCorrespondence, pairs: usize) -> Result<LipschitzReport> {
    if pairs < 1000 {
        return Err(Error::Oracle("need at least 1000 sample pairs".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x52414449);
    let lengths: Vec<f64> = h.source.iter().map(LinkPolyline::length).collect();
    let total: f64 = lengths.iter().sum();
    let link_point = |rng: &mut ChaCha8Rng| {
        let mut x = rng.random::<f64>() * total;
        let mut comp = 0;
        while comp + 1 < lengths.len() && x > lengths[comp] {
            x -= lengths[comp];
            comp += 1;
        }
        h.source_point(comp, x / lengths[comp])
    };
    let mut c_hl: f64 = 0.0;
    let mut c_emp: f64 = 0.0;
    let mut sphere_error: f64 = 0.0;
    let mut used = 0;
    for _ in 0..pairs {
        let (u, v) = (link_point(&mut rng), link_point(&mut rng));
        let d = dist(&u, &v);
        if d > 1e-9 {
            c_hl = c_hl.max(dist(&h.map_link(u)?, &h.map_link(v)?) / d);
        }
        // radii spread over three decades
        let (s, t) = (10f64.powf(-3.0 * rng.random::<f64>()), 10f64.powf(-3.0 * rng.random::<f64>()));
        // half of the pairs share a direction or a radius, the extremal cases
        let (p, q) = match rng.random_range(0..4) {
            0 => ([u[0] * s, u[1] * s, u[2] * s], [u[0] * t, u[1] * t, u[2] * t]),
            1 => ([u[0] * s, u[1] * s, u[2] * s], [v[0] * s, v[1] * s, v[2] * s]),
            _ => ([u[0] * s, u[1] * s, u[2] * s], [v[0] * t, v[1] * t, v[2] * t]),
        };
        let d = dist(&p, &q);
        if d < 1e-12 {
            continue;
        }
        let (hp, hq) = (radial_extension(h, p)?, radial_extension(h, q)?);
        for (x, hx) in [(p, hp), (q, hq)] {
            let rx = dist(&x, &[0.0; 3]);
            sphere_error = sphere_error.max((dist(&hx, &[0.0; 3]) - rx).abs() / rx);
        }
        c_emp = c_emp.max(dist(&hp, &hq) / d);
        used += 1;
    }
    let bound = (1.0 + c_hl / h.radius).max(2.0);
    Ok(LipschitzReport { c_emp, c_hl, bound, bound_ok: c_emp <= bound * BOUND_SLACK, sphere_error, pairs: used })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::trace_link;
    use crate::parse::parse_phi_file;

    fn link(s: &str, r: f64) -> Vec<LinkPolyline> {
        trace_link(&parse_phi_file(&format!("phi = {s}")).unwrap(), r, 0.01).unwrap()
    }

    #[test]
    fn dilation_extends_to_identity() {
        let x = link("x^2 + y^2 - z^2", 1.0);
        let y: Vec<LinkPolyline> = x.iter().map(|c| c.scaled(3.0)).collect();
        let h = LinkCorrespondence::new(x, y, vec![0, 1]).unwrap();
        let p = [0.3, 0.4, 0.5];
        let hp = radial_extension(&h, p).unwrap();
        // p lies on the exact cone; the polyline deviates by its chord sag
        assert!(dist(&hp, &p) < 1e-4, "{hp:?}");
        assert_eq!(radial_extension(&h, [0.0; 3]).unwrap(), [0.0; 3]);
        assert!(radial_extension(&h, [0.0, 0.0, 1.0]).is_err());
        let rep = lipschitz_estimate(&h, 2000).unwrap();
        assert!(rep.c_emp <= 1.01 && rep.bound_ok && rep.sphere_error < 1e-9, "{rep:?}");
        let inv = lipschitz_estimate(&h.inverse(), 2000).unwrap();
        assert!(inv.bound_ok);
    }

    #[test]
    fn too_few_pairs_rejected() {
        let x = link("z", 1.0);
        let h = LinkCorrespondence::new(x.clone(), x, vec![0]).unwrap();
        assert!(lipschitz_estimate(&h, 10).is_err());
    }
}
