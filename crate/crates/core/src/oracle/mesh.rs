use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::arcs::dist;
use crate::error::{Error, Result};

/// Ratios above this are flagged as evidence against normal embedding.
pub const LNE_FLAG_THRESHOLD: f64 = 5.0;

/// A triangulated surface with the source parameters of each vertex.
#[derive(Clone, Debug)]
pub struct TriMesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    pub source_params: Vec<[f64; 2]>,
}

/// Triangulates the strip between two polylines given by vertex indices
/// and increasing parameters in `[0, 1]`, advancing along whichever side
/// has the smaller next parameter.
fn zip_strip(left: &[usize], lp: &[f64], right: &[usize], rp: &[f64]) -> Vec<[usize; 3]> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i + 1 < left.len() || j + 1 < right.len() {
        let advance_left = j + 1 == right.len() || (i + 1 < left.len() && lp[i + 1] <= rp[j + 1]);
        if advance_left {
            out.push([left[i], right[j], left[i + 1]]);
            i += 1;
        } else {
            out.push([left[i], right[j], right[j + 1]]);
            j += 1;
        }
    }
    out
}

impl TriMesh {
    /// Unit disk in the plane `z = 0`: `n` concentric rings, ring `k`
    /// carrying `6k` vertices, so triangles stay close to equilateral.
    pub fn flat_disk(n: usize) -> TriMesh {
        Self::graph_over_disk(n, |_, _| 0.0)
    }

    /// Graph `z = h(x, y)` over the ring mesh of the unit disk; vertex 0 is
    /// the centre.
    pub fn graph_over_disk(n: usize, h: impl Fn(f64, f64) -> f64) -> TriMesh {
        use std::f64::consts::PI;
        let mut source_params = vec![[0.0, 0.0]];
        let mut rings: Vec<(Vec<usize>, Vec<f64>)> = vec![(vec![0], vec![0.0])];
        for k in 1..=n {
            let count = 6 * k;
            let r = k as f64 / n as f64;
            let mut idx = Vec::with_capacity(count + 1);
            let mut par = Vec::with_capacity(count + 1);
            for j in 0..count {
                let a = 2.0 * PI * j as f64 / count as f64;
                idx.push(source_params.len());
                par.push(j as f64 / count as f64);
                source_params.push([r * a.cos(), r * a.sin()]);
            }
            idx.push(idx[0]);
            par.push(1.0);
            rings.push((idx, par));
        }
        let mut triangles = Vec::new();
        for k in 1..=n {
            let (inner, outer) = (&rings[k - 1], &rings[k]);
            if k == 1 {
                for j in 0..6 {
                    triangles.push([0, outer.0[j], outer.0[j + 1]]);
                }
            } else {
                triangles.extend(zip_strip(&inner.0, &inner.1, &outer.0, &outer.1));
            }
        }
        let vertices = source_params.iter().map(|p| [p[0], p[1], h(p[0], p[1])]).collect();
        TriMesh { vertices, triangles, source_params }
    }

    /// The standard Hölder triangle `{0 <= y <= x^beta, x0 <= x <= 1}`.
    /// Columns sit at `x_{i+1} = (1 + res) x_i`; column `x` holds
    /// `ceil(x^beta / (res x))` intervals, keeping edges near `res` times
    /// the distance to the origin.
    pub fn holder_triangle(beta: f64, res: f64, x0: f64) -> TriMesh {
        let mut xs = vec![x0];
        while *xs.last().unwrap() < 1.0 {
            let next = (xs.last().unwrap() * (1.0 + res)).min(1.0);
            xs.push(next);
        }
        let mut source_params = Vec::new();
        let mut columns: Vec<(Vec<usize>, Vec<f64>)> = Vec::new();
        for &x in &xs {
            let k = (x.powf(beta) / (res * x)).ceil().max(1.0) as usize;
            let mut idx = Vec::with_capacity(k + 1);
            let mut par = Vec::with_capacity(k + 1);
            for j in 0..=k {
                idx.push(source_params.len());
                par.push(j as f64 / k as f64);
                source_params.push([x, j as f64 / k as f64]);
            }
            columns.push((idx, par));
        }
        let mut triangles = Vec::new();
        for w in columns.windows(2) {
            triangles.extend(zip_strip(&w[0].0, &w[0].1, &w[1].0, &w[1].1));
        }
        let vertices = source_params.iter().map(|p| [p[0], p[1] * p[0].powf(beta), 0.0]).collect();
        TriMesh { vertices, triangles, source_params }
    }

    /// Sheets `z = s (x^2 + y^2)` and `z = -s (x^2 + y^2)` over the unit
    /// disk, sharing only the vertex at the origin.
    pub fn pinched_sheets(n: usize, s: f64) -> TriMesh {
        let upper = Self::graph_over_disk(n, |x, y| s * (x * x + y * y));
        let centre = 0;
        let k = upper.vertices.len();
        let mut mesh = upper.clone();
        let lower_index: Vec<usize> =
            (0..k).map(|v| if v == centre { centre } else { k + v - usize::from(v > centre) }).collect();
        for v in 0..k {
            if v != centre {
                let p = upper.vertices[v];
                mesh.vertices.push([p[0], p[1], -p[2]]);
                mesh.source_params.push(upper.source_params[v]);
            }
        }
        for t in &upper.triangles {
            mesh.triangles.push([lower_index[t[0]], lower_index[t[2]], lower_index[t[1]]]);
        }
        mesh
    }

    /// Weighted graph of mesh edges plus, for each interior edge, the
    /// straight path between the two opposite vertices through the
    /// unfolded pair of triangles when that path crosses the shared edge.
    pub fn path_graph(&self) -> Vec<Vec<(usize, f64)>> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let add = |a: usize, b: usize, w: f64, adj: &mut Vec<Vec<(usize, f64)>>| {
            adj[a].push((b, w));
            adj[b].push((a, w));
        };
        let mut opposite: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (u, v, o) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
                opposite.entry((u.min(v), u.max(v))).or_default().push(o);
            }
        }
        let mut keys: Vec<&(usize, usize)> = opposite.keys().collect();
        keys.sort();
        for &(u, v) in keys {
            add(u, v, dist(&self.vertices[u], &self.vertices[v]), &mut adj);
            if let [a, b] = opposite[&(u, v)][..] {
                if let Some(w) = self.unfolded(u, v, a, b) {
                    add(a, b, w, &mut adj);
                }
            }
        }
        adj
    }

    fn unfolded(&self, u: usize, v: usize, a: usize, b: usize) -> Option<f64> {
        let (pu, pv) = (self.vertices[u], self.vertices[v]);
        let e = [pv[0] - pu[0], pv[1] - pu[1], pv[2] - pu[2]];
        let len = dist(&pu, &pv);
        let coords = |p: [f64; 3]| {
            let w = [p[0] - pu[0], p[1] - pu[1], p[2] - pu[2]];
            let along = (w[0] * e[0] + w[1] * e[1] + w[2] * e[2]) / len;
            let off = ((w[0] * w[0] + w[1] * w[1] + w[2] * w[2]) - along * along).max(0.0).sqrt();
            (along, off)
        };
        let (xa, ya) = coords(self.vertices[a]);
        let (xb, yb) = coords(self.vertices[b]);
        if ya + yb <= 0.0 {
            return None;
        }
        let cross = xa + (xb - xa) * ya / (ya + yb);
        (cross > 0.0 && cross < len).then(|| ((xa - xb).powi(2) + (ya + yb).powi(2)).sqrt())
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn shortest_paths(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut d = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    d[source] = 0.0;
    heap.push(Entry(0.0, source));
    while let Some(Entry(du, u)) = heap.pop() {
        if du > d[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            if du + w < d[v] {
                d[v] = du + w;
                heap.push(Entry(d[v], v));
            }
        }
    }
    d
}

#[derive(Clone, Debug)]
pub struct LneEstimate {
    /// Largest observed inner/outer distance ratio.
    pub k: f64,
    pub pair: (usize, usize),
    pub pairs_tested: usize,
    pub flagged: bool,
}

/// Largest ratio of mesh path length to Euclidean distance over about
/// `pairs` sampled pairs: every sampled source meets its 8 nearest
/// vertices and 8 random ones.
pub fn lne_estimate(m: &TriMesh, pairs: usize) -> Result<LneEstimate> {
    let n = m.vertices.len();
    if n < 2 {
        return Err(Error::Oracle("mesh has fewer than two vertices".into()));
    }
    let adj = m.path_graph();
    let reach = shortest_paths(&adj, 0);
    if reach.iter().any(|d| d.is_infinite()) {
        return Err(Error::Oracle("mesh is disconnected".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c4e45);
    let sources = (pairs / 16).clamp(1, n);
    let mut best = LneEstimate { k: 0.0, pair: (0, 0), pairs_tested: 0, flagged: false };
    for s in sample(&mut rng, n, sources).into_iter() {
        let d = shortest_paths(&adj, s);
        let mut near: Vec<(f64, usize)> =
            (0..n).filter(|&v| v != s).map(|v| (dist(&m.vertices[s], &m.vertices[v]), v)).collect();
        near.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut targets: Vec<usize> = near.iter().take(8).map(|x| x.1).collect();
        targets.extend(sample(&mut rng, n, 8.min(n)).into_iter().filter(|&v| v != s));
        for t in targets {
            let outer = dist(&m.vertices[s], &m.vertices[t]);
            if outer < 1e-12 {
                continue;
            }
            best.pairs_tested += 1;
            let ratio = d[t] / outer;
            if ratio > best.k {
                best.k = ratio;
                best.pair = (s, t);
            }
        }
    }
    best.flagged = best.k > LNE_FLAG_THRESHOLD;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_disk_is_nearly_isometric() {
        let e = lne_estimate(&TriMesh::flat_disk(16), 2000).unwrap();
        assert!(e.k <= 1.1, "{}", e.k);
        assert!(!e.flagged);
    }

    #[test]
    fn holder_triangle_is_stable_under_refinement() {
        let a = lne_estimate(&TriMesh::holder_triangle(2.0, 0.1, 1e-2), 2000).unwrap().k;
        let b = lne_estimate(&TriMesh::holder_triangle(2.0, 0.05, 1e-2), 2000).unwrap().k;
        assert!(a.is_finite() && (b / a - 1.0).abs() <= 0.1, "{a} {b}");
    }

    #[test]
    fn pinch_is_flagged() {
        let e = lne_estimate(&TriMesh::pinched_sheets(10, 1.0), 4000).unwrap();
        assert!(e.flagged, "{}", e.k);
        let finer = lne_estimate(&TriMesh::pinched_sheets(20, 1.0), 4000).unwrap();
        assert!(finer.k > e.k);
    }

    #[test]
    fn disconnected_mesh_rejected() {
        let mut m = TriMesh::flat_disk(3);
        let k = m.vertices.len();
        m.vertices.extend([[5.0, 0.0, 0.0], [6.0, 0.0, 0.0], [5.0, 1.0, 0.0]]);
        m.source_params.extend([[0.0; 2]; 3]);
        m.triangles.push([k, k + 1, k + 2]);
        assert!(lne_estimate(&m, 100).is_err());
    }
}
