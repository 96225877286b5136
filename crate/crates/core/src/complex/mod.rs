//! Hölder complexes: finite multigraphs with rational exponents `β >= 1` on
//! their edges, the vertex taxonomy, simplification to canonical form and
//! combinatorial equivalence.

mod format;
mod iso;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::kernel::rational::fraction_string;
use crate::kernel::Rational;

pub use format::{parse_complex, write_complex};
pub use iso::{canonical_form, combinatorially_equivalent, graphs_isomorphic, CANONICAL_FORM_LIMIT};

/// An edge `a - b` carrying exponent `beta`. Loops have `a == b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub beta: Rational,
}

impl Edge {
    pub fn new(a: usize, b: usize, beta: Rational) -> Self {
        Edge { a, b, beta }
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    /// The endpoint opposite `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    fn touches(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    Critical,
    NonCritical,
    Loop,
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexClass::Critical => "critical",
            VertexClass::NonCritical => "non-critical",
            VertexClass::Loop => "loop",
        })
    }
}

/// A finite graph with parallel edges and loops allowed, every vertex of
/// degree at least one and every exponent at least one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolderComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl HolderComplex {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidComplex(m));
        let distinct: BTreeSet<&String> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return bad("duplicate vertex id".into());
        }
        if vertices.is_empty() {
            return bad("complex has no vertices".into());
        }
        for e in &edges {
            if e.a >= vertices.len() || e.b >= vertices.len() {
                return bad(format!("edge endpoint {} out of range", e.a.max(e.b)));
            }
            if e.beta < Rational::one() {
                return bad(format!("exponent {} is below 1", e.beta));
            }
        }
        for (v, id) in vertices.iter().enumerate() {
            if !edges.iter().any(|e| e.touches(v)) {
                return bad(format!("vertex {id} has no incident edge"));
            }
        }
        Ok(HolderComplex { vertices, edges })
    }

    /// Vertices named `v1, v2, ...`.
    pub fn from_edges(n: usize, edges: Vec<Edge>) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|e| if e.is_loop() && e.a == v { 2 } else { usize::from(e.touches(v)) }).sum()
    }

    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].touches(v)).collect()
    }

    pub fn betas(&self) -> Vec<Rational> {
        let mut b: Vec<Rational> = self.edges.iter().map(|e| e.beta.clone()).collect();
        b.sort();
        b
    }

    pub fn classify(&self, v: usize) -> VertexClass {
        let inc = self.incident(v);
        if inc.len() != 2 {
            return VertexClass::Critical;
        }
        let (e1, e2) = (&self.edges[inc[0]], &self.edges[inc[1]]);
        if e1.is_loop() || e2.is_loop() {
            return VertexClass::Critical;
        }
        if e1.other(v) == e2.other(v) {
            VertexClass::Loop
        } else {
            VertexClass::NonCritical
        }
    }

    /// A vertex whose only neighbour `w` is joined to it by two edges, where
    /// `w` has the same property: an isolated two-vertex cycle.
    fn bare_two_cycle(&self, v: usize) -> Option<usize> {
        if self.classify(v) != VertexClass::Loop {
            return None;
        }
        let w = self.edges[self.incident(v)[0]].other(v);
        (self.classify(w) == VertexClass::Loop).then_some(w)
    }

    /// Canonical: every vertex is critical or a loop vertex, and no
    /// component is a bare cycle (those normalize to a single looped vertex).
    pub fn is_canonical(&self) -> bool {
        (0..self.vertex_count())
            .all(|v| self.classify(v) != VertexClass::NonCritical && self.bare_two_cycle(v).is_none())
    }

    fn without_vertex(&self, v: usize, mut edges: Vec<Edge>) -> HolderComplex {
        let vertices = self.vertices.iter().enumerate().filter(|&(i, _)| i != v).map(|(_, s)| s.clone()).collect();
        let shift = |i: usize| if i > v { i - 1 } else { i };
        for e in &mut edges {
            e.a = shift(e.a);
            e.b = shift(e.b);
        }
        HolderComplex { vertices, edges }
    }

    /// Collapses an isolated two-cycle `v = w` into `v` with one loop.
    fn collapse_two_cycle(&self, v: usize, w: usize) -> HolderComplex {
        let beta = self.edges.iter().filter(|e| e.touches(v)).map(|e| e.beta.clone()).min().unwrap();
        let mut edges: Vec<Edge> = self.edges.iter().filter(|e| !e.touches(v)).cloned().collect();
        edges.push(Edge::new(v, v, beta));
        self.without_vertex(w, edges)
    }
}

impl fmt::Display for HolderComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{}-{}:{}", self.vertices[e.a], self.vertices[e.b], fraction_string(&e.beta)))
            .collect();
        write!(f, "{} vertices; edges [{}]", self.vertex_count(), edges.join(", "))
    }
}

pub fn classify_vertices(c: &HolderComplex) -> Vec<VertexClass> {
    (0..c.vertex_count()).map(|v| c.classify(v)).collect()
}

pub fn simplify(c: &HolderComplex) -> HolderComplex {
    let ids = c.vertices.clone();
    simplify_with_priority(c, &ids)
}

/// A maximal run of non-critical vertices. `edges[i]` joins the vertex
/// before `inner[i]` to `inner[i]`, the last edge reaching the far end; for
/// a bare cycle it wraps around to `inner[0]`.
struct Chain {
    /// `None` for a bare cycle.
    ends: Option<(usize, usize)>,
    inner: Vec<usize>,
    edges: Vec<usize>,
}

fn chains(c: &HolderComplex) -> Vec<Chain> {
    let classes = classify_vertices(c);
    let noncritical = |v: usize| classes[v] == VertexClass::NonCritical;
    let mut seen = vec![false; c.vertex_count()];
    let mut out = Vec::new();
    for v in 0..c.vertex_count() {
        if seen[v] || !noncritical(v) {
            continue;
        }
        // non-critical vertices have two non-loop edges to distinct neighbours
        let walk = |first: usize| {
            let (mut cur, mut e) = (v, first);
            let (mut verts, mut edges) = (Vec::new(), vec![first]);
            loop {
                let next = c.edges[e].other(cur);
                if next == v {
                    return (verts, edges, None);
                }
                if !noncritical(next) {
                    return (verts, edges, Some(next));
                }
                verts.push(next);
                let inc = c.incident(next);
                e = if inc[0] == e { inc[1] } else { inc[0] };
                edges.push(e);
                cur = next;
            }
        };
        let inc = c.incident(v);
        let (right, right_edges, right_end) = walk(inc[1]);
        let chain = match right_end {
            None => {
                let mut inner = vec![v];
                inner.extend(right);
                Chain { ends: None, inner, edges: right_edges }
            }
            Some(w) => {
                let (left, left_edges, left_end) = walk(inc[0]);
                let mut inner: Vec<usize> = left.into_iter().rev().collect();
                inner.push(v);
                inner.extend(right);
                let mut edges: Vec<usize> = left_edges.into_iter().rev().collect();
                edges.extend(right_edges);
                Chain { ends: Some((left_end.expect("open chain has two ends"), w)), inner, edges }
            }
        };
        for &u in &chain.inner {
            seen[u] = true;
        }
        out.push(chain);
    }
    out
}

/// Min-merge of every non-critical vertex, processed chain by chain.
///
/// A chain between distinct critical vertices becomes one edge carrying
/// the smallest exponent. A chain leaving and re-entering the same vertex
/// keeps one loop vertex, and the exponents left on its two edges depend
/// on which vertex survives: (1, 2, 3) around the cycle can end as {1, 3}
/// or {1, 2}. The survivor is taken between the two smallest exponents, so
/// the result is always those two and depends only on the exponent
/// multiset. Among eligible survivors the one latest in `priority` (by id)
/// is kept, which is the vertex merged last; ids absent from `priority`
/// count as latest. A bare cycle keeps one vertex with one loop at the
/// cycle minimum, as does an isolated pair of loop vertices.
pub fn simplify_with_priority(c: &HolderComplex, priority: &[String]) -> HolderComplex {
    let rank = |v: usize| (priority.iter().position(|p| *p == c.vertices[v]).unwrap_or(usize::MAX), v);
    let found = chains(c);
    let mut removed = vec![false; c.vertex_count()];
    let mut chain_edge = vec![false; c.edges.len()];
    let mut added = Vec::new();
    for ch in &found {
        let beta = |i: usize| &c.edges[ch.edges[i]].beta;
        let min_of = |r: std::ops::Range<usize>| r.map(beta).min().unwrap().clone();
        for &e in &ch.edges {
            chain_edge[e] = true;
        }
        let survivor = match ch.ends {
            Some((u, w)) if u != w => {
                added.push(Edge::new(u, w, min_of(0..ch.edges.len())));
                None
            }
            Some((u, _)) => {
                let mut order: Vec<usize> = (0..ch.edges.len()).collect();
                order.sort_by(|&x, &y| beta(x).cmp(beta(y)).then(x.cmp(&y)));
                let (i, j) = (order[0].min(order[1]), order[0].max(order[1]));
                // splitting at inner[q] separates edges i and j when i <= q < j
                let q = (i..j).max_by_key(|&q| rank(ch.inner[q])).unwrap();
                let s = ch.inner[q];
                added.push(Edge::new(u, s, min_of(0..q + 1)));
                added.push(Edge::new(s, u, min_of(q + 1..ch.edges.len())));
                Some(s)
            }
            None => {
                let s = *ch.inner.iter().max_by_key(|&&v| rank(v)).unwrap();
                added.push(Edge::new(s, s, min_of(0..ch.edges.len())));
                Some(s)
            }
        };
        for &v in &ch.inner {
            removed[v] = survivor != Some(v);
        }
    }
    let mut index = vec![usize::MAX; c.vertex_count()];
    let mut vertices = Vec::new();
    for v in 0..c.vertex_count() {
        if !removed[v] {
            index[v] = vertices.len();
            vertices.push(c.vertices[v].clone());
        }
    }
    let edges = c
        .edges
        .iter()
        .zip(&chain_edge)
        .filter(|(_, &gone)| !gone)
        .map(|(e, _)| e)
        .chain(&added)
        .map(|e| Edge::new(index[e.a], index[e.b], e.beta.clone()))
        .collect();
    let mut cur = HolderComplex { vertices, edges };
    while let Some((v, w)) = (0..cur.vertex_count()).find_map(|v| cur.bare_two_cycle(v).map(|w| (v.min(w), v.max(w)))) {
        cur = cur.collapse_two_cycle(v, w);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    fn cx(n: usize, e: &[(usize, usize, Rational)]) -> HolderComplex {
        HolderComplex::from_edges(n, e.iter().map(|(a, b, q)| Edge::new(*a, *b, q.clone())).collect()).unwrap()
    }

    #[test]
    fn taxonomy() {
        let path = cx(3, &[(0, 1, int(1)), (1, 2, int(1))]);
        assert_eq!(
            classify_vertices(&path),
            vec![VertexClass::Critical, VertexClass::NonCritical, VertexClass::Critical]
        );
        let pair = cx(2, &[(0, 1, int(1)), (0, 1, int(2))]);
        assert_eq!(classify_vertices(&pair), vec![VertexClass::Loop, VertexClass::Loop]);
        let looped = cx(3, &[(0, 0, int(1)), (0, 1, int(1)), (0, 2, int(1))]);
        assert_eq!(looped.degree(0), 4);
        assert_eq!(looped.classify(0), VertexClass::Critical);
    }

    #[test]
    fn validation() {
        assert!(HolderComplex::from_edges(2, vec![Edge::new(0, 0, int(1))]).is_err());
        assert!(HolderComplex::from_edges(1, vec![Edge::new(0, 0, rat(1, 2))]).is_err());
        assert!(HolderComplex::from_edges(1, vec![Edge::new(0, 1, int(1))]).is_err());
    }

    #[test]
    fn min_merge() {
        let s = simplify(&cx(3, &[(0, 1, int(2)), (1, 2, rat(3, 2))]));
        assert_eq!(s.vertices(), &["v1".to_string(), "v3".to_string()]);
        assert_eq!(s.edges(), &[Edge::new(0, 1, rat(3, 2))]);
    }

    #[test]
    fn pure_cycle_collapses_to_one_loop() {
        let ring = cx(5, &[(0, 1, int(3)), (1, 2, int(2)), (2, 3, int(5)), (3, 4, int(2)), (4, 0, int(4))]);
        let s = simplify(&ring);
        assert_eq!(s.vertex_count(), 1);
        assert_eq!(s.edges(), &[Edge::new(0, 0, int(2))]);
        assert!(s.is_canonical());
    }

    #[test]
    fn canonical_input_is_unchanged() {
        let c = cx(2, &[(0, 0, int(2)), (1, 1, int(2)), (0, 1, int(1)), (0, 1, int(1))]);
        assert!(c.is_canonical());
        assert_eq!(simplify(&c), c);
    }

    #[test]
    fn closed_chain_keeps_the_two_smallest_exponents() {
        // v1 critical (pendant edge to v4); v1-v2-v3-v1 with exponents 1, 2, 3
        let c = cx(4, &[(0, 1, int(1)), (1, 2, int(2)), (2, 0, int(3)), (0, 3, int(1))]);
        for order in [["v2", "v3"], ["v3", "v2"]] {
            let s = simplify_with_priority(&c, &order.map(String::from));
            assert!(s.is_canonical());
            let lv = (0..s.vertex_count()).find(|&v| s.classify(v) == VertexClass::Loop).unwrap();
            let mut betas: Vec<Rational> = s.incident(lv).into_iter().map(|e| s.edges()[e].beta.clone()).collect();
            betas.sort();
            assert_eq!(betas, vec![int(1), int(2)], "{s}");
        }
    }

    #[test]
    fn loop_vertex_inside_larger_graph_survives() {
        // v2 hangs off v1 by two parallel edges; v1 also has a pendant edge
        let c = cx(3, &[(0, 1, int(1)), (0, 1, int(2)), (0, 2, int(3))]);
        assert_eq!(c.classify(1), VertexClass::Loop);
        assert_eq!(simplify(&c), c);
    }
}
