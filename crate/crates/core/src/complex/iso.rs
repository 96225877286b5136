use std::collections::BTreeMap;

use super::HolderComplex;
use crate::error::{Error, Result};
use crate::kernel::rational::fraction_string;
use crate::kernel::Rational;
use crate::verdict::{Certificate, Verdict};

/// Largest vertex count accepted by [`canonical_form`].
pub const CANONICAL_FORM_LIMIT: usize = 12;

const LEAF_BUDGET: usize = 200_000;

/// `adj[u][v]`: sorted exponents of the edges joining `u` and `v`.
type Adjacency = Vec<Vec<Vec<Rational>>>;

fn adjacency(c: &HolderComplex) -> Adjacency {
    let n = c.vertex_count();
    let mut adj = vec![vec![Vec::new(); n]; n];
    for e in c.edges() {
        adj[e.a][e.b].push(e.beta.clone());
        if !e.is_loop() {
            adj[e.b][e.a].push(e.beta.clone());
        }
    }
    for row in &mut adj {
        for cell in row.iter_mut() {
            cell.sort();
        }
    }
    adj
}

/// Color refinement on the disjoint union of `graphs`. Colors are ranks of
/// sorted signatures, so they are comparable across the inputs.
fn joint_colors(graphs: &[&Adjacency]) -> Vec<Vec<usize>> {
    let mut colors: Vec<Vec<usize>> = graphs.iter().map(|a| vec![0; a.len()]).collect();
    let mut classes = 1;
    loop {
        let sigs: Vec<Vec<(usize, Vec<(usize, Vec<Rational>)>)>> = graphs
            .iter()
            .zip(&colors)
            .map(|(adj, col)| {
                (0..adj.len())
                    .map(|u| {
                        let mut nb: Vec<(usize, Vec<Rational>)> = (0..adj.len())
                            .filter(|&v| !adj[u][v].is_empty())
                            .map(|v| (if u == v { usize::MAX } else { col[v] }, adj[u][v].clone()))
                            .collect();
                        nb.sort();
                        (col[u], nb)
                    })
                    .collect()
            })
            .collect();
        let mut all: Vec<&(usize, Vec<(usize, Vec<Rational>)>)> = sigs.iter().flatten().collect();
        all.sort();
        all.dedup();
        let next: Vec<Vec<usize>> =
            sigs.iter().map(|g| g.iter().map(|s| all.binary_search(&s).unwrap()).collect()).collect();
        colors = next;
        if all.len() == classes {
            return colors;
        }
        classes = all.len();
    }
}

fn degree_sequence(c: &HolderComplex) -> Vec<usize> {
    let mut d: Vec<usize> = (0..c.vertex_count()).map(|v| c.degree(v)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Exponent multisets keyed by the (sorted) endpoint degrees of each edge.
fn betas_by_degree_class(c: &HolderComplex) -> BTreeMap<(usize, usize), Vec<Rational>> {
    let mut m: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
    for e in c.edges() {
        let (da, db) = (c.degree(e.a), c.degree(e.b));
        m.entry((da.min(db), da.max(db))).or_default().push(e.beta.clone());
    }
    for v in m.values_mut() {
        v.sort();
    }
    m
}

fn show_classes(m: &BTreeMap<(usize, usize), Vec<Rational>>) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|((a, b), qs)| {
            let qs: Vec<String> = qs.iter().map(fraction_string).collect();
            format!("deg({a},{b}):{{{}}}", qs.join(", "))
        })
        .collect();
    parts.join(" ")
}

fn show_list<T: ToString>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(T::to_string).collect::<Vec<_>>().join(", "))
}

/// Decides whether two canonical complexes are isomorphic as graphs with
/// exponents. Inputs that are not canonical are rejected.
pub fn combinatorially_equivalent(c1: &HolderComplex, c2: &HolderComplex) -> Result<Verdict> {
    for c in [c1, c2] {
        if !c.is_canonical() {
            return Err(Error::NonCanonical(format!("{c}")));
        }
    }
    Ok(graphs_isomorphic(c1, c2))
}

/// Isomorphism of the underlying exponent-labelled graphs, with no
/// canonicity requirement.
pub fn graphs_isomorphic(c1: &HolderComplex, c2: &HolderComplex) -> Verdict {
    if c1.vertex_count() != c2.vertex_count() {
        return Verdict::no("vertex count", c1.vertex_count().to_string(), c2.vertex_count().to_string());
    }
    if c1.edge_count() != c2.edge_count() {
        return Verdict::no("edge count", c1.edge_count().to_string(), c2.edge_count().to_string());
    }
    let (d1, d2) = (degree_sequence(c1), degree_sequence(c2));
    if d1 != d2 {
        return Verdict::no("degree sequence", show_list(&d1), show_list(&d2));
    }
    let (b1, b2) = (betas_by_degree_class(c1), betas_by_degree_class(c2));
    if b1 != b2 {
        return Verdict::no("exponent multiset per degree class", show_classes(&b1), show_classes(&b2));
    }
    match find_isomorphism(c1, c2) {
        Some(sigma) => {
            Verdict::Yes(Certificate::Isomorphism { edges: edge_bijection(c1, c2, &sigma), vertices: sigma })
        }
        None => {
            let f1 = graph_form(c1).unwrap_or_else(|_| c1.to_string());
            let f2 = graph_form(c2).unwrap_or_else(|_| c2.to_string());
            Verdict::no("exponent-preserving graph isomorphism", f1, f2)
        }
    }
}

/// Vertex bijection `sigma` with `adj1[u][v] == adj2[sigma u][sigma v]`.
fn find_isomorphism(c1: &HolderComplex, c2: &HolderComplex) -> Option<Vec<usize>> {
    let (a1, a2) = (adjacency(c1), adjacency(c2));
    let colors = joint_colors(&[&a1, &a2]);
    let mut h1 = colors[0].clone();
    let mut h2 = colors[1].clone();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return None;
    }
    let n = a1.len();
    // place the most constrained vertices first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| (colors[0].iter().filter(|&&c| c == colors[0][u]).count(), u));
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        a1: &Adjacency,
        a2: &Adjacency,
        colors: &[Vec<usize>],
        sigma: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let u = order[k];
        for w in 0..a2.len() {
            if used[w] || colors[0][u] != colors[1][w] || a1[u][u] != a2[w][w] {
                continue;
            }
            if order[..k].iter().any(|&v| a1[u][v] != a2[w][sigma[v]]) {
                continue;
            }
            sigma[u] = w;
            used[w] = true;
            if go(k + 1, order, a1, a2, colors, sigma, used) {
                return true;
            }
            used[w] = false;
        }
        sigma[u] = usize::MAX;
        false
    }
    go(0, &order, &a1, &a2, &colors, &mut sigma, &mut used).then_some(sigma)
}

fn edge_bijection(c1: &HolderComplex, c2: &HolderComplex, sigma: &[usize]) -> Vec<usize> {
    let mut taken = vec![false; c2.edge_count()];
    c1.edges()
        .iter()
        .map(|e| {
            let (a, b) = (sigma[e.a], sigma[e.b]);
            let j = (0..c2.edge_count())
                .find(|&j| {
                    let g = &c2.edges()[j];
                    !taken[j] && g.beta == e.beta && ((g.a == a && g.b == b) || (g.a == b && g.b == a))
                })
                .expect("isomorphism preserves edge multisets");
            taken[j] = true;
            j
        })
        .collect()
}

/// Edges keyed by position: block `k` lists `(j, beta)` for edges between
/// the vertices at positions `j <= k`.
type Encoding = Vec<Vec<(usize, Rational)>>;

fn encode(adj: &Adjacency, at: &[usize]) -> Encoding {
    let n = at.len();
    (0..n)
        .map(|k| {
            let mut block: Vec<(usize, Rational)> = Vec::new();
            for j in 0..=k {
                for q in &adj[at[k]][at[j]] {
                    block.push((j, q.clone()));
                }
            }
            block.sort();
            block
        })
        .collect()
}

/// Splits cells by neighbourhood signatures until stable. Cell order is
/// part of the result, so refinement commutes with relabeling.
fn refine(adj: &Adjacency, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let n = adj.len();
        let mut cell_of = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let sig = |u: usize| {
            let mut s: Vec<(usize, Vec<Rational>)> =
                (0..n).filter(|&v| !adj[u][v].is_empty()).map(|v| (cell_of[v], adj[u][v].clone())).collect();
            s.sort();
            (adj[u][u].clone(), s)
        };
        let mut next = Vec::with_capacity(cells.len());
        for c in &cells {
            let mut keyed: Vec<_> = c.iter().map(|&v| (sig(v), v)).collect();
            keyed.sort();
            let mut cur: Vec<usize> = Vec::new();
            for i in 0..keyed.len() {
                if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                    next.push(std::mem::take(&mut cur));
                }
                cur.push(keyed[i].1);
            }
            next.push(cur);
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

/// Lexicographically least encoding over all vertex orderings, rendered as
/// `V<n>;` followed by loops `L(i:beta)` and edges `E(i-j:beta)` on 1-based
/// positions, e.g. `V1;L(1:1/1)`. Equal strings mean isomorphic complexes.
pub fn canonical_form(c: &HolderComplex) -> Result<String> {
    if !c.is_canonical() {
        return Err(Error::NonCanonical(format!("{c}")));
    }
    graph_form(c)
}

/// [`canonical_form`] without the canonicity requirement.
pub(crate) fn graph_form(c: &HolderComplex) -> Result<String> {
    if c.vertex_count() > CANONICAL_FORM_LIMIT {
        return Err(Error::InvalidComplex(format!(
            "{} vertices exceeds the canonical form limit of {CANONICAL_FORM_LIMIT}; compare pairwise instead",
            c.vertex_count()
        )));
    }
    let adj = adjacency(c);
    let start = refine(&adj, vec![(0..c.vertex_count()).collect()]);
    let mut best: Option<Encoding> = None;
    let mut leaves = 0usize;
    search(&adj, start, &mut best, &mut leaves)?;
    Ok(render(c.vertex_count(), &best.expect("at least one ordering")))
}

fn search(adj: &Adjacency, cells: Vec<Vec<usize>>, best: &mut Option<Encoding>, leaves: &mut usize) -> Result<()> {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        *leaves += 1;
        if *leaves > LEAF_BUDGET {
            return Err(Error::InvalidComplex(
                "canonical form search budget exhausted; compare pairwise instead".into(),
            ));
        }
        let at: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let enc = encode(adj, &at);
        if best.as_ref().is_none_or(|b| &enc < b) {
            *best = Some(enc);
        }
        return Ok(());
    };
    for &v in &cells[target] {
        let mut split = cells.clone();
        let rest: Vec<usize> = split[target].iter().copied().filter(|&u| u != v).collect();
        split[target] = vec![v];
        split.insert(target + 1, rest);
        search(adj, refine(adj, split), best, leaves)?;
    }
    Ok(())
}

fn render(n: usize, enc: &Encoding) -> String {
    let mut items = vec![format!("V{n}")];
    for (k, block) in enc.iter().enumerate() {
        for (j, q) in block {
            let q = fraction_string(q);
            items.push(if *j == k { format!("L({}:{q})", k + 1) } else { format!("E({}-{}:{q})", j + 1, k + 1) });
        }
    }
    items.join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Edge;
    use crate::kernel::rational::int;

    fn cx(n: usize, e: &[(usize, usize, i64)]) -> HolderComplex {
        HolderComplex::from_edges(n, e.iter().map(|&(a, b, q)| Edge::new(a, b, int(q))).collect()).unwrap()
    }

    #[test]
    fn single_loop_string() {
        assert_eq!(canonical_form(&cx(1, &[(0, 0, 1)])).unwrap(), "V1;L(1:1/1)");
    }

    #[test]
    fn relabeling_gives_yes_and_same_string() {
        let a = cx(3, &[(0, 0, 2), (0, 1, 1), (0, 1, 1), (1, 2, 3), (1, 2, 3), (2, 2, 5)]);
        let b = cx(3, &[(2, 2, 2), (2, 0, 1), (0, 2, 1), (0, 1, 3), (1, 0, 3), (1, 1, 5)]);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        match combinatorially_equivalent(&a, &b).unwrap() {
            Verdict::Yes(Certificate::Isomorphism { vertices, edges }) => {
                assert_eq!(vertices, vec![2, 0, 1]);
                for (i, &j) in edges.iter().enumerate() {
                    assert_eq!(a.edges()[i].beta, b.edges()[j].beta);
                }
            }
            v => panic!("{v}"),
        }
    }

    #[test]
    fn loop_exponents_distinguish() {
        let a = cx(2, &[(0, 0, 2), (1, 1, 2), (0, 1, 1), (0, 1, 1)]);
        let b = cx(2, &[(0, 0, 3), (1, 1, 3), (0, 1, 1), (0, 1, 1)]);
        match combinatorially_equivalent(&a, &b).unwrap() {
            Verdict::No(d) => assert_eq!(d.invariant, "exponent multiset per degree class"),
            v => panic!("{v}"),
        }
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn non_canonical_rejected() {
        let path = cx(3, &[(0, 1, 1), (1, 2, 1)]);
        assert!(matches!(combinatorially_equivalent(&path, &path), Err(Error::NonCanonical(_))));
        assert!(canonical_form(&path).is_err());
    }

    #[test]
    fn structure_beyond_local_invariants() {
        // same degrees and exponent classes; the loops 2 and 3 share a
        // vertex in `a` and sit on different vertices in `b`
        let a = cx(2, &[(0, 1, 1), (0, 1, 1), (0, 0, 2), (0, 0, 3), (1, 1, 2), (1, 1, 3)]);
        let b = cx(2, &[(0, 1, 1), (0, 1, 1), (0, 0, 2), (0, 0, 2), (1, 1, 3), (1, 1, 3)]);
        assert!(a.is_canonical() && b.is_canonical());
        assert!(!combinatorially_equivalent(&a, &b).unwrap().is_yes());
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }
}
