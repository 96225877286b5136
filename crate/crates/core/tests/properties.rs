//! Property tests for the invariants of each stage, against independent
//! reference computations where one exists.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use holder_core::classifier::{build_holder_complex, classify_inner};
use holder_core::complex::{
    canonical_form, combinatorially_equivalent, parse_complex, simplify, simplify_with_priority, write_complex, Edge,
    HolderComplex,
};
use holder_core::contact::{contact_order, contact_order_radius, default_depth, Contact, PuiseuxArc};
use holder_core::germ::parse_germ;
use holder_core::kernel::rational::{rat, Rational};
use holder_core::kernel::resultant::resultant;
use holder_core::kernel::{isolate_real_roots, Poly, UPoly};
use holder_core::oracle::{radial_extension, trace_link, LinkCorrespondence};
use holder_core::parse::parse_poly;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn upoly_from_roots(roots: &[(Rational, usize)]) -> UPoly<Rational> {
    let mut p = UPoly::new(vec![Rational::one()]);
    for (r, m) in roots {
        for _ in 0..*m {
            p = p.mul(&UPoly::new(vec![-r.clone(), Rational::one()]));
        }
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn roots_are_isolated_with_multiplicity(raw in prop::collection::btree_map(small_rational(), 1usize..=3, 1..=4)) {
        let roots: Vec<(Rational, usize)> = raw.into_iter().collect();
        let found = isolate_real_roots(&upoly_from_roots(&roots)).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (root, (r, m)) in found.iter().zip(&roots) {
            let (lo, hi) = root.value.interval();
            prop_assert!(lo <= r && r <= hi);
            prop_assert_eq!(root.multiplicity, *m);
        }
    }

    #[test]
    fn resultant_against_a_linear_factor_is_evaluation(
        roots in prop::collection::vec(small_rational(), 1..=4),
        c in small_rational(),
    ) {
        // Res_x(prod (x - r_i), x - c) = ± prod (c - r_i)
        let vars = ["x"];
        let x = Poly::var(&vars, "x");
        let f = roots.iter().fold(Poly::constant(&vars, Rational::one()), |acc, r| {
            acc.mul(&x.sub(&Poly::constant(&vars, r.clone())))
        });
        let g = x.sub(&Poly::constant(&vars, c.clone()));
        let res = resultant(&f, &g, "x").unwrap().constant_value().unwrap();
        let expected: Rational = roots.iter().map(|r| &c - r).product();
        prop_assert_eq!(res.abs(), expected.abs());
    }
}

/// Arcs `(s t, y, z)` with `y`, `z` sums of monomials of exponent above 1;
/// their contact is 1 for opposite `s`, else the first differing exponent.
#[derive(Clone, Debug)]
struct MonomialArc {
    sign: i64,
    coords: [BTreeMap<(i64, i64), i64>; 2],
}

fn monomial_arc() -> impl Strategy<Value = MonomialArc> {
    let exps = prop::sample::select(vec![(3, 2), (2, 1), (5, 2), (3, 1), (7, 2)]);
    let coords = prop::collection::btree_map(exps, prop::sample::select(vec![-2i64, -1, 1, 3]), 0..=3);
    (prop::bool::ANY, coords.clone(), coords)
        .prop_map(|(pos, y, z)| MonomialArc { sign: if pos { 1 } else { -1 }, coords: [y, z] })
}

impl MonomialArc {
    fn literal(&self) -> String {
        let series = |m: &BTreeMap<(i64, i64), i64>| {
            if m.is_empty() {
                return "0".to_string();
            }
            m.iter()
                .enumerate()
                .map(|(i, ((n, d), c))| {
                    let sign = if *c < 0 {
                        " - "
                    } else if i > 0 {
                        " + "
                    } else {
                        ""
                    };
                    let sign = if i == 0 && *c < 0 { "-" } else { sign };
                    format!("{sign}{}*t^({n}/{d})", c.abs())
                })
                .collect::<String>()
        };
        format!("({}*t, {}, {})", self.sign, series(&self.coords[0]), series(&self.coords[1]))
    }

    fn arc(&self) -> PuiseuxArc {
        PuiseuxArc::from_literal(&self.literal(), "a").unwrap()
    }

    fn contact(&self, other: &MonomialArc) -> Contact {
        if self.sign != other.sign {
            return Contact::Finite(Rational::one());
        }
        let mut best: Option<Rational> = None;
        for k in 0..2 {
            let (a, b) = (&self.coords[k], &other.coords[k]);
            for e in a.keys().chain(b.keys()) {
                if a.get(e) != b.get(e) {
                    let q = rat(e.0, e.1);
                    if best.as_ref().is_none_or(|m| q < *m) {
                        best = Some(q);
                    }
                }
            }
        }
        best.map_or(Contact::Infinite, Contact::Finite)
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn contact_matches_closed_form_on_both_routes(a in monomial_arc(), b in monomial_arc()) {
        let (x, y) = (a.arc(), b.arc());
        let expected = a.contact(&b);
        prop_assert_eq!(contact_order(&x, &y).unwrap(), expected.clone());
        prop_assert_eq!(contact_order_radius(&x, &y, &default_depth(&x, &y)).unwrap(), expected);
    }

    #[test]
    fn contact_is_symmetric_and_ultrametric(a in monomial_arc(), b in monomial_arc(), c in monomial_arc()) {
        let arcs = [a.arc(), b.arc(), c.arc()];
        let k = |i: usize, j: usize| contact_order(&arcs[i], &arcs[j]).unwrap();
        for (i, j, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            prop_assert_eq!(k(i, j), k(j, i));
            prop_assert!(k(i, l) >= k(i, j).min(k(j, l)));
        }
    }

    #[test]
    fn reparametrizing_by_a_constant_keeps_contact(a in monomial_arc(), b in monomial_arc(), lambda in 2i64..=4) {
        // t -> lambda t multiplies the coefficient of t^e by lambda^e;
        // integral exponents keep the coefficients integral
        let integral = |m: &MonomialArc| MonomialArc {
            sign: m.sign,
            coords: [0, 1].map(|k| m.coords[k].iter().filter(|(e, _)| e.1 == 1).map(|(e, c)| (*e, *c)).collect()),
        };
        let scaled = |m: &MonomialArc| MonomialArc {
            sign: m.sign * lambda,
            coords: [0, 1].map(|k| m.coords[k].iter().map(|(e, c)| (*e, c * lambda.pow(e.0 as u32))).collect()),
        };
        let (a, b) = (integral(&a), integral(&b));
        let k = contact_order(&a.arc(), &b.arc()).unwrap();
        prop_assert_eq!(contact_order(&scaled(&a).arc(), &scaled(&b).arc()).unwrap(), k);
        prop_assert_eq!(contact_order(&scaled(&a).arc(), &a.arc()).unwrap(), Contact::Infinite);
    }
}

const BETAS: [(i64, i64); 5] = [(1, 1), (3, 2), (2, 1), (5, 2), (3, 1)];

fn complex(max_vertices: usize) -> impl Strategy<Value = HolderComplex> {
    (1..=max_vertices)
        .prop_flat_map(|n| {
            let edge = (0..n, 0..n, 0..BETAS.len());
            (Just(n), prop::collection::vec(edge, 0..=n + 2), prop::collection::vec(0..n, n))
        })
        .prop_map(|(n, extra, partners)| {
            let beta = |i: usize| rat(BETAS[i].0, BETAS[i].1);
            let mut edges: Vec<Edge> = Vec::new();
            for v in 0..n {
                if !edges.iter().any(|e| e.a == v || e.b == v) {
                    edges.push(Edge::new(v, partners[v], beta(v % BETAS.len())));
                }
            }
            edges.extend(extra.into_iter().map(|(a, b, i)| Edge::new(a, b, beta(i))));
            HolderComplex::from_edges(n, edges).unwrap()
        })
}

fn relabelled(c: &HolderComplex, perm: &[usize], flip: &[bool], rotate: usize) -> HolderComplex {
    let n = c.vertex_count();
    let mut ids = vec![String::new(); n];
    // `perm` is arbitrary; its sort order defines the bijection
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (perm[v % perm.len()], v));
    let mut pi = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        pi[v] = pos;
    }
    for v in 0..n {
        ids[pi[v]] = format!("u{v}");
    }
    let mut edges: Vec<Edge> = c
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let (a, b) = if flip[i % flip.len()] { (e.b, e.a) } else { (e.a, e.b) };
            Edge::new(pi[a], pi[b], e.beta.clone())
        })
        .collect();
    let k = rotate % edges.len().max(1);
    edges.rotate_left(k);
    HolderComplex::new(ids, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn simplify_is_idempotent_and_canonical(c in complex(12)) {
        let s = simplify(&c);
        prop_assert!(s.is_canonical());
        prop_assert_eq!(simplify(&s), s);
    }

    #[test]
    fn simplify_is_order_confluent(c in complex(12), keys in prop::collection::vec(any::<u32>(), 12)) {
        let mut priority = c.vertices().to_vec();
        priority.sort_by_key(|id| keys[c.vertices().iter().position(|v| v == id).unwrap() % keys.len()]);
        let a = simplify(&c);
        let b = simplify_with_priority(&c, &priority);
        prop_assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        prop_assert!(combinatorially_equivalent(&a, &b).unwrap().is_yes());
    }

    #[test]
    fn relabelling_preserves_canonical_form(
        c in complex(10),
        perm in prop::collection::vec(any::<u16>(), 10),
        flip in prop::collection::vec(any::<bool>(), 16),
        rotate in 0usize..16,
    ) {
        let s = simplify(&c);
        let t = relabelled(&s, &perm.iter().map(|&p| p as usize).collect::<Vec<_>>(), &flip, rotate);
        prop_assert_eq!(canonical_form(&s).unwrap(), canonical_form(&t).unwrap());
        prop_assert!(combinatorially_equivalent(&s, &t).unwrap().is_yes());
    }

    #[test]
    fn changing_one_exponent_is_detected(c in complex(8), which in any::<prop::sample::Index>()) {
        let s = simplify(&c);
        let mut edges = s.edges().to_vec();
        let k = which.index(edges.len());
        edges[k].beta += rat(1, 7);
        let t = HolderComplex::new(s.vertices().to_vec(), edges).unwrap();
        // 1/7 never occurs among the generated exponents
        prop_assert!(!combinatorially_equivalent(&s, &t).unwrap().is_yes());
        prop_assert_ne!(canonical_form(&s).unwrap(), canonical_form(&t).unwrap());
    }

    #[test]
    fn complex_files_round_trip(c in complex(12)) {
        prop_assert_eq!(parse_complex(&write_complex(&c)).unwrap(), c);
    }
}

fn corpus_germs() -> Vec<String> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/germs");
    let mut files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files.iter().map(|p| std::fs::read_to_string(p).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn shear_and_scaling_preserve_the_classification(
        which in any::<prop::sample::Index>(),
        c in small_rational(),
        l in nonzero_rational(),
        m in nonzero_rational(),
    ) {
        let germs = corpus_germs();
        let f = parse_germ(&germs[which.index(germs.len())]).unwrap();
        let g = f.sheared(&c).scaled(&l, &m);
        let r = classify_inner(&f, &g).unwrap();
        prop_assert!(r.verdict.is_yes(), "{}", r.verdict);
        prop_assert!(r.double_curves.is_yes(), "{}", r.double_curves);
        prop_assert!(r.link_graphs.is_yes(), "{}", r.link_graphs);
    }

    #[test]
    fn exponents_come_from_the_degrees(which in any::<prop::sample::Index>(), c in small_rational()) {
        let germs = corpus_germs();
        let f = parse_germ(&germs[which.index(germs.len())]).unwrap().sheared(&c);
        let allowed = [Rational::one(), rat(f.d2() as i64, 1), rat(f.d3() as i64, 1)];
        let rep = build_holder_complex(&f).unwrap();
        for e in rep.canonical.edges() {
            prop_assert!(allowed.contains(&e.beta), "{} not in {{1, d2, d3}}", e.beta);
        }
    }
}

#[test]
fn radial_extension_preserves_spheres() {
    let cone = parse_poly("x^2 + y^2 - z^2", &["x", "y", "z"]).unwrap();
    let links = trace_link(&cone, 1.0, 0.02).unwrap();
    let h = LinkCorrespondence::new(links.clone(), links.iter().map(|c| c.scaled(3.0)).collect(), vec![0, 1]).unwrap();
    proptest!(ProptestConfig { cases: 256, ..ProptestConfig::default() }, |(comp in 0usize..2, s in 0.0f64..1.0, r in 1e-4f64..10.0)| {
        let u = h.source_point(comp, s);
        let p = [u[0] * r, u[1] * r, u[2] * r];
        let q = radial_extension(&h, p).unwrap();
        let norm = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
        prop_assert!((norm - r).abs() <= 1e-12 * r);
        // the scaled link is the same cone, so H is the identity
        prop_assert!((0..3).all(|i| (q[i] - p[i]).abs() <= 1e-9 * r));
    });
}
