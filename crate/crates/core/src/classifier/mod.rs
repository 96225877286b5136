//! From a map germ to its link graph, canonical Hölder complex and inner
//! classification.

mod sector;

use std::fmt;

pub use sector::{sector_decomposition, sector_exponent, Sector};

use crate::complex::{combinatorially_equivalent, graphs_isomorphic, simplify, Edge, HolderComplex};
use crate::contact::{contact_matrix, curves_outer_equivalent, ContactMatrix, CurveGerm};
use crate::error::Result;
use crate::germ::{double_rays, image_double_curve_of, MapGerm, RaySystem};
use crate::kernel::Rational;
use crate::verdict::Verdict;

#[derive(Clone, Debug)]
pub struct GermComplexReport {
    pub ray_system: RaySystem,
    pub sectors: Vec<Sector>,
    /// `betas[i]` is the exponent of `sectors[i]`.
    pub betas: Vec<Rational>,
    /// Vertices are pairing classes, edges are sectors (in order).
    pub link_graph: HolderComplex,
    pub canonical: HolderComplex,
    pub double_curve: CurveGerm,
    pub contact: ContactMatrix,
}

/// Builds the link graph of `f` and simplifies it.
///
/// A germ without double rays has one sector and no pairing class; its
/// link is an embedded circle, recorded as one vertex with a loop.
pub fn build_holder_complex(f: &MapGerm) -> Result<GermComplexReport> {
    let rs = double_rays(f)?;
    let sectors = sector_decomposition(&rs);
    let betas: Vec<Rational> = sectors.iter().map(|s| sector_exponent(f, s)).collect::<Result<_>>()?;
    let link_graph = if rs.is_empty() {
        HolderComplex::from_edges(1, vec![Edge::new(0, 0, betas[0].clone())])?
    } else {
        let class = rs.class_of();
        let edges = sectors
            .iter()
            .zip(&betas)
            .map(|(s, b)| Edge::new(class[s.start.unwrap()], class[s.end.unwrap()], b.clone()))
            .collect();
        HolderComplex::from_edges(rs.classes().len(), edges)?
    };
    let canonical = simplify(&link_graph);
    let double_curve = image_double_curve_of(f, &rs);
    let contact = contact_matrix(&double_curve)?;
    Ok(GermComplexReport { ray_system: rs, sectors, betas, link_graph, canonical, double_curve, contact })
}

#[derive(Clone, Debug)]
pub struct InnerClassification {
    /// Decision on the canonical complexes.
    pub verdict: Verdict,
    pub left: GermComplexReport,
    pub right: GermComplexReport,
    /// Outer equivalence of the image double curves.
    pub double_curves: Verdict,
    /// Isomorphism of the unsimplified link graphs.
    pub link_graphs: Verdict,
}

pub fn classify_inner(f: &MapGerm, g: &MapGerm) -> Result<InnerClassification> {
    let left = build_holder_complex(f)?;
    let right = build_holder_complex(g)?;
    let verdict = combinatorially_equivalent(&left.canonical, &right.canonical)?;
    let double_curves = curves_outer_equivalent(&left.double_curve, &right.double_curve)?;
    let link_graphs = graphs_isomorphic(&left.link_graph, &right.link_graph);
    Ok(InnerClassification { verdict, left, right, double_curves, link_graphs })
}

impl fmt::Display for GermComplexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "link graph: {}", self.link_graph)?;
        write!(f, "canonical:  {}", self.canonical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::canonical_form;
    use crate::germ::parse_germ;
    use crate::kernel::rational::{int, rat};

    fn germ(p: &str, q: &str) -> MapGerm {
        parse_germ(&format!("p = {p}\nq = {q}")).unwrap()
    }

    #[test]
    fn e1_sectors() {
        let f = germ("y^2", "y^3 - x^2*y");
        let rep = build_holder_complex(&f).unwrap();
        assert_eq!(rep.sectors.len(), 4);
        let vertical: Vec<bool> = rep.sectors.iter().map(Sector::contains_vertical).collect();
        assert_eq!(vertical, vec![false, true, false, true]);
        assert_eq!(rep.betas, vec![int(2), int(1), int(2), int(1)]);
        let c = &rep.canonical;
        assert_eq!(c.vertex_count(), 2);
        let mut loops: Vec<Rational> = c.edges().iter().filter(|e| e.is_loop()).map(|e| e.beta.clone()).collect();
        loops.sort();
        assert_eq!(loops, vec![int(2), int(2)]);
        let links: Vec<&Edge> = c.edges().iter().filter(|e| !e.is_loop()).collect();
        assert_eq!(links.len(), 2);
        assert!(links.iter().all(|e| e.beta == int(1)));
        assert_eq!(canonical_form(c).unwrap(), "V2;L(1:2/1);E(1-2:1/1);E(1-2:1/1);L(2:2/1)");
    }

    #[test]
    fn empty_ray_system_is_a_cone() {
        let rep = build_holder_complex(&germ("y^2", "(x + y)^3")).unwrap();
        assert!(rep.ray_system.is_empty());
        assert_eq!(rep.sectors.len(), 1);
        assert!(rep.sectors[0].contains_vertical());
        assert_eq!(canonical_form(&rep.canonical).unwrap(), "V1;L(1:1/1)");
    }

    #[test]
    fn vertical_only_sectors() {
        let rep = build_holder_complex(&germ("y^2", "x*y")).unwrap();
        assert_eq!(rep.sectors.len(), 2);
        for s in &rep.sectors {
            assert!(!s.vertical_interior && s.vertical_boundary);
        }
        assert!(rep.sectors[0].contains_positive_x && !rep.sectors[0].contains_negative_x);
        assert!(rep.sectors[1].contains_negative_x && !rep.sectors[1].contains_positive_x);
    }

    #[test]
    fn higher_degree_first_coordinate_uses_smallest_separating_degree() {
        // sector through the positive x-axis: arcs separate in q at order 2
        let rep = build_holder_complex(&germ("y^3 - x^2*y", "y^2")).unwrap();
        assert!(rep.betas.contains(&int(2)));
        assert!(!rep.betas.contains(&int(3)));
    }

    #[test]
    fn classify_examples() {
        let e1 = germ("y^2", "y^3 - x^2*y");
        let e2 = germ("y^2", "(x + y)^3");
        assert!(classify_inner(&e1, &e1).unwrap().verdict.is_yes());
        let sheared = e1.sheared(&rat(1, 2));
        let r = classify_inner(&e1, &sheared).unwrap();
        assert!(r.verdict.is_yes() && r.double_curves.is_yes() && r.link_graphs.is_yes());
        match classify_inner(&e1, &e2).unwrap().verdict {
            Verdict::No(d) => {
                assert_eq!(d.invariant, "vertex count");
                assert_eq!((d.left.as_str(), d.right.as_str()), ("2", "1"));
            }
            v => panic!("{v}"),
        }
    }
}
