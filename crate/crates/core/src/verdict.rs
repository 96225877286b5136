//! Equivalence decisions with certificates.

use std::fmt;

/// Evidence for a positive decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Branch `i` of the left germ corresponds to branch `perm[i]` of the right.
    Permutation(Vec<usize>),
    /// Vertex and edge bijections, left index to right index.
    Isomorphism { vertices: Vec<usize>, edges: Vec<usize> },
}

/// An invariant that takes different values on the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distinction {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(Certificate),
    No(Distinction),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn no(invariant: impl Into<String>, left: impl Into<String>, right: impl Into<String>) -> Self {
        Verdict::No(Distinction { invariant: invariant.into(), left: left.into(), right: right.into() })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Permutation(p) => {
                let parts: Vec<String> = p.iter().enumerate().map(|(i, j)| format!("{}->{}", i + 1, j + 1)).collect();
                write!(f, "permutation [{}]", parts.join(", "))
            }
            Certificate::Isomorphism { vertices, edges } => {
                let v: Vec<String> =
                    vertices.iter().enumerate().map(|(i, j)| format!("v{}->v{}", i + 1, j + 1)).collect();
                let e: Vec<String> = edges.iter().enumerate().map(|(i, j)| format!("e{}->e{}", i + 1, j + 1)).collect();
                write!(f, "vertices [{}]; edges [{}]", v.join(", "), e.join(", "))
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes(c) => write!(f, "YES ({c})"),
            Verdict::No(d) => write!(f, "NO ({}: {} vs {})", d.invariant, d.left, d.right),
        }
    }
}
