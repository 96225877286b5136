use super::arcs::{estimate_contact, estimate_sector_exponent, SampledArc};
use crate::classifier::build_holder_complex;
use crate::error::Result;
use crate::germ::MapGerm;
use crate::kernel::rational::{fraction_string, Rational};

/// Kind of exact quantity checked by one row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckKind {
    SectorExponent,
    BranchContact,
}

#[derive(Clone, Debug)]
pub struct CheckRow {
    pub kind: CheckKind,
    pub label: String,
    /// Exact value as `num/den`, or `inf`.
    pub exact: String,
    pub exact_f64: f64,
    pub estimate: f64,
    pub residual: f64,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
    pub tolerance: f64,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// Runs every numeric cross-check of a germ against the exact pipeline:
/// sector exponents, then contact orders between distinct branches of the
/// image double curve.
///
/// `beta_offset` is added to every exact sector exponent before comparing.
/// It is a fault-injection hook and is zero in normal use.
pub fn verify_germ(
    f: &MapGerm,
    radii: &[f64],
    samples: usize,
    tolerance: f64,
    beta_offset: &Rational,
) -> Result<VerifyReport> {
    let rep = build_holder_complex(f)?;
    let mut rows = Vec::new();
    for (sec, beta) in rep.sectors.iter().zip(&rep.betas) {
        let exact = beta + beta_offset;
        let exact_f64 = crate::kernel::rational::to_f64(&exact);
        let est = estimate_sector_exponent(f, &rep.ray_system, sec, samples, radii)?;
        rows.push(CheckRow {
            kind: CheckKind::SectorExponent,
            label: sec.label(&rep.ray_system),
            exact: fraction_string(&exact),
            exact_f64,
            estimate: est.exponent,
            residual: est.residual,
            ok: (est.exponent - exact_f64).abs() <= tolerance,
        });
    }
    let arcs: Vec<SampledArc> = rep.double_curve.branches.iter().map(|b| SampledArc::from_arc(b, radii)).collect();
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            let k = rep.contact.get(i, j);
            let est = estimate_contact(&arcs[i], &arcs[j])?;
            let exact_f64 = k.to_f64();
            let ok = if k.is_infinite() { est.infinite } else { (est.order - exact_f64).abs() <= tolerance };
            rows.push(CheckRow {
                kind: CheckKind::BranchContact,
                label: format!("K({}, {})", i + 1, j + 1),
                exact: k.fraction(),
                exact_f64,
                estimate: est.order,
                residual: est.residual,
                ok,
            });
        }
    }
    Ok(VerifyReport { rows, tolerance })
}
