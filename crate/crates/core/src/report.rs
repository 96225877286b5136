//! Text and structured (JSON) renderings of pipeline results, shared by the
//! command-line tool and the C interface.
//!
//! Decimal values carry 12 digits and the marker `(approx)`; exact data is
//! printed alongside them. JSON objects have sorted keys.

use serde_json::{json, Value};

use crate::classifier::{GermComplexReport, InnerClassification};
use crate::complex::{canonical_form, HolderComplex};
use crate::contact::{ContactMatrix, CurveGerm};
use crate::germ::{MapGerm, Ray, RaySystem};
use crate::kernel::rational::fraction_string;
use crate::kernel::upoly::render_univariate;
use crate::kernel::AlgebraicNumber;
use crate::verdict::{Certificate, Verdict};

pub fn approx(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.12} (approx)")
}

pub fn algebraic_text(a: &AlgebraicNumber) -> String {
    let (lo, hi) = a.interval();
    format!(
        "root of {} in [{}, {}] = {}",
        render_univariate(a.defining_poly(), "s"),
        fraction_string(lo),
        fraction_string(hi),
        approx(a.to_f64())
    )
}

pub fn algebraic_json(a: &AlgebraicNumber) -> Value {
    let (lo, hi) = a.interval();
    json!({
        "poly": render_univariate(a.defining_poly(), "s"),
        "interval": [fraction_string(lo), fraction_string(hi)],
        "exact": a.as_rational().map(fraction_string),
        "approx": approx(a.to_f64()),
    })
}

fn ray_json(i: usize, r: &Ray) -> Value {
    match r {
        Ray::Slope { slope, x_sign } => json!({
            "index": i + 1, "kind": "slope", "x_sign": x_sign, "slope": algebraic_json(slope),
        }),
        Ray::Vertical { y_sign } => json!({ "index": i + 1, "kind": "vertical", "y_sign": y_sign }),
    }
}

fn ray_text(r: &Ray) -> String {
    match r {
        Ray::Slope { slope, x_sign } => {
            format!("{}, slope {}", if *x_sign > 0 { "x>0" } else { "x<0" }, algebraic_text(slope))
        }
        Ray::Vertical { y_sign } => format!("x=0, {}", if *y_sign > 0 { "y>0" } else { "y<0" }),
    }
}

pub fn germ_json(f: &MapGerm) -> Value {
    json!({ "name": f.name(), "p": f.p().to_string(), "q": f.q().to_string(), "d2": f.d2(), "d3": f.d3() })
}

pub fn curve_json(c: &CurveGerm) -> Value {
    Value::Array(c.branches.iter().map(|b| json!({ "label": b.label(), "arc": b.to_string() })).collect())
}

pub fn matrix_json(m: &ContactMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| Value::Array(r.iter().map(|c| json!(c.fraction())).collect())).collect())
}

pub fn matrix_text(m: &ContactMatrix) -> String {
    if m.size() == 0 {
        return "  (no branches)\n".into();
    }
    let cells: Vec<Vec<String>> = m.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| format!("  [{}]\n", r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join(" ")))
        .collect()
}

pub fn dpoints_text(f: &MapGerm, rs: &RaySystem, curve: &CurveGerm) -> String {
    let mut out = format!("germ {}: {}\n", f.name(), f);
    for w in f.warnings() {
        out += &format!("warning: {w}\n");
    }
    out += &format!("rays: {}\n", rs.len());
    for (i, r) in rs.rays.iter().enumerate() {
        out += &format!("  r{}: {}\n", i + 1, ray_text(r));
    }
    out += &format!("pairing classes: {}\n", rs.classes().len());
    for (a, b) in rs.classes() {
        out += &format!("  r{} ~ r{}\n", a + 1, b + 1);
    }
    out += &format!("vertical: {}\n", if rs.vertical_in_d { "yes" } else { "no" });
    out += &format!("double curve branches: {}\n", curve.len());
    for b in &curve.branches {
        out += &format!("  {}: {}\n", b.label(), b);
    }
    out
}

pub fn dpoints_json(f: &MapGerm, rs: &RaySystem, curve: &CurveGerm) -> Value {
    json!({
        "germ": germ_json(f),
        "warnings": f.warnings(),
        "rays": rs.rays.iter().enumerate().map(|(i, r)| ray_json(i, r)).collect::<Vec<_>>(),
        "pairing": rs.classes().iter().map(|(a, b)| json!([a + 1, b + 1])).collect::<Vec<_>>(),
        "vertical_in_d": rs.vertical_in_d,
        "branches": curve_json(curve),
    })
}

pub fn complex_json(c: &HolderComplex) -> Value {
    json!({
        "vertices": c.vertices(),
        "edges": c.edges().iter().map(|e| json!([c.vertices()[e.a], c.vertices()[e.b], fraction_string(&e.beta)])).collect::<Vec<_>>(),
    })
}

fn canonical_string(c: &HolderComplex) -> String {
    canonical_form(c).unwrap_or_else(|e| format!("unavailable ({e})"))
}

pub fn complex_text(f: &MapGerm, rep: &GermComplexReport) -> String {
    let mut out = format!("germ {}: {}\n", f.name(), f);
    out += &format!("sectors: {}\n", rep.sectors.len());
    for (i, (s, b)) in rep.sectors.iter().zip(&rep.betas).enumerate() {
        out += &format!(
            "  s{}: {} beta = {}{}\n",
            i + 1,
            s.label(&rep.ray_system),
            fraction_string(b),
            if s.contains_vertical() { " (contains vertical)" } else { "" }
        );
    }
    out += "link graph:\n";
    out += &indent(&crate::complex::write_complex(&rep.link_graph));
    out += "canonical complex:\n";
    out += &indent(&crate::complex::write_complex(&rep.canonical));
    out += &format!("canonical form: {}\n", canonical_string(&rep.canonical));
    out
}

pub fn complex_json_report(f: &MapGerm, rep: &GermComplexReport) -> Value {
    json!({
        "germ": germ_json(f),
        "sectors": rep.sectors.iter().zip(&rep.betas).map(|(s, b)| json!({
            "start": s.start.map(|i| i + 1),
            "end": s.end.map(|i| i + 1),
            "label": s.label(&rep.ray_system),
            "beta": fraction_string(b),
            "contains_vertical": s.contains_vertical(),
        })).collect::<Vec<_>>(),
        "link_graph": complex_json(&rep.link_graph),
        "canonical": complex_json(&rep.canonical),
        "canonical_form": canonical_string(&rep.canonical),
        "double_curve": curve_json(&rep.double_curve),
        "contact_matrix": matrix_json(&rep.contact),
    })
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

pub fn verdict_text(v: &Verdict) -> String {
    v.to_string()
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Yes(Certificate::Permutation(p)) => {
            json!({ "verdict": "YES", "permutation": p.iter().map(|i| i + 1).collect::<Vec<_>>() })
        }
        Verdict::Yes(Certificate::Isomorphism { vertices, edges }) => json!({
            "verdict": "YES",
            "vertex_map": vertices.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "edge_map": edges.iter().map(|i| i + 1).collect::<Vec<_>>(),
        }),
        Verdict::No(d) => json!({ "verdict": "NO", "invariant": d.invariant, "left": d.left, "right": d.right }),
    }
}

pub fn classify_text(f: &MapGerm, g: &MapGerm, r: &InnerClassification) -> String {
    let mut out = format!("left  {}: {}\n", f.name(), f);
    out += &format!("right {}: {}\n", g.name(), g);
    out += &format!("left canonical form:  {}\n", canonical_string(&r.left.canonical));
    out += &format!("right canonical form: {}\n", canonical_string(&r.right.canonical));
    out += &format!("inner equivalence: {}\n", verdict_text(&r.verdict));
    out += &format!("double curves (outer): {}\n", verdict_text(&r.double_curves));
    out += "left contact matrix:\n";
    out += &matrix_text(&r.left.contact);
    out += "right contact matrix:\n";
    out += &matrix_text(&r.right.contact);
    out += &format!("link graphs: {}\n", verdict_text(&r.link_graphs));
    out
}

pub fn classify_json(f: &MapGerm, g: &MapGerm, r: &InnerClassification) -> Value {
    json!({
        "left": { "germ": germ_json(f), "canonical_form": canonical_string(&r.left.canonical),
                  "contact_matrix": matrix_json(&r.left.contact), "link_graph": complex_json(&r.left.link_graph) },
        "right": { "germ": germ_json(g), "canonical_form": canonical_string(&r.right.canonical),
                   "contact_matrix": matrix_json(&r.right.contact), "link_graph": complex_json(&r.right.link_graph) },
        "inner": verdict_json(&r.verdict),
        "double_curves": verdict_json(&r.double_curves),
        "link_graphs": verdict_json(&r.link_graphs),
    })
}
