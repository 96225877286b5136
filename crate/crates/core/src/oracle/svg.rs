//! Plot output: link polylines and log-log contact fits as SVG text.

use std::fmt::Write;

use super::arcs::ContactEstimate;
use super::link::LinkPolyline;

const SIZE: f64 = 400.0;

/// Orthographic view from `+z`; components on the upper hemisphere are
/// solid, the rest dashed.
pub fn links_svg(links: &[LinkPolyline]) -> String {
    let r = links.iter().map(|c| c.radius).fold(1e-300, f64::max);
    let map = |p: &[f64; 3]| (SIZE / 2.0 + 0.45 * SIZE * p[0] / r, SIZE / 2.0 - 0.45 * SIZE * p[1] / r);
    let mut out = header();
    let _ = writeln!(
        out,
        r#"<circle cx="{c}" cy="{c}" r="{rr}" fill="none" stroke="grey" stroke-width="0.5"/>"#,
        c = SIZE / 2.0,
        rr = 0.45 * SIZE
    );
    for c in links {
        let pts: Vec<String> = c.points.iter().map(&map).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let dash = if c.centroid()[2] >= 0.0 { "" } else { r#" stroke-dasharray="4 3""# };
        let _ =
            writeln!(out, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1"{dash}/>"#, pts.join(" "));
    }
    out.push_str("</svg>\n");
    out
}

/// Samples `(ln r, ln dist)` with the fitted line.
pub fn contact_plot_svg(est: &ContactEstimate, title: &str) -> String {
    let mut out = header();
    let _ = writeln!(out, r#"<text x="10" y="20" font-size="12">{}</text>"#, escape(title));
    if est.used.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let (x0, x1) = bounds(est.used.iter().map(|p| p.0));
    let (y0, y1) = bounds(est.used.iter().map(|p| p.1));
    let map = |x: f64, y: f64| {
        (
            40.0 + (SIZE - 60.0) * (x - x0) / (x1 - x0).max(1e-12),
            SIZE - 30.0 - (SIZE - 60.0) * (y - y0) / (y1 - y0).max(1e-12),
        )
    };
    for &(x, y) in &est.used {
        let (px, py) = map(x, y);
        let _ = writeln!(out, r#"<circle cx="{px:.3}" cy="{py:.3}" r="2.5" fill="black"/>"#);
    }
    let n = est.used.len() as f64;
    let mx = est.used.iter().map(|p| p.0).sum::<f64>() / n;
    let my = est.used.iter().map(|p| p.1).sum::<f64>() / n;
    let (ax, ay) = map(x0, my + est.order * (x0 - mx));
    let (bx, by) = map(x1, my + est.order * (x1 - mx));
    let _ = writeln!(out, r#"<line x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}" stroke="red"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="10" y="{}" font-size="12">slope {:.6}, residual {:.2e}</text>"#,
        SIZE - 8.0,
        est.order,
        est.residual
    );
    out.push_str("</svg>\n");
    out
}

fn header() -> String {
    format!(r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#)
        + "\n"
}

fn bounds(it: impl Iterator<Item = f64>) -> (f64, f64) {
    it.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
