//! `holder`: command-line front end.
//!
//! Exit status: 0 for success or a positive verdict, 1 for a negative
//! verdict or a numeric discrepancy, 2 for any error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use holder_core::classifier::{build_holder_complex, classify_inner};
use holder_core::complex::{canonical_form, parse_complex, simplify, write_complex};
use holder_core::contact::{
    contact_matrix, contact_order_radius, contact_order_with_depth, curves_outer_equivalent, default_depth, CurveGerm,
    PuiseuxArc,
};
use holder_core::germ::{double_rays, image_double_curve_of, parse_germ, MapGerm};
use holder_core::kernel::rational::{fraction_string, parse_rational, Rational};
use holder_core::oracle::{
    estimate_contact, lipschitz_estimate, lne_estimate, radius_grid, svg, trace_link, verify_germ, CheckKind,
    LinkCorrespondence, LinkPolyline, SampledArc, TriMesh, DEFAULT_RADII, LNE_FLAG_THRESHOLD,
};
use holder_core::parse::parse_phi_file;
use holder_core::report::{self, approx};
use holder_core::{Error, Result};

#[derive(Parser)]
#[command(name = "holder", version, about = "Inner bi-Lipschitz classification of corank-1 surface germs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Double-point rays, their pairing and the image double curve.
    Dpoints { germ: PathBuf },
    /// Hölder complex of a germ file, or simplification of a complex file.
    Complex {
        file: PathBuf,
        /// Print only the canonical form string.
        #[arg(long)]
        canonical: bool,
    },
    /// Inner bi-Lipschitz classification of two germs.
    Classify { f: PathBuf, g: PathBuf },
    /// Contact matrix of a curve germ; outer equivalence when given two.
    Curves { a: PathBuf, b: Option<PathBuf> },
    /// Exact contact order of two arc literals such as "(t, t^2, 0)".
    Contact {
        a: String,
        b: String,
        /// Truncation order (rational); defaults to 2(e_A + e_B) + 2.
        #[arg(long)]
        depth: Option<String>,
    },
    /// Numeric cross-check of every exact exponent of a germ.
    OracleContact {
        germ: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Directory for log-log SVG plots.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Added to every exact sector exponent (fault injection).
        #[arg(long, hide = true)]
        corrupt_beta: Option<String>,
    },
    /// Inner/outer distance ratio on a model surface mesh.
    OracleLne {
        /// disk, triangle:BETA or pinch.
        #[arg(long, default_value = "disk")]
        model: String,
        #[arg(long, default_value_t = 0.05)]
        resolution: f64,
        #[arg(long, default_value_t = 4000)]
        pairs: usize,
    },
    /// Radial extension of an arc-length link correspondence between two
    /// homogeneous surfaces, with Lipschitz estimates for H and its inverse.
    Radial {
        phi_x: PathBuf,
        phi_y: PathBuf,
        /// Radius of the target link.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Target component for each source component, 1-based, comma separated.
        #[arg(long = "match")]
        matching: Option<String>,
        #[arg(long, default_value_t = 4000)]
        pairs: usize,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Link of a homogeneous surface phi = 0 on a sphere.
    TraceLink {
        phi: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.02)]
        step: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct OracleArgs {
    /// Radius grid as lo,hi,count.
    #[arg(long)]
    radii: Option<String>,
    /// Directions sampled per sector.
    #[arg(long, default_value_t = 9)]
    samples: usize,
    #[arg(long, default_value_t = 0.15)]
    tolerance: f64,
}

/// Text and structured renderings plus the exit status.
struct Outcome {
    text: String,
    value: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, value: Value) -> Self {
        Outcome { text, value, code: 0 }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Attaches the file name to diagnostics raised while reading it.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Io(m) => Error::Io(m),
        e => Error::Io(format!("{}: {e}", path.display())),
    })
}

fn load_germ(path: &Path) -> Result<MapGerm> {
    let text = read(path)?;
    in_file(path, parse_germ(&text))
}

fn load_phi(path: &Path) -> Result<holder_core::kernel::Poly> {
    let text = read(path)?;
    in_file(path, parse_phi_file(&text))
}

fn rational_arg(s: &str, what: &str) -> Result<Rational> {
    parse_rational(s.trim()).ok_or_else(|| Error::Io(format!("{what}: expected a rational number, got {s:?}")))
}

fn radii_arg(s: &Option<String>) -> Result<Vec<f64>> {
    let (lo, hi, n) = match s {
        None => DEFAULT_RADII,
        Some(s) => {
            let parts: Vec<&str> = s.split(',').map(str::trim).collect();
            let bad = || Error::Io(format!("--radii: expected lo,hi,count, got {s:?}"));
            if parts.len() != 3 {
                return Err(bad());
            }
            (
                parts[0].parse().map_err(|_| bad())?,
                parts[1].parse().map_err(|_| bad())?,
                parts[2].parse().map_err(|_| bad())?,
            )
        }
    };
    radius_grid(lo, hi, n)
}

/// A curve file is either a germ file (its image double curve) or one arc
/// literal per line, with `#` comments.
fn load_curve(path: &Path) -> Result<CurveGerm> {
    let text = read(path)?;
    let is_germ = text.lines().any(|l| {
        let l = l.trim_start();
        l.starts_with("p ") || l.starts_with("p=") || l.starts_with("name")
    });
    if is_germ {
        let f = in_file(path, parse_germ(&text))?;
        let rs = double_rays(&f)?;
        return Ok(image_double_curve_of(&f, &rs));
    }
    let mut branches = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let arc = PuiseuxArc::from_literal(body, format!("b{}", branches.len() + 1)).map_err(|e| match e {
            Error::Parse { col, msg, .. } => Error::Parse { line: i + 1, col, msg },
            e => e,
        });
        branches.push(in_file(path, arc)?);
    }
    Ok(CurveGerm::new(branches))
}

fn run_dpoints(path: &Path) -> Result<Outcome> {
    let f = load_germ(path)?;
    let rs = double_rays(&f)?;
    let curve = image_double_curve_of(&f, &rs);
    Ok(Outcome::ok(report::dpoints_text(&f, &rs, &curve), report::dpoints_json(&f, &rs, &curve)))
}

fn run_complex(path: &Path, canonical_only: bool) -> Result<Outcome> {
    let text = read(path)?;
    if text.lines().any(|l| l.trim_start().starts_with("vertices")) {
        let c = in_file(path, parse_complex(&text))?;
        let s = simplify(&c);
        let form = canonical_form(&s)?;
        if canonical_only {
            return Ok(Outcome::ok(format!("{form}\n"), json!({ "canonical_form": form })));
        }
        let text =
            format!("input:\n{}canonical complex:\n{}canonical form: {form}\n", write_complex(&c), write_complex(&s));
        let value = json!({
            "input": report::complex_json(&c),
            "canonical": report::complex_json(&s),
            "canonical_form": form,
        });
        return Ok(Outcome::ok(text, value));
    }
    let f = in_file(path, parse_germ(&text))?;
    let rep = build_holder_complex(&f)?;
    if canonical_only {
        let form = canonical_form(&rep.canonical)?;
        return Ok(Outcome::ok(format!("{form}\n"), json!({ "canonical_form": form })));
    }
    Ok(Outcome::ok(report::complex_text(&f, &rep), report::complex_json_report(&f, &rep)))
}

fn run_classify(pf: &Path, pg: &Path) -> Result<Outcome> {
    let f = load_germ(pf)?;
    let g = load_germ(pg)?;
    let r = classify_inner(&f, &g)?;
    let code = if r.verdict.is_yes() { 0 } else { 1 };
    Ok(Outcome { text: report::classify_text(&f, &g, &r), value: report::classify_json(&f, &g, &r), code })
}

fn run_curves(pa: &Path, pb: Option<&Path>) -> Result<Outcome> {
    let ca = load_curve(pa)?;
    let ma = contact_matrix(&ca)?;
    let branches = |c: &CurveGerm| c.branches.iter().map(|b| format!("  {}: {}\n", b.label(), b)).collect::<String>();
    let mut text = format!("branches:\n{}contact matrix:\n{}", branches(&ca), report::matrix_text(&ma));
    let Some(pb) = pb else {
        let value = json!({ "branches": report::curve_json(&ca), "contact_matrix": report::matrix_json(&ma) });
        return Ok(Outcome::ok(text, value));
    };
    let cb = load_curve(pb)?;
    let mb = contact_matrix(&cb)?;
    let v = curves_outer_equivalent(&ca, &cb)?;
    text += &format!("second branches:\n{}second contact matrix:\n{}", branches(&cb), report::matrix_text(&mb));
    text += &format!("outer equivalence: {v}\n");
    let value = json!({
        "left": { "branches": report::curve_json(&ca), "contact_matrix": report::matrix_json(&ma) },
        "right": { "branches": report::curve_json(&cb), "contact_matrix": report::matrix_json(&mb) },
        "outer": report::verdict_json(&v),
    });
    Ok(Outcome { text, value, code: if v.is_yes() { 0 } else { 1 } })
}

fn run_contact(a: &str, b: &str, depth: &Option<String>) -> Result<Outcome> {
    let a = PuiseuxArc::from_literal(a, "A")?;
    let b = PuiseuxArc::from_literal(b, "B")?;
    let depth = match depth {
        Some(d) => rational_arg(d, "--depth")?,
        None => default_depth(&a, &b),
    };
    let plane = contact_order_with_depth(&a, &b, &depth)?;
    let radius = contact_order_radius(&a, &b, &depth)?;
    if plane != radius {
        return Err(Error::ContactInvariant(format!("coordinate route gives {plane}, radius route gives {radius}")));
    }
    let text = format!(
        "A: {a}\nB: {b}\ntruncation order: {}\ncontact: {} = {}\n",
        fraction_string(&depth),
        plane.fraction(),
        approx(plane.to_f64())
    );
    let value = json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "depth": fraction_string(&depth),
        "contact": plane.fraction(),
        "approx": approx(plane.to_f64()),
    });
    Ok(Outcome::ok(text, value))
}

fn run_oracle_contact(
    path: &Path,
    args: &OracleArgs,
    svg_dir: &Option<PathBuf>,
    corrupt: &Option<String>,
) -> Result<Outcome> {
    let f = load_germ(path)?;
    let radii = radii_arg(&args.radii)?;
    let offset = match corrupt {
        Some(s) => rational_arg(s, "--corrupt-beta")?,
        None => Rational::from_integer(0.into()),
    };
    let rep = verify_germ(&f, &radii, args.samples, args.tolerance, &offset)?;
    let mut text = format!("germ {}: {}\ntolerance {}\n", f.name(), f, args.tolerance);
    let mut rows = Vec::new();
    for r in &rep.rows {
        let kind = match r.kind {
            CheckKind::SectorExponent => "sector",
            CheckKind::BranchContact => "contact",
        };
        text += &format!(
            "{kind} {}: exact {}, estimate {}, residual {}, {}\n",
            r.label,
            r.exact,
            approx(r.estimate),
            approx(r.residual),
            if r.ok { "ok" } else { "DISCREPANCY" }
        );
        rows.push(json!({
            "kind": kind,
            "label": r.label,
            "exact": r.exact,
            "estimate": approx(r.estimate),
            "residual": approx(r.residual),
            "ok": r.ok,
        }));
    }
    if let Some(dir) = svg_dir {
        write_contact_plots(&f, &radii, dir)?;
    }
    let ok = rep.all_ok();
    text += if ok { "all rows within tolerance\n" } else { "discrepancy above tolerance\n" };
    let value = json!({ "germ": report::germ_json(&f), "tolerance": args.tolerance, "rows": rows, "ok": ok });
    Ok(Outcome { text, value, code: if ok { 0 } else { 1 } })
}

fn write_contact_plots(f: &MapGerm, radii: &[f64], dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let rep = build_holder_complex(f)?;
    let arcs: Vec<SampledArc> = rep.double_curve.branches.iter().map(|b| SampledArc::from_arc(b, radii)).collect();
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            let est = estimate_contact(&arcs[i], &arcs[j])?;
            let title = format!("K({}, {}) exact {}", i + 1, j + 1, rep.contact.get(i, j).fraction());
            fs::write(dir.join(format!("contact_{}_{}.svg", i + 1, j + 1)), svg::contact_plot_svg(&est, &title))?;
        }
    }
    Ok(())
}

fn run_oracle_lne(model: &str, resolution: f64, pairs: usize) -> Result<Outcome> {
    if !(resolution > 0.0 && resolution < 1.0) {
        return Err(Error::Io(format!("--resolution must lie in (0, 1), got {resolution}")));
    }
    let n = (1.0 / resolution).ceil() as usize;
    let mesh = match model.split_once(':') {
        None if model == "disk" => TriMesh::flat_disk(n),
        None if model == "pinch" => TriMesh::pinched_sheets(n, 1.0),
        Some(("triangle", b)) => {
            let beta: f64 = b.parse().map_err(|_| Error::Io(format!("--model: bad exponent {b:?}")))?;
            if beta < 1.0 {
                return Err(Error::Io("--model: triangle exponent must be >= 1".into()));
            }
            TriMesh::holder_triangle(beta, resolution, 1e-2)
        }
        _ => return Err(Error::Io(format!("--model: expected disk, triangle:BETA or pinch, got {model:?}"))),
    };
    let est = lne_estimate(&mesh, pairs)?;
    let text = format!(
        "model {model}: {} vertices, {} triangles\npairs tested: {}\nmax inner/outer ratio: {}\nnormally embedded: {}\n",
        mesh.vertices.len(),
        mesh.triangles.len(),
        est.pairs_tested,
        approx(est.k),
        if est.flagged { format!("no (ratio above {LNE_FLAG_THRESHOLD})") } else { "yes".into() }
    );
    let value = json!({
        "model": model,
        "vertices": mesh.vertices.len(),
        "pairs_tested": est.pairs_tested,
        "k": approx(est.k),
        "pair": [est.pair.0, est.pair.1],
        "flagged": est.flagged,
    });
    Ok(Outcome { text, value, code: if est.flagged { 1 } else { 0 } })
}

fn parse_matching(s: &Option<String>, n: usize) -> Result<Vec<usize>> {
    match s {
        None => Ok((0..n).collect()),
        Some(s) => s
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(Error::Io(format!("--match: expected 1-based component indices, got {t:?}"))),
            })
            .collect(),
    }
}

fn run_radial(
    px: &Path,
    py: &Path,
    radius: f64,
    matching: &Option<String>,
    pairs: usize,
    step: f64,
) -> Result<Outcome> {
    if !(radius > 0.0) {
        return Err(Error::Io("--radius must be positive".into()));
    }
    let phi_x = load_phi(px)?;
    let phi_y = load_phi(py)?;
    let lx = trace_link(&phi_x, 1.0, step)?;
    let ly = trace_link(&phi_y, radius, step * radius)?;
    let m = parse_matching(matching, lx.len())?;
    let h = LinkCorrespondence::new(lx.clone(), ly.clone(), m)?;
    let fwd = lipschitz_estimate(&h, pairs)?;
    let inv = lipschitz_estimate(&h.inverse(), pairs)?;
    let mut text = format!("source link: {} components\ntarget link: {} components\n", lx.len(), ly.len());
    let mut parts = Vec::new();
    for (name, r) in [("H", &fwd), ("H^-1", &inv)] {
        text += &format!(
            "{name}: C_emp {}, C_HL {}, bound {}, bound_ok {}, sphere error {}\n",
            approx(r.c_emp),
            approx(r.c_hl),
            approx(r.bound),
            r.bound_ok,
            approx(r.sphere_error)
        );
        parts.push(json!({
            "map": name,
            "c_emp": approx(r.c_emp),
            "c_hl": approx(r.c_hl),
            "bound": approx(r.bound),
            "bound_ok": r.bound_ok,
            "sphere_error": approx(r.sphere_error),
            "pairs": r.pairs,
        }));
    }
    let ok = fwd.bound_ok && inv.bound_ok;
    let value = json!({ "components": [lx.len(), ly.len()], "maps": parts, "ok": ok });
    Ok(Outcome { text, value, code: if ok { 0 } else { 1 } })
}

fn run_trace_link(path: &Path, radius: f64, step: f64, svg_out: &Option<PathBuf>) -> Result<Outcome> {
    let phi = load_phi(path)?;
    let links = trace_link(&phi, radius, step)?;
    if let Some(out) = svg_out {
        fs::write(out, svg::links_svg(&links))?;
    }
    let describe = |c: &LinkPolyline| {
        let m = c.centroid();
        (c.len(), c.length(), m)
    };
    let mut text = format!("components: {}\n", links.len());
    let mut comps = Vec::new();
    for (i, c) in links.iter().enumerate() {
        let (n, len, m) = describe(c);
        text += &format!(
            "  c{}: {n} points, length {}, centroid ({}, {}, {})\n",
            i + 1,
            approx(len),
            approx(m[0]),
            approx(m[1]),
            approx(m[2])
        );
        comps.push(json!({
            "points": n,
            "length": approx(len),
            "centroid": [approx(m[0]), approx(m[1]), approx(m[2])],
        }));
    }
    Ok(Outcome::ok(text, json!({ "radius": radius, "components": comps })))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Dpoints { germ } => run_dpoints(germ),
        Command::Complex { file, canonical } => run_complex(file, *canonical),
        Command::Classify { f, g } => run_classify(f, g),
        Command::Curves { a, b } => run_curves(a, b.as_deref()),
        Command::Contact { a, b, depth } => run_contact(a, b, depth),
        Command::OracleContact { germ, oracle, svg, corrupt_beta } => {
            run_oracle_contact(germ, oracle, svg, corrupt_beta)
        }
        Command::OracleLne { model, resolution, pairs } => run_oracle_lne(model, *resolution, *pairs),
        Command::Radial { phi_x, phi_y, radius, matching, pairs, step } => {
            run_radial(phi_x, phi_y, *radius, matching, *pairs, *step)
        }
        Command::TraceLink { phi, radius, step, svg } => run_trace_link(phi, *radius, *step, svg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Structured => serde_json::to_string_pretty(&out.value).unwrap() + "\n",
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().write_all(body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
