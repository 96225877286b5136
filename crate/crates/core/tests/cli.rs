//! End-to-end runs of the `holder` binary: exit codes, determinism and
//! diagnostics.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holder")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

fn stderr(args: &[&str]) -> String {
    String::from_utf8(run(args).stderr).unwrap()
}

fn scratch(name: &str, text: &str) -> String {
    let dir: PathBuf = std::env::temp_dir().join(format!("holder-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn classify_exit_codes() {
    let e1 = corpus("germs/e1.germ");
    assert_eq!(code(&["classify", &e1, &corpus("germs/quintic.germ")]), 0);
    assert_eq!(code(&["classify", &e1, &e1]), 0);
    assert_eq!(code(&["classify", &e1, &corpus("germs/cone.germ")]), 1);
    assert_eq!(code(&["classify", &e1, &corpus("rejected/singular_ray.germ")]), 2);
    assert_eq!(code(&["classify", &e1, "/nonexistent/file.germ"]), 2);
}

#[test]
fn rejected_germs_exit_2_with_a_reason() {
    for (file, needle) in [
        ("rejected/cuspidal_edge.germ", "cross-cap line"),
        ("rejected/triple_line.germ", "triple point line"),
        ("rejected/singular_ray.germ", "finite determinacy"),
        ("rejected/malformed.germ", "line 2, column 10"),
    ] {
        let out = run(&["dpoints", &corpus(file)]);
        assert_eq!(out.status.code(), Some(2), "{file}");
        assert!(out.stdout.is_empty(), "{file}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.starts_with("error: "), "{file}: {err}");
        assert!(err.contains(needle), "{file}: {err}");
    }
}

#[test]
fn output_is_byte_for_byte_deterministic() {
    let e1 = corpus("germs/e1.germ");
    let eight = corpus("germs/eight_rays.germ");
    let cases: Vec<Vec<&str>> = vec![
        vec!["dpoints", &eight],
        vec!["complex", &eight],
        vec!["classify", &e1, &eight],
        vec!["curves", &e1],
        vec!["contact", "(t, t^2, 0)", "(t, t^2, t^(5/2))"],
    ];
    for case in cases {
        for format in ["text", "structured"] {
            let mut args = vec!["--format", format];
            args.extend(&case);
            let first = run(&args);
            let second = run(&args);
            assert_eq!(first.stdout, second.stdout, "{args:?}");
            assert!(!first.stdout.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn structured_output_is_json_with_sorted_keys() {
    let out = stdout(&["--format", "structured", "classify", &corpus("germs/e1.germ"), &corpus("germs/cone.germ")]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(v["inner"]["verdict"], "NO");
    assert_eq!(v["left"]["canonical_form"], "V2;L(1:2/1);E(1-2:1/1);E(1-2:1/1);L(2:2/1)");
    assert_eq!(v["right"]["canonical_form"], "V1;L(1:1/1)");
}

#[test]
fn complex_canonical_on_a_complex_file() {
    // A triangle of non-critical vertices hanging off a loop at v1.
    let path = scratch(
        "chain.cx",
        "vertices = [v1, v2, v3]\nedges = [(v1, v2, \"3\"), (v2, v3, \"5/2\"), (v3, v1, \"4\"), (v1, v1, \"2\")]\n",
    );
    // The chain closes at v1: one loop vertex keeps the two smallest
    // exponents, 5/2 and 3.
    let expected =
        scratch("expected.cx", "vertices = [a, b]\nedges = [(a, a, \"2\"), (a, b, \"5/2\"), (b, a, \"3\")]\n");
    let out = stdout(&["complex", "--canonical", &path]);
    assert_eq!(out, stdout(&["complex", "--canonical", &expected]));
    assert!(out.contains("E(1-2:5/2);E(1-2:3/1)"), "{out}");
}

#[test]
fn complex_file_errors_carry_the_position() {
    let path = scratch("bad.cx", "vertices = [a, b]\nedges = [(a, c, \"1\")]\n");
    let out = run(&["complex", "--canonical", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("unknown vertex 'c'"), "{err}");
}

#[test]
fn canonical_form_of_a_germ() {
    assert_eq!(stdout(&["complex", "--canonical", &corpus("germs/cone.germ")]).trim(), "V1;L(1:1/1)");
    assert_eq!(
        stdout(&["complex", "--canonical", &corpus("germs/sheared_e1.germ")]).trim(),
        "V2;L(1:2/1);E(1-2:1/1);E(1-2:1/1);L(2:2/1)"
    );
}

#[test]
fn curves_decide_outer_equivalence() {
    let three = corpus("curves/three.arcs");
    assert_eq!(code(&["curves", &three, &corpus("curves/three_permuted.arcs")]), 0);
    assert_eq!(code(&["curves", &three, &corpus("curves/three_half.arcs")]), 1);
    assert!(stdout(&["curves", &three, &corpus("curves/three_half.arcs")]).contains("{3} vs {5/2}"));
}

#[test]
fn curve_file_errors_name_the_line() {
    let path = scratch("bad.arcs", "# header\n(t, t^2, 0)\n(t, t^2\n");
    let err = stderr(&["curves", &path]);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn contact_reports_exact_and_approximate_values() {
    let out = stdout(&["--format", "structured", "contact", "(t, t^2, 0)", "(t, t^2, t^3)"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["contact"], "3/1");
    assert_eq!(v["approx"], "3.000000000000 (approx)");
    assert_eq!(code(&["contact", "(t, 0, 0)", "(t, t^2)"]), 2);
}

#[test]
fn contact_truncation_names_the_bound() {
    let err = stderr(&["contact", "(t, t^2, t^9)", "(t, t^2, 0)", "--depth", "4"]);
    assert!(err.contains("truncation"), "{err}");
}

#[test]
fn oracle_contact_passes_and_fails_on_injected_error() {
    let e1 = corpus("germs/e1.germ");
    assert_eq!(code(&["oracle-contact", &e1]), 0);
    assert_eq!(code(&["oracle-contact", &e1, "--corrupt-beta", "1/2"]), 1);
}

#[test]
fn oracle_lne_flags_the_pinch() {
    assert_eq!(code(&["oracle-lne", "--model", "disk", "--resolution", "0.1", "--pairs", "1000"]), 0);
    assert_eq!(code(&["oracle-lne", "--model", "pinch", "--resolution", "0.1", "--pairs", "1000"]), 1);
    assert_eq!(code(&["oracle-lne", "--model", "sphere"]), 2);
}

#[test]
fn radial_and_trace_link() {
    let cone = corpus("surfaces/cone.phi");
    assert_eq!(code(&["radial", &cone, &cone]), 0);
    assert_eq!(code(&["trace-link", &cone]), 0);
    assert_eq!(code(&["trace-link", &corpus("surfaces/empty.phi")]), 2);
}
