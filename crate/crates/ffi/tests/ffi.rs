use std::ffi::{c_char, c_int, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use holder_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = holder_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { holder_string_free(s) };
    out
}

fn germ(text: &str) -> *mut HolderGerm {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { holder_germ_parse(c(text).as_ptr(), &mut g) }, HolderStatus::Ok);
    g
}

const E1: &str = "name = \"e1\"\np = y^2\nq = y^3 - x^2*y\n";
const CONE: &str = "p = y^2\nq = (x + y)^3\n";

#[test]
fn canonical_form_through_handles() {
    let g = germ(E1);
    let mut cx = ptr::null_mut();
    unsafe {
        assert_eq!(holder_germ_complex(g, &mut cx), HolderStatus::Ok);
        let (mut v, mut e) = (0usize, 0usize);
        assert_eq!(holder_complex_size(cx, &mut v, &mut e), HolderStatus::Ok);
        assert_eq!((v, e), (2, 4));
        let mut s = ptr::null_mut();
        assert_eq!(holder_complex_canonical_form(cx, &mut s), HolderStatus::Ok);
        assert_eq!(take(s), "V2;L(1:2/1);E(1-2:1/1);E(1-2:1/1);L(2:2/1)");
        holder_complex_free(cx);
        holder_germ_free(g);
    }
}

#[test]
fn classify_sets_the_flag() {
    let (e1, cone) = (germ(E1), germ(CONE));
    let mut eq: c_int = -1;
    unsafe {
        assert_eq!(holder_classify(e1, e1, &mut eq), HolderStatus::Ok);
        assert_eq!(eq, 1);
        assert_eq!(holder_classify(e1, cone, &mut eq), HolderStatus::Ok);
        assert_eq!(eq, 0);
        holder_germ_free(e1);
        holder_germ_free(cone);
    }
}

#[test]
fn errors_map_to_codes_and_messages() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(holder_germ_parse(c("p = y^2\nq = y^3 +\n").as_ptr(), &mut g), HolderStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().contains("line 2"));

        assert_eq!(holder_germ_parse(c("p = y^2 + x\nq = y^3\n").as_ptr(), &mut g), HolderStatus::InvalidGerm);

        assert_eq!(holder_germ_parse(ptr::null(), &mut g), HolderStatus::NullArgument);
        assert_eq!(holder_germ_parse(c(E1).as_ptr(), ptr::null_mut()), HolderStatus::NullArgument);
        let mut eq = 0;
        assert_eq!(holder_classify(ptr::null(), ptr::null(), &mut eq), HolderStatus::NullArgument);
    }
}

#[test]
fn rejected_corpus_germs_report_finite_determinacy() {
    for (file, needle) in [("cuspidal_edge", "cross-cap"), ("triple_line", "triple point")] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("../../corpus/rejected/{file}.germ"));
        let g = germ(&std::fs::read_to_string(path).unwrap());
        let mut cx = ptr::null_mut();
        unsafe {
            assert_eq!(holder_germ_complex(g, &mut cx), HolderStatus::FiniteDeterminacy, "{file}");
            assert!(cx.is_null());
            holder_germ_free(g);
        }
        assert!(last_error().contains(needle), "{file}");
    }
}

#[test]
fn success_clears_the_last_error() {
    let mut g = ptr::null_mut();
    unsafe {
        holder_germ_parse(c("p =").as_ptr(), &mut g);
        assert!(!holder_last_error().is_null());
        holder_germ_free(germ(E1));
        let g = germ(E1);
        holder_germ_free(g);
    }
    assert!(holder_last_error().is_null());
}

#[test]
fn contact_order_exact_and_approximate() {
    let mut s = ptr::null_mut();
    let mut x = 0.0;
    unsafe {
        let st = holder_contact_order(c("(t, t^2, 0)").as_ptr(), c("(t, t^2, t^(5/2))").as_ptr(), &mut s, &mut x);
        assert_eq!(st, HolderStatus::Ok);
        assert_eq!(take(s), "5/2");
        assert_eq!(x, 2.5);

        let st = holder_contact_order(c("(t, t^2, 0)").as_ptr(), c("(t, t^2, 0)").as_ptr(), &mut s, &mut x);
        assert_eq!(st, HolderStatus::Ok);
        assert_eq!(take(s), "inf");
        assert!(x.is_infinite());

        let st = holder_contact_order(c("(t, t^2)").as_ptr(), c("(t, 0, 0)").as_ptr(), &mut s, ptr::null_mut());
        assert_ne!(st, HolderStatus::Ok);
        assert!(s.is_null());
    }
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        holder_germ_free(ptr::null_mut());
        holder_complex_free(ptr::null_mut());
        holder_string_free(ptr::null_mut());
    }
}

/// The generated header parses as C and as C++.
#[test]
fn header_compiles() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let src = "#include \"holder.h\"\nint main(void) { HolderGerm *g = 0; return holder_germ_parse(\"p=y^2\", &g) == HOLDER_STATUS_OK; }\n";
    let dir = std::env::temp_dir().join(format!("holder-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (compiler, file) in [("cc", "probe.c"), ("c++", "probe.cpp")] {
        let path = dir.join(file);
        std::fs::write(&path, src).unwrap();
        let Ok(out) = Command::new(compiler).arg("-fsyntax-only").arg("-I").arg(&include).arg(&path).output() else {
            eprintln!("{compiler} not available; skipping");
            continue;
        };
        assert!(out.status.success(), "{compiler}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
