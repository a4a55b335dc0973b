use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use ga2_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_kind() -> Option<String> {
    let p = ga2_last_error_kind();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { ga2_string_free(p) };
    s
}

fn parse(expr: &str, field: &str) -> *mut Ga2Map {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ga2_map_parse(c(expr).as_ptr(), c(field).as_ptr(), &mut m) }, Ga2Status::Ok);
    m
}

fn decomposed(m: *const Ga2Map) -> *mut Ga2NormalForm {
    let mut nf = ptr::null_mut();
    assert_eq!(unsafe { ga2_decompose(m, &mut nf) }, Ga2Status::Ok);
    nf
}

#[test]
fn henon_round_trip() {
    let f = parse("(y, -x + y^2 + 1)", "Q");
    let nf = decomposed(f);
    unsafe {
        assert_eq!(ga2_nf_length(nf), 2);
        assert_eq!(ga2_nf_degree(nf), 2);
        let mut text = ptr::null_mut();
        assert_eq!(ga2_nf_to_string(nf, &mut text), Ga2Status::Ok);
        assert!(take_string(text).starts_with("B "));
        let mut back = ptr::null_mut();
        assert_eq!(ga2_nf_to_map(nf, &mut back), Ga2Status::Ok);
        let mut same = false;
        assert_eq!(ga2_map_equal(f, back, &mut same), Ga2Status::Ok);
        assert!(same);
        let mut order = 1;
        assert_eq!(ga2_nf_order(nf, 64, &mut order), Ga2Status::Ok);
        assert_eq!(order, 0, "Hénon maps have infinite order");
        ga2_map_free(back);
        ga2_nf_free(nf);
        ga2_map_free(f);
    }
    assert_eq!(last_kind(), None);
}

#[test]
fn errors_are_reported_per_thread() {
    let mut m = ptr::null_mut();
    let status = unsafe { ga2_map_parse(c("(x +, y)").as_ptr(), c("Q").as_ptr(), &mut m) };
    assert_eq!(status, Ga2Status::Parse);
    assert!(m.is_null());
    assert_eq!(last_kind().as_deref(), Some("ParseError"));
    assert!(!ga2_last_error_message().is_null());

    let other = std::thread::spawn(last_kind).join().unwrap();
    assert_eq!(other, None);

    let status = unsafe { ga2_map_parse(c("(x, y)").as_ptr(), c("Fp:4").as_ptr(), &mut m) };
    assert_eq!(status, Ga2Status::InvalidField);

    let cube = parse("(x^3, x + y)", "Q");
    let mut nf = ptr::null_mut();
    assert_eq!(unsafe { ga2_decompose(cube, &mut nf) }, Ga2Status::NotAnAutomorphism);
    assert!(nf.is_null());
    assert_eq!(last_kind().as_deref(), Some("NotAnAutomorphism"));
    unsafe { ga2_map_free(cube) };
}

#[test]
fn null_pointers_are_rejected() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ga2_map_parse(ptr::null(), c("Q").as_ptr(), &mut m) }, Ga2Status::NullPointer);
    assert_eq!(
        unsafe { ga2_map_parse(c("(x, y)").as_ptr(), c("Q").as_ptr(), ptr::null_mut()) },
        Ga2Status::NullPointer
    );
    let mut b = false;
    assert_eq!(unsafe { ga2_map_equal(ptr::null(), ptr::null(), &mut b) }, Ga2Status::NullPointer);
    assert_eq!(unsafe { ga2_nf_length(ptr::null()) }, 0);
    unsafe {
        ga2_map_free(ptr::null_mut());
        ga2_nf_free(ptr::null_mut());
        ga2_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_rejected() {
    let bad = [0xffu8, 0];
    let mut m = ptr::null_mut();
    let status = unsafe { ga2_map_parse(bad.as_ptr().cast(), c("Q").as_ptr(), &mut m) };
    assert_eq!(status, Ga2Status::InvalidUtf8);
}

#[test]
fn composition_and_printing() {
    let f = parse("(y, x)", "Fp:5");
    let g = parse("(x + y^2, y)", "Fp:5");
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(ga2_map_compose(f, g, &mut h), Ga2Status::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(ga2_map_to_string(h, &mut text), Ga2Status::Ok);
        assert_eq!(take_string(text), "(y, y^2 + x)");
        let q = parse("(x, y)", "Q");
        let mut bad = ptr::null_mut();
        assert_eq!(ga2_map_compose(f, q, &mut bad), Ga2Status::FieldMismatch);
        for m in [f, g, h, q] {
            ga2_map_free(m);
        }
    }
}

#[test]
fn symmetry_and_reversor_checks() {
    let f = parse("(y, x + y^3 - y)", "Fp:3");
    let t = parse("(x + 1, y + 1)", "Fp:3");
    let swap = parse("(y, x)", "Fp:3");
    let (mut sym, mut rev) = (false, true);
    unsafe {
        assert_eq!(ga2_is_symmetry(f, t, &mut sym), Ga2Status::Ok);
        assert_eq!(ga2_is_reversor(f, t, &mut rev), Ga2Status::Ok);
        assert!(sym && !rev);
        let (mut cycles, mut fixed) = (0, 0);
        assert_eq!(ga2_cycle_counts(f, 1, 0, &mut cycles, &mut fixed), Ga2Status::Ok);
        // on F_3 points f acts as the swap
        assert_eq!((cycles, fixed), (6, 3));
        let q = parse("(y, x)", "Q");
        assert_eq!(ga2_cycle_counts(q, 1, 0, &mut cycles, &mut fixed), Ga2Status::NotFiniteField);
        for m in [f, t, swap, q] {
            ga2_map_free(m);
        }
    }
}

#[test]
fn conjugacy_and_reversibility() {
    let g = parse("(y, -x + y^2)", "Q");
    let b = parse("(2*x + 1, 2*y + 1)", "Q");
    let b_inv = parse("(1/2*x - 1/2, 1/2*y - 1/2)", "Q");
    unsafe {
        let mut tmp = ptr::null_mut();
        let mut conj = ptr::null_mut();
        assert_eq!(ga2_map_compose(b, g, &mut tmp), Ga2Status::Ok);
        assert_eq!(ga2_map_compose(tmp, b_inv, &mut conj), Ga2Status::Ok);
        let (n1, n2) = (decomposed(g), decomposed(conj));
        let mut h = ptr::null_mut();
        assert_eq!(ga2_conjugate(n1, n2, &mut h), Ga2Status::Ok);
        assert!(!h.is_null());
        ga2_nf_free(h);

        let cube = decomposed(parse("(y, -x + y^3)", "Q"));
        assert_eq!(ga2_conjugate(n1, cube, &mut h), Ga2Status::Ok);
        assert!(h.is_null());

        let mut passes = false;
        assert_eq!(ga2_reversibility_necessary(n1, &mut passes), Ga2Status::Ok);
        assert!(passes);
        for nf in [n1, n2, cube] {
            ga2_nf_free(nf);
        }
        for m in [g, b, b_inv, tmp, conj] {
            ga2_map_free(m);
        }
    }
}

#[test]
fn header_is_valid_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/ga2.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in
        ["ga2_map_parse", "ga2_decompose", "ga2_last_error_kind", "GA2_STATUS_OK", "typedef struct Ga2Map Ga2Map"]
    {
        assert!(text.contains(name), "{name} missing from the header");
    }
    let probe = std::env::temp_dir().join(format!("ga2_header_probe_{}.c", std::process::id()));
    std::fs::write(
        &probe,
        "#include \"ga2.h\"\nint main(void) { Ga2Map *m = 0; return ga2_map_parse(\"(x, y)\", \"Q\", &m); }\n",
    )
    .unwrap();
    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(compiler)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&probe)
        .status()
        .expect("a C compiler on PATH");
    std::fs::remove_file(&probe).ok();
    assert!(status.success());
}
