use std::ffi::{c_char, CStr, CString};
use std::ptr;

use klr_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    klr_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(klr_last_error()).to_str().unwrap().to_owned()
}

unsafe fn a2() -> *mut KlrQuiver {
    let mut q = ptr::null_mut();
    assert_eq!(klr_quiver_builtin(c("A2").as_ptr(), &mut q), KlrStatus::Ok);
    q
}

#[test]
fn shuffle_round_trip() {
    unsafe {
        let q = a2();
        assert_eq!(klr_quiver_rank(q), 2);
        let (mut a, mut b, mut ab) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(klr_character_parse(q, c("1 : 1").as_ptr(), &mut a), KlrStatus::Ok);
        assert_eq!(klr_character_parse(q, c("2 : 1").as_ptr(), &mut b), KlrStatus::Ok);
        assert_eq!(klr_character_shuffle(a, b, &mut ab), KlrStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(klr_character_render(ab, &mut s), KlrStatus::Ok);
        assert_eq!(take(s), "12 : 1\n21 : q");
        for h in [a, b, ab] {
            klr_character_free(h);
        }
        klr_quiver_free(q);
    }
}

#[test]
fn p_matrix_and_dual_canonical() {
    unsafe {
        let q = a2();
        let mut s = ptr::null_mut();
        assert_eq!(klr_p_matrix_tsv(q, c("1,1").as_ptr(), ptr::null(), &mut s), KlrStatus::Ok);
        assert_eq!(take(s), "lambda\\mu\t11\t01,10\n11\t1\t0\n01,10\tq\t1\n");
        assert_eq!(klr_p_matrix_tsv(q, c("1,1").as_ptr(), c("2,1,2").as_ptr(), &mut s), KlrStatus::Ok);
        assert!(take(s).starts_with("lambda\\mu"));
        assert_eq!(klr_dual_canonical(q, c("1,1").as_ptr(), ptr::null(), &mut s), KlrStatus::Ok);
        let text = take(s);
        assert!(text.contains("12 : 1") && text.contains("21 : 1"), "{text}");
        klr_quiver_free(q);
    }
}

#[test]
fn verify_reports() {
    unsafe {
        let q = a2();
        let (mut failures, mut report) = (usize::MAX, ptr::null_mut());
        let st = klr_verify(q, c("1,1").as_ptr(), 8, false, &mut failures, &mut report);
        let text = take(report);
        assert_eq!(st, KlrStatus::Ok, "{text}");
        assert_eq!(failures, 0);
        assert!(text.lines().any(|l| l.starts_with("PASS canonical-basis")), "{text}");
        assert_eq!(klr_verify(q, c("1,1").as_ptr(), 8, false, &mut failures, ptr::null_mut()), KlrStatus::Ok);
        klr_quiver_free(q);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(klr_quiver_builtin(c("Q9").as_ptr(), &mut q), KlrStatus::Quiver);
        assert!(last_error().contains("unknown quiver type"));
        assert_eq!(klr_quiver_from_json(c("{oops").as_ptr(), &mut q), KlrStatus::Quiver);
        assert_eq!(klr_quiver_builtin(ptr::null(), &mut q), KlrStatus::NullPointer);
        assert_eq!(klr_quiver_builtin(c("A2").as_ptr(), ptr::null_mut()), KlrStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(klr_quiver_builtin(bad.as_ptr() as *const c_char, &mut q), KlrStatus::InvalidUtf8);

        let q = a2();
        let mut s = ptr::null_mut();
        assert_eq!(klr_p_matrix_tsv(q, c("1,x").as_ptr(), ptr::null(), &mut s), KlrStatus::Parse);
        assert_eq!(klr_p_matrix_tsv(q, c("1,1").as_ptr(), c("1,1,2").as_ptr(), &mut s), KlrStatus::Config);
        assert!(s.is_null());

        let mut other = ptr::null_mut();
        assert_eq!(klr_quiver_builtin(c("A3").as_ptr(), &mut other), KlrStatus::Ok);
        let (mut a, mut b, mut ab) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        klr_character_parse(q, c("1 : 1").as_ptr(), &mut a);
        klr_character_parse(other, c("1 : 1").as_ptr(), &mut b);
        assert_eq!(klr_character_shuffle(a, b, &mut ab), KlrStatus::Quiver);
        assert_eq!(klr_character_shuffle(a, ptr::null(), &mut ab), KlrStatus::NullPointer);

        let mut affine = ptr::null_mut();
        assert_eq!(klr_quiver_builtin(c("A1~").as_ptr(), &mut affine), KlrStatus::Ok);
        assert_eq!(klr_p_matrix_tsv(affine, c("1,1").as_ptr(), ptr::null(), &mut s), KlrStatus::Config);

        klr_character_free(a);
        klr_character_free(b);
        klr_character_free(ptr::null_mut());
        klr_quiver_free(q);
        klr_quiver_free(other);
        klr_quiver_free(affine);
        klr_string_free(ptr::null_mut());
    }
}

#[test]
fn quiver_json() {
    unsafe {
        let mut q = ptr::null_mut();
        let json = c(r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b", 1], ["b", "c", 1]]}"#);
        assert_eq!(klr_quiver_from_json(json.as_ptr(), &mut q), KlrStatus::Ok);
        assert_eq!(klr_quiver_rank(q), 3);
        assert_eq!(klr_quiver_rank(ptr::null()), 0);
        klr_quiver_free(q);
    }
}
