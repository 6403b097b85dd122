//! C interface to `klr`.
//!
//! Objects are opaque handles created by `klr_*_new`/`klr_*_from_*` and
//! released by the matching `_free`. Every fallible call returns a
//! [`KlrStatus`]; on failure `klr_last_error` describes what went wrong.
//! Strings handed out by the library are freed with `klr_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use klr::cli::{builtin_quiver, verify_suite, Status};
use klr::error::Error;
use klr::fshuffle::{Character, FAlgebra};
use klr::pbwcanon::compute;
use klr::rootdata::{ConvexOrder, QPlus, Quiver};

/// Result codes.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum KlrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Quiver = 4,
    /// Weight, order or finiteness requirements not met.
    Config = 5,
    /// A computation produced an inconsistent or failing result.
    Verification = 6,
    Internal = 7,
}

/// A quiver with its symmetric Cartan datum.
pub struct KlrQuiver(Quiver);

/// A quantum shuffle character, tied to the quiver it was built on.
pub struct KlrCharacter {
    quiver: Quiver,
    ch: Character,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> KlrStatus {
    match e {
        Error::Parse(_) => KlrStatus::Parse,
        Error::Quiver(_) => KlrStatus::Quiver,
        Error::Verification(_) | Error::Inconsistent(_) => KlrStatus::Verification,
        _ => KlrStatus::Config,
    }
}

struct Fail(KlrStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> KlrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KlrStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            KlrStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(KlrStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(KlrStatus::InvalidUtf8, e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(KlrStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(KlrStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(KlrStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).map_err(|e| Fail(KlrStatus::Internal, e.to_string()))?.into_raw();
    Ok(())
}

unsafe fn order(q: &Quiver, w0: *const c_char) -> Result<ConvexOrder, Fail> {
    if w0.is_null() {
        return Ok(ConvexOrder::default_for(q)?);
    }
    let word: Vec<usize> = text(w0)?
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| Fail(KlrStatus::Parse, format!("reduced word: {e}")))?;
    Ok(ConvexOrder::new(q, &word)?)
}

/// Message for the most recent failure on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn klr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn klr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a quiver from its JSON description
/// (`{"vertices": [...], "edges": [[a, b, m], ...]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn klr_quiver_from_json(json: *const c_char, out: *mut *mut KlrQuiver) -> KlrStatus {
    guard(|| put(out, KlrQuiver(Quiver::from_json(text(json)?)?)))
}

/// A built-in Dynkin quiver: `A<n>`, `D<n>`, `E6`..`E8` or `A1~`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn klr_quiver_builtin(name: *const c_char, out: *mut *mut KlrQuiver) -> KlrStatus {
    guard(|| put(out, KlrQuiver(builtin_quiver(text(name)?)?)))
}

/// # Safety
/// `q` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn klr_quiver_free(q: *mut KlrQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `q` must be null or a live quiver handle.
#[no_mangle]
pub unsafe extern "C" fn klr_quiver_rank(q: *const KlrQuiver) -> usize {
    q.as_ref().map_or(0, |q| q.0.rank())
}

/// Parse a character from lines `word : coefficient`.
///
/// # Safety
/// `q` must be a live quiver handle, `s` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn klr_character_parse(
    q: *const KlrQuiver,
    s: *const c_char,
    out: *mut *mut KlrCharacter,
) -> KlrStatus {
    guard(|| {
        let quiver = deref(q)?.0.clone();
        let ch = Character::parse_lines(&quiver, text(s)?)?;
        put(out, KlrCharacter { quiver, ch })
    })
}

/// Quantum shuffle product `a ∘ b`. Both operands must share a quiver.
///
/// # Safety
/// `a`, `b` must be live character handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn klr_character_shuffle(
    a: *const KlrCharacter,
    b: *const KlrCharacter,
    out: *mut *mut KlrCharacter,
) -> KlrStatus {
    guard(|| {
        let (a, b) = (deref(a)?, deref(b)?);
        if a.quiver != b.quiver {
            return Err(Fail(KlrStatus::Quiver, "characters live on different quivers".into()));
        }
        let ch = a.ch.shuffle(&b.ch, &a.quiver);
        put(out, KlrCharacter { quiver: a.quiver.clone(), ch })
    })
}

/// Render as `word : coefficient` lines. Free the result with `klr_string_free`.
///
/// # Safety
/// `c` must be a live character handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn klr_character_render(c: *const KlrCharacter, out: *mut *mut c_char) -> KlrStatus {
    guard(|| {
        let c = deref(c)?;
        put_string(out, c.ch.render(&c.quiver))
    })
}

/// # Safety
/// `c` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn klr_character_free(c: *mut KlrCharacter) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Graded decomposition matrix of weight `alpha` (comma separated
/// coordinates) as TSV. `w0` is a comma separated reduced word for the
/// longest element, or null for the default order.
///
/// # Safety
/// `q` must be a live quiver handle, `alpha` a NUL-terminated string,
/// `w0` null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn klr_p_matrix_tsv(
    q: *const KlrQuiver,
    alpha: *const c_char,
    w0: *const c_char,
    out: *mut *mut c_char,
) -> KlrStatus {
    guard(|| {
        let q = &deref(q)?.0;
        let alpha = QPlus::parse(text(alpha)?, q.rank())?;
        let order = order(q, w0)?;
        let data = compute(&FAlgebra::new(q.clone()), &order, &alpha)?;
        put_string(out, data.p.to_tsv())
    })
}

/// Dual canonical characters of weight `alpha`, one block per Kostant
/// partition, blocks separated by blank lines.
///
/// # Safety
/// As for `klr_p_matrix_tsv`.
#[no_mangle]
pub unsafe extern "C" fn klr_dual_canonical(
    q: *const KlrQuiver,
    alpha: *const c_char,
    w0: *const c_char,
    out: *mut *mut c_char,
) -> KlrStatus {
    guard(|| {
        let q = &deref(q)?.0;
        let alpha = QPlus::parse(text(alpha)?, q.rank())?;
        let order = order(q, w0)?;
        let data = compute(&FAlgebra::new(q.clone()), &order, &alpha)?;
        let blocks: Vec<String> = data
            .dual
            .iter()
            .map(|(lam, ch)| format!("# {}\n{}", lam.coord_key(), ch.render(q)))
            .collect();
        put_string(out, blocks.join("\n\n"))
    })
}

/// Run the verification suite for weight `alpha`. Writes a report of
/// `PASS|FAIL|SKIP name: detail` lines to `report` (may be null) and the
/// number of failed checks to `failures`. Returns `KLR_STATUS_VERIFICATION`
/// when any check fails.
///
/// # Safety
/// `q` must be a live quiver handle, `alpha` NUL-terminated, `failures`
/// writable, `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn klr_verify(
    q: *const KlrQuiver,
    alpha: *const c_char,
    cutoff: i64,
    full: bool,
    failures: *mut usize,
    report: *mut *mut c_char,
) -> KlrStatus {
    guard(|| {
        let q = &deref(q)?.0;
        let alpha = QPlus::parse(text(alpha)?, q.rank())?;
        if failures.is_null() {
            return Err(Fail(KlrStatus::NullPointer, "null output pointer".into()));
        }
        let results = verify_suite(q, &alpha, None, cutoff, full);
        let mut lines = String::new();
        let mut failed = 0;
        for r in &results {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => {
                    failed += 1;
                    "FAIL"
                }
                Status::Skip => "SKIP",
            };
            lines.push_str(&format!("{tag} {}: {}\n", r.name, r.detail));
        }
        *failures = failed;
        if !report.is_null() {
            put_string(report, lines)?;
        }
        if failed > 0 {
            return Err(Fail(KlrStatus::Verification, format!("{failed} checks failed")));
        }
        Ok(())
    })
}
