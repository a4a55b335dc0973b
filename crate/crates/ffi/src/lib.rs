//! C interface to `ga2-core`.
//!
//! Maps and normal forms cross the boundary as opaque handles that the caller
//! frees with the matching `_free` function. Every fallible call returns a
//! `Ga2Status`; on failure the error kind and message are kept per thread and
//! can be read with `ga2_last_error_kind` / `ga2_last_error_message`. Strings
//! returned through out-parameters are owned by the caller and released with
//! `ga2_string_free`. Panics never unwind into C; they surface as
//! `GA2_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ga2::algebra::{FieldCtx, OrderResult};
use ga2::amalgam::{decompose, normalize, NormalForm};
use ga2::conjugacy::{crnf_conjugate, order_of_element};
use ga2::dynamics::{cycle_statistics, induced_permutation_with, ScanOptions};
use ga2::generators::PolyMap;
use ga2::parse::parse_map_expr;
use ga2::symmetry::{is_reversor, is_symmetry, reversibility_necessary};
use ga2::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ga2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidField = 4,
    FieldMismatch = 5,
    NotAnAutomorphism = 6,
    NotCyclicallyReduced = 7,
    Undecided = 8,
    NotFiniteField = 9,
    FieldTooLarge = 10,
    /// Any other library error; the kind string names it.
    Failed = 11,
    Panic = 12,
}

/// A polynomial map of the plane.
pub struct Ga2Map(PolyMap);

/// A normal form `b ∘ letters`.
pub struct Ga2NormalForm(NormalForm);

struct LastError {
    kind: CString,
    message: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn set_error(kind: &str, message: &str) {
    let clean = |s: &str| CString::new(s.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(LastError { kind: clean(kind), message: clean(message) }));
}

fn status_of(e: &Error) -> Ga2Status {
    match e {
        Error::Parse { .. } | Error::FieldLiteral(_) => Ga2Status::Parse,
        Error::InvalidField(_) => Ga2Status::InvalidField,
        Error::FieldMismatch(..) => Ga2Status::FieldMismatch,
        Error::NotAnAutomorphism(_) => Ga2Status::NotAnAutomorphism,
        Error::NotCyclicallyReduced => Ga2Status::NotCyclicallyReduced,
        Error::Undecided(_) => Ga2Status::Undecided,
        Error::NotFiniteField => Ga2Status::NotFiniteField,
        Error::FieldTooLarge { .. } => Ga2Status::FieldTooLarge,
        _ => Ga2Status::Failed,
    }
}

enum Fail {
    Status(Ga2Status, &'static str, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `body`, records any failure, and turns it into a status.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> Ga2Status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            Ga2Status::Ok
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.kind(), &e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Status(status, kind, msg))) => {
            set_error(kind, &msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            set_error("Panic", &msg);
            Ga2Status::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(Ga2Status::NullPointer, "NullPointer", format!("`{what}` is null"))
}

unsafe fn arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(Ga2Status::InvalidUtf8, "InvalidUtf8", format!("`{what}` is not UTF-8")))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Kind of the last error on this thread (e.g. `"ParseError"`), or NULL if
/// the last call succeeded. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ga2_last_error_kind() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |e| e.kind.as_ptr()))
}

/// Message of the last error on this thread, or NULL.
#[no_mangle]
pub extern "C" fn ga2_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |e| e.message.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ga2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a map such as `(y, -x + y^2 + 1)` over `field` (`"Q"` or
/// `"Fp:<prime>"`).
///
/// # Safety
/// `expr` and `field` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_map_parse(expr: *const c_char, field: *const c_char, out: *mut *mut Ga2Map) -> Ga2Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = ptr::null_mut();
        let ctx: FieldCtx = text(field, "field")?.parse()?;
        let map = parse_map_expr(text(expr, "expr")?, ctx)?;
        *slot = Box::into_raw(Box::new(Ga2Map(map)));
        Ok(())
    })
}

/// # Safety
/// `map` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ga2_map_free(map: *mut Ga2Map) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Canonical text of the map.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_map_to_string(map: *const Ga2Map, out: *mut *mut c_char) -> Ga2Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = owned_string(arg(map, "map")?.0.to_string());
        Ok(())
    })
}

/// `f ∘ g`.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_map_compose(f: *const Ga2Map, g: *const Ga2Map, out: *mut *mut Ga2Map) -> Ga2Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = ptr::null_mut();
        let h = arg(f, "f")?.0.compose(&arg(g, "g")?.0)?;
        *slot = Box::into_raw(Box::new(Ga2Map(h)));
        Ok(())
    })
}

/// Exact equality of the two maps.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_map_equal(f: *const Ga2Map, g: *const Ga2Map, out: *mut bool) -> Ga2Status {
    guard(|| {
        *self::out(out, "out")? = arg(f, "f")?.0 == arg(g, "g")?.0;
        Ok(())
    })
}

/// Normal form of an automorphism. Fails with
/// `GA2_STATUS_NOT_AN_AUTOMORPHISM` for anything else.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_decompose(map: *const Ga2Map, out: *mut *mut Ga2NormalForm) -> Ga2Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = ptr::null_mut();
        let nf = normalize(&decompose(&arg(map, "map")?.0)?);
        *slot = Box::into_raw(Box::new(Ga2NormalForm(nf)));
        Ok(())
    })
}

/// # Safety
/// `nf` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ga2_nf_free(nf: *mut Ga2NormalForm) {
    if !nf.is_null() {
        drop(Box::from_raw(nf));
    }
}

/// Number of non-basic letters. Returns 0 for a NULL handle.
///
/// # Safety
/// `nf` must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn ga2_nf_length(nf: *const Ga2NormalForm) -> usize {
    nf.as_ref().map_or(0, |g| g.0.length())
}

/// Degree of the expanded map. Returns 0 for a NULL handle.
///
/// # Safety
/// `nf` must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn ga2_nf_degree(nf: *const Ga2NormalForm) -> u64 {
    nf.as_ref().map_or(0, |g| g.0.degree())
}

/// Letter-per-line serialization (`B ...`, `A ...`, `E ...`).
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_nf_to_string(nf: *const Ga2NormalForm, out: *mut *mut c_char) -> Ga2Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = owned_string(arg(nf, "nf")?.0.serialize());
        Ok(())
    })
}

/// Expands the normal form back into a map.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_nf_to_map(nf: *const Ga2NormalForm, out: *mut *mut Ga2Map) -> Ga2Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = Box::into_raw(Box::new(Ga2Map(arg(nf, "nf")?.0.to_polymap())));
        Ok(())
    })
}

/// Order of the element: writes `n` when finite and 0 when infinite. Fails
/// with `GA2_STATUS_UNDECIDED` when the order exceeds `cap`.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_nf_order(nf: *const Ga2NormalForm, cap: u64, out: *mut u64) -> Ga2Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = match order_of_element(&arg(nf, "nf")?.0, cap) {
            Some(OrderResult::Finite(n)) => n,
            Some(OrderResult::Infinite) => 0,
            None => return Err(Error::Undecided(format!("order exceeds the cap {cap}")).into()),
        };
        Ok(())
    })
}

/// Whether a cyclically reduced normal form passes the necessary
/// conditions for being reversible.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_reversibility_necessary(nf: *const Ga2NormalForm, out: *mut bool) -> Ga2Status {
    guard(|| {
        *self::out(out, "out")? = reversibility_necessary(&arg(nf, "nf")?.0)?;
        Ok(())
    })
}

/// Conjugator `h` with `h ∘ g1 ∘ h⁻¹ = g2` for cyclically reduced `g1`,
/// `g2`. Writes NULL when none exists.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_conjugate(
    g1: *const Ga2NormalForm,
    g2: *const Ga2NormalForm,
    out: *mut *mut Ga2NormalForm,
) -> Ga2Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = ptr::null_mut();
        if let Some(h) = crnf_conjugate(&arg(g1, "g1")?.0, &arg(g2, "g2")?.0)? {
            *slot = Box::into_raw(Box::new(Ga2NormalForm(normalize(&h))));
        }
        Ok(())
    })
}

/// Whether `s` commutes with `f`.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_is_symmetry(f: *const Ga2Map, s: *const Ga2Map, out: *mut bool) -> Ga2Status {
    guard(|| {
        *self::out(out, "out")? = is_symmetry(&arg(f, "f")?.0, &arg(s, "s")?.0)?;
        Ok(())
    })
}

/// Whether `r ∘ f ∘ r⁻¹ = f⁻¹`.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_is_reversor(f: *const Ga2Map, r: *const Ga2Map, out: *mut bool) -> Ga2Status {
    guard(|| {
        *self::out(out, "out")? = is_reversor(&arg(f, "f")?.0, &arg(r, "r")?.0)?;
        Ok(())
    })
}

/// Cycle and fixed-point counts of the permutation a map induces on
/// `F_p × F_p`. `threads` 0 uses every core; `prime_cap` 0 uses the default.
///
/// # Safety
/// Handles must be valid; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ga2_cycle_counts(
    map: *const Ga2Map,
    threads: usize,
    prime_cap: u64,
    cycles: *mut u64,
    fixed_points: *mut u64,
) -> Ga2Status {
    guard(|| {
        let (cycles, fixed_points) = (self::out(cycles, "cycles")?, self::out(fixed_points, "fixed_points")?);
        let mut opts = ScanOptions { threads, ..ScanOptions::default() };
        if prime_cap != 0 {
            opts.prime_cap = prime_cap;
        }
        let stats = cycle_statistics(&induced_permutation_with(&arg(map, "map")?.0, &opts)?);
        *cycles = stats.cycle_count() as u64;
        *fixed_points = stats.fixed_point_count;
        Ok(())
    })
}
