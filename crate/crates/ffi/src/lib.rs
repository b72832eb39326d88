//! C ABI for the nilpo library.
//!
//! Algebras travel as opaque handles; structured results come back as
//! JSON strings in the same schemas the CLI emits. Every function
//! returns a [`NilpoStatus`]; on any non-Ok status a message is stored
//! in thread-local state and can be fetched with
//! [`nilpo_last_error_message`]. Strings returned by this library must
//! be released with [`nilpo_string_free`], handles with
//! [`nilpo_algebra_free`].

use nilpo::cli::{analyze, AlgebraFile, AnalyzeOptions};
use nilpo::liealg::LieAlgebra;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result codes for every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilpoStatus {
    /// Success.
    Ok = 0,
    /// A pointer argument was null or a parameter was out of range.
    InvalidArgument = 1,
    /// The input could not be parsed (bad UTF-8, bad JSON, bad schema).
    ParseError = 2,
    /// The structure constants do not define a nilpotent Lie algebra.
    InvalidAlgebra = 3,
    /// A computation failed or panicked; see the last error message.
    ComputeError = 4,
}

/// Opaque handle to a validated Lie algebra.
pub struct NilpoAlgebra {
    inner: LieAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let cstring = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn fail(status: NilpoStatus, msg: impl Into<String>) -> NilpoStatus {
    set_error(msg.into());
    status
}

/// Returns a copy of the last error message on this thread, or null if
/// none. Free with `nilpo_string_free`.
#[no_mangle]
pub extern "C" fn nilpo_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Frees a string returned by this library. Null is accepted.
///
/// # Safety
/// `s` must have been returned by a nilpo function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn nilpo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees an algebra handle. Null is accepted.
///
/// # Safety
/// `h` must have been returned by a nilpo constructor and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn nilpo_algebra_free(h: *mut NilpoAlgebra) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

fn guard<F: FnOnce() -> NilpoStatus>(f: F) -> NilpoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in nilpo".into());
            fail(NilpoStatus::ComputeError, format!("internal panic: {msg}"))
        }
    }
}

unsafe fn read_cstr<'a>(ptr: *const c_char) -> Result<&'a str, NilpoStatus> {
    if ptr.is_null() {
        return Err(fail(NilpoStatus::InvalidArgument, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| fail(NilpoStatus::ParseError, format!("invalid UTF-8: {e}")))
}

unsafe fn algebra_ref<'a>(h: *const NilpoAlgebra) -> Result<&'a LieAlgebra, NilpoStatus> {
    if h.is_null() {
        return Err(fail(NilpoStatus::InvalidArgument, "null algebra handle"));
    }
    Ok(&(*h).inner)
}

fn emit_algebra(algebra: LieAlgebra, out: *mut *mut NilpoAlgebra) -> NilpoStatus {
    let violations = algebra.validate();
    if !violations.is_empty() {
        return fail(
            NilpoStatus::InvalidAlgebra,
            format!("{} Jacobi violations", violations.len()),
        );
    }
    unsafe {
        *out = Box::into_raw(Box::new(NilpoAlgebra { inner: algebra }));
    }
    NilpoStatus::Ok
}

fn emit_string(text: String, out: *mut *mut c_char) -> NilpoStatus {
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            NilpoStatus::Ok
        }
        Err(e) => fail(NilpoStatus::ComputeError, format!("interior NUL: {e}")),
    }
}

/// Parses an algebra from JSON in the CLI file schema and validates it.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn nilpo_algebra_from_json(
    json: *const c_char,
    out: *mut *mut NilpoAlgebra,
) -> NilpoStatus {
    if out.is_null() {
        return fail(NilpoStatus::InvalidArgument, "null output pointer");
    }
    guard(|| {
        let text = match read_cstr(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let file = match AlgebraFile::parse(text) {
            Ok(f) => f,
            Err(e) => return fail(NilpoStatus::ParseError, e),
        };
        match file.to_algebra() {
            Ok(a) => emit_algebra(a, out),
            Err(e) => fail(NilpoStatus::ParseError, e),
        }
    })
}

/// Generates a built-in algebra. Kinds: `"abelian"` (a = dimension),
/// `"heisenberg"` (a = dimension), `"free"` (a = generators, b = class),
/// `"example6"`, `"nilradical-A"`/`-B`/`-C`/`-D` (a = rank).
///
/// # Safety
/// `kind` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nilpo_algebra_generate(
    kind: *const c_char,
    a: u64,
    b: u64,
    out: *mut *mut NilpoAlgebra,
) -> NilpoStatus {
    if out.is_null() {
        return fail(NilpoStatus::InvalidArgument, "null output pointer");
    }
    guard(|| {
        let kind = match read_cstr(kind) {
            Ok(k) => k,
            Err(status) => return status,
        };
        let made = match kind {
            "abelian" => nilpo::constructors::abelian(a as usize),
            "heisenberg" => nilpo::constructors::heisenberg(a as usize),
            "free" => nilpo::constructors::free_nilpotent(a as usize, b as usize),
            "example6" => Ok(nilpo::constructors::example_six_dim().0),
            "nilradical-A" | "nilradical-B" | "nilradical-C" | "nilradical-D" => {
                let family = match kind.as_bytes()[11] {
                    b'A' => nilpo::rootsys::Family::A,
                    b'B' => nilpo::rootsys::Family::B,
                    b'C' => nilpo::rootsys::Family::C,
                    _ => nilpo::rootsys::Family::D,
                };
                nilpo::rootsys::nilradical(family, a as usize).map(|nr| nr.algebra)
            }
            other => {
                return fail(
                    NilpoStatus::InvalidArgument,
                    format!("unknown generator kind {other:?}"),
                )
            }
        };
        match made {
            Ok(algebra) => emit_algebra(algebra, out),
            Err(e) => fail(NilpoStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Serializes the algebra back to the canonical JSON file format.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nilpo_algebra_to_json(
    h: *const NilpoAlgebra,
    out: *mut *mut c_char,
) -> NilpoStatus {
    if out.is_null() {
        return fail(NilpoStatus::InvalidArgument, "null output pointer");
    }
    guard(|| {
        let algebra = match algebra_ref(h) {
            Ok(a) => a,
            Err(status) => return status,
        };
        emit_string(AlgebraFile::from_algebra(algebra).to_canonical_json(), out)
    })
}

/// Dimension of the algebra; zero for a null handle.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nilpo_algebra_dim(h: *const NilpoAlgebra) -> usize {
    if h.is_null() {
        0
    } else {
        (*h).inner.dim()
    }
}

/// Nilpotency index from the lower central series.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nilpo_nilpotency_index(
    h: *const NilpoAlgebra,
    out: *mut usize,
) -> NilpoStatus {
    if out.is_null() {
        return fail(NilpoStatus::InvalidArgument, "null output pointer");
    }
    guard(|| {
        let algebra = match algebra_ref(h) {
            Ok(a) => a,
            Err(status) => return status,
        };
        match algebra.lower_central_series() {
            Ok(series) => {
                *out = series.nilpotency_index;
                NilpoStatus::Ok
            }
            Err(e) => fail(NilpoStatus::InvalidAlgebra, e.to_string()),
        }
    })
}

/// The i-th Betti number.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nilpo_betti(
    h: *const NilpoAlgebra,
    degree: usize,
    out: *mut usize,
) -> NilpoStatus {
    if out.is_null() {
        return fail(NilpoStatus::InvalidArgument, "null output pointer");
    }
    guard(|| {
        let algebra = match algebra_ref(h) {
            Ok(a) => a,
            Err(status) => return status,
        };
        match nilpo::cohomology::betti(algebra, degree) {
            Ok(b) => {
                *out = b;
                NilpoStatus::Ok
            }
            Err(e) => fail(NilpoStatus::ComputeError, e.to_string()),
        }
    })
}

/// Dimension of the limit intermediate cohomology group `E_inf^{p,q}`;
/// `q` may be negative.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nilpo_e_infty_dim(
    h: *const NilpoAlgebra,
    p: usize,
    q: i64,
    out: *mut usize,
) -> NilpoStatus {
    if out.is_null() {
        return fail(NilpoStatus::InvalidArgument, "null output pointer");
    }
    guard(|| {
        let algebra = match algebra_ref(h) {
            Ok(a) => a,
            Err(status) => return status,
        };
        match nilpo::cohomology::e_infty_dim(algebra, p, q) {
            Ok(d) => {
                *out = d;
                NilpoStatus::Ok
            }
            Err(e) => fail(NilpoStatus::ComputeError, e.to_string()),
        }
    })
}

/// True iff `E_inf^{0,2}` vanishes (the symplectic obstruction).
///
/// # Safety
/// `h` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nilpo_obstruction_vanishes(
    h: *const NilpoAlgebra,
    out: *mut bool,
) -> NilpoStatus {
    if out.is_null() {
        return fail(NilpoStatus::InvalidArgument, "null output pointer");
    }
    guard(|| {
        let algebra = match algebra_ref(h) {
            Ok(a) => a,
            Err(status) => return status,
        };
        match nilpo::symplectic::obstruction_vanishes(algebra) {
            Ok(v) => {
                *out = v;
                NilpoStatus::Ok
            }
            Err(e) => fail(NilpoStatus::ComputeError, e.to_string()),
        }
    })
}

/// Runs the full analysis and returns the report as JSON (the CLI's
/// `--json` schema). Set `e_table` for the full limit table.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nilpo_analyze_json(
    h: *const NilpoAlgebra,
    seed: u64,
    samples: usize,
    e_table: bool,
    out: *mut *mut c_char,
) -> NilpoStatus {
    if out.is_null() {
        return fail(NilpoStatus::InvalidArgument, "null output pointer");
    }
    guard(|| {
        let algebra = match algebra_ref(h) {
            Ok(a) => a,
            Err(status) => return status,
        };
        let opts = AnalyzeOptions {
            seed,
            samples,
            e_table,
            ..Default::default()
        };
        match analyze(algebra, &opts) {
            Ok(report) => match serde_json::to_string_pretty(&report) {
                Ok(json) => emit_string(json, out),
                Err(e) => fail(NilpoStatus::ComputeError, e.to_string()),
            },
            Err(e) => fail(NilpoStatus::ComputeError, e.to_string()),
        }
    })
}
