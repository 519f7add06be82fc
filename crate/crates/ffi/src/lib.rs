//! C ABI over the shadowtrace core.
//!
//! Objects are opaque handles owned by the caller and released with the
//! matching `*_free`. Functions return an [`StStatus`]; on failure the
//! message is available from [`st_last_error`] until the next call on the
//! same thread. Strings returned through out-parameters are freed with
//! [`st_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shadowtrace::algebra::Algebra;
use shadowtrace::bimodule::Bimodule;
use shadowtrace::error::Error;
use shadowtrace::hochschild::hh_dims;
use shadowtrace::io::{parse_field, parse_workspace, Workspace};
use shadowtrace::trace::{euler_characteristic, pairing_copairing};
use shadowtrace::verify::{exit_code, run_suite, SuiteConfig};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StStatus {
    Ok = 0,
    /// A check ran and found a mismatch or an invalid object.
    Inequality = 1,
    /// A hypothesis (projectivity, separability) is missing.
    Hypothesis = 2,
    /// Malformed input or an unknown name.
    Input = 3,
    NullPointer = 4,
    /// The output buffer is too small; the required length is still written.
    BufferTooSmall = 5,
    Panic = 6,
}

pub struct StWorkspace(Workspace);
pub struct StAlgebra(Algebra);
pub struct StBimodule(Bimodule);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(e: Error) -> StStatus {
    let status = match e {
        Error::NotSeparable { .. } | Error::NotRightDualizable { .. } | Error::Hypothesis(_) => StStatus::Hypothesis,
        _ => StStatus::Input,
    };
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> StStatus) -> StStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        StStatus::Panic
    })
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, StStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(StStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        StStatus::Input
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> StStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            StStatus::Ok
        }
        Err(_) => {
            set_error("output contains a nul byte");
            StStatus::Input
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return StStatus::NullPointer;
        }
    };
}

macro_rules! io_try {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// The message of the last failed call on this thread, or NULL. Owned by the library.
#[no_mangle]
pub extern "C" fn st_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn st_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static version string.
#[no_mangle]
pub extern "C" fn st_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// A new empty workspace over `field` ("Q" or "GFp"); library objects resolve by name.
///
/// # Safety
/// `field` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_workspace_new(field: *const c_char, out: *mut *mut StWorkspace) -> StStatus {
    guard(|| {
        non_null!(out);
        let f = io_try!(read_str(field));
        match parse_field(f) {
            Ok(field) => {
                *out = Box::into_raw(Box::new(StWorkspace(Workspace { field, ..Default::default() })));
                StStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ws` must be NULL or a handle from [`st_workspace_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn st_workspace_free(ws: *mut StWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Loads JSON definitions. Returns `Inequality` if any object fails validation;
/// the objects that passed stay registered.
///
/// # Safety
/// `ws` must be a live workspace handle and `json` a valid C string.
#[no_mangle]
pub unsafe extern "C" fn st_workspace_load_json(ws: *mut StWorkspace, json: *const c_char) -> StStatus {
    guard(|| {
        non_null!(ws);
        let text = io_try!(read_str(json));
        let file = match parse_workspace(text) {
            Ok(f) => f,
            Err(e) => return fail(e),
        };
        match (*ws).0.add_file(&file) {
            Ok(reports) => match reports.iter().find(|r| !r.pass) {
                Some(r) => {
                    set_error(format!("{}: {}", r.claim, r.failures().join("; ")));
                    StStatus::Inequality
                }
                None => StStatus::Ok,
            },
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ws` must be a live workspace handle, `name` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_workspace_algebra(ws: *const StWorkspace, name: *const c_char, out: *mut *mut StAlgebra) -> StStatus {
    guard(|| {
        non_null!(ws, out);
        let n = io_try!(read_str(name));
        match (*ws).0.algebra(n) {
            Ok(a) => {
                *out = Box::into_raw(Box::new(StAlgebra(a)));
                StStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ws` must be a live workspace handle, `name` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_workspace_bimodule(ws: *const StWorkspace, name: *const c_char, out: *mut *mut StBimodule) -> StStatus {
    guard(|| {
        non_null!(ws, out);
        let n = io_try!(read_str(name));
        match (*ws).0.bimodule(n) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(StBimodule(m)));
                StStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `a` must be NULL or a live algebra handle.
#[no_mangle]
pub unsafe extern "C" fn st_algebra_free(a: *mut StAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension over the ground field; 0 for NULL.
///
/// # Safety
/// `a` must be NULL or a live algebra handle.
#[no_mangle]
pub unsafe extern "C" fn st_algebra_dim(a: *const StAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.0.dim())
}

/// The unit bimodule U_A.
///
/// # Safety
/// `a` must be a live algebra handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_algebra_unit_bimodule(a: *const StAlgebra, out: *mut *mut StBimodule) -> StStatus {
    guard(|| {
        non_null!(a, out);
        *out = Box::into_raw(Box::new(StBimodule(shadowtrace::bimodule::unit_bimodule(&(*a).0))));
        StStatus::Ok
    })
}

/// # Safety
/// `m` must be NULL or a live bimodule handle.
#[no_mangle]
pub unsafe extern "C" fn st_bimodule_free(m: *mut StBimodule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be NULL or a live bimodule handle.
#[no_mangle]
pub unsafe extern "C" fn st_bimodule_dim(m: *const StBimodule) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// HH_0..HH_cap dimensions of an (A, A)-bimodule into `out[0..len]`.
/// `written` receives cap + 1 even when `len` is too small.
///
/// # Safety
/// `m` must be a live bimodule handle, `out` valid for `len` writes, `written` valid.
#[no_mangle]
pub unsafe extern "C" fn st_hh_dims(m: *const StBimodule, cap: usize, out: *mut usize, len: usize, written: *mut usize) -> StStatus {
    guard(|| {
        non_null!(m, written);
        let dims = match hh_dims(&(*m).0, cap) {
            Ok(d) => d,
            Err(e) => return fail(e),
        };
        *written = dims.len();
        if len < dims.len() || out.is_null() {
            set_error(format!("need room for {} dimensions", dims.len()));
            return StStatus::BufferTooSmall;
        }
        std::slice::from_raw_parts_mut(out, dims.len()).copy_from_slice(&dims);
        StStatus::Ok
    })
}

/// χ(M) as JSON with its HH₀ bases.
///
/// # Safety
/// `m` must be a live bimodule handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_euler_characteristic_json(m: *const StBimodule, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        non_null!(m, out);
        match euler_characteristic(&(*m).0) {
            Ok(t) => write_string(out, t.to_json().to_string()),
            Err(e) => fail(e),
        }
    })
}

/// The HH₀ pairing and copairing as JSON.
///
/// # Safety
/// `a` must be a live algebra handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_pairing_json(a: *const StAlgebra, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        non_null!(a, out);
        match pairing_copairing(&(*a).0) {
            Ok(p) => write_string(out, p.to_json().to_string()),
            Err(e) => fail(e),
        }
    })
}

/// Runs the verification suite. `config` may be NULL for the default battery.
/// `exit` receives 0, 1 or 2 as the command line would report.
///
/// # Safety
/// `config` must be NULL or a valid C string; `out` and `exit` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn st_verify_suite_json(config: *const c_char, out: *mut *mut c_char, exit: *mut c_int) -> StStatus {
    guard(|| {
        non_null!(out, exit);
        let cfg: SuiteConfig = if config.is_null() {
            SuiteConfig::default()
        } else {
            match serde_json::from_str(io_try!(read_str(config))) {
                Ok(c) => c,
                Err(e) => return fail(Error::Parse(format!("suite config: {e}"))),
            }
        };
        match run_suite(&cfg) {
            Ok(reports) => {
                *exit = exit_code(&reports);
                write_string(out, serde_json::to_string(&reports).expect("reports serialize"))
            }
            Err(e) => fail(e),
        }
    })
}
