//! C ABI over `twistinv`.
//!
//! Objects are opaque heap handles released with the matching `*_free`. Every fallible call
//! returns a [`TwStatus`]; on failure [`tw_last_error_message`] describes the error for the
//! calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twistinv::repn::{build_irreducible, Module};
use twistinv::{Error, RootDatum, Weight};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Consistency = 3,
    Panic = 4,
    Utf8 = 5,
}

/// A root datum of a simply connected semisimple group.
pub struct TwDatum {
    datum: RootDatum,
}

/// An irreducible highest-weight module.
pub struct TwModule {
    module: Module,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("nul bytes removed")));
}

fn status_of(e: &Error) -> TwStatus {
    set_error(e.to_string());
    match e {
        Error::Consistency(_) => TwStatus::Consistency,
        _ => TwStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> TwStatus) -> TwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            TwStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, TwStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(TwStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        TwStatus::Utf8
    })
}

unsafe fn read_weight(coords: *const i64, len: usize, rank: usize) -> Result<Weight, TwStatus> {
    if coords.is_null() && len > 0 {
        set_error("null coordinate array");
        return Err(TwStatus::NullPointer);
    }
    if len != rank {
        set_error(format!("weight needs {rank} coordinates, got {len}"));
        return Err(TwStatus::InvalidInput);
    }
    let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(coords, len) };
    Ok(Weight(slice.to_vec()))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! non_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return TwStatus::NullPointer;
        }
    };
}

/// Message for the last failure on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn tw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a group spec such as `A3` or `A1xA1` into a new datum handle.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tw_datum_new(spec: *const c_char, out: *mut *mut TwDatum) -> TwStatus {
    guard(|| {
        non_null!(out);
        let spec = try_status!(read_str(spec));
        match RootDatum::from_spec(spec) {
            Ok(datum) => {
                *out = Box::into_raw(Box::new(TwDatum { datum }));
                TwStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `d` must come from [`tw_datum_new`] and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tw_datum_free(d: *mut TwDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live datum handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tw_datum_rank(d: *const TwDatum, out: *mut usize) -> TwStatus {
    guard(|| {
        non_null!(d, out);
        *out = (*d).datum.rank();
        TwStatus::Ok
    })
}

/// # Safety
/// `d` must be a live datum handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tw_datum_num_positive_roots(d: *const TwDatum, out: *mut usize) -> TwStatus {
    guard(|| {
        non_null!(d, out);
        *out = (*d).datum.positive_roots().len();
        TwStatus::Ok
    })
}

/// Builds the irreducible module with highest weight `coords[0..len]` (fundamental-weight coordinates).
///
/// # Safety
/// `d` must be a live datum handle, `coords` must point to `len` integers, `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tw_module_new(
    d: *const TwDatum,
    coords: *const i64,
    len: usize,
    out: *mut *mut TwModule,
) -> TwStatus {
    guard(|| {
        non_null!(d, out);
        let datum = &(*d).datum;
        let lambda = try_status!(read_weight(coords, len, datum.rank()));
        match build_irreducible(datum, &lambda) {
            Ok(module) => {
                *out = Box::into_raw(Box::new(TwModule { module }));
                TwStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `m` must come from [`tw_module_new`] and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tw_module_free(m: *mut TwModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live module handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tw_module_dim(m: *const TwModule, out: *mut usize) -> TwStatus {
    guard(|| {
        non_null!(m, out);
        *out = (*m).module.dim();
        TwStatus::Ok
    })
}

/// # Safety
/// `m` must be a live module handle, `coords` must point to `len` integers, `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tw_module_weight_multiplicity(
    m: *const TwModule,
    coords: *const i64,
    len: usize,
    out: *mut usize,
) -> TwStatus {
    guard(|| {
        non_null!(m, out);
        let module = &(*m).module;
        let nu = try_status!(read_weight(coords, len, module.rank()));
        *out = module.mult(&nu);
        TwStatus::Ok
    })
}

/// Runs one command-line invocation, e.g. `{"fold", "--group", "A2", "--sigma", "(1 2)"}`.
/// `*out_text` receives the standard output (free with [`tw_string_free`]) and `*out_exit`
/// the exit code. Returns `TW_STATUS_OK` whenever the command ran, whatever its exit code.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out_text` and `out_exit` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tw_run_json(
    argc: usize,
    argv: *const *const c_char,
    out_text: *mut *mut c_char,
    out_exit: *mut i32,
) -> TwStatus {
    guard(|| {
        non_null!(out_text, out_exit);
        if argc > 0 && argv.is_null() {
            set_error("null argv");
            return TwStatus::NullPointer;
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(try_status!(read_str(*argv.add(i))).to_string());
        }
        let mut stdout = Vec::new();
        let mut stderr = Vec::new();
        let code = twistinv::cli::main_with_args(args, &mut stdout, &mut stderr);
        if code != 0 {
            set_error(String::from_utf8_lossy(&stderr).trim().to_string());
        }
        let text = String::from_utf8_lossy(&stdout).replace('\0', " ");
        *out_text = CString::new(text).expect("nul bytes removed").into_raw();
        *out_exit = code;
        TwStatus::Ok
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
