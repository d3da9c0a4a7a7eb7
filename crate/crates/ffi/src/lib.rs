//! C interface to corep.
//!
//! Instances are opaque handles created by `corep_instance_load` or
//! `corep_instance_from_str` and released with `corep_instance_free`.
//! Strings returned by the library are owned by the caller and released
//! with `corep_string_free`. All input strings are NUL-terminated UTF-8.
//!
//! Every function returns a `CorepStatus`. On an error status the message
//! is available from `corep_last_error` until the next call on the same
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use corep::cli;
use corep::instance::Instance;

/// Result codes. The first four coincide with the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorepStatus {
    /// FOUND, or a true check.
    Ok = 0,
    /// NO, or a false check.
    No = 1,
    /// NO_WITNESS_FOUND or UNKNOWN.
    Inconclusive = 2,
    /// Parse, resolution or verification error in the input.
    InputError = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// A loaded and verified instance.
pub struct CorepInstance {
    inner: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(code: i32) -> CorepStatus {
    match code {
        0 => CorepStatus::Ok,
        1 => CorepStatus::No,
        2 => CorepStatus::Inconclusive,
        _ => CorepStatus::InputError,
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CorepStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(CorepStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        CorepStatus::InvalidUtf8
    })
}

fn guarded(f: impl FnOnce() -> Result<CorepStatus, CorepStatus>) -> CorepStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            CorepStatus::Panic
        }
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NUL bytes removed").into_raw()
}

fn store_instance(result: corep::error::Result<Instance>, out: *mut *mut CorepInstance) -> CorepStatus {
    match result {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(CorepInstance { inner })) };
            CorepStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            CorepStatus::InputError
        }
    }
}

/// Loads an instance file. On success `*out` receives a new handle.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn corep_instance_load(path: *const c_char, out: *mut *mut CorepInstance) -> CorepStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return Err(CorepStatus::NullPointer);
        }
        let path = read_str(path)?;
        Ok(store_instance(Instance::load(path.as_ref()), out))
    })
}

/// Parses an instance from its text form.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn corep_instance_from_str(text: *const c_char, out: *mut *mut CorepInstance) -> CorepStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return Err(CorepStatus::NullPointer);
        }
        let text = read_str(text)?;
        Ok(store_instance(Instance::parse(text), out))
    })
}

/// Writes the canonical text form of an instance to `*out`.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn corep_instance_emit(instance: *const CorepInstance, out: *mut *mut c_char) -> CorepStatus {
    guarded(|| {
        if instance.is_null() || out.is_null() {
            set_error("null pointer argument");
            return Err(CorepStatus::NullPointer);
        }
        *out = into_c_string((*instance).inner.emit());
        Ok(CorepStatus::Ok)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `instance` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn corep_instance_free(instance: *mut CorepInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Runs a CLI command (arguments without the program name) and writes the
/// report to `*report`. `instance` may be null when the arguments name a
/// file or only catalog objects. The return value is the command's exit
/// status.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings, `instance` must be
/// null or a live handle and `report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn corep_run(
    instance: *const CorepInstance,
    argc: c_int,
    argv: *const *const c_char,
    report: *mut *mut c_char,
) -> CorepStatus {
    guarded(|| {
        if report.is_null() || (argc > 0 && argv.is_null()) || argc < 0 {
            set_error("invalid argument vector or output pointer");
            return Err(CorepStatus::NullPointer);
        }
        let mut args = Vec::with_capacity(argc as usize);
        for i in 0..argc as usize {
            args.push(read_str(*argv.add(i))?.to_string());
        }
        let inst = instance.as_ref().map(|h| &h.inner);
        let (code, text) = cli::run_with(inst, &args);
        let status = status_of(code);
        if status == CorepStatus::InputError {
            set_error(text.trim_end());
        }
        *report = into_c_string(text);
        Ok(status)
    })
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn corep_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The last error message on this thread, or null. The pointer stays valid
/// until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn corep_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
