use std::ffi::{c_char, CStr, CString};
use std::ptr;

use corep_ffi::*;

const MORITA: &str =
    "field = \"rationals\"\n[bimodules.U]\ncatalog = \"morita-columns/2\"\n[comodules.V]\ncatalog = \"morita/2\"\n";

fn load(text: &str) -> *mut CorepInstance {
    let text = CString::new(text).unwrap();
    let mut handle = ptr::null_mut();
    let status = unsafe { corep_instance_from_str(text.as_ptr(), &mut handle) };
    assert_eq!(status, CorepStatus::Ok);
    assert!(!handle.is_null());
    handle
}

fn run(handle: *const CorepInstance, args: &[&str]) -> (CorepStatus, String) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let argv: Vec<*const c_char> = owned.iter().map(|a| a.as_ptr()).collect();
    let mut report = ptr::null_mut();
    let status = unsafe { corep_run(handle, argv.len() as i32, argv.as_ptr(), &mut report) };
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_string();
    unsafe { corep_string_free(report) };
    (status, text)
}

fn last_error() -> Option<String> {
    let p = corep_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn run_on_a_loaded_instance() {
    let h = load(MORITA);
    let (status, report) = run(h, &["dualbasis1", "--U", "U", "--V", "V", "--seed", "7"]);
    assert_eq!(status, CorepStatus::Ok);
    assert!(report.contains("\"status\": \"FOUND\""));
    let (again, same) = run(h, &["dualbasis1", "--U", "U", "--V", "V", "--seed", "7"]);
    assert_eq!((again, same), (status, report));
    unsafe { corep_instance_free(h) };
}

#[test]
fn statuses_follow_exit_codes() {
    let (status, _) = run(
        ptr::null(),
        &["equivalence", "--U", "catalog:vector-space/2", "--V", "catalog:trivial/field", "--seed", "1"],
    );
    assert_eq!(status, CorepStatus::No);
    let (status, _) = run(ptr::null(), &["dualbasis1", "--U", "missing", "--V", "V", "--seed", "1"]);
    assert_eq!(status, CorepStatus::InputError);
    assert!(last_error().unwrap().contains("missing"));
}

#[test]
fn load_errors_are_reported() {
    let text = CString::new("field = \"prime:4\"\n").unwrap();
    let mut handle = ptr::null_mut();
    let status = unsafe { corep_instance_from_str(text.as_ptr(), &mut handle) };
    assert_eq!(status, CorepStatus::InputError);
    assert!(handle.is_null());
    assert!(last_error().is_some());

    let status = unsafe { corep_instance_from_str(ptr::null(), &mut handle) };
    assert_eq!(status, CorepStatus::NullPointer);

    let path = CString::new("/nonexistent/instance.toml").unwrap();
    let status = unsafe { corep_instance_load(path.as_ptr(), &mut handle) };
    assert_eq!(status, CorepStatus::InputError);
}

#[test]
fn emit_round_trips() {
    let h = load(MORITA);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { corep_instance_emit(h, &mut out) }, CorepStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { corep_string_free(out) };
    let h2 = load(&text);
    let mut out2 = ptr::null_mut();
    assert_eq!(unsafe { corep_instance_emit(h2, &mut out2) }, CorepStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(out2) }.to_str().unwrap(), text);
    unsafe {
        corep_string_free(out2);
        corep_instance_free(h);
        corep_instance_free(h2);
        corep_instance_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/corep.h")).unwrap();
    for name in [
        "corep_instance_load",
        "corep_instance_from_str",
        "corep_instance_emit",
        "corep_instance_free",
        "corep_run",
        "corep_string_free",
        "corep_last_error",
        "COREP_STATUS_INPUT_ERROR",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
