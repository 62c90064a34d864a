use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};

use topokit_ffi::{
    topokit_arf, topokit_run_json, topokit_string_free, TOPOKIT_INVALID, TOPOKIT_OK,
};

const HEADER: &str = include_str!(concat!(env!("OUT_DIR"), "/topokit.h"));

fn run(args: &[&str]) -> (c_int, String) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let ptrs: Vec<*const c_char> = owned.iter().map(|c| c.as_ptr()).collect();
    let mut code = -1;
    let out = unsafe { topokit_run_json(ptrs.as_ptr(), ptrs.len(), &mut code) };
    assert!(!out.is_null());
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { topokit_string_free(out) };
    (code, text)
}

#[test]
fn header_declares_every_entry_point() {
    for name in [
        "topokit_run_json",
        "topokit_bernoulli",
        "topokit_signature",
        "topokit_arf",
        "topokit_string_free",
    ] {
        assert!(HEADER.contains(&format!("{name}(")), "{name} missing");
    }
    assert!(HEADER.contains("size_t argc"));
}

#[test]
fn run_json_matches_cli() {
    let (code, text) = run(&["theta", "7"]);
    assert_eq!(code, TOPOKIT_OK);
    assert_eq!(topokit::cli::rerender(&text).unwrap(), "Z_28");
    let (code, text) = run(&["bp-order", "0"]);
    assert_eq!(code, TOPOKIT_INVALID);
    assert!(text.contains("error"));
}

#[test]
fn arf_of_standard_and_singular_forms() {
    let lambda = [0u8, 1, 1, 0];
    assert_eq!(
        unsafe { topokit_arf(lambda.as_ptr(), [1u8, 1].as_ptr(), 2) },
        1
    );
    assert_eq!(
        unsafe { topokit_arf(lambda.as_ptr(), [1u8, 0].as_ptr(), 2) },
        0
    );
    let zero = [0u8; 4];
    assert_eq!(
        unsafe { topokit_arf(zero.as_ptr(), [0u8, 0].as_ptr(), 2) },
        -1
    );
}
