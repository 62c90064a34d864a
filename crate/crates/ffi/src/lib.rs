//! C ABI over `topokit`. Strings returned by this library are owned by the
//! caller and must be released with [`topokit_string_free`].
//!
//! The header `topokit.h` is generated into the build output directory.

use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;
use std::slice;

use topokit::exactnum::bernoulli;
use topokit::forms::{IntegerSymmetricForm, Z2QuadraticForm};

/// Status codes shared by every entry point.
pub const TOPOKIT_OK: c_int = 0;
pub const TOPOKIT_VERIFY_MISMATCH: c_int = 1;
pub const TOPOKIT_INVALID: c_int = 2;

fn into_c(s: String) -> *mut c_char {
    // Interior NULs cannot occur in rendered payloads; strip defensively.
    CString::new(s.replace('\0', ""))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

fn set(status: *mut c_int, value: c_int) {
    if !status.is_null() {
        // SAFETY: caller passes either NULL or a writable int.
        unsafe { *status = value };
    }
}

/// Runs one command line (`argv[0]` is the first subcommand word, not the
/// program name) and returns its JSON document. The exit code is written
/// to `exit_code` when non-NULL.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn topokit_run_json(
    argv: *const *const c_char,
    argc: usize,
    exit_code: *mut c_int,
) -> *mut c_char {
    if argv.is_null() && argc > 0 {
        set(exit_code, TOPOKIT_INVALID);
        return ptr::null_mut();
    }
    let raw = if argc == 0 {
        &[][..]
    } else {
        slice::from_raw_parts(argv, argc)
    };
    let mut args = vec!["topokit".to_string()];
    for &a in raw {
        if a.is_null() {
            set(exit_code, TOPOKIT_INVALID);
            return ptr::null_mut();
        }
        args.push(CStr::from_ptr(a).to_string_lossy().into_owned());
    }
    args.push("--json".into());
    let result = topokit::cli::run(args);
    set(exit_code, result.exit_code);
    into_c(result.payload)
}

/// B_n as "p/q" (or an integer).
#[no_mangle]
pub extern "C" fn topokit_bernoulli(n: u32) -> *mut c_char {
    into_c(bernoulli(n).to_string())
}

/// Signature of the symmetric n×n row-major matrix. `status` receives
/// `TOPOKIT_INVALID` for a null pointer or an asymmetric matrix.
///
/// # Safety
/// `matrix` must point to `n * n` readable values.
#[no_mangle]
pub unsafe extern "C" fn topokit_signature(
    matrix: *const i64,
    n: usize,
    status: *mut c_int,
) -> i64 {
    if matrix.is_null() && n > 0 {
        set(status, TOPOKIT_INVALID);
        return 0;
    }
    let flat = if n == 0 {
        &[][..]
    } else {
        slice::from_raw_parts(matrix, n * n)
    };
    let rows: Vec<Vec<i64>> = flat.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
    match IntegerSymmetricForm::from_rows(&rows) {
        Ok(form) => {
            set(status, TOPOKIT_OK);
            form.signature()
        }
        Err(_) => {
            set(status, TOPOKIT_INVALID);
            0
        }
    }
}

/// Arf invariant (0 or 1) of the form with row-major λ (dim×dim) and μ on
/// the basis; −1 when the form is invalid or singular.
///
/// # Safety
/// `lambda` must point to `dim * dim` bytes and `mu` to `dim` bytes.
#[no_mangle]
pub unsafe extern "C" fn topokit_arf(lambda: *const u8, mu: *const u8, dim: usize) -> c_int {
    if dim == 0 || lambda.is_null() || mu.is_null() {
        return -1;
    }
    let l: Vec<Vec<u8>> = slice::from_raw_parts(lambda, dim * dim)
        .chunks(dim)
        .map(<[u8]>::to_vec)
        .collect();
    let m = slice::from_raw_parts(mu, dim);
    match Z2QuadraticForm::new(&l, m).and_then(|f| f.arf()) {
        Ok(a) => c_int::from(a),
        Err(_) => -1,
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn topokit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn take(s: *mut c_char) -> String {
        assert!(!s.is_null());
        let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
        unsafe { topokit_string_free(s) };
        out
    }

    #[test]
    fn bernoulli_text() {
        assert_eq!(take(topokit_bernoulli(12)), "-691/2730");
    }

    #[test]
    fn signature_and_status() {
        let mut status = -7;
        let m = [2i64, 1, 1, 2];
        assert_eq!(unsafe { topokit_signature(m.as_ptr(), 2, &mut status) }, 2);
        assert_eq!(status, TOPOKIT_OK);
        let bad = [1i64, 2, 3, 4];
        unsafe { topokit_signature(bad.as_ptr(), 2, &mut status) };
        assert_eq!(status, TOPOKIT_INVALID);
    }
}
