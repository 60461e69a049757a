//! C ABI for the tsys library.
//!
//! Conventions: carriers are opaque handles created from the same JSON
//! specs the CLI accepts; every other payload crosses the boundary as a
//! JSON string in the documented wire formats. Functions return a status
//! code, write results through out-parameters, and stash the last error
//! message in thread-local storage. Strings returned through
//! out-parameters are owned by the caller and must be released with
//! `tsys_string_free`.
//!
//! The installed header lives at `include/tsys.h` and is maintained by
//! hand against this file.

// Safety contracts are uniform across this boundary and documented in the
// module header and `include/tsys.h`: pointers must be valid NUL-terminated
// strings or handles produced by this library.
#![allow(clippy::missing_safety_doc)]

use libc::{c_char, c_int};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;
use tsys::error::Error;
use tsys::system::System;

pub const TSYS_OK: c_int = 0;
pub const TSYS_ERR_INVALID_ARGUMENT: c_int = 1;
pub const TSYS_ERR_PRECONDITION: c_int = 2;
pub const TSYS_ERR_INTERNAL: c_int = 3;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(cleaned).unwrap());
}

fn status_of(err: &Error) -> c_int {
    match err {
        Error::IllDefined(_) => TSYS_ERR_INTERNAL,
        Error::BadInput(_) | Error::BadRational(_) | Error::ForeignElement(_) => {
            TSYS_ERR_INVALID_ARGUMENT
        }
        _ => TSYS_ERR_PRECONDITION,
    }
}

/// Opaque carrier handle.
pub struct TsysSystem {
    sys: System,
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, c_int> {
    if p.is_null() {
        set_error(&format!("{what} is null"));
        return Err(TSYS_ERR_INVALID_ARGUMENT);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        TSYS_ERR_INVALID_ARGUMENT
    })
}

unsafe fn read_json(p: *const c_char, what: &str) -> Result<serde_json::Value, c_int> {
    let s = read_str(p, what)?;
    serde_json::from_str(s).map_err(|e| {
        set_error(&format!("{what}: malformed JSON: {e}"));
        TSYS_ERR_INVALID_ARGUMENT
    })
}

fn give_string(out: *mut *mut c_char, s: String) -> c_int {
    if out.is_null() {
        set_error("output pointer is null");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            TSYS_OK
        }
        Err(_) => {
            set_error("result contained an interior NUL");
            TSYS_ERR_INTERNAL
        }
    }
}

fn fail(out: *mut *mut c_char, err: Error) -> c_int {
    set_error(&err.to_string());
    if !out.is_null() {
        unsafe { *out = ptr::null_mut() };
    }
    status_of(&err)
}

/// Last error message for this thread; owned by the library, valid until
/// the next failing call.
#[no_mangle]
pub extern "C" fn tsys_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn tsys_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Create a carrier from a JSON spec (builtin name, finite table,
/// symmetrization, power-set construction).
#[no_mangle]
pub unsafe extern "C" fn tsys_system_new(
    spec_json: *const c_char,
    out: *mut *mut TsysSystem,
) -> c_int {
    if out.is_null() {
        set_error("output pointer is null");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    *out = ptr::null_mut();
    let spec = match read_json(spec_json, "carrier spec") {
        Ok(j) => j,
        Err(code) => return code,
    };
    match tsys::json::parse_system(&spec) {
        Ok(sys) => {
            *out = Box::into_raw(Box::new(TsysSystem { sys }));
            TSYS_OK
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

#[no_mangle]
pub unsafe extern "C" fn tsys_system_free(sys: *mut TsysSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

#[no_mangle]
pub unsafe extern "C" fn tsys_system_label(
    sys: *const TsysSystem,
    out: *mut *mut c_char,
) -> c_int {
    if sys.is_null() {
        set_error("carrier handle is null");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    give_string(out, (*sys).sys.label())
}

#[no_mangle]
pub unsafe extern "C" fn tsys_system_is_triple(
    sys: *const TsysSystem,
    out: *mut c_int,
) -> c_int {
    if sys.is_null() || out.is_null() {
        set_error("null argument");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    *out = (*sys).sys.is_triple() as c_int;
    TSYS_OK
}

unsafe fn elem_binop(
    sys: *const TsysSystem,
    a_json: *const c_char,
    b_json: *const c_char,
    out: *mut *mut c_char,
    f: impl Fn(&System, &tsys::value::Value, &tsys::value::Value) -> tsys::value::Value,
) -> c_int {
    if sys.is_null() {
        set_error("carrier handle is null");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    let sys = &(*sys).sys;
    let a = match read_json(a_json, "lhs") {
        Ok(j) => j,
        Err(code) => return code,
    };
    let b = match read_json(b_json, "rhs") {
        Ok(j) => j,
        Err(code) => return code,
    };
    let a = match tsys::json::parse_elem(sys, &a) {
        Ok(v) => v,
        Err(e) => return fail(out, e),
    };
    let b = match tsys::json::parse_elem(sys, &b) {
        Ok(v) => v,
        Err(e) => return fail(out, e),
    };
    let r = f(sys, &a, &b);
    give_string(out, tsys::json::render_elem(sys, &r).to_string())
}

/// `a + b`, JSON element in and out.
#[no_mangle]
pub unsafe extern "C" fn tsys_elem_add(
    sys: *const TsysSystem,
    a_json: *const c_char,
    b_json: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    elem_binop(sys, a_json, b_json, out, |s, a, b| s.add(a, b))
}

#[no_mangle]
pub unsafe extern "C" fn tsys_elem_mul(
    sys: *const TsysSystem,
    a_json: *const c_char,
    b_json: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    elem_binop(sys, a_json, b_json, out, |s, a, b| s.mul(a, b))
}

#[no_mangle]
pub unsafe extern "C" fn tsys_elem_negate(
    sys: *const TsysSystem,
    a_json: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if sys.is_null() {
        set_error("carrier handle is null");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    let system = &(*sys).sys;
    let a = match read_json(a_json, "element") {
        Ok(j) => j,
        Err(code) => return code,
    };
    match tsys::json::parse_elem(system, &a) {
        Ok(v) => give_string(
            out,
            tsys::json::render_elem(system, &system.negate(&v)).to_string(),
        ),
        Err(e) => fail(out, e),
    }
}

/// `a + (-)a`.
#[no_mangle]
pub unsafe extern "C" fn tsys_elem_quasi_zero(
    sys: *const TsysSystem,
    a_json: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if sys.is_null() {
        set_error("carrier handle is null");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    let system = &(*sys).sys;
    let a = match read_json(a_json, "element") {
        Ok(j) => j,
        Err(code) => return code,
    };
    match tsys::json::parse_elem(system, &a) {
        Ok(v) => give_string(
            out,
            tsys::json::render_elem(system, &system.quasi_zero(&v)).to_string(),
        ),
        Err(e) => fail(out, e),
    }
}

/// The surpassing relation `a <| b`; writes 0 or 1.
#[no_mangle]
pub unsafe extern "C" fn tsys_elem_leq(
    sys: *const TsysSystem,
    a_json: *const c_char,
    b_json: *const c_char,
    out: *mut c_int,
) -> c_int {
    if sys.is_null() || out.is_null() {
        set_error("null argument");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    let system = &(*sys).sys;
    let a = match read_json(a_json, "lhs") {
        Ok(j) => j,
        Err(code) => return code,
    };
    let b = match read_json(b_json, "rhs") {
        Ok(j) => j,
        Err(code) => return code,
    };
    let a = match tsys::json::parse_elem(system, &a) {
        Ok(v) => v,
        Err(e) => return fail(ptr::null_mut(), e),
    };
    let b = match tsys::json::parse_elem(system, &b) {
        Ok(v) => v,
        Err(e) => return fail(ptr::null_mut(), e),
    };
    *out = system.leq(&a, &b) as c_int;
    TSYS_OK
}

/// Signed determinant of a JSON matrix.
#[no_mangle]
pub unsafe extern "C" fn tsys_neg_det(
    sys: *const TsysSystem,
    matrix_json: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if sys.is_null() {
        set_error("carrier handle is null");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    let system = &(*sys).sys;
    let j = match read_json(matrix_json, "matrix") {
        Ok(j) => j,
        Err(code) => return code,
    };
    let m = match tsys::json::parse_matrix(system, &j) {
        Ok(m) => m,
        Err(e) => return fail(out, e),
    };
    match tsys::linalg::neg_det(&m) {
        Ok(d) => give_string(out, tsys::json::render_elem(system, &d).to_string()),
        Err(e) => fail(out, e),
    }
}

/// Evaluate a JSON polynomial at a JSON point (array of elements).
#[no_mangle]
pub unsafe extern "C" fn tsys_poly_eval(
    sys: *const TsysSystem,
    poly_json: *const c_char,
    point_json: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if sys.is_null() {
        set_error("carrier handle is null");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    let system = &(*sys).sys;
    let pj = match read_json(poly_json, "polynomial") {
        Ok(j) => j,
        Err(code) => return code,
    };
    let xj = match read_json(point_json, "point") {
        Ok(j) => j,
        Err(code) => return code,
    };
    let p = match tsys::json::parse_poly(system, &pj) {
        Ok(p) => p,
        Err(e) => return fail(out, e),
    };
    let point: Result<Vec<tsys::value::Value>, Error> = match xj.as_array() {
        Some(arr) => arr.iter().map(|e| tsys::json::parse_elem(system, e)).collect(),
        None => Err(Error::BadInput("point must be an array".into())),
    };
    let point = match point {
        Ok(p) => p,
        Err(e) => return fail(out, e),
    };
    match tsys::poly::eval(system, &p, &point) {
        Ok(v) => give_string(out, tsys::json::render_elem(system, &v).to_string()),
        Err(e) => fail(out, e),
    }
}

/// Run any CLI subcommand in-process: `argv_json` is a JSON array of
/// argument strings (without the program name). The serialized result is
/// returned through `out` and the CLI exit code through `exit_code`.
#[no_mangle]
pub unsafe extern "C" fn tsys_run(
    argv_json: *const c_char,
    out: *mut *mut c_char,
    exit_code: *mut c_int,
) -> c_int {
    if exit_code.is_null() {
        set_error("exit_code pointer is null");
        return TSYS_ERR_INVALID_ARGUMENT;
    }
    let j = match read_json(argv_json, "argv") {
        Ok(j) => j,
        Err(code) => return code,
    };
    let Some(arr) = j.as_array() else {
        set_error("argv must be a JSON array of strings");
        return TSYS_ERR_INVALID_ARGUMENT;
    };
    let mut argv = vec!["tsys".to_string()];
    for a in arr {
        match a.as_str() {
            Some(s) => argv.push(s.to_string()),
            None => {
                set_error("argv entries must be strings");
                return TSYS_ERR_INVALID_ARGUMENT;
            }
        }
    }
    let mut buf = Vec::new();
    let code = tsys::cli::run(&argv, &mut buf);
    *exit_code = code;
    give_string(out, String::from_utf8_lossy(&buf).into_owned())
}
