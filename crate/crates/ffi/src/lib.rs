//! C ABI for ltistruct.
//!
//! Realizations are opaque handles created by [`lts_realization_parse`] and
//! released with [`lts_realization_free`]. Every fallible call returns an
//! [`LtsStatus`]; on failure [`lts_last_error`] describes what went wrong.
//! Strings handed to the caller are NUL-terminated UTF-8 and must be released
//! with [`lts_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ltistruct::cli::analyze;
use ltistruct::dsf::{dsf, dsf_to_json};
use ltistruct::gds::Gds;
use ltistruct::realization::{
    minimize_intricacy, output_normal_form, parse_realization, realization_to_json, transfer_function,
    GeneralizedRealization,
};
use ltistruct::structure::{comp_structure, subsystem_structure};
use ltistruct::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LtsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    DimensionMismatch = 4,
    Singular = 5,
    IndexNotZero = 6,
    NoManifestOutputs = 7,
    AlgebraicLoop = 8,
    BadNode = 9,
    Invalid = 10,
    Panic = 11,
}

/// Opaque generalized realization.
pub struct LtsRealization {
    inner: GeneralizedRealization,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LtsStatus {
    match e {
        Error::Parse { .. } => LtsStatus::Parse,
        Error::DimensionMismatch(_) => LtsStatus::DimensionMismatch,
        Error::SingularMatrix | Error::SingularLoop | Error::ZeroDenominator => LtsStatus::Singular,
        Error::IndexNotZero => LtsStatus::IndexNotZero,
        Error::NoManifestOutputs => LtsStatus::NoManifestOutputs,
        Error::AlgebraicLoop => LtsStatus::AlgebraicLoop,
        Error::BadNode { .. } => LtsStatus::BadNode,
        _ => LtsStatus::Invalid,
    }
}

/// Runs `f`, mapping library errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), LtsStatus>) -> LtsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LtsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            LtsStatus::Panic
        }
    }
}

fn fail(e: Error) -> LtsStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn input_str<'a>(s: *const c_char) -> Result<&'a str, LtsStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(LtsStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        LtsStatus::InvalidUtf8
    })
}

unsafe fn handle<'a>(h: *const LtsRealization) -> Result<&'a GeneralizedRealization, LtsStatus> {
    h.as_ref().map(|r| &r.inner).ok_or_else(|| {
        set_error("null realization handle");
        LtsStatus::NullPointer
    })
}

unsafe fn emit(out: *mut *mut c_char, text: String) -> Result<(), LtsStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(LtsStatus::NullPointer);
    }
    *out = CString::new(text).map_err(|_| LtsStatus::Invalid)?.into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread. Valid until the next
/// call into the library from the same thread; never NULL.
#[no_mangle]
pub extern "C" fn lts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a realization document (JSON text).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_realization_parse(json: *const c_char, out: *mut *mut LtsRealization) -> LtsStatus {
    guard(|| {
        let text = input_str(json)?;
        if out.is_null() {
            set_error("null output pointer");
            return Err(LtsStatus::NullPointer);
        }
        let inner = parse_realization(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(LtsRealization { inner }));
        Ok(())
    })
}

/// # Safety
/// `h` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lts_realization_free(h: *mut LtsRealization) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Writes the state, auxiliary, input and output counts. Any output pointer
/// may be NULL.
///
/// # Safety
/// `h` must be a live handle; non-NULL pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_realization_dims(
    h: *const LtsRealization,
    n: *mut usize,
    l: *mut usize,
    m: *mut usize,
    p: *mut usize,
) -> LtsStatus {
    guard(|| {
        let g = handle(h)?;
        for (dst, v) in [(n, g.n()), (l, g.l()), (m, g.m()), (p, g.p())] {
            if !dst.is_null() {
                *dst = v;
            }
        }
        Ok(())
    })
}

/// Eliminates auxiliary variables, producing a new handle with `l = 0`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_minimize(h: *const LtsRealization, out: *mut *mut LtsRealization) -> LtsStatus {
    guard(|| {
        let g = handle(h)?;
        if out.is_null() {
            set_error("null output pointer");
            return Err(LtsStatus::NullPointer);
        }
        let r = minimize_intricacy(g).map_err(fail)?;
        *out = Box::into_raw(Box::new(LtsRealization { inner: GeneralizedRealization::from(&r) }));
        Ok(())
    })
}

/// The realization in file format.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_realization_to_json(h: *const LtsRealization, out: *mut *mut c_char) -> LtsStatus {
    guard(|| emit(out, realization_to_json(handle(h)?)))
}

/// Transfer matrix as a JSON array of rows of rational-function strings.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_transfer_function(h: *const LtsRealization, out: *mut *mut c_char) -> LtsStatus {
    guard(|| {
        let tf = transfer_function(&minimize_intricacy(handle(h)?).map_err(fail)?);
        emit(out, serde_json::to_string(&tf.to_string_rows()).map_err(|_| LtsStatus::Invalid)?)
    })
}

/// Dynamical structure function in its JSON dump format.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_dsf(h: *const LtsRealization, out: *mut *mut c_char) -> LtsStatus {
    guard(|| {
        let r = minimize_intricacy(handle(h)?).map_err(fail)?;
        let d = output_normal_form(&r).and_then(|nf| dsf(&nf)).map_err(fail)?;
        emit(out, dsf_to_json(&d))
    })
}

/// Number of blocks in the subsystem structure.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_block_count(h: *const LtsRealization, out: *mut usize) -> LtsStatus {
    guard(|| {
        let c = comp_structure(handle(h)?).map_err(fail)?;
        if out.is_null() {
            set_error("null output pointer");
            return Err(LtsStatus::NullPointer);
        }
        *out = subsystem_structure(&c).blocks().len();
        Ok(())
    })
}

/// Runs every consistency check. `passed` receives 1 when none failed;
/// `report`, if not NULL, receives the JSON report.
///
/// # Safety
/// `h` must be a live handle; `passed` must be writable; `report` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn lts_check(h: *const LtsRealization, passed: *mut i32, report: *mut *mut c_char) -> LtsStatus {
    guard(|| {
        let r = analyze(handle(h)?, false).map_err(fail)?;
        if passed.is_null() {
            set_error("null output pointer");
            return Err(LtsStatus::NullPointer);
        }
        *passed = i32::from(r.passed());
        if !report.is_null() {
            emit(report, serde_json::to_string(&r).map_err(|_| LtsStatus::Invalid)?)?;
        }
        Ok(())
    })
}

/// Simulates the ring GDS on `n` nodes. `x0` holds `n` bytes (0 or 1),
/// `inputs` holds `steps` node numbers in `1..=n`, and `states` receives
/// `(steps + 1) * n` bytes, row `t` being `x[t]`.
///
/// # Safety
/// All pointers must reference buffers of the stated sizes.
#[no_mangle]
pub unsafe extern "C" fn lts_gds_ring_simulate(
    n: usize,
    x0: *const u8,
    inputs: *const usize,
    steps: usize,
    states: *mut u8,
) -> LtsStatus {
    guard(|| {
        if x0.is_null() || states.is_null() || (inputs.is_null() && steps > 0) {
            set_error("null buffer");
            return Err(LtsStatus::NullPointer);
        }
        let g = Gds::ring(n).map_err(fail)?;
        let x: Vec<bool> = std::slice::from_raw_parts(x0, n).iter().map(|&b| b != 0).collect();
        let us = if steps == 0 { &[][..] } else { std::slice::from_raw_parts(inputs, steps) };
        let tr = g.simulate(&x, us, steps).map_err(fail)?;
        let dst = std::slice::from_raw_parts_mut(states, (steps + 1) * n);
        for (t, row) in tr.states.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                dst[t * n + i] = u8::from(v);
            }
        }
        Ok(())
    })
}

/// Library version string (static, do not free).
#[no_mangle]
pub extern "C" fn lts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
