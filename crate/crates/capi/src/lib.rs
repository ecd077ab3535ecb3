//! C ABI over the cohtab library so other languages can bind it.
//!
//! Tables travel as opaque handles; every fallible call returns a status
//! code and leaves a human-readable message retrievable with
//! `cohtab_last_error_message`. Strings returned through out-parameters are
//! owned by the caller and must be released with `cohtab_string_free`;
//! handles with `cohtab_table_free`. Rational values cross the boundary as
//! exact `p/q` strings, never as floating point.

use cohtab::decomposition::{decompose, reconstruct_steps};
use cohtab::error::Error;
use cohtab::format;
use cohtab::functionals::{certificate_search, evaluate, BoundSequence, DegreeSequence};
use cohtab::num::parse_rational;
use cohtab::render::render_grid;
use cohtab::roots::RootSequence;
use cohtab::sheaves::StockSheaf;
use cohtab::supernatural::SupernaturalSpec;
use cohtab::table::{CohomologyTable, Window};
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;

/// Opaque handle to an exact cohomology table.
pub struct CohtabTable {
    inner: CohomologyTable,
}

/// Call outcome. Nonzero values mirror the CLI exit codes: 2 for malformed
/// input, 3 when a position cannot be evaluated inside the window, 4 for a
/// non-admissible table, 1 for anything else.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CohtabStatus {
    Ok = 0,
    Internal = 1,
    InvalidInput = 2,
    OutOfWindow = 3,
    NonAdmissible = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(err: &Error) -> CohtabStatus {
    let status = match err {
        Error::OutOfWindow { .. }
        | Error::WindowExhausted { .. }
        | Error::WindowTooSmall { .. }
        | Error::EmptyWindow { .. }
        | Error::UnsupportedWindow { .. } => CohtabStatus::OutOfWindow,
        Error::NonAdmissible { .. } => CohtabStatus::NonAdmissible,
        Error::Parse(_) | Error::Invalid(_) | Error::IndexRange(_) => CohtabStatus::InvalidInput,
        _ => CohtabStatus::Internal,
    };
    let msg = CString::new(err.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
    status
}

fn set_message(msg: &str) -> CohtabStatus {
    let msg = CString::new(msg).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
    CohtabStatus::InvalidInput
}

/// Message describing the most recent error on this thread, or null. The
/// pointer stays valid until the next failing call from the same thread.
#[no_mangle]
pub extern "C" fn cohtab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |msg| msg.as_ptr())
    })
}

/// Free a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must have been returned by a cohtab function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn cohtab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Free a table handle. Null is ignored.
///
/// # Safety
/// `t` must have been returned by a cohtab function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn cohtab_table_free(t: *mut CohtabTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, CohtabStatus> {
    if ptr.is_null() {
        return Err(set_message(&format!("{what} must not be null")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| set_message(&format!("{what} is not valid UTF-8")))
}

fn give_string(out: *mut *mut c_char, value: String) -> CohtabStatus {
    match CString::new(value) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CohtabStatus::Ok
        }
        Err(_) => set_message("output contained an interior NUL byte"),
    }
}

fn give_table(out: *mut *mut CohtabTable, table: CohomologyTable) -> CohtabStatus {
    let boxed = Box::new(CohtabTable { inner: table });
    unsafe { *out = Box::into_raw(boxed) };
    CohtabStatus::Ok
}

unsafe fn table_ref<'a>(t: *const CohtabTable) -> Result<&'a CohomologyTable, CohtabStatus> {
    if t.is_null() {
        return Err(set_message("table handle must not be null"));
    }
    Ok(&(*t).inner)
}

/// Parse a table in the text or JSON format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cohtab_table_parse(
    text: *const c_char,
    out: *mut *mut CohtabTable,
) -> CohtabStatus {
    let text = match read_str(text, "table text") {
        Ok(t) => t,
        Err(s) => return s,
    };
    match format::parse_table_auto(text) {
        Ok(table) => give_table(out, table),
        Err(e) => set_error(&e),
    }
}

/// Serialize a table in the text format.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cohtab_table_emit_text(
    t: *const CohtabTable,
    out: *mut *mut c_char,
) -> CohtabStatus {
    match table_ref(t) {
        Ok(table) => give_string(out, format::emit_text(table)),
        Err(s) => s,
    }
}

/// Serialize a table in the JSON format, tails included.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cohtab_table_emit_json(
    t: *const CohtabTable,
    out: *mut *mut c_char,
) -> CohtabStatus {
    match table_ref(t) {
        Ok(table) => give_string(out, format::emit_json(table)),
        Err(s) => s,
    }
}

/// Render a table as a display-convention grid.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cohtab_table_render(
    t: *const CohtabTable,
    out: *mut *mut c_char,
) -> CohtabStatus {
    match table_ref(t) {
        Ok(table) => give_string(out, render_grid(table)),
        Err(s) => s,
    }
}

/// Build the normalized supernatural table for strictly decreasing roots,
/// scaled by the exact rational `scale` (e.g. "1/6"), on [lo, hi].
///
/// # Safety
/// `roots` must point to `nroots` values; `scale` must be NUL-terminated;
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cohtab_supernatural_table(
    roots: *const i64,
    nroots: usize,
    scale: *const c_char,
    ambient: usize,
    lo: i64,
    hi: i64,
    out: *mut *mut CohtabTable,
) -> CohtabStatus {
    let roots = if nroots == 0 {
        Vec::new()
    } else if roots.is_null() {
        return set_message("roots must not be null when nroots > 0");
    } else {
        std::slice::from_raw_parts(roots, nroots).to_vec()
    };
    let scale = match read_str(scale, "scale") {
        Ok(s) => s,
        Err(s) => return s,
    };
    let result = (|| {
        let roots = RootSequence::new(roots)?;
        let scale = parse_rational(scale)?;
        let spec = SupernaturalSpec::new(roots, scale, ambient)?;
        spec.table(Window::new(lo, hi)?)
    })();
    match result {
        Ok(table) => give_table(out, table),
        Err(e) => set_error(&e),
    }
}

/// Build a stock table by CLI name (ideal-point-p2, line:a:n,
/// line-bundle:s:a:n, skew-lines, conic-point, T2, T3), twisted and
/// materialized on [lo, hi].
///
/// # Safety
/// `name` must be NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cohtab_stock_table(
    name: *const c_char,
    twist: i64,
    lo: i64,
    hi: i64,
    out: *mut *mut CohtabTable,
) -> CohtabStatus {
    let name = match read_str(name, "stock name") {
        Ok(s) => s,
        Err(s) => return s,
    };
    let result = (|| {
        let kind = StockSheaf::parse(name)?;
        StockSheaf::new(kind, twist).table(Window::new(lo, hi)?)
    })();
    match result {
        Ok(table) => give_table(out, table),
        Err(e) => set_error(&e),
    }
}

/// The exact entry at (row, degree) as a `p/q` string.
///
/// # Safety
/// `t` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cohtab_table_entry(
    t: *const CohtabTable,
    row: usize,
    degree: i64,
    out: *mut *mut c_char,
) -> CohtabStatus {
    let table = match table_ref(t) {
        Ok(x) => x,
        Err(s) => return s,
    };
    match table.entry(row, degree) {
        Ok(v) => give_string(out, cohtab::num::format_rational(&v)),
        Err(e) => set_error(&e),
    }
}

/// Dimension of the table, -1 when identically zero.
///
/// # Safety
/// `t` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cohtab_table_dimension(
    t: *const CohtabTable,
    out: *mut i64,
) -> CohtabStatus {
    match table_ref(t) {
        Ok(table) => {
            *out = table.dimension().map_or(-1, |d| d as i64);
            CohtabStatus::Ok
        }
        Err(s) => s,
    }
}

/// Regularity sequence. `out` receives up to `cap` roots; `out_len` the true
/// length.
///
/// # Safety
/// `t` must be a live handle; `out` must hold `cap` values; `out_len` valid.
#[no_mangle]
pub unsafe extern "C" fn cohtab_table_regularity(
    t: *const CohtabTable,
    out: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> CohtabStatus {
    let table = match table_ref(t) {
        Ok(x) => x,
        Err(s) => return s,
    };
    match table.regularity_sequence() {
        Ok(z) => {
            *out_len = z.len();
            for (k, v) in z.iter().take(cap).enumerate() {
                *out.add(k) = v;
            }
            CohtabStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Run the greedy decomposition for at most `max_steps` steps and return the
/// result as JSON (steps, residual entries, status). Hitting the window
/// bound is reported inside the JSON, not as a call failure.
///
/// # Safety
/// `t` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cohtab_decompose(
    t: *const CohtabTable,
    max_steps: usize,
    out: *mut *mut c_char,
) -> CohtabStatus {
    let table = match table_ref(t) {
        Ok(x) => x,
        Err(s) => return s,
    };
    match decompose(table, max_steps) {
        Ok(dec) => give_string(out, format::emit_decomposition_json(&dec)),
        Err(e) => set_error(&e),
    }
}

/// Rebuild the generator sum of a decomposition JSON on [lo, hi].
///
/// # Safety
/// `json` must be NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cohtab_reconstruct(
    json: *const c_char,
    lo: i64,
    hi: i64,
    out: *mut *mut CohtabTable,
) -> CohtabStatus {
    let json = match read_str(json, "decomposition json") {
        Ok(s) => s,
        Err(s) => return s,
    };
    let result = (|| {
        let dec = format::parse_decomposition_json(json)?;
        reconstruct_steps(&dec.steps, dec.residual.ambient(), Window::new(lo, hi)?)
    })();
    match result {
        Ok(table) => give_table(out, table),
        Err(e) => set_error(&e),
    }
}

/// Evaluate L(degrees, phi^j) on the table; j = -1 evaluates with all bounds
/// infinite. The exact value is returned as a `p/q` string.
///
/// # Safety
/// `degrees` must point to `len` values; `t` live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cohtab_functional(
    t: *const CohtabTable,
    degrees: *const i64,
    len: usize,
    phi_j: i32,
    out: *mut *mut c_char,
) -> CohtabStatus {
    let table = match table_ref(t) {
        Ok(x) => x,
        Err(s) => return s,
    };
    if degrees.is_null() || len == 0 {
        return set_message("degrees must be a nonempty array");
    }
    let degrees = std::slice::from_raw_parts(degrees, len).to_vec();
    let result = (|| {
        let d = DegreeSequence::new(degrees)?;
        let bounds = if phi_j < 0 {
            BoundSequence::all_infinite(d.len())
        } else {
            if d.s() < 0 {
                return Err(Error::Invalid(
                    "phi bounds need a degree sequence of length >= 2".into(),
                ));
            }
            BoundSequence::phi(phi_j as usize, d.s() as usize)?
        };
        evaluate(&d, &bounds, table)
    })();
    match result {
        Ok(v) => give_string(out, cohtab::num::format_rational(&v)),
        Err(e) => set_error(&e),
    }
}

/// Search [lo, hi] for a violated positivity functional with at most
/// smax + 2 degrees. On success `out` receives the certificate JSON, or
/// null when the search is exhausted without a violation.
///
/// # Safety
/// `t` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cohtab_certificate_search(
    t: *const CohtabTable,
    lo: i64,
    hi: i64,
    smax: usize,
    out: *mut *mut c_char,
) -> CohtabStatus {
    let table = match table_ref(t) {
        Ok(x) => x,
        Err(s) => return s,
    };
    let result = (|| certificate_search(table, Window::new(lo, hi)?, smax))();
    match result {
        Ok(Some(cert)) => give_string(
            out,
            serde_json::to_string(&cert).expect("certificate serializes"),
        ),
        Ok(None) => {
            *out = ptr::null_mut();
            CohtabStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}
