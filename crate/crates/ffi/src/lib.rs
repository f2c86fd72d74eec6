//! C interface to `covertqft`.
//!
//! Every fallible call returns a [`CqStatus`]; on failure the message is
//! available from [`cq_last_error`] on the same thread. Strings handed out
//! through `char **` are owned by the caller and released with
//! [`cq_string_free`]. Character tables are opaque handles released with
//! [`cq_chartable_free`]. No call unwinds across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use covertqft::error::Error;
use covertqft::exactalg::fmt_rational;
use covertqft::hurwitz::{hurwitz_connected, hurwitz_disconnected, BranchData};
use covertqft::partitions::Partition;
use covertqft::symchar::{character_table, CharacterTable};
use covertqft::theoryu::{verify_relfin, InvariantRecord};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    DegreeMismatch = 4,
    OracleBound = 5,
    Verification = 6,
    Internal = 7,
    Panic = 8,
}

/// Opaque character table of `S_d`.
pub struct CqCharTable {
    table: Arc<CharacterTable>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CqStatus {
    match e {
        Error::Parse { .. } => CqStatus::Parse,
        Error::DegreeMismatch(_) => CqStatus::DegreeMismatch,
        Error::InvalidArgument(_) | Error::Variance(_) => CqStatus::InvalidArgument,
        Error::OracleBoundExceeded(_) => CqStatus::OracleBound,
        Error::Verification(_) => CqStatus::Verification,
        _ => CqStatus::Internal,
    }
}

/// Run `f`, turning errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), (CqStatus, String)>) -> CqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CqStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            CqStatus::Panic
        }
    }
}

fn lib<T>(r: covertqft::error::Result<T>) -> Result<T, (CqStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (CqStatus, String) {
    (CqStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or a nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (CqStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (CqStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` must be null or valid for one pointer write.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (CqStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (CqStatus::Internal, "output contains nul".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn cq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// JSON list of the partitions of `d` with hooklengths, content, n, dim and
/// q-dimension (same shape as `covertqft partitions`).
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn cq_partitions_json(d: u32, out: *mut *mut c_char) -> CqStatus {
    guard(|| {
        let o = covertqft::cli::run(["covertqft", "partitions", &d.to_string()]);
        if o.code != 0 {
            return Err((CqStatus::InvalidArgument, o.stderr.trim().to_string()));
        }
        write_string(out, o.stdout)
    })
}

/// Character table of `S_d`; release with [`cq_chartable_free`].
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn cq_chartable_new(d: u32, out: *mut *mut CqCharTable) -> CqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let table = lib(character_table(d))?;
        *out = Box::into_raw(Box::new(CqCharTable { table }));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a live handle from [`cq_chartable_new`].
#[no_mangle]
pub unsafe extern "C" fn cq_chartable_free(t: *mut CqCharTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of rows (and columns); 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cq_chartable_size(t: *const CqCharTable) -> usize {
    t.as_ref().map_or(0, |t| t.table.rows.len())
}

/// Entry `χ_{row}(col)`; rows start at the trivial representation, columns
/// at the identity class.
///
/// # Safety
/// `t` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cq_chartable_entry(t: *const CqCharTable, row: usize, col: usize, out: *mut i64) -> CqStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("table"))?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        let n = t.table.rows.len();
        if row >= n || col >= n {
            return Err((CqStatus::InvalidArgument, format!("index ({row},{col}) outside a {n}x{n} table")));
        }
        *out = t.table.entries[row][col];
        Ok(())
    })
}

/// Label of a row (`is_row != 0`) or column, such as `2+1`.
///
/// # Safety
/// `t` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cq_chartable_label(
    t: *const CqCharTable,
    index: usize,
    is_row: i32,
    out: *mut *mut c_char,
) -> CqStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("table"))?;
        let labels = if is_row != 0 { &t.table.rows } else { &t.table.cols };
        let p = labels
            .get(index)
            .ok_or_else(|| (CqStatus::InvalidArgument, format!("index {index} outside {} labels", labels.len())))?;
        write_string(out, p.to_plus_string())
    })
}

/// Hurwitz number as an exact fraction string. `classes` holds partitions
/// separated by `;` (for example `"2+1;3"`), or is empty.
///
/// # Safety
/// `classes` must be a nul-terminated string and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cq_hurwitz(
    d: u32,
    g: u32,
    classes: *const c_char,
    simple: u32,
    connected: i32,
    out: *mut *mut c_char,
) -> CqStatus {
    guard(|| {
        let text = read_str(classes, "classes")?;
        let cs: Vec<Partition> =
            lib(text.split(';').filter(|s| !s.trim().is_empty()).map(Partition::parse).collect())?;
        let b = lib(BranchData::new(d, g, cs, simple))?;
        let v = lib(if connected != 0 { hurwitz_connected(&b) } else { hurwitz_disconnected(&b) })?;
        write_string(out, fmt_rational(&v.value))
    })
}

/// Closed anti-diagonal invariant as a JSON record; `order > 0` adds the
/// `u`-expansion to that order instead of the `Q` form.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cq_antid_json(d: u32, g: u32, k1: i64, k2: i64, order: i64, out: *mut *mut c_char) -> CqStatus {
    guard(|| {
        let rec = lib(InvariantRecord::closed(d, g, k1, k2, (order > 0).then_some(order)))?;
        let s = serde_json::to_string(&rec).map_err(|e| (CqStatus::Internal, e.to_string()))?;
        write_string(out, s)
    })
}

/// Check the fibre relation for degree `d` through `u^order`; `*passed` is
/// 1 when the residual vanishes.
///
/// # Safety
/// `passed` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cq_relfin(d: u32, order: i64, passed: *mut i32) -> CqStatus {
    guard(|| {
        let passed = passed.as_mut().ok_or_else(|| null("output pointer"))?;
        *passed = lib(verify_relfin(d, order))?.is_zero() as i32;
        Ok(())
    })
}
