//! C ABI over `weakorder-cycles`.
//!
//! Objects cross the boundary as opaque handles created by `woc_*_parse` /
//! `woc_generate*` / `woc_graph_build` and released with the matching
//! `*_free`. Every fallible call returns a [`WocStatus`]; the message for the
//! most recent failure on the calling thread is available from
//! [`woc_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weakorder_cycles::oracle::OracleError;
use weakorder_cycles::{
    generate, generate_ucycle, parse_relation, verify_symbols, CycleResult, EulerError, Family,
    FamilyError, GraphError, TransitionGraph,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WocStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad descriptor, parameter or overlap.
    Parameter = 3,
    EmptyFamily = 4,
    /// The transition graph has a vertex with in-degree != out-degree.
    NotBalanced = 5,
    /// The transition graph splits into several components.
    NotConnected = 6,
    LengthMismatch = 7,
    /// The caller's buffer is too short; the required length was written.
    BufferTooSmall = 8,
    Panic = 9,
}

/// A family of equal-length words.
pub struct WocFamily(Family);

/// A generated cycle.
pub struct WocCycle(CycleResult);

/// A transition graph for a family and overlap.
pub struct WocGraph(TransitionGraph);

/// Counts from checking a symbol sequence against a family.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WocVerifySummary {
    pub ok: bool,
    pub windows_checked: usize,
    pub missing: usize,
    pub duplicated: usize,
    pub invalid_windows: usize,
    pub overlap_violations: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: WocStatus, msg: impl Into<String>) -> WocStatus {
    set_error(msg);
    status
}

fn family_status(e: &FamilyError) -> WocStatus {
    match e {
        FamilyError::EmptyFamily(_) => WocStatus::EmptyFamily,
        _ => WocStatus::Parameter,
    }
}

fn graph_status(e: &GraphError) -> WocStatus {
    match e {
        GraphError::Family(f) => family_status(f),
        GraphError::OverlapTooLarge { .. } => WocStatus::Parameter,
    }
}

fn euler_status(e: &EulerError) -> WocStatus {
    match e {
        EulerError::NotBalanced(_) => WocStatus::NotBalanced,
        EulerError::NotConnected(_) => WocStatus::NotConnected,
        EulerError::Graph(g) => graph_status(g),
    }
}

fn oracle_status(e: &OracleError) -> WocStatus {
    match e {
        OracleError::LengthMismatch { .. } => WocStatus::LengthMismatch,
        OracleError::Family(f) => family_status(f),
        _ => WocStatus::Parameter,
    }
}

/// Runs `body`, turning a panic into [`WocStatus::Panic`].
fn guard(body: impl FnOnce() -> WocStatus) -> WocStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == WocStatus::Ok {
                LAST_ERROR.with(|e| *e.borrow_mut() = None);
            }
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(WocStatus::Panic, format!("panic: {msg}"))
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, WocStatus> {
    if s.is_null() {
        return Err(fail(WocStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(WocStatus::InvalidUtf8, e.to_string()))
}

/// Copies `src` into `buf` when it fits; `*written` always receives
/// `src.len()`.
unsafe fn copy_out(src: &[u32], buf: *mut u32, cap: usize, written: *mut usize) -> WocStatus {
    if written.is_null() {
        return fail(WocStatus::NullPointer, "written is null");
    }
    *written = src.len();
    if cap < src.len() {
        return fail(
            WocStatus::BufferTooSmall,
            format!("buffer holds {cap} symbols, {} needed", src.len()),
        );
    }
    if !src.is_empty() {
        if buf.is_null() {
            return fail(WocStatus::NullPointer, "buffer is null");
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    WocStatus::Ok
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `woc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn woc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a family descriptor such as `"wn:n=4"` or `"ms:0,1,1"`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn woc_family_parse(
    descriptor: *const c_char,
    out: *mut *mut WocFamily,
) -> WocStatus {
    guard(|| {
        if out.is_null() {
            return fail(WocStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let text = match read_str(descriptor) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match text.parse::<Family>() {
            Ok(f) => {
                *out = Box::into_raw(Box::new(WocFamily(f)));
                WocStatus::Ok
            }
            Err(e) => fail(family_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `family` must come from [`woc_family_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn woc_family_free(family: *mut WocFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Number of words in the family.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn woc_family_count(family: *const WocFamily, out: *mut u64) -> WocStatus {
    guard(|| {
        let (Some(f), false) = (family.as_ref(), out.is_null()) else {
            return fail(WocStatus::NullPointer, "family or out is null");
        };
        match f.0.count() {
            Ok(c) => match u64::try_from(c) {
                Ok(c) => {
                    *out = c;
                    WocStatus::Ok
                }
                Err(_) => fail(WocStatus::Parameter, format!("count {c} exceeds 64 bits")),
            },
            Err(e) => fail(family_status(&e), e.to_string()),
        }
    })
}

/// Length of the words a cycle for this family is built from; 0 for null.
///
/// # Safety
/// `family` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn woc_family_word_length(family: *const WocFamily) -> usize {
    family.as_ref().map_or(0, |f| f.0.word_length())
}

unsafe fn emit_cycle(
    result: Result<CycleResult, EulerError>,
    out: *mut *mut WocCycle,
) -> WocStatus {
    match result {
        Ok(c) => {
            *out = Box::into_raw(Box::new(WocCycle(c)));
            WocStatus::Ok
        }
        Err(e) => fail(euler_status(&e), e.to_string()),
    }
}

/// Builds the `overlap`-overlap cycle of `family`.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn woc_generate(
    family: *const WocFamily,
    overlap: usize,
    out: *mut *mut WocCycle,
) -> WocStatus {
    guard(|| {
        let (Some(f), false) = (family.as_ref(), out.is_null()) else {
            return fail(WocStatus::NullPointer, "family or out is null");
        };
        *out = ptr::null_mut();
        emit_cycle(generate(&f.0, overlap), out)
    })
}

/// Builds the universal cycle of `family` (overlap = word length - 1).
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn woc_generate_ucycle(
    family: *const WocFamily,
    out: *mut *mut WocCycle,
) -> WocStatus {
    guard(|| {
        let (Some(f), false) = (family.as_ref(), out.is_null()) else {
            return fail(WocStatus::NullPointer, "family or out is null");
        };
        *out = ptr::null_mut();
        emit_cycle(generate_ucycle(&f.0), out)
    })
}

/// Number of symbols in the cycle; 0 for null.
///
/// # Safety
/// `cycle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn woc_cycle_len(cycle: *const WocCycle) -> usize {
    cycle.as_ref().map_or(0, |c| c.0.len())
}

/// Overlap the cycle was built with; 0 for null.
///
/// # Safety
/// `cycle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn woc_cycle_overlap(cycle: *const WocCycle) -> usize {
    cycle.as_ref().map_or(0, |c| c.0.overlap)
}

/// Copies the cycle into `buf`. With `cap` too small nothing is copied,
/// `*written` holds the required length and `BufferTooSmall` is returned.
///
/// # Safety
/// `cycle` must be a live handle, `buf` valid for `cap` writes, `written`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn woc_cycle_symbols(
    cycle: *const WocCycle,
    buf: *mut u32,
    cap: usize,
    written: *mut usize,
) -> WocStatus {
    guard(|| match cycle.as_ref() {
        Some(c) => copy_out(&c.0.symbols, buf, cap, written),
        None => fail(WocStatus::NullPointer, "cycle is null"),
    })
}

/// Rotates the cycle in place to its canonical starting point.
///
/// # Safety
/// `cycle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn woc_cycle_canonicalize(cycle: *mut WocCycle) -> WocStatus {
    guard(|| match cycle.as_mut() {
        Some(c) => {
            c.0.canonicalize();
            WocStatus::Ok
        }
        None => fail(WocStatus::NullPointer, "cycle is null"),
    })
}

/// # Safety
/// `cycle` must come from `woc_generate*` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn woc_cycle_free(cycle: *mut WocCycle) {
    if !cycle.is_null() {
        drop(Box::from_raw(cycle));
    }
}

/// Checks that `symbols`, read cyclically with the given overlap, lists
/// every word of `family` exactly once.
///
/// # Safety
/// `family` must be a live handle, `symbols` valid for `len` reads, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn woc_verify(
    family: *const WocFamily,
    symbols: *const u32,
    len: usize,
    overlap: usize,
    out: *mut WocVerifySummary,
) -> WocStatus {
    guard(|| {
        let (Some(f), false) = (family.as_ref(), out.is_null()) else {
            return fail(WocStatus::NullPointer, "family or out is null");
        };
        if symbols.is_null() && len > 0 {
            return fail(WocStatus::NullPointer, "symbols is null");
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(symbols, len)
        };
        match verify_symbols(slice, overlap, &f.0) {
            Ok(r) => {
                *out = WocVerifySummary {
                    ok: r.ok,
                    windows_checked: r.windows_checked,
                    missing: r.missing.len(),
                    duplicated: r.duplicated.len(),
                    invalid_windows: r.invalid_windows.len(),
                    overlap_violations: r.overlap_violations.len(),
                };
                WocStatus::Ok
            }
            Err(e) => fail(oracle_status(&e), e.to_string()),
        }
    })
}

/// Builds the transition graph of `family` for the given overlap.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn woc_graph_build(
    family: *const WocFamily,
    overlap: usize,
    out: *mut *mut WocGraph,
) -> WocStatus {
    guard(|| {
        let (Some(f), false) = (family.as_ref(), out.is_null()) else {
            return fail(WocStatus::NullPointer, "family or out is null");
        };
        *out = ptr::null_mut();
        match TransitionGraph::build(&f.0, overlap) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(WocGraph(g)));
                WocStatus::Ok
            }
            Err(e) => fail(graph_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn woc_graph_vertex_count(graph: *const WocGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn woc_graph_edge_count(graph: *const WocGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Weakly connected components, ignoring isolated vertices.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn woc_graph_component_count(graph: *const WocGraph) -> usize {
    graph
        .as_ref()
        .map_or(0, |g| g.0.weakly_connected_components().count())
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn woc_graph_is_balanced(graph: *const WocGraph) -> bool {
    graph.as_ref().is_some_and(|g| g.0.is_balanced())
}

/// Graphviz rendering; release with [`woc_string_free`]. Null on failure.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn woc_graph_dot(graph: *const WocGraph) -> *mut c_char {
    let mut result = ptr::null_mut();
    guard(|| match graph.as_ref() {
        Some(g) => match CString::new(g.0.to_dot()) {
            Ok(s) => {
                result = s.into_raw();
                WocStatus::Ok
            }
            Err(e) => fail(WocStatus::Parameter, e.to_string()),
        },
        None => fail(WocStatus::NullPointer, "graph is null"),
    });
    result
}

/// # Safety
/// `graph` must come from [`woc_graph_build`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn woc_graph_free(graph: *mut WocGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn woc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a relation like `"2 < 1 = 3"` into its height word, written to
/// `buf` with the same sizing rules as [`woc_cycle_symbols`].
///
/// # Safety
/// `text` must be NUL-terminated, `buf` valid for `cap` writes, `written`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn woc_parse_relation(
    text: *const c_char,
    buf: *mut u32,
    cap: usize,
    written: *mut usize,
) -> WocStatus {
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_relation(text) {
            Ok(w) => copy_out(w.symbols(), buf, cap, written),
            Err(e) => fail(WocStatus::Parameter, e.to_string()),
        }
    })
}
