//! C ABI over the `dcoc` library.
//!
//! Digraphs and solutions are opaque heap handles released with the matching
//! `*_free` function. Fallible calls return a [`DcocStatus`]; on any error
//! status a message is available from [`dcoc_last_error_message`] on the same
//! thread until the next failing call. Panics never cross the boundary; they
//! surface as `DCOC_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dcoc::{oracle, semicomplete, Digraph, Error, Instance, VertexSet};

/// Result codes. `Ok` and `No` are answers; everything else is an error.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcocStatus {
    /// Success, or a YES answer.
    Ok = 0,
    /// A NO answer; not an error.
    No = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    VertexOutOfRange = 5,
    InvalidDigraph = 6,
    NotSemicomplete = 7,
    TooLarge = 8,
    InvalidArgument = 9,
    OracleGuard = 10,
    Panic = 11,
    Other = 12,
}

/// Opaque digraph handle.
pub struct DcocDigraph {
    inner: Digraph,
}

/// Opaque solution handle: a deletion set found by [`dcoc_solve`].
pub struct DcocSolution {
    witness: Vec<u32>,
    cost: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DcocStatus {
    match e.code() {
        "parse" => DcocStatus::Parse,
        "vertex_out_of_range" => DcocStatus::VertexOutOfRange,
        "invalid_digraph" => DcocStatus::InvalidDigraph,
        "not_semicomplete" => DcocStatus::NotSemicomplete,
        "too_large" => DcocStatus::TooLarge,
        "invalid_argument" => DcocStatus::InvalidArgument,
        "oracle_guard" => DcocStatus::OracleGuard,
        _ => DcocStatus::Other,
    }
}

fn fail(status: DcocStatus, message: impl Into<String>) -> DcocStatus {
    set_last_error(message.into());
    status
}

/// Runs `f`, converting library errors and panics into status codes.
fn guarded<F: FnOnce() -> Result<DcocStatus, DcocStatus>>(f: F) -> DcocStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(DcocStatus::Panic, format!("internal panic: {msg}"))
        }
    }
}

fn lib(e: Error) -> DcocStatus {
    let status = status_of(&e);
    fail(status, e.to_string())
}

unsafe fn digraph_ref<'a>(d: *const DcocDigraph) -> Result<&'a Digraph, DcocStatus> {
    d.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(DcocStatus::NullPointer, "null digraph handle"))
}

unsafe fn vertex_set(n: usize, ids: *const u32, len: usize) -> Result<VertexSet, DcocStatus> {
    if len == 0 {
        return Ok(VertexSet::new(n));
    }
    if ids.is_null() {
        return Err(fail(DcocStatus::NullPointer, "null vertex array"));
    }
    let slice = std::slice::from_raw_parts(ids, len);
    let mut set = VertexSet::new(n);
    for &v in slice {
        let v = v as usize;
        if v >= n {
            return Err(lib(Error::VertexOutOfRange { vertex: v, n }));
        }
        set.insert(v);
    }
    Ok(set)
}

fn instance(d: &Digraph, ell: usize, k: usize) -> Result<Instance, DcocStatus> {
    Instance::new(d.clone(), ell, k).map_err(lib)
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn dcoc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last error on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dcoc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Parses the edge-list text format into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dcoc_digraph_parse(text: *const c_char, out: *mut *mut DcocDigraph) -> DcocStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return Err(fail(DcocStatus::NullPointer, "null argument"));
        }
        *out = std::ptr::null_mut();
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(DcocStatus::InvalidUtf8, "edge list is not valid UTF-8"))?;
        let inner = dcoc::io::parse_edge_list(text).map_err(lib)?;
        *out = Box::into_raw(Box::new(DcocDigraph { inner }));
        Ok(DcocStatus::Ok)
    })
}

/// Builds a digraph on `n` vertices from `m` arcs `tails[i] -> heads[i]`.
///
/// # Safety
/// `tails` and `heads` must point to `m` readable values (or be null with
/// `m == 0`); `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dcoc_digraph_from_arcs(
    n: usize,
    tails: *const u32,
    heads: *const u32,
    m: usize,
    out: *mut *mut DcocDigraph,
) -> DcocStatus {
    guarded(|| {
        if out.is_null() || (m > 0 && (tails.is_null() || heads.is_null())) {
            return Err(fail(DcocStatus::NullPointer, "null argument"));
        }
        *out = std::ptr::null_mut();
        let arcs: Vec<(usize, usize)> = if m == 0 {
            Vec::new()
        } else {
            let t = std::slice::from_raw_parts(tails, m);
            let h = std::slice::from_raw_parts(heads, m);
            t.iter().zip(h).map(|(&u, &v)| (u as usize, v as usize)).collect()
        };
        let inner = Digraph::from_arcs(n, arcs).map_err(lib)?;
        *out = Box::into_raw(Box::new(DcocDigraph { inner }));
        Ok(DcocStatus::Ok)
    })
}

/// Releases a digraph handle. Null is ignored.
///
/// # Safety
/// `d` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dcoc_digraph_free(d: *mut DcocDigraph) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dcoc_digraph_vertex_count(d: *const DcocDigraph) -> usize {
    d.as_ref().map_or(0, |h| h.inner.n())
}

/// Number of arcs; 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dcoc_digraph_arc_count(d: *const DcocDigraph) -> usize {
    d.as_ref().map_or(0, |h| h.inner.m())
}

/// False for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dcoc_digraph_is_semicomplete(d: *const DcocDigraph) -> bool {
    d.as_ref().is_some_and(|h| h.inner.is_semicomplete())
}

/// Size of the largest strong component after deleting `removed`.
///
/// # Safety
/// `d` must be a live handle, `removed` must point to `len` values (or be
/// null with `len == 0`) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dcoc_digraph_mco(
    d: *const DcocDigraph,
    removed: *const u32,
    len: usize,
    out: *mut usize,
) -> DcocStatus {
    guarded(|| {
        let d = digraph_ref(d)?;
        if out.is_null() {
            return Err(fail(DcocStatus::NullPointer, "null output pointer"));
        }
        let x = vertex_set(d.n(), removed, len)?;
        *out = d.mco(&x);
        Ok(DcocStatus::Ok)
    })
}

/// `Ok` if deleting `x` (at most `k` vertices) leaves every strong component
/// with at most `ell` vertices, `No` otherwise.
///
/// # Safety
/// As [`dcoc_digraph_mco`].
#[no_mangle]
pub unsafe extern "C" fn dcoc_verify(
    d: *const DcocDigraph,
    ell: usize,
    k: usize,
    x: *const u32,
    len: usize,
) -> DcocStatus {
    guarded(|| {
        let d = digraph_ref(d)?;
        let set = vertex_set(d.n(), x, len)?;
        let inst = instance(d, ell, k)?;
        Ok(if dcoc::verify_solution(&inst, &set) {
            DcocStatus::Ok
        } else {
            DcocStatus::No
        })
    })
}

/// Decides the instance on a semicomplete digraph. On `Ok` a new solution
/// handle is stored in `*out`; on `No` or an error `*out` is set to null.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dcoc_solve(
    d: *const DcocDigraph,
    ell: usize,
    k: usize,
    out: *mut *mut DcocSolution,
) -> DcocStatus {
    guarded(|| {
        if out.is_null() {
            return Err(fail(DcocStatus::NullPointer, "null output pointer"));
        }
        *out = std::ptr::null_mut();
        let d = digraph_ref(d)?;
        let inst = instance(d, ell, k)?;
        match semicomplete::solve(&inst).map_err(lib)? {
            Some(sol) => {
                let witness = sol.x.iter().map(|v| v as u32).collect();
                *out = Box::into_raw(Box::new(DcocSolution {
                    witness,
                    cost: sol.cost,
                }));
                Ok(DcocStatus::Ok)
            }
            None => Ok(DcocStatus::No),
        }
    })
}

/// Minimum number of deletions on a semicomplete digraph, stored in `*out`
/// when it is at most `k`; `No` otherwise.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dcoc_min_cost(d: *const DcocDigraph, ell: usize, k: usize, out: *mut usize) -> DcocStatus {
    guarded(|| {
        let d = digraph_ref(d)?;
        if out.is_null() {
            return Err(fail(DcocStatus::NullPointer, "null output pointer"));
        }
        let inst = instance(d, ell, k)?;
        match semicomplete::min_cost(&inst).map_err(lib)? {
            Some(c) => {
                *out = c;
                Ok(DcocStatus::Ok)
            }
            None => Ok(DcocStatus::No),
        }
    })
}

/// Exact optimum by exhaustive search over sets of size at most `cap`, for
/// any digraph with at most 24 vertices.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dcoc_oracle_optimum(
    d: *const DcocDigraph,
    ell: usize,
    cap: usize,
    out: *mut usize,
) -> DcocStatus {
    guarded(|| {
        let d = digraph_ref(d)?;
        if out.is_null() {
            return Err(fail(DcocStatus::NullPointer, "null output pointer"));
        }
        if ell == 0 {
            return Err(lib(Error::ZeroEll));
        }
        match oracle::optimal_coc(d, ell, cap).map_err(lib)? {
            Some(r) => {
                *out = r.optimum;
                Ok(DcocStatus::Ok)
            }
            None => Ok(DcocStatus::No),
        }
    })
}

/// Size of the deletion set; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dcoc_solution_cost(s: *const DcocSolution) -> usize {
    s.as_ref().map_or(0, |h| h.cost)
}

/// Copies up to `cap` witness vertices (ascending) into `buf` and returns
/// the full witness length.
///
/// # Safety
/// `s` must be null or a live handle; `buf` must have room for `cap` values
/// (or be null with `cap == 0`).
#[no_mangle]
pub unsafe extern "C" fn dcoc_solution_witness(s: *const DcocSolution, buf: *mut u32, cap: usize) -> usize {
    let Some(h) = s.as_ref() else { return 0 };
    if !buf.is_null() {
        let count = cap.min(h.witness.len());
        std::ptr::copy_nonoverlapping(h.witness.as_ptr(), buf, count);
    }
    h.witness.len()
}

/// Releases a solution handle. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dcoc_solution_free(s: *mut DcocSolution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
