//! C ABI over `matchfactory`.
//!
//! Graphs cross the boundary as opaque `MfGraph` handles. Every fallible
//! call returns an `MfStatus`; on failure `mf_last_error` holds a message
//! for the calling thread until the next failing call.

use matchfactory::constructions::{self, HVariant};
use matchfactory::graph::{self, Multigraph};
use matchfactory::matching::{self, SearchBudget, Verdict};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

/// Opaque graph handle. Release with `mf_graph_free`.
pub struct MfGraph(Multigraph);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Construction = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfVariant {
    Base = 0,
    Prime = 1,
    DoublePrime = 2,
    TriplePrime = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfVerdict {
    No = 0,
    Yes = 1,
    Unknown = 2,
}

impl From<MfVariant> for HVariant {
    fn from(v: MfVariant) -> Self {
        match v {
            MfVariant::Base => HVariant::Base,
            MfVariant::Prime => HVariant::Prime,
            MfVariant::DoublePrime => HVariant::DoublePrime,
            MfVariant::TriplePrime => HVariant::TriplePrime,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(MfStatus, String);

type Outcome = Result<(), Failure>;

fn fail(status: MfStatus, msg: impl ToString) -> Failure {
    Failure(status, msg.to_string())
}

fn guard(body: impl FnOnce() -> Outcome) -> MfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside matchfactory");
            MfStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const MfGraph) -> Result<&'a Multigraph, Failure> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| fail(MfStatus::NullPointer, "graph handle is null"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(fail(MfStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_graph(out: *mut *mut MfGraph, g: Multigraph) -> Outcome {
    if out.is_null() {
        return Err(fail(MfStatus::NullPointer, "output pointer is null"));
    }
    out.write(Box::into_raw(Box::new(MfGraph(g))));
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses the JSON edge-list document `{"n": .., "edges": [[a, b], ..]}`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_parse(text: *const c_char, out: *mut *mut MfGraph) -> MfStatus {
    guard(|| {
        if text.is_null() {
            return Err(fail(MfStatus::NullPointer, "text is null"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| fail(MfStatus::InvalidUtf8, e))?;
        let g = graph::parse(s).map_err(|e| fail(MfStatus::Parse, e))?;
        write_graph(out, g)
    })
}

/// Builds a graph from `edge_count` endpoint pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` values (or be null when the count
/// is zero); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_from_edges(
    vertex_count: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut MfGraph,
) -> MfStatus {
    guard(|| {
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(fail(MfStatus::NullPointer, "edges is null"));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0], p[1]));
        let g = Multigraph::from_edges(vertex_count, pairs).map_err(|e| fail(MfStatus::InvalidArgument, e))?;
        write_graph(out, g)
    })
}

/// # Safety
/// `g` must be null or a handle returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_free(g: *mut MfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Serializes to the JSON edge-list document. Free the result with
/// `mf_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_serialize(g: *const MfGraph, out: *mut *mut c_char) -> MfStatus {
    guard(|| {
        let text = graph::serialize(graph_ref(g)?);
        let c = CString::new(text).map_err(|e| fail(MfStatus::InvalidArgument, e))?;
        write_out(out, c.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn mf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_counts(
    g: *const MfGraph,
    vertex_count: *mut usize,
    edge_count: *mut usize,
) -> MfStatus {
    guard(|| {
        let g = graph_ref(g)?;
        write_out(vertex_count, g.vertex_count())?;
        write_out(edge_count, g.edge_count())
    })
}

/// Endpoints of edge `edge`.
///
/// # Safety
/// `g` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_endpoints(g: *const MfGraph, edge: usize, a: *mut usize, b: *mut usize) -> MfStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let (x, y) = *g.raw_edges().get(edge).ok_or_else(|| {
            fail(MfStatus::InvalidArgument, format!("edge {edge} out of range ({} edges)", g.edge_count()))
        })?;
        write_out(a, x)?;
        write_out(b, y)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_construct_petersen(out: *mut *mut MfGraph) -> MfStatus {
    guard(|| write_graph(out, constructions::petersen().0))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_construct_p(k: usize, out: *mut *mut MfGraph) -> MfStatus {
    guard(|| {
        let c = constructions::build_p(k).map_err(|e| fail(MfStatus::Construction, e))?;
        write_graph(out, c.graph)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_construct_h(k: usize, variant: MfVariant, out: *mut *mut MfGraph) -> MfStatus {
    guard(|| {
        let c = constructions::build_h(k, variant.into()).map_err(|e| fail(MfStatus::Construction, e))?;
        write_graph(out, c.graph)
    })
}

/// The r-graph for `r >= 4` together with the edge connectivity it is built
/// to have. `claimed_connectivity` may be null.
///
/// # Safety
/// `out` must be writable; `claimed_connectivity` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn mf_counterexample(
    r: usize,
    out: *mut *mut MfGraph,
    claimed_connectivity: *mut usize,
) -> MfStatus {
    guard(|| {
        let c = constructions::counterexample(r).map_err(|e| fail(MfStatus::Construction, e))?;
        if !claimed_connectivity.is_null() {
            claimed_connectivity.write(c.claimed_t);
        }
        write_graph(out, c.construction.graph)
    })
}

/// Sets `*regular` and, when regular, `*degree`.
///
/// # Safety
/// `g` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_is_regular(g: *const MfGraph, regular: *mut bool, degree: *mut usize) -> MfStatus {
    guard(|| {
        let d = graph::is_regular(graph_ref(g)?);
        write_out(regular, d.is_some())?;
        write_out(degree, d.unwrap_or(0))
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_edge_connectivity(g: *const MfGraph, out: *mut usize) -> MfStatus {
    guard(|| write_out(out, graph::edge_connectivity(graph_ref(g)?)))
}

/// Sets `*is_r_graph` and, when true, `*r`.
///
/// # Safety
/// `g` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_is_r_graph(g: *const MfGraph, is_r_graph: *mut bool, r: *mut usize) -> MfStatus {
    guard(|| {
        let found = graph::is_r_graph(graph_ref(g)?);
        write_out(is_r_graph, found.is_some())?;
        write_out(r, found.unwrap_or(0))
    })
}

/// Weight of a minimum odd cut. Fails on odd order or a disconnected graph.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_min_odd_cut(g: *const MfGraph, out: *mut usize) -> MfStatus {
    guard(|| {
        let cut = graph::min_odd_cut(graph_ref(g)?).map_err(|e| fail(MfStatus::InvalidArgument, e))?;
        write_out(out, cut.weight)
    })
}

/// Decides whether `m` pairwise disjoint perfect matchings exist. Zero for
/// `max_nodes` or a non-positive `max_seconds` means no limit; an exhausted
/// budget yields `MF_VERDICT_UNKNOWN`.
///
/// # Safety
/// `g` must be a live handle; `verdict` must be writable; `nodes` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn mf_has_disjoint_pms(
    g: *const MfGraph,
    m: usize,
    max_nodes: u64,
    max_seconds: f64,
    verdict: *mut MfVerdict,
    nodes: *mut u64,
) -> MfStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if max_seconds.is_nan() {
            return Err(fail(MfStatus::InvalidArgument, "max_seconds is NaN"));
        }
        let budget = SearchBudget {
            max_nodes: (max_nodes > 0).then_some(max_nodes),
            max_time: (max_seconds > 0.0).then(|| Duration::from_secs_f64(max_seconds)),
            ..SearchBudget::default()
        };
        let decision = matching::has_disjoint_pms(g, m, &budget);
        let v = match decision.verdict {
            Verdict::Yes(_) => MfVerdict::Yes,
            Verdict::No => MfVerdict::No,
            Verdict::Unknown => MfVerdict::Unknown,
        };
        if !nodes.is_null() {
            nodes.write(decision.stats.nodes);
        }
        write_out(verdict, v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn last_error_is_per_failure() {
        let mut g = ptr::null_mut();
        let bad = CString::new("{\"n\": 2, \"edges\": [[0, 0]]}").unwrap();
        assert_eq!(unsafe { mf_graph_parse(bad.as_ptr(), &mut g) }, MfStatus::Parse);
        let msg = unsafe { CStr::from_ptr(mf_last_error()) }.to_str().unwrap();
        assert!(msg.contains("loop"), "{msg}");
        assert!(g.is_null());
    }

    #[test]
    fn null_handles_are_reported() {
        let mut n = 0;
        assert_eq!(unsafe { mf_edge_connectivity(ptr::null(), &mut n) }, MfStatus::NullPointer);
        unsafe { mf_graph_free(ptr::null_mut()) };
        unsafe { mf_string_free(ptr::null_mut()) };
    }
}
