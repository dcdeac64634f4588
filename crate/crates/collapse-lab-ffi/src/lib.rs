//! C ABI for the contractibility engine: opaque graph and kernel handles,
//! status codes, and JSON string outputs for the structured results. The
//! header is generated into `include/collapse_lab.h` at build time.
//!
//! Ownership rules: every `*_new`/`*_parse` output is released with the
//! matching `*_free`; strings returned through `char **` are released with
//! `cl_string_free`. All functions tolerate null pointers by returning
//! `CL_STATUS_NULL_POINTER`.

use collapse_lab::{classify, homology, Graph, Kernel};
use std::ffi::{c_char, CStr, CString};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClStatus {
    ClStatusOk = 0,
    /// Malformed graph6 or edge input.
    ClStatusParse = 1,
    /// Structurally invalid request (vertex out of range, empty graph, ...).
    ClStatusGraph = 2,
    /// More than 64 vertices.
    ClStatusCapacity = 3,
    ClStatusNullPointer = 4,
}

/// Opaque graph handle.
pub struct ClGraph(Graph);

/// Opaque decision-engine handle; holds the memoization caches, so reuse
/// one kernel across calls for speed. Safe to share across threads.
pub struct ClKernel(Kernel);

fn graph_status(e: &collapse_lab::GraphError) -> ClStatus {
    match e {
        collapse_lab::GraphError::CapacityExceeded(_) => ClStatus::ClStatusCapacity,
        _ => ClStatus::ClStatusGraph,
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> ClStatus {
    if out.is_null() {
        return ClStatus::ClStatusNullPointer;
    }
    unsafe { out.write(value) };
    ClStatus::ClStatusOk
}

/// Parse one graph6 record into a new graph handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_parse_g6(
    text: *const c_char,
    out: *mut *mut ClGraph,
) -> ClStatus {
    if text.is_null() || out.is_null() {
        return ClStatus::ClStatusNullPointer;
    }
    let bytes = unsafe { CStr::from_ptr(text) }.to_bytes();
    match collapse_lab::io::parse_graph6(bytes) {
        Ok(g) => unsafe { write_out(out, Box::into_raw(Box::new(ClGraph(g)))) },
        Err(_) => ClStatus::ClStatusParse,
    }
}

/// Build a graph from an edge list given as parallel endpoint arrays.
///
/// # Safety
/// `us` and `vs` must point at `edge_count` readable elements each.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_from_edges(
    vertex_count: u32,
    us: *const u32,
    vs: *const u32,
    edge_count: usize,
    out: *mut *mut ClGraph,
) -> ClStatus {
    if out.is_null() || (edge_count > 0 && (us.is_null() || vs.is_null())) {
        return ClStatus::ClStatusNullPointer;
    }
    let edges: Vec<(usize, usize)> = (0..edge_count)
        .map(|i| unsafe { (*us.add(i) as usize, *vs.add(i) as usize) })
        .collect();
    match Graph::from_edges(vertex_count as usize, &edges) {
        Ok(g) => unsafe { write_out(out, Box::into_raw(Box::new(ClGraph(g)))) },
        Err(e) => graph_status(&e),
    }
}

/// # Safety
/// `graph` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_free(graph: *mut ClGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_vertex_count(graph: *const ClGraph) -> u32 {
    unsafe { graph.as_ref() }.map_or(0, |g| g.0.n() as u32)
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_edge_count(graph: *const ClGraph) -> u32 {
    unsafe { graph.as_ref() }.map_or(0, |g| g.0.edge_count() as u32)
}

/// Canonical graph6 form as a newly allocated string.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_canonical_g6(
    graph: *const ClGraph,
    out: *mut *mut c_char,
) -> ClStatus {
    let Some(g) = (unsafe { graph.as_ref() }) else {
        return ClStatus::ClStatusNullPointer;
    };
    if g.0.n() == 0 {
        return ClStatus::ClStatusGraph;
    }
    let form = collapse_lab::canonical_form(&g.0);
    let c = CString::new(form.as_str()).expect("graph6 has no interior NUL");
    unsafe { write_out(out, c.into_raw()) }
}

#[no_mangle]
pub extern "C" fn cl_kernel_new() -> *mut ClKernel {
    Box::into_raw(Box::new(ClKernel(Kernel::new())))
}

/// # Safety
/// `kernel` must come from `cl_kernel_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cl_kernel_free(kernel: *mut ClKernel) {
    if !kernel.is_null() {
        drop(unsafe { Box::from_raw(kernel) });
    }
}

unsafe fn predicate(
    kernel: *const ClKernel,
    graph: *const ClGraph,
    out: *mut bool,
    eval: impl FnOnce(&Kernel, &Graph) -> bool,
) -> ClStatus {
    let (Some(k), Some(g)) = (unsafe { kernel.as_ref() }, unsafe { graph.as_ref() }) else {
        return ClStatus::ClStatusNullPointer;
    };
    if g.0.n() == 0 {
        return ClStatus::ClStatusGraph;
    }
    unsafe { write_out(out, eval(&k.0, &g.0)) }
}

/// Exact strong vertex contractibility.
///
/// # Safety
/// `kernel` and `graph` must be live handles and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cl_svic_exact(
    kernel: *const ClKernel,
    graph: *const ClGraph,
    out: *mut bool,
) -> ClStatus {
    unsafe { predicate(kernel, graph, out, |k, g| k.svic(g)) }
}

/// Exact strong contractibility.
///
/// # Safety
/// `kernel` and `graph` must be live handles and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cl_sic_exact(
    kernel: *const ClKernel,
    graph: *const ClGraph,
    out: *mut bool,
) -> ClStatus {
    unsafe { predicate(kernel, graph, out, |k, g| k.sic(g)) }
}

/// Greedy 0-dismantlability (order-free, exact for the class).
///
/// # Safety
/// `kernel` and `graph` must be live handles and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cl_dismantlable0(
    kernel: *const ClKernel,
    graph: *const ClGraph,
    out: *mut bool,
) -> ClStatus {
    unsafe { predicate(kernel, graph, out, |_, g| collapse_lab::dismantlable0(g).0) }
}

/// Trivial reduced homology of the clique complex.
///
/// # Safety
/// `kernel` and `graph` must be live handles and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cl_trivial_homology(
    kernel: *const ClKernel,
    graph: *const ClGraph,
    out: *mut bool,
) -> ClStatus {
    unsafe {
        predicate(kernel, graph, out, |_, g| {
            collapse_lab::is_trivial_homology(g).expect("nonempty")
        })
    }
}

/// k-dismantlability at a given level.
///
/// # Safety
/// `kernel` and `graph` must be live handles and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cl_k_dismantlable(
    kernel: *const ClKernel,
    graph: *const ClGraph,
    level: u32,
    out: *mut bool,
) -> ClStatus {
    let (Some(k), Some(g)) = (unsafe { kernel.as_ref() }, unsafe { graph.as_ref() }) else {
        return ClStatus::ClStatusNullPointer;
    };
    if g.0.n() == 0 {
        return ClStatus::ClStatusGraph;
    }
    unsafe { write_out(out, k.0.k_dismantlable(&g.0, level)) }
}

/// Full classification as a JSON object (same schema as the CLI).
///
/// # Safety
/// `kernel` and `graph` must be live handles and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cl_classify_json(
    kernel: *const ClKernel,
    graph: *const ClGraph,
    strict_pseudocode: bool,
    out: *mut *mut c_char,
) -> ClStatus {
    let (Some(k), Some(g)) = (unsafe { kernel.as_ref() }, unsafe { graph.as_ref() }) else {
        return ClStatus::ClStatusNullPointer;
    };
    match classify(&k.0, &g.0, strict_pseudocode) {
        Ok(record) => {
            let json = serde_json::to_string(&record).expect("serializable record");
            unsafe { write_out(out, CString::new(json).unwrap().into_raw()) }
        }
        Err(e) => graph_status(&e),
    }
}

/// Reduced homology (Betti numbers and torsion) as a JSON object.
///
/// # Safety
/// `graph` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cl_homology_json(
    graph: *const ClGraph,
    out: *mut *mut c_char,
) -> ClStatus {
    let Some(g) = (unsafe { graph.as_ref() }) else {
        return ClStatus::ClStatusNullPointer;
    };
    match homology(&g.0) {
        Ok(profile) => {
            let json = serde_json::to_string(&profile).expect("serializable profile");
            unsafe { write_out(out, CString::new(json).unwrap().into_raw()) }
        }
        Err(e) => graph_status(&e),
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    #[test]
    fn round_trip_through_the_c_surface() {
        unsafe {
            let text = CString::new("D~{").unwrap(); // K5
            let mut graph = ptr::null_mut();
            assert_eq!(cl_graph_parse_g6(text.as_ptr(), &mut graph), ClStatus::ClStatusOk);
            assert_eq!(cl_graph_vertex_count(graph), 5);
            assert_eq!(cl_graph_edge_count(graph), 10);

            let kernel = cl_kernel_new();
            let mut flag = false;
            assert_eq!(cl_svic_exact(kernel, graph, &mut flag), ClStatus::ClStatusOk);
            assert!(flag);
            assert_eq!(cl_trivial_homology(kernel, graph, &mut flag), ClStatus::ClStatusOk);
            assert!(flag);

            let mut json = ptr::null_mut();
            assert_eq!(
                cl_classify_json(kernel, graph, false, &mut json),
                ClStatus::ClStatusOk
            );
            let parsed: serde_json::Value =
                serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
            assert_eq!(parsed["sic_exact"], true);
            cl_string_free(json);

            let mut canon = ptr::null_mut();
            assert_eq!(cl_graph_canonical_g6(graph, &mut canon), ClStatus::ClStatusOk);
            assert_eq!(CStr::from_ptr(canon).to_str().unwrap(), "D~{");
            cl_string_free(canon);

            cl_graph_free(graph);
            cl_kernel_free(kernel);
        }
    }

    #[test]
    fn errors_come_back_as_statuses() {
        unsafe {
            let mut graph = ptr::null_mut();
            let bad = CString::new("\x01nonsense").unwrap();
            assert_eq!(
                cl_graph_parse_g6(bad.as_ptr(), &mut graph),
                ClStatus::ClStatusParse
            );
            assert_eq!(
                cl_graph_parse_g6(ptr::null(), &mut graph),
                ClStatus::ClStatusNullPointer
            );
            let us = [0u32];
            let vs = [9u32];
            assert_eq!(
                cl_graph_from_edges(3, us.as_ptr(), vs.as_ptr(), 1, &mut graph),
                ClStatus::ClStatusGraph
            );
            let mut c4 = ptr::null_mut();
            let us = [0u32, 1, 2, 3];
            let vs = [1u32, 2, 3, 0];
            assert_eq!(
                cl_graph_from_edges(4, us.as_ptr(), vs.as_ptr(), 4, &mut c4),
                ClStatus::ClStatusOk
            );
            let kernel = cl_kernel_new();
            let mut flag = true;
            assert_eq!(cl_sic_exact(kernel, c4, &mut flag), ClStatus::ClStatusOk);
            assert!(!flag);
            cl_graph_free(c4);
            cl_kernel_free(kernel);
        }
    }
}
