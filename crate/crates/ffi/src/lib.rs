//! C ABI for the bound library: opaque graph handles, status codes, and
//! string-returning accessors so other languages can bind without
//! understanding Rust types.
//!
//! Conventions:
//! - Constructors write an owned handle through an out-pointer and return
//!   a [`DomindStatus`]; every handle must be released with
//!   [`domind_graph_free`].
//! - Strings returned through out-pointers are NUL-terminated, UTF-8, and
//!   owned by the caller; release them with [`domind_string_free`].
//! - Exact rationals cross the boundary as `"numerator/denominator"`
//!   strings; nothing is rounded.
//! - All functions are panic-safe: a caught panic reports
//!   `DOMIND_STATUS_PANIC` instead of unwinding across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use domind::domination::{domination_bounds, gamma_hm3};
use domind::experiment::{evaluate_graph, EvalOptions};
use domind::graph::{parse_edge_list, parse_graph6, parse_named_spec};
use domind::independence::independence_bounds;
use domind::oracle::{exact_alpha_limited, exact_gamma_limited};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomindStatus {
    DomindStatusOk = 0,
    /// Input text could not be parsed as a graph.
    DomindStatusParse = 1,
    /// The graph is outside the class the bounds require
    /// (connected, non-complete, at least three vertices).
    DomindStatusClass = 2,
    /// A required argument was NULL or not valid UTF-8.
    DomindStatusArgument = 3,
    /// The requested bound name is unknown, or the bound does not apply
    /// to this graph.
    DomindStatusUnsupported = 4,
    /// An exact-solver or enumeration size limit was exceeded.
    DomindStatusLimit = 5,
    /// Internal panic; the library state is still consistent.
    DomindStatusPanic = 6,
}

use DomindStatus::*;

/// Opaque graph handle.
pub struct DomindGraph {
    inner: domind::Graph,
}

fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, DomindStatus> {
    if ptr.is_null() {
        return Err(DomindStatusArgument);
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| DomindStatusArgument)
}

fn export_string(s: String, out: *mut *mut c_char) -> DomindStatus {
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            DomindStatusOk
        }
        Err(_) => DomindStatusPanic,
    }
}

fn guarded(f: impl FnOnce() -> DomindStatus) -> DomindStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(DomindStatusPanic)
}

fn make_graph(
    out: *mut *mut DomindGraph,
    build: impl FnOnce() -> Result<domind::Graph, DomindStatus>,
) -> DomindStatus {
    if out.is_null() {
        return DomindStatusArgument;
    }
    unsafe { *out = ptr::null_mut() };
    guarded(|| match build() {
        Ok(inner) => {
            let boxed = Box::new(DomindGraph { inner });
            unsafe { *out = Box::into_raw(boxed) };
            DomindStatusOk
        }
        Err(status) => status,
    })
}

/// Parses a graph6-encoded graph.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domind_graph_parse_graph6(
    text: *const c_char,
    out: *mut *mut DomindGraph,
) -> DomindStatus {
    make_graph(out, || {
        let text = read_utf8(text)?;
        parse_graph6(text).map_err(|_| DomindStatusParse)
    })
}

/// Parses the edge-list format (first line `n`, then `u v` lines).
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domind_graph_parse_edge_list(
    text: *const c_char,
    out: *mut *mut DomindGraph,
) -> DomindStatus {
    make_graph(out, || {
        let text = read_utf8(text)?;
        parse_edge_list(text).map_err(|_| DomindStatusParse)
    })
}

/// Builds a named family member from a `family:params` spec such as
/// `star:100` or `cbip:2,1000`.
///
/// # Safety
/// `spec` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domind_graph_named(
    spec: *const c_char,
    out: *mut *mut DomindGraph,
) -> DomindStatus {
    make_graph(out, || {
        let spec = read_utf8(spec)?;
        parse_named_spec(spec).map_err(|_| DomindStatusParse)
    })
}

/// Releases a graph handle. NULL is ignored.
///
/// # Safety
/// `graph` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn domind_graph_free(graph: *mut DomindGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn domind_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Number of vertices.
///
/// # Safety
/// `graph` must be a live handle from this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn domind_graph_order(graph: *const DomindGraph) -> u64 {
    if graph.is_null() {
        return 0;
    }
    unsafe { &*graph }.inner.n() as u64
}

/// Number of edges.
///
/// # Safety
/// `graph` must be a live handle from this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn domind_graph_size(graph: *const DomindGraph) -> u64 {
    if graph.is_null() {
        return 0;
    }
    unsafe { &*graph }.inner.edge_count() as u64
}

/// 1 when the graph is connected, non-complete and has at least three
/// vertices; 0 otherwise.
///
/// # Safety
/// `graph` must be a live handle from this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn domind_graph_in_class(graph: *const DomindGraph) -> i32 {
    if graph.is_null() {
        return 0;
    }
    i32::from(unsafe { &*graph }.inner.in_gamma())
}

fn bound_value(g: &domind::Graph, name: &str) -> Result<domind::Rational, DomindStatus> {
    let check_class = || {
        if g.in_gamma() {
            Ok(())
        } else {
            Err(DomindStatusClass)
        }
    };
    match name {
        "gamma_cssf" | "gamma_hm1" | "gamma_hm2" => {
            check_class()?;
            let b = domination_bounds(g).map_err(|_| DomindStatusClass)?;
            Ok(match name {
                "gamma_cssf" => b.cssf.value,
                "gamma_hm1" => b.hm1.value,
                _ => b.hm2.value,
            })
        }
        "gamma_hm3" => {
            let bip = g.find_bipartition().ok_or(DomindStatusUnsupported)?;
            if bip.side_a.len() < 2 || bip.side_b.len() < 2 {
                return Err(DomindStatusUnsupported);
            }
            gamma_hm3(g, &bip)
                .map(|b| b.value)
                .map_err(|_| DomindStatusUnsupported)
        }
        "alpha_cw" | "alpha_s" | "alpha_acl" | "alpha_hr" | "alpha_hm" => {
            check_class()?;
            let b = independence_bounds(g).map_err(|_| DomindStatusClass)?;
            Ok(match name {
                "alpha_cw" => b.cw,
                "alpha_s" => b.s,
                "alpha_acl" => b.acl,
                "alpha_hr" => domind::arith::rat_int(b.hr as i64),
                _ => b.hm.value,
            })
        }
        _ => Err(DomindStatusUnsupported),
    }
}

/// Computes one bound by name (`gamma_cssf`, `gamma_hm1`, `gamma_hm2`,
/// `gamma_hm3`, `alpha_cw`, `alpha_s`, `alpha_acl`, `alpha_hr`,
/// `alpha_hm`) and writes its exact value as a `num/den` string.
///
/// # Safety
/// `graph` must be live; `name` NUL-terminated; `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn domind_bound(
    graph: *const DomindGraph,
    name: *const c_char,
    out_value: *mut *mut c_char,
) -> DomindStatus {
    if graph.is_null() || out_value.is_null() {
        return DomindStatusArgument;
    }
    unsafe { *out_value = ptr::null_mut() };
    guarded(|| {
        let name = match read_utf8(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        let g = &unsafe { &*graph }.inner;
        match bound_value(g, name) {
            Ok(v) => export_string(format!("{}/{}", v.numer(), v.denom()), out_value),
            Err(s) => s,
        }
    })
}

/// Floor of a named bound (the integer compared in the domination
/// tables).
///
/// # Safety
/// `graph` must be live; `name` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn domind_bound_floor(
    graph: *const DomindGraph,
    name: *const c_char,
    out: *mut i64,
) -> DomindStatus {
    bound_integered(graph, name, out, true)
}

/// Ceiling of a named bound (the integer compared in the independence
/// tables).
///
/// # Safety
/// `graph` must be live; `name` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn domind_bound_ceil(
    graph: *const DomindGraph,
    name: *const c_char,
    out: *mut i64,
) -> DomindStatus {
    bound_integered(graph, name, out, false)
}

fn bound_integered(
    graph: *const DomindGraph,
    name: *const c_char,
    out: *mut i64,
    floor: bool,
) -> DomindStatus {
    if graph.is_null() || out.is_null() {
        return DomindStatusArgument;
    }
    guarded(|| {
        let name = match read_utf8(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        let g = &unsafe { &*graph }.inner;
        match bound_value(g, name) {
            Ok(v) => {
                use num_traits::ToPrimitive;
                let i = if floor {
                    domind::floor_rat(&v)
                } else {
                    domind::ceil_rat(&v)
                };
                match i.to_i64() {
                    Some(i) => {
                        unsafe { *out = i };
                        DomindStatusOk
                    }
                    None => DomindStatusUnsupported,
                }
            }
            Err(s) => s,
        }
    })
}

/// Exact domination number for graphs up to `max_n` vertices.
///
/// # Safety
/// `graph` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domind_exact_gamma(
    graph: *const DomindGraph,
    max_n: u32,
    out: *mut u64,
) -> DomindStatus {
    exact_oracle(graph, max_n, out, true)
}

/// Exact independence number for graphs up to `max_n` vertices.
///
/// # Safety
/// `graph` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domind_exact_alpha(
    graph: *const DomindGraph,
    max_n: u32,
    out: *mut u64,
) -> DomindStatus {
    exact_oracle(graph, max_n, out, false)
}

fn exact_oracle(
    graph: *const DomindGraph,
    max_n: u32,
    out: *mut u64,
    gamma: bool,
) -> DomindStatus {
    if graph.is_null() || out.is_null() {
        return DomindStatusArgument;
    }
    guarded(|| {
        let g = &unsafe { &*graph }.inner;
        let result = if gamma {
            exact_gamma_limited(g, max_n as usize)
        } else {
            exact_alpha_limited(g, max_n as usize)
        };
        match result {
            Ok(v) => {
                unsafe { *out = v as u64 };
                DomindStatusOk
            }
            Err(_) => DomindStatusLimit,
        }
    })
}

/// Evaluates every applicable bound and writes the full report as a JSON
/// object (the same schema the CLI emits). `oracle_max_n` enables the
/// exact solvers for graphs up to that size; pass 0 to skip them.
///
/// # Safety
/// `graph` must be live; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domind_report_json(
    graph: *const DomindGraph,
    oracle_max_n: u32,
    out_json: *mut *mut c_char,
) -> DomindStatus {
    if graph.is_null() || out_json.is_null() {
        return DomindStatusArgument;
    }
    unsafe { *out_json = ptr::null_mut() };
    guarded(|| {
        let g = &unsafe { &*graph }.inner;
        let opts = EvalOptions {
            oracle_gamma_max_n: oracle_max_n as usize,
            oracle_alpha_max_n: oracle_max_n as usize,
            timings: false,
            ..EvalOptions::default()
        };
        match evaluate_graph(g, "ffi", &opts) {
            Ok(report) => match serde_json::to_string(&report) {
                Ok(json) => export_string(json, out_json),
                Err(_) => DomindStatusPanic,
            },
            Err(_) => DomindStatusClass,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
        unsafe { domind_string_free(p) };
        s
    }

    #[test]
    fn parse_and_query_through_the_abi() {
        unsafe {
            let mut handle: *mut DomindGraph = ptr::null_mut();
            let status = domind_graph_parse_graph6(cstr("Bg").as_ptr(), &mut handle);
            assert_eq!(status, DomindStatusOk);
            assert_eq!(domind_graph_order(handle), 3);
            assert_eq!(domind_graph_size(handle), 2);
            assert_eq!(domind_graph_in_class(handle), 1);

            let mut value: *mut c_char = ptr::null_mut();
            let status = domind_bound(handle, cstr("gamma_hm1").as_ptr(), &mut value);
            assert_eq!(status, DomindStatusOk);
            assert_eq!(take_string(value), "3/2");

            let mut floor = 0i64;
            assert_eq!(
                domind_bound_floor(handle, cstr("gamma_hm1").as_ptr(), &mut floor),
                DomindStatusOk
            );
            assert_eq!(floor, 1);

            let mut gamma = 0u64;
            assert_eq!(domind_exact_gamma(handle, 24, &mut gamma), DomindStatusOk);
            assert_eq!(gamma, 1);

            domind_graph_free(handle);
        }
    }

    #[test]
    fn status_codes_for_bad_inputs() {
        unsafe {
            let mut handle: *mut DomindGraph = ptr::null_mut();
            assert_eq!(
                domind_graph_parse_graph6(cstr("\u{1}").as_ptr(), &mut handle),
                DomindStatusParse
            );
            assert!(handle.is_null());

            assert_eq!(
                domind_graph_parse_graph6(ptr::null(), &mut handle),
                DomindStatusArgument
            );

            // K_4 parses but is outside the bound class
            assert_eq!(
                domind_graph_parse_graph6(cstr("C~").as_ptr(), &mut handle),
                DomindStatusOk
            );
            let mut value: *mut c_char = ptr::null_mut();
            assert_eq!(
                domind_bound(handle, cstr("gamma_hm1").as_ptr(), &mut value),
                DomindStatusClass
            );
            assert_eq!(
                domind_bound(handle, cstr("gamma_bogus").as_ptr(), &mut value),
                DomindStatusUnsupported
            );
            domind_graph_free(handle);

            // stars have a one-vertex side: the bipartite bound refuses
            assert_eq!(
                domind_graph_named(cstr("star:5").as_ptr(), &mut handle),
                DomindStatusOk
            );
            assert_eq!(
                domind_bound(handle, cstr("gamma_hm3").as_ptr(), &mut value),
                DomindStatusUnsupported
            );
            let mut gamma = 0u64;
            assert_eq!(domind_exact_gamma(handle, 3, &mut gamma), DomindStatusLimit);
            domind_graph_free(handle);
        }
    }

    #[test]
    fn report_json_roundtrip() {
        unsafe {
            let mut handle: *mut DomindGraph = ptr::null_mut();
            assert_eq!(
                domind_graph_named(cstr("cbip:2,4").as_ptr(), &mut handle),
                DomindStatusOk
            );
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(domind_report_json(handle, 12, &mut json), DomindStatusOk);
            let text = take_string(json);
            let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
            assert_eq!(parsed["n"], 6);
            assert_eq!(parsed["bounds"]["gamma_hm3"]["num"], "2");
            assert_eq!(parsed["oracle"]["gamma"], 2);
            domind_graph_free(handle);
        }
    }
}
