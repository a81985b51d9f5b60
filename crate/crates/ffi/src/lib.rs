//! C interface. Every function returns a [`PisgenusStatus`]; on failure the
//! message is available from [`pisgenus_last_error`] on the same thread.
//! Strings handed out must be released with [`pisgenus_string_free`],
//! instances with [`pisgenus_instance_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pisgenus::certcheck::check_certificate;
use pisgenus::classify::{verify_instance, Verdict};
use pisgenus::error::Error;
use pisgenus::genus::{genus_bounds, Budget, DEFAULT_NODES, DEFAULT_TIME_MS};
use pisgenus::graph::LabeledGraph;
use pisgenus::pis::PisInstance;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PisgenusStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Unsupported = 4,
    NotLocal = 5,
    BudgetExhausted = 6,
    CertificateRejected = 7,
    MalformedInput = 8,
    Io = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PisgenusVerdict {
    Confirmed = 0,
    LowerOnly = 1,
    Mismatch = 2,
}

/// Search limits; a `time_ms` of 0 means no wall-clock limit.
#[repr(C)]
#[derive(Copy, Clone, Debug)]
pub struct PisgenusBudget {
    pub time_ms: u64,
    pub nodes: u64,
    pub seed: u64,
}

/// `has_upper` is 0 when no embedding was found.
#[repr(C)]
#[derive(Copy, Clone, Debug, Default)]
pub struct PisgenusBounds {
    pub lower: u64,
    pub upper: u64,
    pub has_upper: u8,
}

/// Opaque handle to a ring with its ideal lattice and PIS graph.
pub struct PisgenusInstance {
    spec: String,
    inner: PisInstance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PisgenusStatus {
    match e {
        Error::Syntax { .. } | Error::NotPrimePower(_) => PisgenusStatus::Parse,
        Error::UnsupportedFamily(_) | Error::OrderCap { .. } | Error::SingleFactor | Error::UnknownFormat(_) => {
            PisgenusStatus::Unsupported
        }
        Error::NotLocal(_) => PisgenusStatus::NotLocal,
        Error::BudgetExhausted => PisgenusStatus::BudgetExhausted,
        Error::Certificate(_) => PisgenusStatus::CertificateRejected,
        Error::Disconnected | Error::MalformedRotation(_) | Error::MalformedGraph(_) | Error::Manifest(_) | Error::Json(_) => {
            PisgenusStatus::MalformedInput
        }
        Error::Io(_) => PisgenusStatus::Io,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (PisgenusStatus, String)>) -> PisgenusStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PisgenusStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            PisgenusStatus::Internal
        }
    }
}

fn lift<T>(r: pisgenus::error::Result<T>) -> Result<T, (PisgenusStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PisgenusStatus, String) {
    (PisgenusStatus::NullArgument, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (PisgenusStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (PisgenusStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn hand_out(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn budget_from(b: *const PisgenusBudget) -> Budget {
    let mut out = Budget::default();
    if let Some(b) = unsafe { b.as_ref() } {
        out.time_ms = (b.time_ms > 0).then_some(b.time_ms);
        out.nodes = b.nodes;
        out.seed = b.seed;
    }
    out
}

#[no_mangle]
pub extern "C" fn pisgenus_budget_default() -> PisgenusBudget {
    PisgenusBudget { time_ms: DEFAULT_TIME_MS, nodes: DEFAULT_NODES, seed: 0 }
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn pisgenus_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn pisgenus_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pisgenus_instance_new(spec: *const c_char, out: *mut *mut PisgenusInstance) -> PisgenusStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let spec = read_str(spec, "spec")?;
        let inner = lift(PisInstance::from_spec(spec))?;
        *out = Box::into_raw(Box::new(PisgenusInstance { spec: spec.to_string(), inner }));
        Ok(())
    })
}

/// # Safety
/// `inst` must be null or a handle from [`pisgenus_instance_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn pisgenus_instance_free(inst: *mut PisgenusInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// Pointers must be valid; `inst` from [`pisgenus_instance_new`].
#[no_mangle]
pub unsafe extern "C" fn pisgenus_instance_size(
    inst: *const PisgenusInstance,
    vertices: *mut usize,
    edges: *mut usize,
) -> PisgenusStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        let g = &inst.inner.graph;
        if let Some(v) = vertices.as_mut() {
            *v = g.vertex_count();
        }
        if let Some(e) = edges.as_mut() {
            *e = g.edge_count();
        }
        Ok(())
    })
}

/// PIS graph as a JSON graph document.
///
/// # Safety
/// Pointers must be valid; free the result with [`pisgenus_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pisgenus_instance_graph_json(inst: *const PisgenusInstance, out: *mut *mut c_char) -> PisgenusStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = hand_out(inst.inner.graph.to_json());
        Ok(())
    })
}

/// Ideal lattice as a JSON document.
///
/// # Safety
/// Pointers must be valid; free the result with [`pisgenus_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pisgenus_instance_lattice_json(inst: *const PisgenusInstance, out: *mut *mut c_char) -> PisgenusStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let doc = inst.inner.lattice.to_document(&inst.inner.ring);
        *out = hand_out(serde_json::to_string(&doc).expect("serialisable"));
        Ok(())
    })
}

/// Certified genus bounds. `cert_json` may be null; otherwise it receives the certificate.
///
/// # Safety
/// Pointers must be valid or null where allowed; `budget` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn pisgenus_genus_bounds(
    inst: *const PisgenusInstance,
    budget: *const PisgenusBudget,
    out: *mut PisgenusBounds,
    cert_json: *mut *mut c_char,
) -> PisgenusStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let b = lift(genus_bounds(&inst.inner.graph, &budget_from(budget)))?;
        *out = PisgenusBounds {
            lower: b.lower as u64,
            upper: b.upper.unwrap_or(0) as u64,
            has_upper: b.upper.is_some() as u8,
        };
        if let Some(c) = cert_json.as_mut() {
            *c = hand_out(serde_json::to_string(&b).expect("serialisable"));
        }
        Ok(())
    })
}

/// Prediction against certified bounds. `report_json` may be null.
///
/// # Safety
/// Pointers must be valid or null where allowed; `budget` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn pisgenus_verify(
    inst: *const PisgenusInstance,
    budget: *const PisgenusBudget,
    verdict: *mut PisgenusVerdict,
    report_json: *mut *mut c_char,
) -> PisgenusStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        let verdict = verdict.as_mut().ok_or_else(|| null("verdict"))?;
        let r = lift(verify_instance(&inst.spec, &inst.inner, &budget_from(budget)))?;
        *verdict = match r.verdict {
            Verdict::Confirmed => PisgenusVerdict::Confirmed,
            Verdict::LowerOnly => PisgenusVerdict::LowerOnly,
            Verdict::Mismatch => PisgenusVerdict::Mismatch,
        };
        if let Some(c) = report_json.as_mut() {
            *c = hand_out(serde_json::to_string(&r).expect("serialisable"));
        }
        Ok(())
    })
}

/// Re-checks a certificate (bounds or report JSON) against a graph (JSON or edge list).
///
/// # Safety
/// Strings must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pisgenus_check_certificate(
    graph: *const c_char,
    cert: *const c_char,
    out: *mut PisgenusBounds,
) -> PisgenusStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let g = lift(LabeledGraph::parse_any(read_str(graph, "graph")?))?;
        let value = lift(serde_json::from_str(read_str(cert, "cert")?).map_err(Error::from))?;
        let r = lift(check_certificate(&g, &value))?;
        *out = PisgenusBounds {
            lower: r.lower as u64,
            upper: r.upper.unwrap_or(0) as u64,
            has_upper: r.upper.is_some() as u8,
        };
        Ok(())
    })
}
